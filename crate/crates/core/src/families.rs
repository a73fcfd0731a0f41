//! Registry of parametric D(n)-tuple families.
//!
//! Families are data: each entry is a list of element polynomials and an
//! `n` polynomial in one parameter. [`Family::prove`] certifies a family
//! symbolically by extracting a polynomial square root of every pairwise
//! condition `e_i * e_j + n`.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_perfect_square, parse_rat, to_int, ArithError, Int, Parity, Poly, Rat};
use crate::tuples::{Certificate, Metrics, Tuple, TupleError, VerifyFailure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family id {0:?}")]
    UnknownId(String),
    #[error("family {id}: parameter {param} is excluded: {reason}")]
    Excluded {
        id: String,
        param: Rat,
        reason: TupleError,
    },
    #[error("family {id}: parameter {param} is on the exclusion list")]
    ExplicitlyExcluded { id: String, param: Rat },
    #[error("family {id}: parameter {param} is not admissible (must be an integer plus {offset})")]
    Inadmissible { id: String, param: Rat, offset: Rat },
    #[error("family {id}: value {value} at parameter {param} is not an integer")]
    NonIntegral { id: String, param: Rat, value: Rat },
    #[error("family {id}: instance at {param} fails verification: {failure}")]
    Unverified {
        id: String,
        param: Rat,
        failure: VerifyFailure,
    },
    #[error("family {id}: e_{i} * e_{j} + n is not a square polynomial")]
    CertificationFailed { id: String, i: usize, j: usize },
    #[error("invalid family description: {0}")]
    Invalid(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub id: String,
    pub param: String,
    pub elements: Vec<Poly>,
    pub n: Poly,
    /// Admissible parameters are `p + offset` for integer `p`.
    pub offset: Rat,
    /// Integer parameters excluded on top of the computed degeneracies.
    pub excluded: Vec<Int>,
    pub claimed_ratio: Option<Rat>,
    pub requires_nonsquare_n: bool,
}

/// Polynomial roots `q_ij` with `q_ij^2 = e_i * e_j + n`, one per pair.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyProof {
    pub id: String,
    pub pairs: Vec<PolyPairRoot>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyPairRoot {
    pub i: usize,
    pub j: usize,
    pub root: Poly,
}

impl FamilyProof {
    /// Re-derives every identity from scratch.
    pub fn check(&self, family: &Family) -> bool {
        let m = family.elements.len();
        self.pairs.len() == m * (m - 1) / 2
            && self.pairs.iter().all(|p| {
                &p.root * &p.root == &(&family.elements[p.i] * &family.elements[p.j]) + &family.n
            })
    }
}

impl Family {
    pub fn is_admissible(&self, x: &Rat) -> bool {
        (x - &self.offset).is_integer()
    }

    /// The parameter value for integer index `p`, i.e. `p + offset`.
    pub fn param_at(&self, p: &Int) -> Rat {
        Rat::from_integer(p.clone()) + &self.offset
    }

    /// Evaluates at integer index `p` (parameter `p + offset`).
    pub fn eval(&self, p: &Int) -> Result<Tuple, FamilyError> {
        if self.excluded.contains(p) {
            return Err(FamilyError::ExplicitlyExcluded {
                id: self.id.clone(),
                param: self.param_at(p),
            });
        }
        self.eval_at(&self.param_at(p))
    }

    /// Evaluates at an admissible rational parameter value.
    pub fn eval_at(&self, x: &Rat) -> Result<Tuple, FamilyError> {
        if !self.is_admissible(x) {
            return Err(FamilyError::Inadmissible {
                id: self.id.clone(),
                param: x.clone(),
                offset: self.offset.clone(),
            });
        }
        let integral = |poly: &Poly| {
            let value = poly.eval(x);
            to_int(&value).ok_or_else(|| FamilyError::NonIntegral {
                id: self.id.clone(),
                param: x.clone(),
                value,
            })
        };
        let elements = self
            .elements
            .iter()
            .map(integral)
            .collect::<Result<Vec<_>, _>>()?;
        let n = integral(&self.n)?;
        Tuple::new(elements, n).map_err(|reason| FamilyError::Excluded {
            id: self.id.clone(),
            param: x.clone(),
            reason,
        })
    }

    pub fn eval_verified(&self, p: &Int) -> Result<(Tuple, Certificate), FamilyError> {
        let t = self.eval(p)?;
        let cert = t.verify().map_err(|failure| FamilyError::Unverified {
            id: self.id.clone(),
            param: self.param_at(p),
            failure,
        })?;
        Ok((t, cert))
    }

    pub fn prove(&self) -> Result<FamilyProof, FamilyError> {
        let mut pairs = Vec::new();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let cond = &(&self.elements[i] * &self.elements[j]) + &self.n;
                let root = cond
                    .sqrt()
                    .ok_or_else(|| FamilyError::CertificationFailed {
                        id: self.id.clone(),
                        i,
                        j,
                    })?;
                pairs.push(PolyPairRoot { i, j, root });
            }
        }
        Ok(FamilyProof {
            id: self.id.clone(),
            pairs,
        })
    }

    /// Log-ratio (and `max / |n|^3`) at each parameter; excluded parameters
    /// are skipped and reported.
    pub fn ratio_limit(&self, params: &[Int]) -> RatioSeries {
        let mut series = RatioSeries::default();
        for p in params {
            match self.eval(p) {
                Ok(t) => series.points.push(RatioPoint {
                    param: p.clone(),
                    log_ratio: t.metrics().log_ratio,
                    d_over_n3: Metrics::d_over_n3(&t),
                }),
                Err(e) => series.skipped.push((p.clone(), e.to_string())),
            }
        }
        series
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RatioSeries {
    pub points: Vec<RatioPoint>,
    pub skipped: Vec<(Int, String)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioPoint {
    pub param: Int,
    pub log_ratio: Option<f64>,
    pub d_over_n3: f64,
}

struct Entry {
    id: &'static str,
    param: &'static str,
    elements: &'static [&'static str],
    n: &'static str,
    offset: &'static str,
    claimed_ratio: Option<&'static str>,
    requires_nonsquare_n: bool,
}

const NINE_TWENTY_A: &str =
    "16384v^9-32768v^8+20480v^7-5120v^6+4608v^5-4096v^4+1216v^3-304v^2+164v-24";
const NINE_TWENTY_B: &str = "12288v^8-24576v^7+21504v^6-11520v^5+2880v^4+576v^3-528v^2+156v-24";

const ENTRIES: &[Entry] = &[
    Entry {
        id: "d1_classic",
        param: "k",
        elements: &["k-1", "k+1", "4k", "16k^3-4k"],
        n: "1",
        offset: "0",
        claimed_ratio: None,
        requires_nonsquare_n: false,
    },
    Entry {
        id: "d_4k3",
        param: "k",
        elements: &["1", "9k^2+8k+1", "9k^2+14k+6", "36k^2+44k+13"],
        n: "4k+3",
        offset: "0",
        claimed_ratio: Some("2"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "d_eq1",
        param: "k",
        elements: &[
            "1",
            "144k^4+216k^3+113k^2+20k+1",
            "144k^4+360k^3+329k^2+134k+22",
            "576k^4+1152k^3+848k^2+272k+33",
        ],
        n: "(4k+1)(4k+3)",
        offset: "0",
        claimed_ratio: Some("2"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "sec2_main",
        param: "k",
        elements: &[
            "1",
            "256k^4-128k^3-48k^2+16k",
            "4096k^6-4096k^5-512k^4+1152k^3+16k^2-88k-7",
            "4096k^6-2048k^5-1792k^4+640k^3+288k^2-48k-15",
        ],
        n: "-64k^2+16k+16",
        offset: "0",
        claimed_ratio: Some("3"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "sec2_zform",
        param: "z",
        elements: &[
            "1",
            "256z^4-72z^2+17/16",
            "4096z^6-1024z^5-2112z^4+416z^3+335z^2-153/4*z-1007/64",
            "4096z^6+1024z^5-2112z^4-416z^3+335z^2+153/4*z-1007/64",
        ],
        n: "-64z^2+17",
        offset: "-1/8",
        claimed_ratio: Some("3"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "triple_A",
        param: "k",
        elements: &["4k-4", "8k-4", "12k"],
        n: "16k^4-72k^2+48k+9",
        offset: "0",
        claimed_ratio: Some("1/4"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "triple_B",
        param: "k",
        elements: &["-6k-1", "2k+1", "6k+4"],
        n: "144k^4+264k^3+181k^2+52k+5",
        offset: "0",
        claimed_ratio: Some("1/4"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "abba_1",
        param: "u",
        elements: &["-4u", "4u", "-3-u^2", "3+u^2"],
        n: "(u^2+9)(1+u^2)",
        offset: "0",
        claimed_ratio: Some("1/2"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "abba_2",
        param: "u",
        elements: &[
            "-4u(u-1)(u-2)",
            "4u(u-1)(u-2)",
            "-(u^2-2u+2)^2",
            "(u^2-2u+2)^2",
        ],
        n: "(u^2-2u+2)^4",
        offset: "0",
        claimed_ratio: Some("1/2"),
        requires_nonsquare_n: false,
    },
    Entry {
        id: "abba_3",
        param: "u",
        elements: &["-4u^2-2u-1", "4u^2+2u+1", "-4u(u+1)", "4u(u+1)"],
        n: "(10u^2+2u+1)(2u^2+2u+1)",
        offset: "0",
        claimed_ratio: Some("1/2"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "nine_twenty",
        param: "v",
        elements: &[
            NINE_TWENTY_A,
            "-(16384v^9-32768v^8+20480v^7-5120v^6+4608v^5-4096v^4+1216v^3-304v^2+164v-24)",
            NINE_TWENTY_B,
            "-(12288v^8-24576v^7+21504v^6-11520v^5+2880v^4+576v^3-528v^2+156v-24)",
        ],
        n: "268435456v^20-1073741824v^19+1879048192v^18-1946157056v^17\
            +1392508928v^16-788529152v^15+465567744v^14-412090368v^13\
            +412483584v^12-328990720v^11+205324288v^10-110215168v^9\
            +53587968v^8-22474752v^7+7394304v^6-1852160v^5+468752v^4\
            -164480v^3+47872v^2-7552v+580",
        offset: "0",
        claimed_ratio: Some("9/20"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "two_fifths",
        param: "v",
        elements: &[
            "8v^4-4v^3-8v^2",
            "8v^4-12v^3+4v-1",
            "-4v^3+2v^2+2v-1",
            "-8v^4+4v^3+12v^2-4v-4",
        ],
        n: "64v^10-128v^9-64v^8+240v^7-32v^6-136v^5+41v^4+22v^3-7v^2",
        offset: "0",
        claimed_ratio: Some("2/5"),
        requires_nonsquare_n: true,
    },
    Entry {
        id: "square_n",
        param: "u",
        elements: &["60u^2-24u-4", "100u-60", "-4(5u-2)(3u-1)", "-90u^2+96u-30"],
        n: "(15u-7)^2(5u-1)^2",
        offset: "0",
        claimed_ratio: Some("1/2"),
        requires_nonsquare_n: false,
    },
];

fn build(e: &Entry) -> Family {
    let parse = |s: &str| Poly::parse(s, e.param).unwrap_or_else(|err| panic!("{}: {err}", e.id));
    Family {
        id: e.id.to_string(),
        param: e.param.to_string(),
        elements: e.elements.iter().map(|s| parse(s)).collect(),
        n: parse(e.n),
        offset: parse_rat(e.offset).expect("offset"),
        excluded: Vec::new(),
        claimed_ratio: e.claimed_ratio.map(|r| parse_rat(r).expect("ratio")),
        requires_nonsquare_n: e.requires_nonsquare_n,
    }
}

/// All built-in families, in a fixed order.
pub fn registry() -> &'static [Family] {
    static REGISTRY: OnceLock<Vec<Family>> = OnceLock::new();
    REGISTRY.get_or_init(|| ENTRIES.iter().map(build).collect())
}

pub fn lookup(id: &str) -> Result<&'static Family, FamilyError> {
    registry()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| FamilyError::UnknownId(id.to_string()))
}

pub fn family_eval(id: &str, p: &Int) -> Result<Tuple, FamilyError> {
    lookup(id)?.eval(p)
}

pub fn family_prove(id: &str) -> Result<FamilyProof, FamilyError> {
    lookup(id)?.prove()
}

pub fn family_ratio_limit(id: &str, params: &[Int]) -> Result<RatioSeries, FamilyError> {
    Ok(lookup(id)?.ratio_limit(params))
}

/// `n(p)` is not a perfect square.
pub fn n_is_nonsquare(t: &Tuple) -> bool {
    !is_perfect_square(t.n())
}

/// Parities of `n`, `b`, `c + d` and `d - c` for a four-element family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub id: String,
    pub n: Parity,
    pub b: Parity,
    pub c_plus_d: Parity,
    pub d_minus_c: Parity,
}

impl ParityReport {
    pub fn of(f: &Family) -> ParityReport {
        let [_, b, c, d] = &f.elements[..] else {
            panic!(
                "parity audit needs four elements, {} has {}",
                f.id,
                f.elements.len()
            );
        };
        ParityReport {
            id: f.id.clone(),
            n: f.n.parity(),
            b: b.parity(),
            c_plus_d: (c + d).parity(),
            d_minus_c: (d - c).parity(),
        }
    }

    /// `n`, `b`, `c + d` even and `d - c` odd.
    pub fn matches_expected(&self) -> bool {
        self.n == Parity::Even
            && self.b == Parity::Even
            && self.c_plus_d == Parity::Even
            && self.d_minus_c == Parity::Odd
    }
}

/// Recentres a family whose `n` is quadratic at the vertex of `n`
/// (`k = z - n_1 / (2 n_2)`), which makes `n` even.
pub fn center_quadratic(f: &Family, new_param: &str) -> Option<Family> {
    if f.n.degree() != Some(2) {
        return None;
    }
    let two = Rat::from_integer(2.into());
    let shift = -(f.n.coeff(1) / (two * f.n.coeff(2)));
    let one = Rat::one();
    Some(Family {
        id: format!("{}_centered", f.id),
        param: new_param.to_string(),
        elements: f
            .elements
            .iter()
            .map(|e| e.compose_linear(&one, &shift))
            .collect(),
        n: f.n.compose_linear(&one, &shift),
        offset: &f.offset - &shift,
        excluded: f.excluded.clone(),
        claimed_ratio: f.claimed_ratio.clone(),
        requires_nonsquare_n: f.requires_nonsquare_n,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParityAudit {
    /// The registered z-form family; expected to match the published parities.
    pub zform: ParityReport,
    /// `sec2_main` recentred at the vertex of its `n`; must equal `sec2_zform`.
    pub zform_rederived: bool,
    /// `d_eq1` recentred the same way; informational only.
    pub eq1_centered: ParityReport,
}

pub fn family_parity_audit() -> ParityAudit {
    let zform = lookup("sec2_zform").expect("registered");
    let main = lookup("sec2_main").expect("registered");
    let rederived = center_quadratic(main, "z").expect("quadratic n");
    let eq1 = center_quadratic(lookup("d_eq1").expect("registered"), "z").expect("quadratic n");
    ParityAudit {
        zform: ParityReport::of(zform),
        zform_rederived: rederived.elements == zform.elements
            && rederived.n == zform.n
            && rederived.offset == zform.offset,
        eq1_centered: ParityReport::of(&eq1),
    }
}

/// JSON form: coefficients lowest degree first as `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub id: String,
    pub param: String,
    pub elements: Vec<Vec<String>>,
    pub n: Vec<String>,
    pub claimed_ratio: Option<String>,
    pub requires_nonsquare_n: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
}

fn coeff_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_coeffs(cs: &[String]) -> Result<Poly, FamilyError> {
    Ok(Poly::new(
        cs.iter()
            .map(|c| parse_rat(c))
            .collect::<Result<Vec<_>, _>>()?,
    ))
}

impl Family {
    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            id: self.id.clone(),
            param: self.param.clone(),
            elements: self.elements.iter().map(coeff_strings).collect(),
            n: coeff_strings(&self.n),
            claimed_ratio: self.claimed_ratio.as_ref().map(|r| r.to_string()),
            requires_nonsquare_n: self.requires_nonsquare_n,
            offset: (!self.offset.is_zero()).then(|| self.offset.to_string()),
            excluded: self.excluded.iter().map(|e| e.to_string()).collect(),
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<Family, FamilyError> {
        if j.elements.len() < 2 {
            return Err(FamilyError::Invalid(format!(
                "{}: a family needs at least two elements",
                j.id
            )));
        }
        let elements = j
            .elements
            .iter()
            .map(|e| parse_coeffs(e))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(FamilyError::Invalid(format!(
                    "{}: element polynomials must be pairwise distinct",
                    j.id
                )));
            }
        }
        let n = parse_coeffs(&j.n)?;
        if n.is_zero() {
            return Err(FamilyError::Invalid(format!(
                "{}: n is identically zero",
                j.id
            )));
        }
        Ok(Family {
            id: j.id.clone(),
            param: j.param.clone(),
            elements,
            n,
            offset: j
                .offset
                .as_deref()
                .map(parse_rat)
                .transpose()?
                .unwrap_or_else(Rat::zero),
            excluded: j
                .excluded
                .iter()
                .map(|e| crate::arith::parse_int(e))
                .collect::<Result<_, _>>()?,
            claimed_ratio: j.claimed_ratio.as_deref().map(parse_rat).transpose()?,
            requires_nonsquare_n: j.requires_nonsquare_n,
        })
    }
}

/// Whether a family's `n` polynomial is itself a square in ℚ\[x\].
pub fn n_poly_is_square(f: &Family) -> bool {
    f.n.sqrt().is_some() && f.n.leading().is_some_and(Signed::is_positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_from_ints, rat_int};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn tuple(e: &[i64], n: i64) -> Tuple {
        Tuple::new(ints(e), n.into()).unwrap()
    }

    #[test]
    fn registry_has_thirteen_distinct_ids() {
        let ids: Vec<_> = registry().iter().map(|f| f.id.as_str()).collect();
        assert_eq!(ids.len(), 13);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 13);
    }

    #[test]
    fn lookup_examples() {
        let f = lookup("sec2_main").unwrap();
        assert_eq!(f.n, Poly::parse("-64k^2+16k+16", "k").unwrap());
        let f = lookup("abba_1").unwrap();
        assert_eq!(f.elements.len(), 4);
        assert_eq!(f.n.degree(), Some(4));
        assert_eq!(lookup("nope"), Err(FamilyError::UnknownId("nope".into())));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            family_eval("sec2_main", &2.into()).unwrap(),
            tuple(&[1, 2912, 131977, 174097], -208)
        );
        assert_eq!(
            family_eval("sec2_main", &3.into()).unwrap(),
            tuple(&[1, 16896, 1980161, 2362881], -512)
        );
        assert_eq!(
            family_eval("sec2_main", &4.into()).unwrap(),
            tuple(&[1, 56640, 12525465, 14266673], -944)
        );
        assert_eq!(
            family_eval("two_fifths", &3.into()).unwrap(),
            tuple(&[468, 335, -85, -448], 1312164)
        );
        let t = family_eval("two_fifths", &2.into()).unwrap();
        assert_eq!(t, tuple(&[64, 39, -21, -60], 8740));
        let mut sums: Vec<Int> = t
            .verify()
            .unwrap()
            .roots
            .iter()
            .map(|p| &p.r * &p.r)
            .collect();
        sums.sort();
        assert_eq!(sums, ints(&[4900, 6400, 7396, 7921, 10000, 11236]));
        assert!(matches!(
            family_eval("triple_A", &1.into()),
            Err(FamilyError::Excluded {
                reason: TupleError::ZeroElement(0),
                ..
            })
        ));
        assert_eq!(
            family_eval("d_4k3", &1.into()).unwrap(),
            tuple(&[1, 18, 29, 93], 7)
        );
    }

    #[test]
    fn proof_examples() {
        let p = family_prove("d_4k3").unwrap();
        assert_eq!(p.pairs[0].root, Poly::parse("3k+2", "k").unwrap());
        let p = family_prove("abba_1").unwrap();
        let root = &p.pairs.iter().find(|r| (r.i, r.j) == (0, 3)).unwrap().root;
        assert_eq!(*root, Poly::parse("u^2-2u+3", "u").unwrap());
        let p = family_prove("triple_A").unwrap();
        let root = &p.pairs.iter().find(|r| (r.i, r.j) == (1, 2)).unwrap().root;
        assert_eq!(*root, Poly::parse("4k^2+3", "k").unwrap());
    }

    #[test]
    fn every_family_certifies() {
        for f in registry() {
            let proof = f.prove().unwrap_or_else(|e| panic!("{e}"));
            assert!(proof.check(f), "{}", f.id);
        }
    }

    #[test]
    fn failing_certification_names_pair() {
        let mut f = lookup("d_4k3").unwrap().clone();
        f.n = Poly::parse("4k+5", "k").unwrap();
        assert_eq!(
            f.prove(),
            Err(FamilyError::CertificationFailed {
                id: "d_4k3".into(),
                i: 0,
                j: 1
            })
        );
    }

    #[test]
    fn zform_is_shift_of_main() {
        let main = lookup("sec2_main").unwrap();
        let z = lookup("sec2_zform").unwrap();
        let eighth = rat_from_ints(1, 8);
        for (m, zf) in main.elements.iter().zip(&z.elements) {
            assert_eq!(m.compose_linear(&Rat::one(), &eighth), *zf);
        }
        for k in -5..=5 {
            if k == 0 {
                continue;
            }
            let zval = rat_int(k) - &eighth;
            assert_eq!(z.eval_at(&zval).unwrap(), main.eval(&k.into()).unwrap());
            assert_eq!(z.eval(&k.into()).unwrap(), main.eval(&k.into()).unwrap());
        }
        assert!(matches!(
            z.eval_at(&rat_from_ints(1, 2)),
            Err(FamilyError::Inadmissible { .. })
        ));
        assert!(matches!(
            z.eval_at(&rat_int(1)),
            Err(FamilyError::Inadmissible { .. })
        ));
    }

    #[test]
    fn parity_audit() {
        let audit = family_parity_audit();
        assert_eq!(audit.zform.n, Parity::Even);
        assert_eq!(audit.zform.b, Parity::Even);
        assert_eq!(audit.zform.c_plus_d, Parity::Even);
        assert_eq!(audit.zform.d_minus_c, Parity::Odd);
        assert!(audit.zform.matches_expected());
        assert!(audit.zform_rederived);
        assert_eq!(audit.eq1_centered.n, Parity::Even);
    }

    #[test]
    fn divisibility_of_b_by_n() {
        let f = lookup("sec2_main").unwrap();
        for k in [-9i64, -3, -1, 1, 2, 3, 4, 7, 12] {
            let t = f.eval(&k.into()).unwrap();
            let b: Int = f.elements[1].eval(&rat_int(k)).to_integer();
            assert!((&b % t.n()).is_zero(), "k={k}");
            assert_eq!(b / t.n(), Int::from(-k * (4 * k - 1)));
        }
    }

    #[test]
    fn ratio_limits() {
        let params = ints(&[10, 100, 1000]);
        let s = family_ratio_limit("sec2_main", &params).unwrap();
        let lr: Vec<f64> = s.points.iter().map(|p| p.log_ratio.unwrap()).collect();
        assert!(lr[0] < lr[1] && lr[1] < lr[2] && lr[2] < 3.0);
        let last = s.points[2].d_over_n3;
        assert!((last - 1.0 / 64.0).abs() < 0.05 / 64.0);
        let s = family_ratio_limit("two_fifths", &params).unwrap();
        let lr: Vec<f64> = s.points.iter().map(|p| p.log_ratio.unwrap()).collect();
        assert!(lr[0] > lr[1] && lr[1] > lr[2] && lr[2] > 0.4);
        let s = family_ratio_limit("triple_A", &ints(&[0, 1, 2])).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.skipped.len(), 2);
    }

    #[test]
    fn only_square_n_families_have_square_n() {
        for f in registry() {
            assert_eq!(n_poly_is_square(f), !f.requires_nonsquare_n, "{}", f.id);
        }
    }

    #[test]
    fn json_round_trip() {
        for f in registry() {
            let j = f.to_json();
            let text = serde_json::to_string(&j).unwrap();
            let back: FamilyJson = serde_json::from_str(&text).unwrap();
            assert_eq!(Family::from_json(&back).unwrap(), *f);
        }
        let j = lookup("sec2_zform").unwrap().to_json();
        assert_eq!(j.offset.as_deref(), Some("-1/8"));
        assert_eq!(j.elements[1], vec!["17/16", "0", "-72", "0", "256"]);
    }

    #[test]
    fn json_import_rejects_bad_input() {
        let mut j = lookup("d_4k3").unwrap().to_json();
        j.elements[2] = j.elements[1].clone();
        assert!(matches!(
            Family::from_json(&j),
            Err(FamilyError::Invalid(_))
        ));
        let mut j = lookup("d_4k3").unwrap().to_json();
        j.n = vec!["x".into()];
        assert!(matches!(Family::from_json(&j), Err(FamilyError::Arith(_))));
        let mut j = lookup("d_4k3").unwrap().to_json();
        j.excluded = vec!["5".into()];
        let f = Family::from_json(&j).unwrap();
        assert!(matches!(
            f.eval(&5.into()),
            Err(FamilyError::ExplicitlyExcluded { .. })
        ));
        assert!(f.eval(&4.into()).is_ok());
    }
}
