//! JSON and CSV renderings. Every integer crosses the boundary as a decimal
//! string and every rational as `"num/den"`.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_int, parse_rat, Int, Rat};
use crate::constructions::{ChainState32, RationalTuple, Witness};
use crate::families::{FamilyProof, ParityReport};
use crate::search::SearchRecord;
use crate::tuples::{round_sig15, Certificate, Metrics, PairRoot, Tuple, VerifyFailure};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub max_abs: String,
    pub log_ratio: Option<f64>,
    pub d_over_n2: f64,
}

impl From<&Metrics> for MetricsRecord {
    fn from(m: &Metrics) -> Self {
        MetricsRecord {
            max_abs: m.max_abs.to_string(),
            log_ratio: m.log_ratio.map(round_sig15),
            d_over_n2: round_sig15(m.d_over_n2),
        }
    }
}

/// `{"n", "elements", "roots": [["i", "j", "r"], ...], "metrics"}`; search
/// output adds `regular_triples`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub n: String,
    pub elements: Vec<String>,
    pub roots: Vec<[String; 3]>,
    pub metrics: MetricsRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_triples: Option<Vec<[usize; 3]>>,
}

impl TupleRecord {
    pub fn new(t: &Tuple, cert: &Certificate) -> Self {
        TupleRecord {
            n: t.n().to_string(),
            elements: t.elements().iter().map(Int::to_string).collect(),
            roots: cert
                .roots
                .iter()
                .map(|p| [p.i.to_string(), p.j.to_string(), p.r.to_string()])
                .collect(),
            metrics: (&t.metrics()).into(),
            regular_triples: None,
        }
    }

    pub fn from_search(r: &SearchRecord) -> Self {
        TupleRecord {
            regular_triples: Some(r.regular_triples.clone()),
            ..Self::new(&r.tuple, &r.certificate)
        }
    }

    /// Parses back and re-verifies; the stored roots must match.
    pub fn to_tuple(&self) -> Result<(Tuple, Certificate), String> {
        let elements = self
            .elements
            .iter()
            .map(|e| parse_int(e))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let n = parse_int(&self.n).map_err(|e| e.to_string())?;
        let t = Tuple::new(elements, n).map_err(|e| e.to_string())?;
        let roots = self
            .roots
            .iter()
            .map(|[i, j, r]| {
                Ok(PairRoot {
                    i: i.parse().map_err(|_| format!("bad index {i:?}"))?,
                    j: j.parse().map_err(|_| format!("bad index {j:?}"))?,
                    r: parse_int(r).map_err(|e| e.to_string())?,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        let cert = Certificate { roots };
        if !cert.check(t.elements(), t.n()) {
            return Err("certificate does not match the tuple".into());
        }
        Ok((t, cert))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub valid: bool,
    pub kind: String,
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl From<&VerifyFailure> for FailureRecord {
    fn from(f: &VerifyFailure) -> Self {
        match f {
            VerifyFailure::Structural(e) => FailureRecord {
                valid: false,
                kind: "structural".into(),
                error: e.to_string(),
                pair: None,
                value: None,
            },
            VerifyFailure::NotSquare { i, j, value, .. } => FailureRecord {
                valid: false,
                kind: "not_square".into(),
                error: f.to_string(),
                pair: Some((*i, *j)),
                value: Some(value.to_string()),
            },
        }
    }
}

pub const CSV_HEADER: [&str; 6] = [
    "n",
    "elements",
    "max_abs",
    "d_over_n2",
    "log_ratio",
    "regular_triple_count",
];

pub fn csv_row(r: &SearchRecord) -> [String; 6] {
    let m = MetricsRecord::from(&r.metrics);
    [
        r.tuple.n().to_string(),
        r.tuple
            .elements()
            .iter()
            .map(Int::to_string)
            .collect::<Vec<_>>()
            .join(","),
        m.max_abs,
        m.d_over_n2.to_string(),
        m.log_ratio.map(|x| x.to_string()).unwrap_or_default(),
        r.regular_triples.len().to_string(),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofPairRecord {
    pub i: usize,
    pub j: usize,
    pub root_coeffs: Vec<String>,
}

/// `{"id", "pairs": [{"i", "j", "root_coeffs"}]}`, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofRecord {
    pub id: String,
    pub pairs: Vec<ProofPairRecord>,
}

impl From<&FamilyProof> for ProofRecord {
    fn from(p: &FamilyProof) -> Self {
        ProofRecord {
            id: p.id.clone(),
            pairs: p
                .pairs
                .iter()
                .map(|q| ProofPairRecord {
                    i: q.i,
                    j: q.j,
                    root_coeffs: q.root.coeffs().iter().map(Rat::to_string).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParityRecord {
    pub id: String,
    pub n: String,
    pub b: String,
    pub c_plus_d: String,
    pub d_minus_c: String,
}

impl From<&ParityReport> for ParityRecord {
    fn from(p: &ParityReport) -> Self {
        let s = |x| format!("{x:?}").to_lowercase();
        ParityRecord {
            id: p.id.clone(),
            n: s(p.n),
            b: s(p.b),
            c_plus_d: s(p.c_plus_d),
            d_minus_c: s(p.d_minus_c),
        }
    }
}

/// A rational tuple with its rational roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub n: String,
    pub elements: Vec<String>,
    pub roots: Vec<[String; 3]>,
}

impl RationalRecord {
    pub fn new(rt: &RationalTuple, roots: &[(usize, usize, Rat)]) -> Self {
        RationalRecord {
            n: rt.n.to_string(),
            elements: rt.elements.iter().map(Rat::to_string).collect(),
            roots: roots
                .iter()
                .map(|(i, j, r)| [i.to_string(), j.to_string(), r.to_string()])
                .collect(),
        }
    }

    pub fn to_rational(&self) -> Result<RationalTuple, String> {
        let elements = self
            .elements
            .iter()
            .map(|e| parse_rat(e))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let n = parse_rat(&self.n).map_err(|e| e.to_string())?;
        RationalTuple::new(elements, n).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chain32StateRecord {
    pub b: String,
    pub s: String,
    pub t: String,
    pub r: String,
    pub x: String,
    pub y: String,
}

impl From<&ChainState32> for Chain32StateRecord {
    fn from(s: &ChainState32) -> Self {
        Chain32StateRecord {
            b: s.b.to_string(),
            s: s.s.to_string(),
            t: s.t.to_string(),
            r: s.r.to_string(),
            x: s.x.to_string(),
            y: s.y.to_string(),
        }
    }
}

/// `{"delta", "epsilon", "family", "l1", "l2", "y", "n", "elements", "achieved_ratio"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub delta: String,
    pub epsilon: f64,
    pub family: String,
    pub l1: u32,
    pub l2: u32,
    pub y: String,
    pub n: String,
    pub elements: Vec<String>,
    pub achieved_ratio: f64,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        WitnessRecord {
            delta: w.plan.target_delta.to_string(),
            epsilon: w.plan.epsilon,
            family: w.plan.family_id.clone(),
            l1: w.plan.l1,
            l2: w.plan.l2,
            y: w.y.to_string(),
            n: w.tuple.n().to_string(),
            elements: w.tuple.elements().iter().map(Int::to_string).collect(),
            achieved_ratio: round_sig15(w.achieved_ratio),
        }
    }
}
