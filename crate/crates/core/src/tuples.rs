//! D(n)-tuples: construction, verification with square-root certificates,
//! regular triples, scaling and size metrics.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{integer_sqrt, ln_abs, ratio_f64, Int};

pub const MIN_SIZE: usize = 2;
pub const MAX_SIZE: usize = 6;

/// Structural defects, reported separately from failed square conditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TupleError {
    #[error("n must be nonzero")]
    ZeroN,
    #[error("element {0} is zero")]
    ZeroElement(usize),
    #[error("value {0} appears more than once")]
    Duplicate(Int),
    #[error("tuple size {0} outside {MIN_SIZE}..={MAX_SIZE}")]
    Size(usize),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Int),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    #[error(transparent)]
    Structural(#[from] TupleError),
    #[error("pair ({a}, {b}): {a}*{b} + n = {value} is not a perfect square")]
    NotSquare {
        i: usize,
        j: usize,
        a: Int,
        b: Int,
        value: Int,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TripleError {
    #[error("not a D(n)-triple: {0}")]
    NotATriple(#[from] VerifyFailure),
}

/// A D(n)-m-tuple candidate: nonzero `n` and distinct nonzero elements kept
/// in ascending order. Square conditions are not implied; see [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    n: Int,
    elements: Vec<Int>,
}

impl Tuple {
    pub fn new(mut elements: Vec<Int>, n: Int) -> Result<Self, TupleError> {
        check_structure(&elements, &n)?;
        elements.sort();
        Ok(Tuple { n, elements })
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    pub fn elements(&self) -> &[Int] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn verify(&self) -> Result<Certificate, VerifyFailure> {
        verify(&self.elements, &self.n)
    }

    /// `{-a_i}` has the same property for the same `n`.
    pub fn negate(&self) -> Tuple {
        let mut elements: Vec<Int> = self.elements.iter().map(|e| -e).collect();
        elements.sort();
        Tuple {
            n: self.n.clone(),
            elements,
        }
    }

    /// Multiplies every element by `l`; `n` becomes `n * l^2`.
    pub fn scale(&self, l: &Int) -> Result<Tuple, TupleError> {
        if !l.is_positive() {
            return Err(TupleError::NonPositiveScale(l.clone()));
        }
        Ok(Tuple {
            n: &self.n * l * l,
            elements: self.elements.iter().map(|e| e * l).collect(),
        })
    }

    pub fn max_abs(&self) -> Int {
        self.elements
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(Int::zero)
    }

    pub fn metrics(&self) -> Metrics {
        Metrics::of(self)
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}} with n = {}", self.n)
    }
}

fn check_structure(elements: &[Int], n: &Int) -> Result<(), TupleError> {
    if n.is_zero() {
        return Err(TupleError::ZeroN);
    }
    if !(MIN_SIZE..=MAX_SIZE).contains(&elements.len()) {
        return Err(TupleError::Size(elements.len()));
    }
    if let Some(i) = elements.iter().position(Zero::is_zero) {
        return Err(TupleError::ZeroElement(i));
    }
    for (i, a) in elements.iter().enumerate() {
        if elements[..i].contains(a) {
            return Err(TupleError::Duplicate(a.clone()));
        }
    }
    Ok(())
}

/// One pairwise witness: `r * r == a_i * a_j + n`, `r >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRoot {
    pub i: usize,
    pub j: usize,
    pub r: Int,
}

/// Square roots for every unordered pair, in lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Certificate {
    pub roots: Vec<PairRoot>,
}

impl Certificate {
    pub fn root(&self, i: usize, j: usize) -> Option<&Int> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.roots
            .iter()
            .find(|p| p.i == i && p.j == j)
            .map(|p| &p.r)
    }

    /// Rechecks every root against the elements independently.
    pub fn check(&self, elements: &[Int], n: &Int) -> bool {
        let m = elements.len();
        self.roots.len() == m * (m - 1) / 2
            && self.roots.iter().all(|p| {
                p.i < p.j
                    && p.j < m
                    && !p.r.is_negative()
                    && &p.r * &p.r == &elements[p.i] * &elements[p.j] + n
            })
    }

    pub fn scale(&self, l: &Int) -> Certificate {
        Certificate {
            roots: self
                .roots
                .iter()
                .map(|p| PairRoot {
                    i: p.i,
                    j: p.j,
                    r: &p.r * l,
                })
                .collect(),
        }
    }
}

/// Checks the D(n) property for `elements` in the order given; certificate
/// indices refer to that order.
pub fn verify(elements: &[Int], n: &Int) -> Result<Certificate, VerifyFailure> {
    check_structure(elements, n)?;
    let mut roots = Vec::with_capacity(elements.len() * (elements.len() - 1) / 2);
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            let value = &elements[i] * &elements[j] + n;
            match integer_sqrt(&value) {
                Some(r) => roots.push(PairRoot { i, j, r }),
                None => {
                    return Err(VerifyFailure::NotSquare {
                        i,
                        j,
                        a: elements[i].clone(),
                        b: elements[j].clone(),
                        value,
                    })
                }
            }
        }
    }
    Ok(Certificate { roots })
}

/// Builds the canonical (sorted) tuple and its certificate in one step.
pub fn verified(elements: Vec<Int>, n: Int) -> Result<(Tuple, Certificate), VerifyFailure> {
    let tuple = Tuple::new(elements, n)?;
    let cert = tuple.verify()?;
    Ok((tuple, cert))
}

/// `(b + c - d)^2 == 4(bc + n)`.
///
/// The left side minus `4bc` is symmetric in `b, c, d`, so the role of `d`
/// does not matter.
pub fn regular_identity(b: &Int, c: &Int, d: &Int, n: &Int) -> bool {
    let s = b + c - d;
    &s * &s == (b * c + n) * 4
}

pub fn is_regular_triple(b: &Int, c: &Int, d: &Int, n: &Int) -> Result<bool, TripleError> {
    verify(&[b.clone(), c.clone(), d.clone()], n)?;
    Ok(regular_identity(b, c, d, n))
}

/// All index triples `i < j < k` of a verified tuple that are regular.
pub fn regular_triples(t: &Tuple) -> Vec<[usize; 3]> {
    let e = t.elements();
    let mut out = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            for k in (j + 1)..e.len() {
                if regular_identity(&e[i], &e[j], &e[k], t.n()) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Size of a tuple relative to `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metrics {
    pub max_abs: Int,
    /// `ln(max|a_i|) / ln|n|`; absent when `|n| = 1`.
    pub log_ratio: Option<f64>,
    pub d_over_n2: f64,
}

impl Metrics {
    pub fn of(t: &Tuple) -> Metrics {
        let max_abs = t.max_abs();
        let n_abs = t.n().abs();
        let log_ratio = (!n_abs.is_one()).then(|| ln_abs(&max_abs) / ln_abs(&n_abs));
        let d_over_n2 = ratio_f64(&max_abs, &(&n_abs * &n_abs));
        Metrics {
            max_abs,
            log_ratio,
            d_over_n2,
        }
    }

    /// `max|a_i| / |n|^3`.
    pub fn d_over_n3(t: &Tuple) -> f64 {
        let n_abs = t.n().abs();
        ratio_f64(&t.max_abs(), &(&n_abs * &n_abs * &n_abs))
    }
}

/// Rounds to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float")
}
