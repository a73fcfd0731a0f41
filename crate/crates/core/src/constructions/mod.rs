//! The two construction chains for small-element quadruples, denominator
//! clearing, and the growth-ratio witness generator.

mod quartic;
mod rational;
mod witness;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{rat_sqrt, to_int, Int, Rat};
use crate::families::FamilyError;
use crate::tuples::{Tuple, TupleError, VerifyFailure};

pub use quartic::{chain_920, on_curve, p1, p2, quartic_eval, t_from_double_p2, QuarticPoint};
pub use rational::{chain_32, eqbs_residual, specialize_32, ChainState32, SPECIALIZATION};
pub use witness::{execute_witness, plan_witness, Witness, WitnessPlan, Y_BASE_CAP_BITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("degenerate at stage {stage}: {detail}")]
    Degenerate { stage: &'static str, detail: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("rational tuple is not a D(n)-tuple: pair ({i}, {j}) gives {value}")]
    NotSquare { i: usize, j: usize, value: Rat },
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Verify(#[from] VerifyFailure),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("delta {0} outside [2/5, 3]")]
    DeltaOutOfRange(Rat),
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("no schedule within epsilon/2 of {delta} (best error {best})")]
    ScheduleUnreachable { delta: Rat, best: f64 },
    #[error("y_base exceeded 2^{Y_BASE_CAP_BITS} without reaching the target")]
    CapReached,
}

pub(crate) fn degenerate(stage: &'static str, detail: impl Into<String>) -> ConstructionError {
    ConstructionError::Degenerate {
        stage,
        detail: detail.into(),
    }
}

/// A D(n)-tuple over ℚ: every `a_i * a_j + n` must be a rational square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTuple {
    pub n: Rat,
    pub elements: Vec<Rat>,
}

impl RationalTuple {
    pub fn new(elements: Vec<Rat>, n: Rat) -> Result<Self, TupleError> {
        if n.is_zero() {
            return Err(TupleError::ZeroN);
        }
        if let Some(i) = elements.iter().position(Zero::is_zero) {
            return Err(TupleError::ZeroElement(i));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(TupleError::Duplicate(e.numer().clone()));
            }
        }
        Ok(RationalTuple { n, elements })
    }

    /// Rational roots for each pair, in lexicographic pair order.
    pub fn verify(&self) -> Result<Vec<(usize, usize, Rat)>, ConstructionError> {
        let mut roots = Vec::new();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let value = &self.elements[i] * &self.elements[j] + &self.n;
                match rat_sqrt(&value) {
                    Some(r) => roots.push((i, j, r)),
                    None => return Err(ConstructionError::NotSquare { i, j, value }),
                }
            }
        }
        Ok(roots)
    }
}

/// Smallest `k > 0` with `g | k^2`.
fn square_cover(g: &Int) -> Int {
    let mut rest = g.abs();
    let mut k = Int::one();
    let mut p = Int::from(2);
    while &p * &p <= rest && p < Int::from(2_000_000u32) {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        k *= p.pow(e.div_ceil(2));
        p += if p == Int::from(2) { 1 } else { 2 };
    }
    if rest.is_one() {
        return k;
    }
    // rest is 1, a prime, or has only large factors: a square cofactor
    // contributes its root, anything else is taken whole.
    match crate::arith::integer_sqrt(&rest) {
        Some(s) => k * s,
        None => k * rest,
    }
}

/// Scales a rational D(n)-tuple by the smallest `l > 0` that makes every
/// element and `n * l^2` integral; the result is verified.
pub fn clear_denominators(rt: &RationalTuple) -> Result<(Tuple, Int), ConstructionError> {
    let mut l = rt
        .elements
        .iter()
        .fold(Int::one(), |acc, e| acc.lcm(e.denom()));
    let n_den = rt.n.denom();
    let need = n_den / n_den.gcd(&(&l * &l));
    l *= square_cover(&need);
    let lr = Rat::from_integer(l.clone());
    let elements = rt
        .elements
        .iter()
        .map(|e| to_int(&(e * &lr)).expect("l clears element denominators"))
        .collect();
    let n = to_int(&(&rt.n * &lr * &lr)).expect("l^2 clears the denominator of n");
    let tuple = Tuple::new(elements, n)?;
    tuple.verify()?;
    Ok((tuple, l))
}
