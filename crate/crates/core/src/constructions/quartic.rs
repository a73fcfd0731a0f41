//! The {a, -a, b, -b} chain: a point on the quartic
//! `s^2 = (v^2+2)t^4 + (4v^2-4)t^3 + (8v^4+2)t^2 + (16v^4-8v^2)t + 16v^6-16v^4+4v^2`
//! gives `t`, then `u = t(t-1)/v`, then `a`, `b`, `r` and `n = a^2 + r^2`.
//!
//! The `t` coming from doubling `P2` is used in closed form and checked to be
//! on the curve; no elliptic-curve arithmetic happens here.

use num_traits::Zero;

use super::{degenerate, ConstructionError, RationalTuple};
use crate::arith::{is_rat_square, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticPoint {
    pub t: Rat,
    pub s: Rat,
}

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn quartic_eval(v: &Rat, t: &Rat) -> Rat {
    let v2 = v * v;
    let v4 = &v2 * &v2;
    let v6 = &v4 * &v2;
    let coeffs = [
        &v6 * r(16) - &v4 * r(16) + &v2 * r(4),
        &v4 * r(16) - &v2 * r(8),
        &v4 * r(8) + r(2),
        &v2 * r(4) - r(4),
        &v2 + r(2),
    ];
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
}

pub fn on_curve(v: &Rat, p: &QuarticPoint) -> bool {
    &p.s * &p.s == quartic_eval(v, &p.t)
}

/// `P1 = (0, -2v(2v^2 - 1))`.
pub fn p1(v: &Rat) -> QuarticPoint {
    QuarticPoint {
        t: Rat::zero(),
        s: -(v * r(2)) * (v * v * r(2) - r(1)),
    }
}

/// `P2 = (-4(v-1)v/(2v+1), -2v(16v^4-16v^3+14v^2-8v+3)/(2v+1)^2)`; `None` at `v = -1/2`.
pub fn p2(v: &Rat) -> Option<QuarticPoint> {
    let den = v * r(2) + r(1);
    if den.is_zero() {
        return None;
    }
    let v2 = v * v;
    let poly = &v2 * &v2 * r(16) - &v2 * v * r(16) + &v2 * r(14) - v * r(8) + r(3);
    Some(QuarticPoint {
        t: -(v - r(1)) * v * r(4) / &den,
        s: -(v * r(2)) * poly / (&den * &den),
    })
}

/// `t = -8v(16v^4-16v^3-2v^2+8v-3) / (32v^3-56v^2+20v+1)`.
pub fn t_from_double_p2(v: &Rat) -> Result<Rat, ConstructionError> {
    let v2 = v * v;
    let den = &v2 * v * r(32) - &v2 * r(56) + v * r(20) + r(1);
    if den.is_zero() {
        return Err(degenerate(
            "t",
            format!("32v^3-56v^2+20v+1 vanishes at v = {v}"),
        ));
    }
    let num = -(v * r(8)) * (&v2 * &v2 * r(16) - &v2 * v * r(16) - &v2 * r(2) + v * r(8) - r(3));
    Ok(num / den)
}

/// Runs the chain at `v` and returns `{a, -a, b, -b}` with its rational `n`.
pub fn chain_920(v: &Rat) -> Result<RationalTuple, ConstructionError> {
    let t = t_from_double_p2(v)?;
    if !is_rat_square(&quartic_eval(v, &t)) {
        return Err(ConstructionError::Internal(format!(
            "t = {t} is not on the quartic at v = {v}"
        )));
    }
    if v.is_zero() {
        return Err(degenerate("u", "v = 0"));
    }
    let u = &t * (&t - r(1)) / v;
    if u.is_zero() {
        return Err(degenerate("u", format!("u = 0 (t = {t})")));
    }
    let t_minus_2 = &t - r(2);
    if t_minus_2.is_zero() {
        return Err(degenerate("a/b", "t = 2"));
    }
    let den = &u * &t_minus_2 * r(2);
    let u2 = &u * &u;
    let a = -(&t * &t * r(4) - &t * r(4) + &u2) / &den;
    let b = -(&t * r(4) - &t * &t * r(8) + &t * &t * &t * r(4) + &u2) / &den;
    let rr = (&a * &b - &a * &a + r(1)) / r(2);
    let n = &a * &a + &rr * &rr;
    let elements = vec![a.clone(), -a, b.clone(), -b];
    RationalTuple::new(elements, n).map_err(|e| degenerate("elements", e.to_string()))
}
