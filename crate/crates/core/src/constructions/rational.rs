//! The rational chain for quadruples with `d^5 ~ 8n^2`.
//!
//! With `n = x^2 + y` and the five square conditions parametrised by
//! `s, r, t`, the sixth condition `ad + n = (x-r-s-t+1)^2` is a single
//! polynomial equation in `b, s, t, r`. Imposing `x - y = t/2` fixes
//! `t = (b^2 - s^2) / (2s^2)` and makes `r` rational.

use num_traits::{One, Zero};

use super::{clear_denominators, degenerate, ConstructionError, RationalTuple};
use crate::arith::{Int, Rat};
use crate::families::lookup;
use crate::tuples::Tuple;

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Intermediate values of one run of [`chain_32`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState32 {
    pub b: Rat,
    pub s: Rat,
    pub t: Rat,
    pub r: Rat,
    pub x: Rat,
    pub y: Rat,
}

/// Left-hand side of the sixth-condition equation; zero on solutions.
pub fn eqbs_residual(b: &Rat, s: &Rat, t: &Rat, r_: &Rat) -> Rat {
    // Term table: (coefficient, [deg b, deg s, deg t, deg r]).
    const TERMS: [(i64, [u32; 4]); 22] = [
        (-2, [2, 2, 2, 0]),
        (-1, [2, 1, 3, 0]),
        (1, [2, 1, 2, 0]),
        (-2, [2, 3, 0, 2]),
        (1, [4, 1, 0, 2]),
        (-1, [0, 5, 2, 0]),
        (1, [2, 3, 2, 0]),
        (1, [2, 2, 3, 0]),
        (-1, [2, 2, 1, 1]),
        (1, [0, 3, 4, 0]),
        (1, [4, 0, 1, 1]),
        (1, [0, 5, 0, 2]),
        (4, [2, 2, 2, 1]),
        (-1, [4, 0, 2, 1]),
        (-1, [4, 1, 1, 1]),
        (1, [2, 3, 1, 1]),
        (-1, [0, 3, 2, 2]),
        (-1, [4, 0, 1, 2]),
        (1, [2, 2, 1, 2]),
        (1, [2, 1, 3, 1]),
        (1, [2, 1, 2, 2]),
        (-2, [2, 1, 2, 1]),
    ];
    let pows = |x: &Rat| -> Vec<Rat> {
        let mut p = vec![Rat::one()];
        for i in 1..=5 {
            let next = &p[i - 1] * x;
            p.push(next);
        }
        p
    };
    let (pb, ps, pt, pr) = (pows(b), pows(s), pows(t), pows(r_));
    TERMS
        .iter()
        .fold(Rat::zero(), |acc, (c, [eb, es, et, er])| {
            acc + r(*c)
                * &pb[*eb as usize]
                * &ps[*es as usize]
                * &pt[*et as usize]
                * &pr[*er as usize]
        })
}

/// Runs the chain at `(b, s)`.
///
/// `a, c, d, n` are computed twice: along the chain (`t`, `r`, `x`, then the
/// square conditions) and from their closed forms in `b, s`. The two must
/// agree, the residual must vanish and `x - y` must equal `t / 2`.
pub fn chain_32(b: &Rat, s: &Rat) -> Result<(RationalTuple, ChainState32), ConstructionError> {
    if s.is_zero() {
        return Err(degenerate("s", "s = 0"));
    }
    if b.is_zero() {
        return Err(degenerate("b", "b = 0"));
    }
    let (b2, s2) = (b * b, s * s);
    let s3 = &s2 * s;
    let q = &b2 - &s3 * r(2) - &s2;
    if q.is_zero() {
        return Err(degenerate("r", "-2s^3 - s^2 + b^2 = 0"));
    }
    let t = (&b2 - &s2) / (&s2 * r(2));
    if t.is_zero() {
        return Err(degenerate("t", "t = 0 (b = ±s)"));
    }
    let b4 = &b2 * &b2;
    let s4 = &s2 * &s2;
    let s5 = &s4 * s;
    let rr = -(&b4 + &b2 * &s3 * r(2) - &s2 * &b2 * r(4) - &s5 * r(2) - &s4) / (&s2 * r(2) * &q);
    let x = (&b2 * &rr - &s2 * &rr + s * &t * &t) / (s * &t * r(2));

    // Along the chain.
    let a = s * (s + &x * r(2) - &rr) / b;
    let c = -(b * &rr) / s;
    let d = (&a * b - &x * s * r(4)) / b;
    let y = -(&a * b) + &x * s * r(2) + &s2;
    let n = &x * &x + &y;

    // Closed forms.
    let a_cf = -(b * (s - r(1)) * (&s3 * r(2) - &s2 * r(3) + &b2)) / (s * &q);
    let c_cf =
        b * (&b4 + &b2 * &s3 * r(2) - &s2 * &b2 * r(4) - &s5 * r(2) - &s4) / (&s3 * r(2) * &q);
    let d_cf = (&b2 + &s3 * r(2) + &s2) * (&b2 - s - &s2 * r(2)) / (b * &q);
    let b3 = &b2 * b;
    let f1 =
        &b3 * s * r(2) - &b3 + &b2 * s * r(3) - &s2 * &b2 * r(2) - &s2 * b * r(3) - b * &s3 * r(4)
            + &s3
            + b * &s4 * r(4)
            - &s5 * r(4);
    let f2 = &b3 * s * r(2) - &b3 - &b2 * s * r(3) + &s2 * &b2 * r(2)
        - &s2 * b * r(3)
        - b * &s3 * r(4)
        - &s3
        + b * &s4 * r(4)
        + &s5 * r(4);
    let n_cf = (b + s) * (b - s) * f1 * f2 / (&s4 * r(16) * &q * &q);

    if (&a, &c, &d, &n) != (&a_cf, &c_cf, &d_cf, &n_cf) {
        return Err(ConstructionError::Internal(format!(
            "chain and closed forms disagree at b = {b}, s = {s}"
        )));
    }
    let residual = eqbs_residual(b, s, &t, &rr);
    if !residual.is_zero() {
        return Err(ConstructionError::Internal(format!(
            "sixth-condition residual {residual} at b = {b}, s = {s}"
        )));
    }
    if &x - &y != &t / r(2) {
        return Err(ConstructionError::Internal("x - y != t/2".into()));
    }
    let tuple = RationalTuple::new(vec![a, b.clone(), c, d], n)
        .map_err(|e| degenerate("elements", e.to_string()))?;
    let state = ChainState32 {
        b: b.clone(),
        s: s.clone(),
        t,
        r: rr,
        x,
        y,
    };
    Ok((tuple, state))
}

/// `(s_3, s_2, s_1, s_0)` in `s = s_3 k^3 + s_2 k^2 + s_1 k + s_0`.
pub const SPECIALIZATION: [(i64, i64); 4] = [(1, 2), (1, 2), (-3, 2), (-1, 2)];

/// `k = 2v - 1`, `s(k)` from [`SPECIALIZATION`], `b = k s`; the chain output
/// with denominators cleared, cross-checked against the `two_fifths` family.
pub fn specialize_32(v: &Int) -> Result<Tuple, ConstructionError> {
    let family = lookup("two_fifths")?;
    let expected = family.eval(v)?;
    let k = Rat::from_integer(v * 2 - 1);
    let s = SPECIALIZATION.iter().fold(Rat::zero(), |acc, &(num, den)| {
        acc * &k + Rat::new(num.into(), den.into())
    });
    let b = &k * &s;
    let (rt, _) = chain_32(&b, &s)?;
    let (tuple, _) = clear_denominators(&rt)?;
    if tuple != expected && tuple.negate() != expected {
        return Err(ConstructionError::Internal(format!(
            "specialization at v = {v} gave {tuple}, family gives {expected}"
        )));
    }
    Ok(tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_from_ints, rat_int};

    #[test]
    fn residual_values() {
        let (b, s) = (rat_int(5), rat_int(2));
        let t = rat_from_ints(21, 8);
        assert!(eqbs_residual(&b, &s, &t, &rat_from_ints(-109, 8)).is_zero());
        assert_eq!(
            eqbs_residual(&b, &s, &t, &Rat::zero()),
            rat_from_ints(721035, 512)
        );
        let one = rat_int(1);
        assert_eq!(eqbs_residual(&one, &one, &one, &one), rat_int(2));
    }

    #[test]
    fn chain_at_5_2() {
        let (rt, st) = chain_32(&rat_int(5), &rat_int(2)).unwrap();
        assert_eq!(
            rt.elements,
            vec![
                rat_from_ints(-29, 2),
                rat_int(5),
                rat_from_ints(545, 16),
                rat_int(27)
            ]
        );
        assert_eq!(rt.n, rat_from_ints(165249, 256));
        let roots: Vec<Rat> = rt
            .verify()
            .unwrap()
            .into_iter()
            .map(|(_, _, r)| r)
            .collect();
        // ab, ac, ad, bc, bd, cd
        let want = [383, 197, 255, 457, 447, 633].map(|x| rat_from_ints(x, 16));
        assert_eq!(roots, want);
        assert_eq!(st.t, rat_from_ints(21, 8));
        assert_eq!(st.r, rat_from_ints(-109, 8));
        assert_eq!(st.x, rat_from_ints(-415, 16));
        assert_eq!(st.y, rat_from_ints(-109, 4));
        assert_eq!(&st.x - &st.y, rat_from_ints(21, 16));
    }

    #[test]
    fn chain_degeneracies() {
        let five = rat_int(5);
        match chain_32(&five, &five) {
            Err(ConstructionError::Degenerate { stage, .. }) => assert_eq!(stage, "t"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            chain_32(&five, &Rat::zero()),
            Err(ConstructionError::Degenerate { stage: "s", .. })
        ));
        // b^2 = 2s^3 + s^2 at s = 4: b^2 = 144
        assert!(matches!(
            chain_32(&rat_int(12), &rat_int(4)),
            Err(ConstructionError::Degenerate { stage: "r", .. })
        ));
    }

    #[test]
    fn specialization_reproduces_family() {
        let t = specialize_32(&3.into()).unwrap();
        let want: Vec<Int> = [-448, -85, 335, 468].iter().map(|&x| x.into()).collect();
        assert_eq!(t.elements(), &want[..]);
        assert_eq!(*t.n(), Int::from(1312164));
        let t = specialize_32(&2.into()).unwrap();
        let want: Vec<Int> = [-60, -21, 39, 64].iter().map(|&x| x.into()).collect();
        assert_eq!(t.elements(), &want[..]);
        assert!(matches!(
            specialize_32(&1.into()),
            Err(ConstructionError::Family(_))
        ));
    }
}
