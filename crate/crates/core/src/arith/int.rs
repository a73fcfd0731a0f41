//! Integer square roots and perfect-square tests.
//!
//! Every test runs a residue prefilter first: an integer that is not a square
//! modulo 64, 63, 65 or 11 cannot be a square. The filter never changes an
//! answer, it only skips the exact root for most non-squares.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use super::Int;

const fn residue_mask(m: u64) -> u128 {
    let mut mask = 0u128;
    let mut r = 0;
    while r < m {
        mask |= 1u128 << ((r * r) % m);
        r += 1;
    }
    mask
}

const SQ64: u128 = residue_mask(64);
const SQ63: u128 = residue_mask(63);
const SQ65: u128 = residue_mask(65);
const SQ11: u128 = residue_mask(11);

#[inline]
fn passes_residues(mod64: u64, mod45045: u64) -> bool {
    SQ64 >> mod64 & 1 == 1
        && SQ63 >> (mod45045 % 63) & 1 == 1
        && SQ65 >> (mod45045 % 65) & 1 == 1
        && SQ11 >> (mod45045 % 11) & 1 == 1
}

/// Floor of the square root of a `u128`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // f64 guess is within a few ulps; fix it up exactly.
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Exact root of a machine-size integer if it is a perfect square.
#[inline]
pub fn sqrt_exact_i128(n: i128) -> Option<u128> {
    if n < 0 {
        return None;
    }
    let u = n as u128;
    if !passes_residues((u & 63) as u64, (u % 45045) as u64) {
        return None;
    }
    let r = isqrt_u128(u);
    (r * r == u).then_some(r)
}

/// Returns `r >= 0` with `r * r == n`, or `None` when `n` is not a perfect square.
pub fn integer_sqrt(n: &Int) -> Option<Int> {
    match n.sign() {
        Sign::Minus => return None,
        Sign::NoSign => return Some(BigInt::zero()),
        Sign::Plus => {}
    }
    if let Some(small) = n.to_i128() {
        return sqrt_exact_i128(small).map(BigInt::from);
    }
    let (_, digits) = n.to_u64_digits();
    let low = digits[0] & 63;
    let m = (n % 45045u32).to_u64().expect("residue fits");
    if !passes_residues(low, m) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Zero counts as a perfect square.
pub fn is_perfect_square(n: &Int) -> bool {
    integer_sqrt(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(integer_sqrt(&25.into()), Some(5.into()));
        assert_eq!(integer_sqrt(&26.into()), None);
        assert_eq!(integer_sqrt(&0.into()), Some(0.into()));
        assert!(is_perfect_square(&0.into()));
        assert!(!is_perfect_square(&(-4).into()));
    }

    #[test]
    fn motivating_quadruple_pair() {
        // 468 * 335 + 1312164
        let v = BigInt::from(468 * 335 + 1312164);
        assert_eq!(v, BigInt::from(1468944));
        assert_eq!(integer_sqrt(&v), Some(1212.into()));
        assert_eq!(1212 * 1212, 1468944);
        // 64 * 39 + 8740
        assert!(is_perfect_square(&BigInt::from(64 * 39 + 8740)));
        assert_eq!(64 * 39 + 8740, 106 * 106);
    }

    #[test]
    fn isqrt_u128_edges() {
        assert_eq!(isqrt_u128(u128::MAX), (1u128 << 64) - 1);
        assert_eq!(isqrt_u128(3), 1);
        assert_eq!(isqrt_u128(4), 2);
        let r = 0xFFFF_FFFF_FFFF_FFFFu128;
        assert_eq!(isqrt_u128(r * r), r);
        assert_eq!(isqrt_u128(r * r - 1), r - 1);
    }

    #[test]
    fn huge_squares() {
        let r = BigInt::from(10).pow(150) + 7;
        let sq = &r * &r;
        assert_eq!(integer_sqrt(&sq), Some(r));
        assert_eq!(integer_sqrt(&(sq + 1)), None);
    }

    #[test]
    fn prefilter_accepts_every_square_residue() {
        for r in 0u64..5000 {
            let sq = r * r;
            assert!(passes_residues(sq & 63, sq % 45045), "{r}");
        }
    }

    proptest! {
        #[test]
        fn root_is_floor_and_consistent(n in 0u64..u64::MAX) {
            let big = BigInt::from(n);
            let floor = big.sqrt();
            let exact = integer_sqrt(&big);
            prop_assert_eq!(exact.is_some(), &floor * &floor == big);
            prop_assert_eq!(exact.is_some(), is_perfect_square(&big));
            if let Some(r) = exact {
                prop_assert_eq!(&r * &r, big.clone());
                let next = &r + 1u32;
                prop_assert!(&next * &next > big);
            }
        }

        #[test]
        fn big_squares_detected(r in any::<u128>(), bump in 1u32..1000) {
            let r = BigInt::from(r) * 1_000_003u32;
            let sq = &r * &r;
            prop_assert_eq!(integer_sqrt(&sq), Some(r.clone()));
            let off = &sq + bump;
            prop_assert_eq!(integer_sqrt(&off).is_some(), {
                let f = off.sqrt();
                &f * &f == off
            });
        }

        #[test]
        fn i128_fast_path_matches_bigint(n in any::<i64>()) {
            let n = n as i128 * 3;
            prop_assert_eq!(
                sqrt_exact_i128(n).map(BigInt::from),
                integer_sqrt(&BigInt::from(n))
            );
        }
    }
}
