use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::int::integer_sqrt;
use super::{ArithError, Int, Rat};

/// Square root in ℚ: `r >= 0` with `r * r == q`, if one exists.
///
/// A reduced fraction is a rational square exactly when its numerator and
/// denominator are both integer squares.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    let num = integer_sqrt(q.numer())?;
    let den = integer_sqrt(q.denom())?;
    Some(Rat::new(num, den))
}

pub fn is_rat_square(q: &Rat) -> bool {
    rat_sqrt(q).is_some()
}

/// The value as an integer, if its denominator is one.
pub fn to_int(q: &Rat) -> Option<Int> {
    q.is_integer().then(|| q.numer().clone())
}

/// Parses `"-17/16"`, `"5"` or `"+3"`.
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let bad = || ArithError::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Like [`parse_rat`], but also accepts decimal notation such as `"0.45"`.
pub fn parse_decimal(s: &str) -> Result<Rat, ArithError> {
    let t = s.trim();
    let Some((whole, frac)) = t.split_once('.') else {
        return parse_rat(t);
    };
    let bad = || ArithError::Parse(format!("not a decimal number: {s:?}"));
    if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = whole.starts_with('-');
    let whole = whole.trim_start_matches(['-', '+']);
    let whole = if whole.is_empty() { "0" } else { whole };
    if !whole.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = BigInt::from_str(&format!("{whole}{frac}")).map_err(|_| bad())?;
    let q = Rat::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if negative { -q } else { q })
}

pub fn parse_int(s: &str) -> Result<Int, ArithError> {
    BigInt::from_str(s.trim()).map_err(|_| ArithError::Parse(format!("not an integer: {s:?}")))
}

/// Natural logarithm of `|n|`, valid for integers far beyond the f64 range.
pub fn ln_abs(n: &Int) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `num / den` as an f64, without overflowing intermediate conversions.
pub fn ratio_f64(num: &Int, den: &Int) -> f64 {
    let (nb, db) = (num.bits() as i64, den.bits() as i64);
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (num >> ns as u64).to_f64().expect("64 bits");
    let d = (den >> ds as u64).to_f64().expect("64 bits");
    (n / d) * 2f64.powi((ns - ds) as i32)
}

pub fn rat_from_ints(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
