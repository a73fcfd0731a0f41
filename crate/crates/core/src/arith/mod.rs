//! Exact arithmetic kernel: big integers, rationals, and dense polynomials
//! over ℚ, each with a perfect-square decision procedure.

mod int;
mod poly;
mod rat;

use thiserror::Error;

pub use int::{integer_sqrt, is_perfect_square, isqrt_u128, sqrt_exact_i128};
pub use poly::{Parity, Poly};
pub use rat::{
    is_rat_square, ln_abs, parse_decimal, parse_int, parse_rat, rat_from_ints, rat_int, rat_sqrt,
    ratio_f64, to_int,
};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("parse error: {0}")]
    Parse(String),
}
