//! Exact tools for D(n)-m-tuples: sets of nonzero integers in which every
//! pairwise product plus `n` is a perfect square.
//!
//! - [`tuples`] verifies tuples and produces root certificates.
//! - [`search`] enumerates quadruples up to a bound.
//! - [`families`] holds parametric families and certifies them symbolically.
//! - [`constructions`] builds rational quadruples and ratio witnesses.
//! - [`cli`] is the `dquad` command line.

#![allow(clippy::result_large_err)]

pub mod arith;
pub mod cli;
pub mod constructions;
pub mod families;
pub mod search;
pub mod tuples;
