//! Dense univariate polynomials over ℚ.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty coefficient list.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{parse_rat, rat_sqrt};
use super::{ArithError, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(Rat::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `p(alpha * x + beta)`.
    pub fn compose_linear(&self, alpha: &Rat, beta: &Rat) -> Poly {
        let inner = Poly::new(vec![beta.clone(), alpha.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        })
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn parity(&self) -> Parity {
        let reflected = self.reflect();
        if reflected == *self {
            Parity::Even
        } else if reflected == -self {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }

    /// Square root in ℚ\[x\], normalized to a nonnegative leading coefficient.
    ///
    /// The root is fixed coefficient by coefficient from the top and then
    /// squared back; any mismatch means `self` is not a square.
    pub fn sqrt(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let half = deg / 2;
        let top = rat_sqrt(self.leading()?)?;
        let twice_top = &top * Rat::from_integer(2.into());
        let mut root = vec![Rat::zero(); half + 1];
        root[half] = top;
        for k in (0..half).rev() {
            let mut acc = self.coeff(half + k);
            for i in (k + 1)..half {
                acc -= &root[i] * &root[half + k - i];
            }
            root[k] = acc / &twice_top;
        }
        let root = Poly::new(root);
        (&root * &root == *self).then_some(root)
    }

    /// Parses an expression in one variable, e.g. `"-4u(u-1)(u-2)"`,
    /// `"(u^2+9)(1+u^2)"` or `"256z^4-72z^2+17/16"`.
    ///
    /// Juxtaposition multiplies. `/` is only allowed with a constant divisor.
    pub fn parse(src: &str, var: &str) -> Result<Poly, ArithError> {
        let tokens = tokenize(src, var)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            src,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(p)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "x")
    }
}

impl Poly {
    /// Human-readable rendering with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a Poly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_in(f, self.1)
            }
        }
        D(self, var).to_string()
    }

    fn write_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str(var)?,
                _ => write!(f, "{var}^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, var: &str) -> Result<Vec<Tok>, ArithError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(parse_rat(&src[start..i])?));
            }
            _ if src[i..].starts_with(var) => {
                out.push(Tok::Var);
                i += var.len();
            }
            _ => {
                return Err(ArithError::Parse(format!(
                    "unexpected {c:?} at offset {i} in {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> ArithError {
        ArithError::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ArithError> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.product()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.product()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Poly, ArithError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.power()?;
            } else if self.eat(&Tok::Slash) {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.error("division by a non-constant or zero"));
                }
                acc = acc.scale(&(Rat::one() / d.coeff(0)));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Var | Tok::LParen)) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ArithError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.tokens.get(self.pos).cloned() {
                Some(Tok::Num(e)) if e.is_integer() => {
                    self.pos += 1;
                    let e: u32 = e
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.error("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ArithError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                Ok(Poly::constant(c))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("missing ')'"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{rat_from_ints, rat_int};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, "k").unwrap()
    }

    #[test]
    fn zero_is_empty() {
        assert!(Poly::new(vec![Rat::zero(), Rat::zero()])
            .coeffs()
            .is_empty());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::zero().sqrt(), Some(Poly::zero()));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("-64k^2+16k+16").eval(&rat_int(2)), rat_int(-208));
        let two_fifths_n = Poly::parse(
            "64v^10-128v^9-64v^8+240v^7-32v^6-136v^5+41v^4+22v^3-7v^2",
            "v",
        )
        .unwrap();
        assert_eq!(two_fifths_n.eval(&rat_int(3)), rat_int(1312164));
        let q = p("5k^3-2k+7");
        assert_eq!(q.eval(&Rat::zero()), rat_int(7));
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p("k-1") * &p("k+1"), p("k^2-1"));
        assert_eq!(&(&p("9k^2+8k+1") * &p("1")) + &p("4k+3"), p("9k^2+12k+4"));
        assert_eq!(&p("3k-2") + &Poly::zero(), p("3k-2"));
        assert_eq!(p("2k").scale(&rat_from_ints(1, 2)), p("k"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            Poly::parse("-4u(u-1)(u-2)", "u").unwrap(),
            Poly::from_ints(&[0, -8, 12, -4])
        );
        assert_eq!(p("(k^2+9)(1+k^2)"), Poly::from_ints(&[9, 0, 10, 0, 1]));
        assert_eq!(
            Poly::parse("256z^4-72z^2+17/16", "z").unwrap().coeff(0),
            rat_from_ints(17, 16)
        );
        assert_eq!(p("-k^2"), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(
            p("153/4*k"),
            Poly::new(vec![Rat::zero(), rat_from_ints(153, 4)])
        );
        assert!(Poly::parse("k/k", "k").is_err());
        assert!(Poly::parse("k+", "k").is_err());
        assert!(Poly::parse("(k", "k").is_err());
        assert!(Poly::parse("q", "k").is_err());
    }

    #[test]
    fn linear_substitution() {
        let eighth = rat_from_ints(1, 8);
        let one = Rat::one();
        let n = p("-64k^2+16k+16").compose_linear(&one, &eighth);
        assert_eq!(n, Poly::parse("-64z^2+17", "z").unwrap());
        let b = p("256k^4-128k^3-48k^2+16k").compose_linear(&one, &eighth);
        assert_eq!(b, Poly::parse("256z^4-72z^2+17/16", "z").unwrap());
        let q = p("3k^3-k");
        assert_eq!(q.compose_linear(&one, &Rat::zero()), q);
    }

    #[test]
    fn square_roots() {
        assert_eq!(p("9k^2+12k+4").sqrt(), Some(p("3k+2")));
        assert_eq!(p("16k^4-40k^2+25").sqrt(), Some(p("4k^2-5")));
        assert_eq!(p("k^2+1").sqrt(), None);
        assert_eq!(p("4k^2-4k+1").sqrt(), Some(p("2k-1")));
        assert_eq!(p("-k^2").sqrt(), None);
        assert_eq!(p("k^3").sqrt(), None);
        assert_eq!(p("k^2/4").sqrt(), Some(p("k/2")));
    }

    #[test]
    fn parities() {
        assert_eq!(
            Poly::parse("-64z^2+17", "z").unwrap().parity(),
            Parity::Even
        );
        assert_eq!(p("k^3").parity(), Parity::Odd);
        assert_eq!(p("k^2+k").parity(), Parity::Neither);
        assert_eq!(Poly::zero().parity(), Parity::Even);
    }

    #[test]
    fn display() {
        assert_eq!(
            Poly::parse("256z^4-72z^2+17/16", "z")
                .unwrap()
                .display_in("z"),
            "256*z^4 - 72*z^2 + 17/16"
        );
        assert_eq!(p("-k+1").to_string(), "-x + 1");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-50i64..50, 1i64..6), 0..7)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat_from_ints(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn sqrt_of_square(q in arb_poly()) {
            let sq = &q * &q;
            let root = sq.sqrt().expect("square");
            prop_assert!(root == q || root == -&q);
            prop_assert!(root.leading().is_none_or(|c| c.is_positive()));
            if !q.is_zero() {
                prop_assert!((&sq * &Poly::x()).sqrt().is_none());
            }
        }

        #[test]
        fn compose_matches_eval(q in arb_poly(), a in -9i64..9, b in -9i64..9, bd in 1i64..9, x in -20i64..20, xd in 1i64..7) {
            let alpha = rat_int(a);
            let beta = rat_from_ints(b, bd);
            let x = rat_from_ints(x, xd);
            let lhs = q.compose_linear(&alpha, &beta).eval(&x);
            let rhs = q.eval(&(&alpha * &x + &beta));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parity_matches_support(q in arb_poly()) {
            let odd_zero = q.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero);
            let even_zero = q.coeffs().iter().step_by(2).all(Zero::is_zero);
            match q.parity() {
                Parity::Even => prop_assert!(odd_zero),
                Parity::Odd => prop_assert!(even_zero && !q.is_zero()),
                Parity::Neither => prop_assert!(!odd_zero && !even_zero),
            }
            prop_assert_eq!(q.parity() == Parity::Even, odd_zero);
        }

        #[test]
        fn coefficients_stay_canonical(a in arb_poly(), b in arb_poly()) {
            let prod = &(&a * &b) - &a;
            for c in prod.coeffs() {
                prop_assert!(c.denom().is_positive());
                prop_assert_eq!(c.clone(), Rat::new(c.numer().clone(), c.denom().clone()));
            }
            prop_assert!(prod.leading().is_none_or(|c| !c.is_zero()));
        }
    }
}
