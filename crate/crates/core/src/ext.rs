//! Exact extended rationals.
//!
//! [`ExtRat`] is a rational number or one of the two infinities. All
//! arithmetic is exact. Multiplication follows the measure-theory convention
//! `0 · ∞ = ∞ · 0 = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// An exact rational, or `+∞` / `−∞`.
///
/// The derived ordering is the natural one on the extended line because the
/// variants are declared from smallest to largest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    NegInf,
    Fin(BigRational),
    PosInf,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseExtRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}` (expected `p`, `p/q`, `inf` or `-inf`)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Fin(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRat::Fin(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        ExtRat::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtRat::Fin(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `1 / 2^k`.
    pub fn dyadic(num: i64, k: u32) -> Self {
        let den = BigInt::one() << k as usize;
        ExtRat::Fin(BigRational::new(BigInt::from(num), den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Fin(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Fin(r) if r.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtRat::NegInf => false,
            ExtRat::Fin(r) => r.is_positive(),
            ExtRat::PosInf => true,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            ExtRat::NegInf => true,
            ExtRat::Fin(r) => r.is_negative(),
            ExtRat::PosInf => false,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Positive part `max(x, 0)`.
    pub fn positive_part(&self) -> Self {
        if self.is_negative() {
            ExtRat::zero()
        } else {
            self.clone()
        }
    }

    /// Negative part `max(−x, 0)`.
    pub fn negative_part(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            ExtRat::zero()
        }
    }

    /// Sum, or `None` for `∞ + (−∞)`.
    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        use ExtRat::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => Some(Fin(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
        }
    }

    /// Difference, or `None` for `∞ − ∞` with equal signs.
    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(&-rhs.clone())
    }

    /// Division by a finite nonzero rational.
    pub fn div_finite(&self, rhs: &BigRational) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(a / rhs),
            inf if rhs.is_positive() => inf.clone(),
            inf => -inf.clone(),
        }
    }

    /// Canonical text form: `p`, `p/q` (reduced, `q > 1`), `inf` or `-inf`.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

impl Default for ExtRat {
    fn default() -> Self {
        ExtRat::zero()
    }
}

impl From<i64> for ExtRat {
    fn from(n: i64) -> Self {
        ExtRat::int(n)
    }
}

impl From<BigRational> for ExtRat {
    fn from(r: BigRational) -> Self {
        ExtRat::Fin(r)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::PosInf => f.write_str("inf"),
            ExtRat::Fin(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRat {
    type Err = ParseExtRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseExtRatError::Empty);
        }
        match t {
            "inf" | "+inf" => return Ok(ExtRat::PosInf),
            "-inf" => return Ok(ExtRat::NegInf),
            _ => {}
        }
        let malformed = || ParseExtRatError::Malformed(s.to_string());
        let parse_int = |p: &str| -> Result<BigInt, ParseExtRatError> {
            let digits = p.strip_prefix('-').unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            p.parse::<BigInt>().map_err(|_| malformed())
        };
        match t.split_once('/') {
            None => Ok(ExtRat::Fin(BigRational::from_integer(parse_int(t)?))),
            Some((n, d)) => {
                let num = parse_int(n)?;
                if d.starts_with('-') {
                    return Err(malformed());
                }
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(ParseExtRatError::ZeroDenominator(s.to_string()));
                }
                Ok(ExtRat::Fin(BigRational::new(num, den)))
            }
        }
    }
}

impl Neg for ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Fin(r) => ExtRat::Fin(-r),
        }
    }
}

/// Panics on `∞ + (−∞)`; use [`ExtRat::checked_add`] when that can occur.
impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        self.checked_add(rhs).expect("undefined sum ∞ + (−∞)")
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        &self + &rhs
    }
}

/// Panics on `∞ − ∞`; use [`ExtRat::checked_sub`] when that can occur.
impl Sub for &ExtRat {
    type Output = ExtRat;
    fn sub(self, rhs: &ExtRat) -> ExtRat {
        self.checked_sub(rhs).expect("undefined difference ∞ − ∞")
    }
}

impl Sub for ExtRat {
    type Output = ExtRat;
    fn sub(self, rhs: ExtRat) -> ExtRat {
        &self - &rhs
    }
}

impl Mul for &ExtRat {
    type Output = ExtRat;
    fn mul(self, rhs: &ExtRat) -> ExtRat {
        use ExtRat::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a * b),
            _ if self.is_zero() || rhs.is_zero() => ExtRat::zero(),
            _ => {
                if self.is_negative() == rhs.is_negative() {
                    PosInf
                } else {
                    NegInf
                }
            }
        }
    }
}

impl Mul for ExtRat {
    type Output = ExtRat;
    fn mul(self, rhs: ExtRat) -> ExtRat {
        &self * &rhs
    }
}

impl std::iter::Sum for ExtRat {
    fn sum<I: Iterator<Item = ExtRat>>(iter: I) -> ExtRat {
        iter.fold(ExtRat::zero(), |acc, x| acc + x)
    }
}
