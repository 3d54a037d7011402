//! Exact arithmetic substrate: arbitrary-precision rationals, the real
//! quadratic field Q(sqrt d) with an exact sign, and complex numbers over it.

mod complex;
mod format;
mod quad;

pub use complex::ComplexQuad;
pub(crate) use format::parse_surd;
pub use format::{format_rational, parse_rational};
pub use quad::QuadElem;

use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always gcd-reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// True iff no prime square divides `n`. `n = 0` is reported as not square-free.
pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// A positive square-free integer, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct SquareFreeD(u64);

impl SquareFreeD {
    pub fn new(d: u64) -> Result<Self> {
        if is_square_free(d) {
            Ok(SquareFreeD(d))
        } else {
            Err(Error::NotSquareFree(d))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// All square-free values in `lo..=hi`.
    pub fn range(lo: u64, hi: u64) -> Vec<SquareFreeD> {
        (lo.max(1)..=hi).filter(|&d| is_square_free(d)).map(SquareFreeD).collect()
    }
}

impl TryFrom<u64> for SquareFreeD {
    type Error = Error;
    fn try_from(d: u64) -> Result<Self> {
        SquareFreeD::new(d)
    }
}

impl From<SquareFreeD> for u64 {
    fn from(d: SquareFreeD) -> u64 {
        d.0
    }
}

impl fmt::Display for SquareFreeD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_examples() {
        assert!(is_square_free(7));
        assert!(!is_square_free(8));
        assert!(is_square_free(1));
        assert!(!is_square_free(0));
        assert!(is_square_free(2 * 3 * 5 * 7 * 11 * 13));
        assert!(!is_square_free(2 * 3 * 5 * 7 * 11 * 11));
    }

    #[test]
    fn square_free_matches_divisor_scan() {
        for n in 1..2000u64 {
            let brute = !(2..n).any(|p| p * p <= n && n % (p * p) == 0);
            assert_eq!(is_square_free(n), brute, "n = {n}");
        }
    }

    #[test]
    fn square_free_d_rejects_squares() {
        assert_eq!(SquareFreeD::new(8), Err(Error::NotSquareFree(8)));
        assert_eq!(SquareFreeD::new(7).unwrap().get(), 7);
        assert_eq!(SquareFreeD::range(1, 10).len(), 7);
    }
}
