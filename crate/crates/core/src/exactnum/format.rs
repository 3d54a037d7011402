//! Exact text form for numbers: `a/b`, `c/e*sqrt(d)` or `a/b+c/e*sqrt(d)`.

use std::str::FromStr;

use num::{BigInt, Zero};

use super::{QuadElem, Rational, SquareFreeD};
use crate::error::{Error, Result};

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

/// Splits `a±b*sqrt(n)` into `(a, b, n)`; a bare rational yields `n = None`.
/// `n` may be negative (`sqrt(-7)`), which the quaternion coefficients use.
pub(crate) fn parse_surd(s: &str) -> Result<(Rational, Rational, Option<i64>)> {
    let s = s.trim();
    let err = || Error::Parse(s.to_string());
    let Some(star) = s.find("*sqrt(") else {
        return Ok((parse_rational(s)?, Rational::zero(), None));
    };
    let radicand = s[star + 6..].strip_suffix(')').ok_or_else(err)?;
    let n: i64 = radicand.trim().parse().map_err(|_| err())?;
    let head = &s[..star];
    let split = head
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
        .map(|(i, _)| i)
        .last();
    let (a, b) = match split {
        Some(i) => (parse_rational(&head[..i])?, parse_rational(head[i..].trim_start_matches('+'))?),
        None => (Rational::zero(), parse_rational(head)?),
    };
    Ok((a, b, Some(n)))
}

impl QuadElem {
    /// Parses the format produced by `Display`. A bare rational like `3/2`
    /// carries no field, so the expected `d` is supplied by the caller; a
    /// `sqrt(n)` term with `n != d` is rejected.
    pub fn parse(s: &str, d: SquareFreeD) -> Result<QuadElem> {
        let (a, b, n) = parse_surd(s)?;
        match n {
            Some(n) if n != d.get() as i64 => Err(Error::FieldMismatch(n.unsigned_abs(), d.get())),
            _ => Ok(QuadElem::new(a, b, d)),
        }
    }
}
