//! Pell's equation `x² − d·y² = ±1` via the periodic continued fraction of sqrt(d).

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{QuadElem, Rational, SquareFreeD};

/// A unit `x + y·sqrt(d)` of Z[sqrt d] with `x, y > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellUnit {
    pub x: BigInt,
    pub y: BigInt,
    pub d: SquareFreeD,
    /// `x² − d·y²`, either `1` or `-1`.
    pub norm: i32,
}

/// The minimal unit `> 1`, as returned by [`pell_fundamental`].
pub type FundUnit = PellUnit;

impl PellUnit {
    fn checked(x: BigInt, y: BigInt, d: SquareFreeD, norm: i32) -> PellUnit {
        let lhs = &x * &x - BigInt::from(d.get()) * &y * &y;
        assert_eq!(lhs, BigInt::from(norm), "Pell relation fails for ({x}, {y}, {d})");
        PellUnit { x, y, d, norm }
    }

    pub fn as_quad(&self) -> QuadElem {
        QuadElem::new(Rational::from_integer(self.x.clone()), Rational::from_integer(self.y.clone()), self.d)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Partial quotients of one full period of the continued fraction of sqrt(d).
fn sqrt_period(d: u64) -> (u64, Vec<u64>) {
    let a0 = isqrt(d);
    let mut period = Vec::new();
    let (mut m, mut q, mut a) = (0u64, 1u64, a0);
    loop {
        m = q * a - m;
        q = (d - m * m) / q;
        a = (a0 + m) / q;
        period.push(a);
        if a == 2 * a0 {
            return (a0, period);
        }
    }
}

/// Fundamental solution of `x² − d·y² = ±1`. The norm is `-1` iff the period
/// of the continued fraction of sqrt(d) is odd.
pub fn pell_fundamental(d: SquareFreeD) -> Result<FundUnit> {
    if d.get() < 2 {
        return Err(Error::DTooSmall { min: 2, got: d.get() });
    }
    let (a0, period) = sqrt_period(d.get());
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::from(a0));
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for &a in &period[..period.len() - 1] {
        let a = BigInt::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let norm = if period.len() % 2 == 0 { 1 } else { -1 };
    Ok(PellUnit::checked(p, q, d, norm))
}

/// `(x + y·sqrt d)^n` for `n ≥ 1`.
pub fn unit_power(u: &PellUnit, n: u32) -> Result<PellUnit> {
    if n == 0 {
        return Err(Error::InvalidInput("unit_power needs n >= 1".into()));
    }
    let dd = BigInt::from(u.d.get());
    let (mut x, mut y) = (u.x.clone(), u.y.clone());
    for _ in 1..n {
        let nx = &x * &u.x + &dd * &y * &u.y;
        let ny = &x * &u.y + &y * &u.x;
        x = nx;
        y = ny;
    }
    let norm = if u.norm == -1 && n % 2 == 1 { -1 } else { 1 };
    Ok(PellUnit::checked(x, y, u.d, norm))
}

/// Search bound for the power of the Q(sqrt 2d) fundamental unit.
pub const PELL3_POWER_BOUND: u32 = 16;

/// Data for a Pell 3-unit: `(2x − 1) + y·sqrt(2d)` is a norm-1 unit of Q(sqrt 2d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pell3Data {
    pub x: BigInt,
    pub y: BigInt,
    pub d: SquareFreeD,
    /// Which power of the fundamental unit of Q(sqrt 2d) was used.
    pub power: u32,
    pub field_unit: PellUnit,
}

/// Finds the first power (up to [`PELL3_POWER_BOUND`]) of the fundamental unit
/// of Q(sqrt 2d) with norm +1 and odd rational part. `Ok(None)` if none exists
/// within the bound.
pub fn pell_fundamental_2d(d: SquareFreeD) -> Result<Option<Pell3Data>> {
    let two_d = SquareFreeD::new(2 * d.get())?;
    let fund = pell_fundamental(two_d)?;
    for k in 1..=PELL3_POWER_BOUND {
        let e = unit_power(&fund, k)?;
        if e.norm == 1 && e.x.is_odd() && e.x.is_positive() {
            let x = (&e.x + BigInt::one()) / BigInt::from(2);
            return Ok(Some(Pell3Data { x, y: e.y.clone(), d, power: k, field_unit: e }));
        }
    }
    Ok(None)
}
