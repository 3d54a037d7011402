//! The quaternion algebra (−1,−1 / K) over K = Q(sqrt −d) and the Pell and
//! Gauss unit families of its order O_K[1, i, j, k].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, parse_surd, Rational, SquareFreeD};
use crate::pell::{FundUnit, Pell3Data, PellUnit};

/// `r + s·sqrt(−d)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ImagQuad {
    pub r: Rational,
    pub s: Rational,
    pub d: SquareFreeD,
}

impl ImagQuad {
    pub fn new(r: Rational, s: Rational, d: SquareFreeD) -> Self {
        ImagQuad { r, s, d }
    }

    pub fn rational(r: Rational, d: SquareFreeD) -> Self {
        ImagQuad::new(r, Rational::zero(), d)
    }

    pub fn from_int(n: impl Into<BigInt>, d: SquareFreeD) -> Self {
        ImagQuad::rational(Rational::from_integer(n.into()), d)
    }

    /// `k·sqrt(−d)`.
    pub fn surd(k: Rational, d: SquareFreeD) -> Self {
        ImagQuad::new(Rational::zero(), k, d)
    }

    pub fn zero(d: SquareFreeD) -> Self {
        ImagQuad::rational(Rational::zero(), d)
    }

    pub fn one(d: SquareFreeD) -> Self {
        ImagQuad::rational(Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn conj(&self) -> Self {
        ImagQuad::new(self.r.clone(), -&self.s, self.d)
    }

    /// Field norm `r² + d·s²`.
    pub fn norm(&self) -> Rational {
        &self.r * &self.r + &self.s * &self.s * int(self.d.get())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ImagQuad::new(&self.r * k, &self.s * k, self.d)
    }

    /// Membership in the ring of integers: Z[sqrt −d] when d ≡ 1, 2 (mod 4),
    /// Z[(1 + sqrt −d)/2] when d ≡ 3 (mod 4).
    pub fn is_integral(&self) -> bool {
        let two = int(2);
        let (r2, s2) = (&self.r * &two, &self.s * &two);
        if !r2.is_integer() || !s2.is_integer() {
            return false;
        }
        if self.d.get() % 4 == 3 {
            r2.to_integer().is_odd() == s2.to_integer().is_odd()
        } else {
            self.r.is_integer() && self.s.is_integer()
        }
    }

    pub fn parse(s: &str, d: SquareFreeD) -> Result<ImagQuad> {
        let (r, k, n) = parse_surd(s)?;
        match n {
            Some(n) if n != -(d.get() as i64) => Err(Error::FieldMismatch(n.unsigned_abs(), d.get())),
            _ => Ok(ImagQuad::new(r, k, d)),
        }
    }
}

impl fmt::Debug for ImagQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ImagQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d.get();
        if self.s.is_zero() {
            write!(f, "{}", self.r)
        } else if self.r.is_zero() {
            write!(f, "{}*sqrt(-{d})", self.s)
        } else if self.s.is_negative() {
            write!(f, "{}-{}*sqrt(-{d})", self.r, -&self.s)
        } else {
            write!(f, "{}+{}*sqrt(-{d})", self.r, self.s)
        }
    }
}

impl Add for &ImagQuad {
    type Output = ImagQuad;
    fn add(self, o: &ImagQuad) -> ImagQuad {
        assert_eq!(self.d, o.d, "ImagQuad field mismatch");
        ImagQuad::new(&self.r + &o.r, &self.s + &o.s, self.d)
    }
}

impl Sub for &ImagQuad {
    type Output = ImagQuad;
    fn sub(self, o: &ImagQuad) -> ImagQuad {
        assert_eq!(self.d, o.d, "ImagQuad field mismatch");
        ImagQuad::new(&self.r - &o.r, &self.s - &o.s, self.d)
    }
}

impl Mul for &ImagQuad {
    type Output = ImagQuad;
    fn mul(self, o: &ImagQuad) -> ImagQuad {
        assert_eq!(self.d, o.d, "ImagQuad field mismatch");
        let dd = int(self.d.get());
        ImagQuad::new(&self.r * &o.r - &self.s * &o.s * dd, &self.r * &o.s + &self.s * &o.r, self.d)
    }
}

impl Neg for &ImagQuad {
    type Output = ImagQuad;
    fn neg(self) -> ImagQuad {
        ImagQuad::new(-&self.r, -&self.s, self.d)
    }
}

/// One of the basis elements 1, i, j, k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "i")]
    I,
    #[serde(rename = "j")]
    J,
    #[serde(rename = "k")]
    K,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::One, Slot::I, Slot::J, Slot::K];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Slot::One => "1",
            Slot::I => "i",
            Slot::J => "j",
            Slot::K => "k",
        }
    }

    pub fn parse(s: &str) -> Result<Slot> {
        match s.trim() {
            "1" => Ok(Slot::One),
            "i" => Ok(Slot::I),
            "j" => Ok(Slot::J),
            "k" => Ok(Slot::K),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

fn distinct(slots: &[Slot]) -> Result<()> {
    for (n, a) in slots.iter().enumerate() {
        if slots[n + 1..].contains(a) {
            return Err(Error::SlotsNotDistinct);
        }
    }
    Ok(())
}

/// Set of basis slots with a nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Support(u8);

impl Support {
    pub fn contains(self, s: Slot) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn slots(self) -> impl Iterator<Item = Slot> {
        Slot::ALL.into_iter().filter(move |s| self.contains(*s))
    }
}

/// `c1 + ci·i + cj·j + ck·k` with `i² = j² = −1`, `ij = k = −ji`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuatElem {
    c: [ImagQuad; 4],
}

impl QuatElem {
    pub fn new(c1: ImagQuad, ci: ImagQuad, cj: ImagQuad, ck: ImagQuad) -> Self {
        let d = c1.d;
        assert!(ci.d == d && cj.d == d && ck.d == d, "QuatElem coefficients must share d");
        QuatElem { c: [c1, ci, cj, ck] }
    }

    pub fn from_slots(d: SquareFreeD, terms: &[(Slot, ImagQuad)]) -> Self {
        let mut c: [ImagQuad; 4] = std::array::from_fn(|_| ImagQuad::zero(d));
        for (slot, v) in terms {
            c[slot.index()] = &c[slot.index()] + v;
        }
        QuatElem { c }
    }

    pub fn zero(d: SquareFreeD) -> Self {
        QuatElem::from_slots(d, &[])
    }

    pub fn one(d: SquareFreeD) -> Self {
        QuatElem::scalar(ImagQuad::one(d))
    }

    pub fn scalar(k: ImagQuad) -> Self {
        let d = k.d;
        QuatElem::from_slots(d, &[(Slot::One, k)])
    }

    pub fn basis(slot: Slot, d: SquareFreeD) -> Self {
        QuatElem::from_slots(d, &[(slot, ImagQuad::one(d))])
    }

    pub fn d(&self) -> SquareFreeD {
        self.c[0].d
    }

    pub fn coeff(&self, s: Slot) -> &ImagQuad {
        &self.c[s.index()]
    }

    pub fn coeffs(&self) -> &[ImagQuad; 4] {
        &self.c
    }

    pub fn support(&self) -> Support {
        let mut bits = 0u8;
        for s in Slot::ALL {
            if !self.coeff(s).is_zero() {
                bits |= 1 << s.index();
            }
        }
        Support(bits)
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.c;
        QuatElem::new(a.clone(), -b, -c, -d)
    }

    /// Reduced norm `c1² + ci² + cj² + ck²`, squares taken in K.
    pub fn norm(&self) -> ImagQuad {
        self.c.iter().fold(ImagQuad::zero(self.d()), |acc, x| &acc + &(x * x))
    }

    /// `Some(±1)` when the reduced norm is `±1`.
    pub fn unit_norm(&self) -> Option<i32> {
        let n = self.norm();
        if !n.s.is_zero() {
            return None;
        }
        if n.r == Rational::one() {
            Some(1)
        } else if n.r == -Rational::one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_norm().is_some()
    }

    pub fn inverse(&self) -> Result<QuatElem> {
        match self.unit_norm() {
            Some(1) => Ok(self.conj()),
            Some(_) => Ok(-&self.conj()),
            None => Err(Error::NonUnit(self.norm().to_string())),
        }
    }

    pub fn scale(&self, k: &ImagQuad) -> QuatElem {
        let [a, b, c, d] = &self.c;
        QuatElem::new(a * k, b * k, c * k, d * k)
    }

    /// True iff every coefficient lies in the ring of integers of K.
    pub fn in_order(&self) -> bool {
        self.c.iter().all(ImagQuad::is_integral)
    }

    pub fn is_one(&self) -> bool {
        *self == QuatElem::one(self.d())
    }

    pub fn is_minus_one(&self) -> bool {
        *self == -&QuatElem::one(self.d())
    }

    /// Exact power; negative exponents need a unit.
    pub fn pow(&self, n: i64) -> Result<QuatElem> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QuatElem::one(self.d());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Torsion test: some power `q^k = 1` with `k ≤ TORSION_BOUND`.
    pub fn is_torsion(&self) -> Result<bool> {
        Ok(self.torsion_order()?.is_some())
    }

    pub fn torsion_order(&self) -> Result<Option<u32>> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.norm().to_string()));
        }
        let mut p = self.clone();
        for k in 1..=TORSION_BOUND {
            if p.is_one() {
                return Ok(Some(k));
            }
            p = &p * self;
        }
        Ok(None)
    }

    pub fn parse_coeffs(parts: &[String], d: SquareFreeD) -> Result<QuatElem> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!("{} quaternion coefficients", parts.len())));
        }
        Ok(QuatElem::new(
            ImagQuad::parse(&parts[0], d)?,
            ImagQuad::parse(&parts[1], d)?,
            ImagQuad::parse(&parts[2], d)?,
            ImagQuad::parse(&parts[3], d)?,
        ))
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.c.iter().map(ToString::to_string).collect()
    }
}

/// Finite subgroups of these quaternion algebras have exponent dividing 24.
pub const TORSION_BOUND: u32 = 24;

impl fmt::Debug for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in Slot::ALL {
            let c = self.coeff(s);
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match s {
                Slot::One => write!(f, "{c}")?,
                _ => write!(f, "({c}){}", s.symbol())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Mul for &QuatElem {
    type Output = QuatElem;
    fn mul(self, o: &QuatElem) -> QuatElem {
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &o.c;
        let one = &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2));
        let i = &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2));
        let j = &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2));
        let k = &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2));
        QuatElem::new(one, i, j, k)
    }
}

impl Mul for QuatElem {
    type Output = QuatElem;
    fn mul(self, o: QuatElem) -> QuatElem {
        &self * &o
    }
}

impl Add for &QuatElem {
    type Output = QuatElem;
    fn add(self, o: &QuatElem) -> QuatElem {
        let c = std::array::from_fn(|n| &self.c[n] + &o.c[n]);
        QuatElem { c }
    }
}

impl Neg for &QuatElem {
    type Output = QuatElem;
    fn neg(self) -> QuatElem {
        let c = std::array::from_fn(|n| -&self.c[n]);
        QuatElem { c }
    }
}

fn z(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Pell 2-unit `y·sqrt(−d)·ξ + x·ψ`, of norm `x² − d·y²`.
pub fn pell2_unit(e: &PellUnit, xi: Slot, psi: Slot) -> Result<QuatElem> {
    distinct(&[xi, psi])?;
    let d = e.d;
    Ok(QuatElem::from_slots(d, &[(xi, ImagQuad::surd(z(&e.y), d)), (psi, ImagQuad::rational(z(&e.x), d))]))
}

/// `u_(ε,ψ) = x + y·sqrt(−d)·ψ`, the 2-unit whose powers track powers of ε.
pub fn pell2_psi_form(e: &PellUnit, psi: Slot) -> Result<QuatElem> {
    pell2_unit(e, psi, Slot::One)
}

/// Sign choice `±` in the Pell 4-unit coefficients `(1 ± x)/2`, `(1 ∓ x)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlusMinus {
    Plus,
    Minus,
}

/// The Pell 4-unit pattern
/// `(y/2)·sqrt(−d)·ζ + (y/2)·sqrt(−d)·ξ + ((1±x)/2)·ψ + ((1∓x)/2)·φ`
/// without the integrality check; its norm is `(N(ε) + 1)/2`.
pub fn pell4_element(e: &PellUnit, slots: [Slot; 4], sign: PlusMinus) -> Result<QuatElem> {
    distinct(&slots)?;
    let d = e.d;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let y2 = ImagQuad::surd(z(&e.y) * &half, d);
    let (p, m) = (
        ImagQuad::rational((Rational::one() + z(&e.x)) * &half, d),
        ImagQuad::rational((Rational::one() - z(&e.x)) * &half, d),
    );
    let (psi_c, phi_c) = match sign {
        PlusMinus::Plus => (p, m),
        PlusMinus::Minus => (m, p),
    };
    Ok(QuatElem::from_slots(d, &[(slots[0], y2.clone()), (slots[1], y2), (slots[2], psi_c), (slots[3], phi_c)]))
}

fn require_integral(u: QuatElem) -> Result<QuatElem> {
    match u.coeffs().iter().find(|c| !c.is_integral()) {
        Some(c) => Err(Error::NonIntegral(c.to_string())),
        None => Ok(u),
    }
}

/// Pell 4-unit in the order; needs `N(ε) = +1` and integral halves.
pub fn pell4_unit(e: &PellUnit, slots: [Slot; 4], sign: PlusMinus) -> Result<QuatElem> {
    if e.norm != 1 {
        return Err(Error::NormMinusOne);
    }
    require_integral(pell4_element(e, slots, sign)?)
}

/// 4-unit from ε² when y is odd:
/// `xy·sqrt(−d) + (xy·sqrt(−d))i + x²j + (y²d)k`, norm `(x² − y²d)² = 1`.
pub fn pell4_unit_from_square(e: &PellUnit) -> Result<QuatElem> {
    if e.y.is_even() {
        return Err(Error::InvalidInput(format!("y = {} is even", e.y)));
    }
    let d = e.d;
    let xy = z(&(&e.x * &e.y));
    let y2d = z(&(&e.y * &e.y * BigInt::from(d.get())));
    Ok(QuatElem::new(
        ImagQuad::surd(xy.clone(), d),
        ImagQuad::surd(xy, d),
        ImagQuad::rational(z(&(&e.x * &e.x)), d),
        ImagQuad::rational(y2d, d),
    ))
}

/// Pell 3-unit `y·sqrt(−d)·ξ + x·ψ + (1 − x)·φ` from a norm-1 unit
/// `(2x − 1) + y·sqrt(2d)`.
pub fn pell3_unit(data: &Pell3Data, slots: [Slot; 3]) -> Result<QuatElem> {
    distinct(&slots)?;
    let (x, y) = (&data.x, &data.y);
    let two_x_minus_1 = BigInt::from(2) * x - BigInt::one();
    if &two_x_minus_1 * &two_x_minus_1 - BigInt::from(2 * data.d.get()) * y * y != BigInt::one() {
        return Err(Error::InvalidInput("(2x-1)^2 - 2d*y^2 != 1".into()));
    }
    let d = data.d;
    Ok(QuatElem::from_slots(
        d,
        &[
            (slots[0], ImagQuad::surd(z(y), d)),
            (slots[1], ImagQuad::rational(z(x), d)),
            (slots[2], ImagQuad::rational(Rational::one() - z(x), d)),
        ],
    ))
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

/// All `(p, q, r)` with `p ≤ q ≤ r` and `p² + q² + r² = n`, ordered by
/// ascending `r`, then ascending `q`.
pub fn three_squares_all(n: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    let top = isqrt(n);
    (0..=top).flat_map(move |r| {
        let rest = n.checked_sub(r * r);
        (0..=r).filter_map(move |q| {
            let rest = rest?.checked_sub(q * q)?;
            let p = isqrt(rest);
            (p * p == rest && p <= q).then_some((p, q, r))
        })
    })
}

/// First decomposition in [`three_squares_all`] order; `None` exactly when
/// `n = 4^a(8b + 7)`.
pub fn three_squares(n: u64) -> Option<(u64, u64, u64)> {
    three_squares_all(n).next()
}

/// Gauss unit `m·sqrt(−d) + p·i + q·j + r·k` with `p² + q² + r² = m²d + sign`,
/// so its norm is `sign`. Decompositions leaving a support of size 1 are skipped.
pub fn gauss_unit(d: SquareFreeD, m: i64, sign: i32) -> Result<Option<QuatElem>> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be nonzero".into()));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let base = (m.unsigned_abs() as u128) * (m.unsigned_abs() as u128) * d.get() as u128;
    let n = if sign == 1 { base + 1 } else { base - 1 };
    let n = u64::try_from(n).map_err(|_| Error::InvalidInput("m^2 d out of range".into()))?;
    for (p, q, r) in three_squares_all(n) {
        let u = QuatElem::new(
            ImagQuad::surd(int(m), d),
            ImagQuad::from_int(p, d),
            ImagQuad::from_int(q, d),
            ImagQuad::from_int(r, d),
        );
        if u.support().len() > 1 {
            debug_assert_eq!(u.unit_norm(), Some(sign));
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// A unit of the algebra together with whether it lies in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraUnit {
    pub unit: QuatElem,
    pub in_order: bool,
}

/// The four units built from a norm-1 fundamental unit:
/// `x + (y·sqrt −d)i`, `y·sqrt −d + xk`,
/// `(x+1)/2 − (y·sqrt −d/2)i + ((x−1)/2)j + (y·sqrt −d/2)k`,
/// `x² − (xy·sqrt −d)i − (y²d)j + (xy·sqrt −d)k`.
pub fn prop_pp1_units(e: &FundUnit) -> Result<[AlgebraUnit; 4]> {
    if e.norm != 1 {
        return Err(Error::NormMinusOne);
    }
    let units = [pp1_homothety_unit(e), w1_unit(e), w2_unit(e), w3_unit(e)];
    let out = units.map(|unit| {
        assert_eq!(unit.unit_norm(), Some(1), "pp1 unit {unit} has norm {}", unit.norm());
        let in_order = unit.in_order();
        AlgebraUnit { unit, in_order }
    });
    Ok(out)
}

/// `u = x + (y·sqrt −d)i`; its Möbius map is the homothety.
pub fn pp1_homothety_unit(e: &PellUnit) -> QuatElem {
    let d = e.d;
    QuatElem::from_slots(d, &[(Slot::One, ImagQuad::rational(z(&e.x), d)), (Slot::I, ImagQuad::surd(z(&e.y), d))])
}

/// `y·sqrt −d + x·k`.
pub fn w1_unit(e: &PellUnit) -> QuatElem {
    let d = e.d;
    QuatElem::from_slots(d, &[(Slot::One, ImagQuad::surd(z(&e.y), d)), (Slot::K, ImagQuad::rational(z(&e.x), d))])
}

/// `(x+1)/2 − (y·sqrt −d/2)i + ((x−1)/2)j + (y·sqrt −d/2)k`.
pub fn w2_unit(e: &PellUnit) -> QuatElem {
    let d = e.d;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let x = z(&e.x);
    let yh = z(&e.y) * &half;
    QuatElem::new(
        ImagQuad::rational((&x + Rational::one()) * &half, d),
        ImagQuad::surd(-&yh, d),
        ImagQuad::rational((&x - Rational::one()) * &half, d),
        ImagQuad::surd(yh, d),
    )
}

/// `x² − (xy·sqrt −d)i − (y²d)j + (xy·sqrt −d)k`.
pub fn w3_unit(e: &PellUnit) -> QuatElem {
    let d = e.d;
    let xy = z(&(&e.x * &e.y));
    QuatElem::new(
        ImagQuad::rational(z(&(&e.x * &e.x)), d),
        ImagQuad::surd(-&xy, d),
        ImagQuad::rational(-z(&(&e.y * &e.y * BigInt::from(d.get()))), d),
        ImagQuad::surd(xy, d),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::{pell_fundamental, pell_fundamental_2d, unit_power};

    fn sf(d: u64) -> SquareFreeD {
        SquareFreeD::new(d).unwrap()
    }

    fn q(d: u64, terms: &[(Slot, i64, i64)]) -> QuatElem {
        let d = sf(d);
        let t: Vec<_> = terms.iter().map(|&(s, r, k)| (s, ImagQuad::new(int(r), int(k), d))).collect();
        QuatElem::from_slots(d, &t)
    }

    #[test]
    fn basis_relations() {
        let d = sf(5);
        let (i, j, k) = (QuatElem::basis(Slot::I, d), QuatElem::basis(Slot::J, d), QuatElem::basis(Slot::K, d));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -&QuatElem::one(d));
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
    }

    #[test]
    fn norm_examples() {
        // sqrt(-2) + k
        let w = q(2, &[(Slot::One, 0, 1), (Slot::K, 1, 0)]);
        assert_eq!(w.unit_norm(), Some(-1));
        // 2 sqrt(-7) + 4i + 3j + 2k
        let u = q(7, &[(Slot::One, 0, 2), (Slot::I, 4, 0), (Slot::J, 3, 0), (Slot::K, 2, 0)]);
        assert_eq!(u.unit_norm(), Some(1));
        assert_eq!(&u * &u.conj(), QuatElem::one(sf(7)));
        assert_eq!(&u * &u.inverse().unwrap(), QuatElem::one(sf(7)));
        assert_eq!(&w * &w.inverse().unwrap(), QuatElem::one(sf(2)));
    }

    #[test]
    fn inverse_of_non_unit() {
        let two = q(3, &[(Slot::One, 2, 0)]);
        assert!(matches!(two.inverse(), Err(Error::NonUnit(_))));
        assert!(matches!(two.pow(-1), Err(Error::NonUnit(_))));
        assert!(matches!(two.is_torsion(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn pell2_examples() {
        let e7 = pell_fundamental(sf(7)).unwrap();
        let u = pell2_unit(&e7, Slot::One, Slot::I).unwrap();
        assert_eq!(u, q(7, &[(Slot::One, 0, 3), (Slot::I, 8, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        let e2 = pell_fundamental(sf(2)).unwrap();
        let w = pell2_unit(&e2, Slot::One, Slot::K).unwrap();
        assert_eq!(w, q(2, &[(Slot::One, 0, 1), (Slot::K, 1, 0)]));
        assert_eq!(w.unit_norm(), Some(-1));
        let e3 = pell_fundamental(sf(3)).unwrap();
        assert_eq!(pell2_psi_form(&e3, Slot::I).unwrap(), q(3, &[(Slot::One, 2, 0), (Slot::I, 0, 1)]));
        assert_eq!(pell2_unit(&e3, Slot::J, Slot::J), Err(Error::SlotsNotDistinct));
    }

    #[test]
    fn pell4_examples() {
        let e3 = pell_fundamental(sf(3)).unwrap();
        let slots = [Slot::One, Slot::I, Slot::J, Slot::K];
        let formal = pell4_element(&e3, slots, PlusMinus::Plus).unwrap();
        assert_eq!(formal.unit_norm(), Some(1));
        // y = 1 is odd: the halves leave the order
        assert!(matches!(pell4_unit(&e3, slots, PlusMinus::Plus), Err(Error::NonIntegral(_))));
        let e2 = pell_fundamental(sf(2)).unwrap();
        assert_eq!(pell4_unit(&e2, slots, PlusMinus::Plus), Err(Error::NormMinusOne));
        let flipped = pell4_element(&e3, slots, PlusMinus::Minus).unwrap();
        assert_eq!(flipped.coeff(Slot::J), formal.coeff(Slot::K));
        assert_eq!(flipped.coeff(Slot::K), formal.coeff(Slot::J));
        assert_eq!(flipped.norm(), formal.norm());
        // d = 6: (5, 2), y even, x odd: integral
        let e6 = pell_fundamental(sf(6)).unwrap();
        let u = pell4_unit(&e6, slots, PlusMinus::Minus).unwrap();
        assert_eq!(u.unit_norm(), Some(1));
        assert!(u.in_order());
        assert_eq!(pell4_unit(&e6, [Slot::One, Slot::One, Slot::J, Slot::K], PlusMinus::Plus), Err(Error::SlotsNotDistinct));
    }

    #[test]
    fn pell4_from_square_examples() {
        let e7 = pell_fundamental(sf(7)).unwrap();
        let u = pell4_unit_from_square(&e7).unwrap();
        assert_eq!(u, q(7, &[(Slot::One, 0, 24), (Slot::I, 0, 24), (Slot::J, 64, 0), (Slot::K, 63, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        let e3 = pell_fundamental(sf(3)).unwrap();
        let u = pell4_unit_from_square(&e3).unwrap();
        assert_eq!(u, q(3, &[(Slot::One, 0, 2), (Slot::I, 0, 2), (Slot::J, 4, 0), (Slot::K, 3, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        let e6 = pell_fundamental(sf(6)).unwrap();
        assert!(matches!(pell4_unit_from_square(&e6), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn pell3_examples() {
        let slots = [Slot::One, Slot::I, Slot::J];
        let data = pell_fundamental_2d(sf(3)).unwrap().unwrap();
        let u = pell3_unit(&data, slots).unwrap();
        assert_eq!(u, q(3, &[(Slot::One, 0, 2), (Slot::I, 3, 0), (Slot::J, -2, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        let data = pell_fundamental_2d(sf(1)).unwrap().unwrap();
        let u = pell3_unit(&data, slots).unwrap();
        assert_eq!(u, q(1, &[(Slot::One, 0, 2), (Slot::I, 2, 0), (Slot::J, -1, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        assert_eq!(pell3_unit(&data, [Slot::I, Slot::I, Slot::J]), Err(Error::SlotsNotDistinct));
        let mut bad = data.clone();
        bad.x += 1;
        assert!(matches!(pell3_unit(&bad, slots), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn three_squares_examples() {
        assert_eq!(three_squares(29), Some((2, 3, 4)));
        assert_eq!(three_squares(7), None);
        assert_eq!(three_squares(0), Some((0, 0, 0)));
        assert_eq!(three_squares(6), Some((1, 1, 2)));
        assert_eq!(three_squares(28), None);
    }

    #[test]
    fn three_squares_matches_gauss_exclusion() {
        fn excluded(mut n: u64) -> bool {
            if n == 0 {
                return false;
            }
            while n.is_multiple_of(4) {
                n /= 4;
            }
            n % 8 == 7
        }
        for n in 0..=2000u64 {
            let got = three_squares(n);
            assert_eq!(got.is_none(), excluded(n), "n = {n}");
            if let Some((p, q, r)) = got {
                assert!(p <= q && q <= r);
                assert_eq!(p * p + q * q + r * r, n);
            }
        }
    }

    #[test]
    fn gauss_examples() {
        let u = gauss_unit(sf(7), 2, 1).unwrap().unwrap();
        assert_eq!(u, q(7, &[(Slot::One, 0, 2), (Slot::I, 2, 0), (Slot::J, 3, 0), (Slot::K, 4, 0)]));
        assert_eq!(u.unit_norm(), Some(1));
        let u = gauss_unit(sf(2), 1, -1).unwrap().unwrap();
        assert_eq!(u, q(2, &[(Slot::One, 0, 1), (Slot::K, 1, 0)]));
        assert_eq!(u.unit_norm(), Some(-1));
        let u = gauss_unit(sf(7), 1, -1).unwrap().unwrap();
        assert_eq!(u, q(7, &[(Slot::One, 0, 1), (Slot::I, 1, 0), (Slot::J, 1, 0), (Slot::K, 2, 0)]));
        assert_eq!(u.unit_norm(), Some(-1));
        assert!(gauss_unit(sf(7), 0, 1).is_err());
        // 1·1 − 1 = 0 only decomposes as 0+0+0, support {1}
        assert_eq!(gauss_unit(sf(1), 1, -1).unwrap(), None);
        // 4·(7·... ) : 1·15 + 1 = 16 = 0+0+16 → support 2
        assert!(gauss_unit(sf(15), 1, 1).unwrap().is_some());
        // 1·6 + 1 = 7 is excluded
        assert_eq!(gauss_unit(sf(6), 1, 1).unwrap(), None);
    }

    #[test]
    fn pp1_examples() {
        let e3 = pell_fundamental(sf(3)).unwrap();
        let units = prop_pp1_units(&e3).unwrap();
        assert_eq!(units[0].unit, q(3, &[(Slot::One, 2, 0), (Slot::I, 0, 1)]));
        assert_eq!(units[3].unit, q(3, &[(Slot::One, 4, 0), (Slot::I, 0, -2), (Slot::J, -3, 0), (Slot::K, 0, 2)]));
        assert!(units.iter().all(|u| u.unit.unit_norm() == Some(1)));
        assert!(!units[2].in_order);
        let e7 = pell_fundamental(sf(7)).unwrap();
        let units = prop_pp1_units(&e7).unwrap();
        assert_eq!(units[1].unit, q(7, &[(Slot::One, 0, 3), (Slot::K, 8, 0)]));
        let e2 = pell_fundamental(sf(2)).unwrap();
        assert_eq!(prop_pp1_units(&e2), Err(Error::NormMinusOne));
    }

    #[test]
    fn power_examples() {
        let e3 = pell_fundamental(sf(3)).unwrap();
        let u = pell2_psi_form(&e3, Slot::I).unwrap();
        let sq = u.pow(2).unwrap();
        assert_eq!(sq, q(3, &[(Slot::One, 7, 0), (Slot::I, 0, 4)]));
        assert_eq!(sq, pell2_psi_form(&unit_power(&e3, 2).unwrap(), Slot::I).unwrap());
        assert_eq!(u.pow(1).unwrap(), u);
        assert_eq!(&u.pow(-1).unwrap() * &u, QuatElem::one(sf(3)));
        assert_eq!(u.pow(0).unwrap(), QuatElem::one(sf(3)));
    }

    #[test]
    fn torsion_examples() {
        let d = sf(7);
        assert_eq!(QuatElem::basis(Slot::I, d).torsion_order().unwrap(), Some(4));
        let pure = q(7, &[(Slot::I, 0, 3), (Slot::J, 8, 0)]);
        assert!(pure.is_torsion().unwrap());
        let u = q(7, &[(Slot::One, 8, 0), (Slot::I, 0, 3)]);
        assert!(!u.is_torsion().unwrap());
    }

    #[test]
    fn integrality() {
        let d3 = sf(3);
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        assert!(ImagQuad::new(half.clone(), half.clone(), d3).is_integral());
        assert!(!ImagQuad::new(half.clone(), int(0), d3).is_integral());
        assert!(!ImagQuad::new(half.clone(), half, sf(5)).is_integral());
        assert!(ImagQuad::new(int(2), int(-3), sf(5)).is_integral());
    }

    #[test]
    fn imag_quad_text_round_trip() {
        let d = sf(7);
        for s in ["3", "-2*sqrt(-7)", "1/2+3/2*sqrt(-7)", "-5-1*sqrt(-7)"] {
            assert_eq!(ImagQuad::parse(s, d).unwrap().to_string(), s);
        }
        assert!(ImagQuad::parse("1+1*sqrt(7)", d).is_err());
    }
}
