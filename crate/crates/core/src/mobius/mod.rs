//! The embedding Ψ of the quaternion algebra into 2×2 complex matrices, the
//! real Möbius maps it induces, and their exact action on Ω = R ∪ {∞}.

mod arc;

pub use arc::{Arc, ArcSet, Containment};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{ComplexQuad, QuadElem, Rational, Sign, SquareFreeD};
use crate::quaternion::{ImagQuad, QuatElem, Slot};

/// A point of the circle Ω. In the linear order used to walk the circle,
/// ∞ sits after every finite point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtPoint {
    Finite(QuadElem),
    Infinity,
}

impl ExtPoint {
    pub fn finite(&self) -> Option<&QuadElem> {
        match self {
            ExtPoint::Finite(q) => Some(q),
            ExtPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }

    pub fn parse(s: &str, d: SquareFreeD) -> Result<ExtPoint> {
        match s.trim() {
            "inf" | "-inf" | "+inf" => Ok(ExtPoint::Infinity),
            other => Ok(ExtPoint::Finite(QuadElem::parse(other, d)?)),
        }
    }
}

impl From<QuadElem> for ExtPoint {
    fn from(q: QuadElem) -> Self {
        ExtPoint::Finite(q)
    }
}

impl PartialOrd for ExtPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtPoint::Finite(a), ExtPoint::Finite(b)) => a.cmp(b),
            (ExtPoint::Finite(_), ExtPoint::Infinity) => Ordering::Less,
            (ExtPoint::Infinity, ExtPoint::Finite(_)) => Ordering::Greater,
            (ExtPoint::Infinity, ExtPoint::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(q) => write!(f, "{q}"),
            ExtPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `[[e11, e12], [e21, e22]]` over Q(sqrt d)(𝕚).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexMatrix2 {
    pub e: [[ComplexQuad; 2]; 2],
}

impl ComplexMatrix2 {
    pub fn det(&self) -> ComplexQuad {
        let [[a, b], [c, d]] = &self.e;
        &(a * d) - &(b * c)
    }

    pub fn mul(&self, o: &ComplexMatrix2) -> ComplexMatrix2 {
        let m = |r: usize, c: usize| &(&self.e[r][0] * &o.e[0][c]) + &(&self.e[r][1] * &o.e[1][c]);
        ComplexMatrix2 { e: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]] }
    }
}

/// `r + s·sqrt(−d) ↦ r + (s·sqrt d)·𝕚`.
pub fn imag_to_complex(q: &ImagQuad) -> ComplexQuad {
    ComplexQuad::new(QuadElem::rational(q.r.clone(), q.d), QuadElem::new(Rational::from_integer(0.into()), q.s.clone(), q.d))
}

fn times_i(z: &ComplexQuad) -> ComplexQuad {
    ComplexQuad::new(-&z.im, z.re.clone())
}

/// Ψ(u) = [[u1 + ui·𝕚, uj + uk·𝕚], [−uj + uk·𝕚, u1 − ui·𝕚]], with the
/// coefficients themselves complex through sqrt(−d) = sqrt(d)·𝕚.
pub fn psi(q: &QuatElem) -> ComplexMatrix2 {
    let c = |s: Slot| imag_to_complex(q.coeff(s));
    let (u1, ui, uj, uk) = (c(Slot::One), c(Slot::I), c(Slot::J), c(Slot::K));
    let (ui_i, uk_i) = (times_i(&ui), times_i(&uk));
    ComplexMatrix2 {
        e: [[&u1 + &ui_i, &uj + &uk_i], [&uk_i - &uj, &u1 - &ui_i]],
    }
}

/// Real Möbius transformation `z ↦ (m11·z + m12)/(m21·z + m22)` with entries in
/// Q(sqrt d). Stored unnormalized; compare with [`MobiusMap::projectively_eq`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MobiusMap {
    pub m11: QuadElem,
    pub m12: QuadElem,
    pub m21: QuadElem,
    pub m22: QuadElem,
    det: QuadElem,
}

impl MobiusMap {
    pub fn new(m11: QuadElem, m12: QuadElem, m21: QuadElem, m22: QuadElem) -> Result<Self> {
        let d = m11.d();
        if [&m12, &m21, &m22].iter().any(|m| m.d() != d) {
            return Err(Error::InvalidInput("Möbius entries must share d".into()));
        }
        let det = &m11 * &m22 - &m12 * &m21;
        if det.is_zero() {
            return Err(Error::InvalidInput("singular Möbius matrix".into()));
        }
        Ok(MobiusMap { m11, m12, m21, m22, det })
    }

    pub fn identity(d: SquareFreeD) -> Self {
        MobiusMap::new(QuadElem::one(d), QuadElem::zero(d), QuadElem::zero(d), QuadElem::one(d)).unwrap()
    }

    /// `z ↦ ρ·z`.
    pub fn homothety(rho: QuadElem) -> Result<Self> {
        let d = rho.d();
        MobiusMap::new(rho, QuadElem::zero(d), QuadElem::zero(d), QuadElem::one(d))
    }

    pub fn from_ints(m: [[i64; 2]; 2], d: SquareFreeD) -> Result<Self> {
        let q = |n| QuadElem::from_int(n, d);
        MobiusMap::new(q(m[0][0]), q(m[0][1]), q(m[1][0]), q(m[1][1]))
    }

    pub fn d(&self) -> SquareFreeD {
        self.m11.d()
    }

    pub fn det(&self) -> &QuadElem {
        &self.det
    }

    /// True when the map preserves the cyclic orientation of Ω.
    pub fn preserves_orientation(&self) -> bool {
        self.det.sign() == Sign::Positive
    }

    pub fn entries(&self) -> [&QuadElem; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn apply(&self, z: &ExtPoint) -> ExtPoint {
        match z {
            ExtPoint::Infinity => {
                if self.m21.is_zero() {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(&self.m11 / &self.m21)
                }
            }
            ExtPoint::Finite(z) => {
                let den = &self.m21 * z + &self.m22;
                if den.is_zero() {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((&self.m11 * z + &self.m12) / den)
                }
            }
        }
    }

    pub fn apply_finite(&self, z: &QuadElem) -> ExtPoint {
        self.apply(&ExtPoint::Finite(z.clone()))
    }

    /// Preimage of ∞: `−m22/m21`.
    pub fn pole(&self) -> ExtPoint {
        if self.m21.is_zero() {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(-(&self.m22 / &self.m21))
        }
    }

    /// Preimage of 0: `−m12/m11`.
    pub fn zero(&self) -> ExtPoint {
        if self.m11.is_zero() {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(-(&self.m12 / &self.m11))
        }
    }

    /// Matrix product: `self ∘ other` as maps.
    pub fn compose(&self, o: &MobiusMap) -> MobiusMap {
        MobiusMap::new(
            &self.m11 * &o.m11 + &self.m12 * &o.m21,
            &self.m11 * &o.m12 + &self.m12 * &o.m22,
            &self.m21 * &o.m11 + &self.m22 * &o.m21,
            &self.m21 * &o.m12 + &self.m22 * &o.m22,
        )
        .expect("product of invertible matrices")
    }

    /// Adjugate, which is the inverse up to the scalar `det`.
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap::new(self.m22.clone(), -&self.m12, -&self.m21, self.m11.clone()).expect("adjugate is invertible")
    }

    pub fn pow(&self, n: i64) -> MobiusMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = MobiusMap::identity(self.d());
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Equality as transformations: one matrix is a nonzero multiple of the other.
    pub fn projectively_eq(&self, o: &MobiusMap) -> bool {
        let a = self.entries();
        let b = o.entries();
        (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.projectively_eq(&MobiusMap::identity(self.d()))
    }

    /// Smallest `k ≤ bound` with `self^k = id`, if any.
    pub fn finite_order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.compose(self);
        }
        None
    }

    pub fn image(&self, arc: &Arc) -> Arc {
        arc_image(self, arc)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> (({})z + ({}))/(({})z + ({}))", self.m11, self.m12, self.m21, self.m22)
    }
}

/// Reads off the real action of Ψ(u): all-real entries are taken as they are,
/// all-imaginary ones are divided by 𝕚.
pub fn to_real_mobius(m: &ComplexMatrix2) -> Result<MobiusMap> {
    let flat: Vec<&ComplexQuad> = m.e.iter().flatten().collect();
    let pick: fn(&ComplexQuad) -> QuadElem = if flat.iter().all(|z| z.is_real()) {
        |z| z.re.clone()
    } else if flat.iter().all(|z| z.is_imaginary()) {
        |z| z.im.clone()
    } else {
        return Err(Error::NotRealProjective);
    };
    MobiusMap::new(pick(flat[0]), pick(flat[1]), pick(flat[2]), pick(flat[3]))
}

/// φ_u for a quaternion unit.
pub fn mobius_of(q: &QuatElem) -> Result<MobiusMap> {
    to_real_mobius(&psi(q))
}

/// Exact image of an arc. Endpoints go to endpoint images; an orientation
/// reversing map swaps them (and their closedness flags).
pub fn arc_image(m: &MobiusMap, arc: &Arc) -> Arc {
    match arc {
        Arc::Full => Arc::Full,
        Arc::Point(p) => Arc::Point(m.apply(p)),
        Arc::Punctured(p) => Arc::Punctured(m.apply(p)),
        Arc::Proper { start, end, start_closed, end_closed } => {
            let (s, e) = (m.apply(start), m.apply(end));
            if m.preserves_orientation() {
                Arc::Proper { start: s, end: e, start_closed: *start_closed, end_closed: *end_closed }
            } else {
                Arc::Proper { start: e, end: s, start_closed: *end_closed, end_closed: *start_closed }
            }
        }
    }
}
