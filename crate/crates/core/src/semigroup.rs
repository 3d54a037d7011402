//! Free semigroups from a common invariant arc: if `φ₁(U) ⊆ U`,
//! `φ₂(U) ⊆ U`, `x₀ ∉ U`, `φ₁(x₀) = x₀` and `φ₂(x₀) ∈ U`, and neither map
//! has finite order, then `⟨φ₁, φ₂⟩` is a free semigroup.

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadElem};
use crate::mobius::{mobius_of, Arc, ArcSet, ExtPoint, MobiusMap};
use crate::pell::FundUnit;
use crate::pingpong::WKind;
use crate::quaternion::{pp1_homothety_unit, w1_unit, QuatElem, TORSION_BOUND};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupCondition {
    pub id: &'static str,
    pub description: String,
    /// The set claimed to lie inside `rhs`, when the condition is a containment.
    pub lhs: Option<ArcSet>,
    pub rhs: Option<ArcSet>,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupCertificate {
    pub phi1: MobiusMap,
    pub phi2: MobiusMap,
    pub u: Arc,
    pub x0: ExtPoint,
    pub conditions: Vec<SemigroupCondition>,
    pub passed: bool,
}

/// Maps and data for the criterion, with the quaternions they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupData {
    pub kind: WKind,
    /// Quaternions whose maps are `φ₁`, `φ₂` (up to inversion of `φ₂`).
    pub units: (QuatElem, QuatElem),
    pub phi1: MobiusMap,
    pub phi2: MobiusMap,
    pub u: Arc,
    pub x0: ExtPoint,
    pub note: String,
}

impl SemigroupData {
    pub fn check(&self) -> Result<SemigroupCertificate> {
        check_semigroup_criterion(&self.phi1, &self.phi2, &self.u, &self.x0)
    }
}

fn cond(id: &'static str, description: String, sets: Option<(ArcSet, ArcSet)>, passed: bool, witness: Option<String>) -> SemigroupCondition {
    let (lhs, rhs) = sets.unzip();
    SemigroupCondition { id, description, lhs, rhs, passed, witness }
}

pub fn check_semigroup_criterion(phi1: &MobiusMap, phi2: &MobiusMap, u: &Arc, x0: &ExtPoint) -> Result<SemigroupCertificate> {
    let d = phi1.d();
    if phi2.d() != d {
        return Err(Error::FieldMismatch(d.get(), phi2.d().get()));
    }
    if matches!(u, Arc::Full) {
        return Err(Error::DegenerateArc("U is all of Omega"));
    }
    let set = ArcSet::from_arc(u, d);
    let point = |p: &ExtPoint| ArcSet::from_arc(&Arc::Point(p.clone()), d);
    let mut conditions = Vec::new();
    conditions.push(cond(
        "x0-outside-U",
        format!("x0 = {x0} is not in U = {u}"),
        Some((point(x0), set.complement())),
        !set.contains(x0),
        set.contains(x0).then(|| x0.to_string()),
    ));
    let fx = phi1.apply(x0);
    conditions.push(cond("phi1-fixes-x0", format!("phi1(x0) = {fx} equals x0"), Some((point(&fx), point(x0))), &fx == x0, (&fx != x0).then(|| fx.to_string())));
    let gx = phi2.apply(x0);
    conditions.push(cond("phi2-x0-in-U", format!("phi2(x0) = {gx} is in U"), Some((point(&gx), set.clone())), set.contains(&gx), (!set.contains(&gx)).then(|| gx.to_string())));
    for (id, name, m) in [("phi1-U-invariant", "phi1", phi1), ("phi2-U-invariant", "phi2", phi2)] {
        let img = set.image(m);
        let c = img.is_subset(&set);
        conditions.push(cond(id, format!("{name}(U) = {img} is contained in U"), Some((img, set.clone())), c.holds, c.witness));
    }
    for (id, name, m) in [("phi1-infinite-order", "phi1", phi1), ("phi2-infinite-order", "phi2", phi2)] {
        let order = m.finite_order(TORSION_BOUND);
        conditions.push(cond(
            id,
            format!("{name}^k is not the identity for k <= {TORSION_BOUND}"),
            None,
            order.is_none(),
            order.map(|k| format!("order {k}")),
        ));
    }
    let passed = conditions.iter().all(|c| c.passed);
    Ok(SemigroupCertificate { phi1: phi1.clone(), phi2: phi2.clone(), u: u.clone(), x0: x0.clone(), conditions, passed })
}

/// For `N(ε) = +1`: `φ₁ = φ_u` (the homothety), `φ₂ = φ_w` for w1 and `φ_w⁻¹`
/// for w2, w3, `U = ]0,∞[`, `x₀ = 0`.
///
/// For `N(ε) = −1` (w1 only) the homothety ratio is negative and `]0,∞[` is
/// not invariant under it. Then `φ_w` fixes `±1` and `φ_w(0) = x/(y·sqrt d)`
/// lies in `]−1,1[`, so the roles are `φ₁ = φ_w`, `φ₂ = φ_u`,
/// `U = ]−1,1[`, `x₀ = −1`.
pub fn standard_semigroup_data(e: &FundUnit, kind: WKind) -> Result<SemigroupData> {
    let d = e.d;
    if e.norm != 1 && kind != WKind::W1 {
        return Err(Error::InvalidInput(format!("{kind} needs a fundamental unit of norm +1, d = {d} has norm -1")));
    }
    let zero = ExtPoint::Finite(QuadElem::zero(d));
    let u_unit = pp1_homothety_unit(e);
    let w_unit = kind.unit(e);
    let phi_u = mobius_of(&u_unit)?;
    let phi_w = mobius_of(&w_unit)?;
    if e.norm == -1 {
        let pm = |n| ExtPoint::Finite(QuadElem::rational(int(n), d));
        return Ok(SemigroupData {
            kind,
            units: (w_unit, u_unit),
            phi1: phi_w,
            phi2: phi_u,
            u: Arc::open(pm(-1), pm(1)),
            x0: pm(-1),
            note: "norm -1: phi1 = phi_w fixes -1, phi2 = phi_u contracts ]-1,1[".into(),
        });
    }
    let (phi2, note) = match kind {
        WKind::W1 => (phi_w, "phi1 = phi_u, phi2 = phi_w"),
        WKind::W2 | WKind::W3 => (phi_w.inverse(), "phi1 = phi_u, phi2 = phi_w^-1"),
    };
    Ok(SemigroupData {
        kind,
        units: (u_unit, w_unit),
        phi1: phi_u,
        phi2,
        u: Arc::open(zero.clone(), ExtPoint::Infinity),
        x0: zero,
        note: note.into(),
    })
}

/// The semigroup pair `u = 1 + (sqrt −2)i`, `w = sqrt −2 + k`.
pub fn d2_semigroup_units() -> (QuatElem, QuatElem) {
    let e = crate::pell::pell_fundamental(crate::exactnum::SquareFreeD::new(2).unwrap()).unwrap();
    (pp1_homothety_unit(&e), w1_unit(&e))
}

/// The criterion for arbitrary maps on a set, checked on a finite sample of
/// points standing in for `U` and its complement.
pub fn criterion_on_sample<V: PartialEq>(
    phi1: impl Fn(&V) -> V,
    phi2: impl Fn(&V) -> V,
    in_u: impl Fn(&V) -> bool,
    x0: &V,
    sample: &[V],
) -> bool {
    !in_u(x0)
        && phi1(x0) == *x0
        && in_u(&phi2(x0))
        && sample.iter().filter(|v| in_u(v)).all(|v| in_u(&phi1(v)) && in_u(&phi2(v)))
}
