//! Ping-Pong tables for pairs of Möbius maps and their exact verification.

mod infeasible;
mod lemmas;

pub use infeasible::{infeasibility_sweep, infeasibility_system, InfeasibilityReport, INFEASIBILITY_METHOD};
pub use lemmas::{verify_interval_lemmas, LemmaCheck, LemmaReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, QuadElem, SquareFreeD};
pub use crate::mobius::{Arc, ArcSet};
use crate::mobius::{mobius_of, ExtPoint, MobiusMap};
use crate::pell::{pell_fundamental, FundUnit};
use crate::quaternion::{pp1_homothety_unit, w1_unit, w2_unit, w3_unit, ImagQuad, QuatElem, Slot};

/// Which `w` accompanies the homothety unit `u = x + (y·sqrt −d)i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WKind {
    W1,
    W2,
    W3,
}

impl WKind {
    pub const ALL: [WKind; 3] = [WKind::W1, WKind::W2, WKind::W3];

    pub fn unit(self, e: &FundUnit) -> QuatElem {
        match self {
            WKind::W1 => w1_unit(e),
            WKind::W2 => w2_unit(e),
            WKind::W3 => w3_unit(e),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WKind::W1 => "w1",
            WKind::W2 => "w2",
            WKind::W3 => "w3",
        }
    }
}

impl fmt::Display for WKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a table and generator pair were produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Standard(WKind),
    Corollary,
    /// d = 2 with `u` replaced by `u^power`.
    D2Special { power: u32 },
    Theorem1,
    User,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Standard(k) => write!(f, "standard-{k}"),
            Recipe::Corollary => write!(f, "corollary"),
            Recipe::D2Special { power } => write!(f, "d2special-u^{power}"),
            Recipe::Theorem1 => write!(f, "theorem1"),
            Recipe::User => write!(f, "user"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub unit: Option<QuatElem>,
    pub map: MobiusMap,
}

impl Generator {
    pub fn from_unit(label: &str, unit: QuatElem) -> Result<Generator> {
        let map = mobius_of(&unit)?;
        Ok(Generator { label: label.to_string(), unit: Some(unit), map })
    }
}

/// `slots[i] = [A_{i,+1}, A_{i,−1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongTable {
    pub d: SquareFreeD,
    pub slots: Vec<[ArcSet; 2]>,
}

impl PingPongTable {
    pub fn from_arcs(d: SquareFreeD, slots: Vec<[Vec<Arc>; 2]>) -> PingPongTable {
        let slots = slots.into_iter().map(|[p, m]| [ArcSet::from_arcs(&p, d), ArcSet::from_arcs(&m, d)]).collect();
        PingPongTable { d, slots }
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    /// The two-generator layout `A_{1,1} = [a₂,a₁]`, `A_{1,−1} = [b₁,b₂]`,
    /// `A_{2,1} = [−∞,a₂[ ∪ ]b₂,∞]`, `A_{2,−1} = ]a₁,b₁[`. With `swapped`
    /// the first two sets trade places.
    pub fn interval_layout(a2: &QuadElem, a1: &QuadElem, b1: &QuadElem, b2: &QuadElem, swapped: bool) -> PingPongTable {
        let d = a2.d();
        let f = |q: &QuadElem| ExtPoint::Finite(q.clone());
        let left = Arc::closed(f(a2), f(a1));
        let right = Arc::closed(f(b1), f(b2));
        let (a11, a1m) = if swapped { (right, left) } else { (left, right) };
        PingPongTable::from_arcs(d, vec![[vec![a11], vec![a1m]], [vec![Arc::open(f(b2), f(a2))], vec![Arc::open(f(a1), f(b1))]]])
    }

    pub fn label(i: usize, e: usize) -> String {
        format!("A{},{}", i + 1, if e == 0 { "+1" } else { "-1" })
    }
}

impl fmt::Display for PingPongTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            for (e, set) in s.iter().enumerate() {
                writeln!(f, "{} = {}", PingPongTable::label(i, e), set)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub id: String,
    pub description: String,
    pub lhs: ArcSet,
    pub rhs: ArcSet,
    pub passed: bool,
    pub witness: Option<String>,
    pub boundary_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub recipe: Recipe,
    pub d: SquareFreeD,
    pub generators: Vec<Generator>,
    pub table: PingPongTable,
    pub conditions: Vec<Condition>,
    pub passed: bool,
}

impl Certificate {
    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

/// Generators with the table they are meant to play ping-pong on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongSetup {
    pub recipe: Recipe,
    pub generators: Vec<Generator>,
    pub table: PingPongTable,
    pub notes: Vec<String>,
}

fn sign_name(e: usize) -> &'static str {
    if e == 0 {
        "+1"
    } else {
        "-1"
    }
}

impl PingPongSetup {
    pub fn check(&self) -> Result<Certificate> {
        let table = &self.table;
        if self.generators.len() != table.arity() {
            return Err(Error::ArityMismatch { maps: self.generators.len(), slots: table.arity() });
        }
        if let Some(g) = self.generators.iter().find(|g| g.map.d() != table.d) {
            return Err(Error::FieldMismatch(g.map.d().get(), table.d.get()));
        }
        let mut conditions = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for e in 0..2 {
                let map = if e == 0 { g.map.clone() } else { g.map.inverse() };
                let lhs = table.slots[i][e].complement().image(&map);
                let rhs = table.slots[i][1 - e].clone();
                let c = lhs.is_subset(&rhs);
                conditions.push(Condition {
                    id: format!("h{}^{}", i + 1, sign_name(e)),
                    description: format!(
                        "h{n}^{s}(Omega \\ {src}) is contained in {dst}",
                        n = i + 1,
                        s = sign_name(e),
                        src = PingPongTable::label(i, e),
                        dst = PingPongTable::label(i, 1 - e)
                    ),
                    lhs,
                    rhs,
                    passed: c.holds,
                    witness: c.witness,
                    boundary_only: c.boundary_only,
                });
            }
        }
        let flat: Vec<(String, &ArcSet)> = table
            .slots
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().enumerate().map(move |(e, a)| (PingPongTable::label(i, e), a)))
            .collect();
        for (name, set) in &flat {
            conditions.push(Condition {
                id: format!("nonempty({name})"),
                description: format!("{name} is nonempty"),
                lhs: (*set).clone(),
                rhs: ArcSet::empty(table.d),
                passed: !set.is_empty(),
                witness: None,
                boundary_only: false,
            });
        }
        for a in 0..flat.len() {
            for b in a + 1..flat.len() {
                let meet = flat[a].1.intersection(flat[b].1);
                let witness = (!meet.is_empty()).then(|| meet.is_subset(&ArcSet::empty(table.d)).witness).flatten();
                conditions.push(Condition {
                    id: format!("disjoint({},{})", flat[a].0, flat[b].0),
                    description: format!("{} and {} are disjoint", flat[a].0, flat[b].0),
                    lhs: flat[a].1.clone(),
                    rhs: flat[b].1.clone(),
                    passed: meet.is_empty(),
                    boundary_only: !meet.is_empty() && meet.arcs().iter().all(|x| matches!(x, Arc::Point(_))),
                    witness,
                });
            }
        }
        let passed = conditions.iter().all(|c| c.passed);
        Ok(Certificate {
            recipe: self.recipe.clone(),
            d: table.d,
            generators: self.generators.clone(),
            table: table.clone(),
            conditions,
            passed,
        })
    }
}

/// Checks bare maps against a table.
pub fn check_ping_pong(maps: &[MobiusMap], table: &PingPongTable) -> Result<Certificate> {
    let generators = maps
        .iter()
        .enumerate()
        .map(|(i, m)| Generator { label: format!("h{}", i + 1), unit: None, map: m.clone() })
        .collect();
    PingPongSetup { recipe: Recipe::User, generators, table: table.clone(), notes: vec![] }.check()
}

pub(crate) fn finite(p: ExtPoint, what: &str) -> Result<QuadElem> {
    match p {
        ExtPoint::Finite(q) => Ok(q),
        ExtPoint::Infinity => Err(Error::InvalidInput(format!("{what} is at infinity"))),
    }
}

/// Pole and zero of a map and of its inverse: `(z_p, z_0, z'_p, z'_0)`.
pub(crate) fn poles_and_zeros(h: &MobiusMap) -> Result<[QuadElem; 4]> {
    let inv = h.inverse();
    Ok([finite(h.pole(), "pole")?, finite(h.zero(), "zero")?, finite(inv.pole(), "inverse pole")?, finite(inv.zero(), "inverse zero")?])
}

pub(crate) fn require_norm_plus(e: &FundUnit, what: &str) -> Result<()> {
    if e.norm != 1 {
        return Err(Error::InvalidInput(format!("{what} needs a fundamental unit of norm +1, d = {} has norm -1", e.d)));
    }
    Ok(())
}

pub(crate) fn require_w2_bound(e: &FundUnit) -> Result<()> {
    if e.x <= 2.into() {
        return Err(Error::InvalidInput(format!("w2 needs x > 2, d = {} has x = {}", e.d, e.x)));
    }
    Ok(())
}

/// Endpoints `(a₂, a₁, b₁, b₂)` of the table for `kind`, computed from the
/// pole and zero of `h₁ = φ_w` and of its inverse.
pub fn standard_endpoints(h1: &MobiusMap, kind: WKind) -> Result<[QuadElem; 4]> {
    let [zp, z0, zpp, z0p] = poles_and_zeros(h1)?;
    let (half, three) = (rat(1, 2), int(3));
    Ok(match kind {
        WKind::W1 => {
            let a2 = z0.scale(&rat(3, 2));
            let a1 = zp.scale(&half);
            [a2.clone(), a1.clone(), -a1, -a2]
        }
        WKind::W2 | WKind::W3 => [zpp.scale(&three), z0p.scale(&half), z0.scale(&half), zp.scale(&three)],
    })
}

/// The main recipe: `h₁ = φ_w`, `h₂ = φ_u`, requiring `N(ε) = +1` (and
/// `x > 2` for w2).
pub fn standard_table(e: &FundUnit, kind: WKind) -> Result<PingPongSetup> {
    require_norm_plus(e, "the standard table")?;
    if kind == WKind::W2 {
        require_w2_bound(e)?;
    }
    let h1 = Generator::from_unit("h1 = phi_w", kind.unit(e))?;
    let h2 = Generator::from_unit("h2 = phi_u", pp1_homothety_unit(e))?;
    let [a2, a1, b1, b2] = standard_endpoints(&h1.map, kind)?;
    let table = PingPongTable::interval_layout(&a2, &a1, &b1, &b2, kind != WKind::W1);
    Ok(PingPongSetup { recipe: Recipe::Standard(kind), generators: vec![h1, h2], table, notes: vec![] })
}

/// `N(ε) = −1`, `x ≠ 1`, with `w = y·sqrt −d + xk`:
/// `−a₂ = b₂ = (3/2)·y·sqrt d/x` and `−a₁ = b₁ = (1/2)·x/(y·sqrt d)`.
pub fn corollary_table(e: &FundUnit) -> Result<PingPongSetup> {
    if e.norm != -1 {
        return Err(Error::InvalidInput(format!("the corollary table needs norm -1, d = {} has norm +1", e.d)));
    }
    if e.x == 1.into() {
        return Err(Error::InvalidInput("the corollary table needs x != 1".into()));
    }
    corollary_layout(e)
}

/// The corollary endpoints for any fundamental unit, without the norm and
/// `x ≠ 1` guards. At d = 2 the resulting table fails.
pub fn corollary_layout(e: &FundUnit) -> Result<PingPongSetup> {
    let d = e.d;
    let x = QuadElem::rational(int(e.x.clone()), d);
    let yy = QuadElem::new(int(0), int(e.y.clone()), d);
    let b2 = (&yy / &x).scale(&rat(3, 2));
    let b1 = (&x / &yy).scale(&rat(1, 2));
    let h1 = Generator::from_unit("h1 = phi_w", w1_unit(e))?;
    let h2 = Generator::from_unit("h2 = phi_u", pp1_homothety_unit(e))?;
    let table = PingPongTable::interval_layout(&-&b2, &-&b1, &b1, &b2, false);
    Ok(PingPongSetup { recipe: Recipe::Corollary, generators: vec![h1, h2], table, notes: vec![] })
}

/// d = 2 pair `(u^power, w)`, `u = 1 + (sqrt −2)i`, `w = sqrt −2 + k`, on the
/// table `−a₂ = b₂ = 2·sqrt 2`, `−a₁ = b₁ = 1/(2·sqrt 2)`.
pub fn d2_special_setup(power: u32) -> Result<PingPongSetup> {
    if power == 0 {
        return Err(Error::InvalidInput("power must be at least 1".into()));
    }
    let d = SquareFreeD::new(2)?;
    let e = pell_fundamental(d)?;
    let u = pp1_homothety_unit(&e).pow(power as i64)?;
    let h1 = Generator::from_unit("h1 = phi_w", w1_unit(&e))?;
    let h2 = Generator::from_unit(&format!("h2 = phi_u^{power}"), u)?;
    let b2 = QuadElem::new(int(0), int(2), d);
    let b1 = QuadElem::new(int(0), rat(1, 4), d);
    let table = PingPongTable::interval_layout(&-&b2, &-&b1, &b1, &b2, false);
    Ok(PingPongSetup { recipe: Recipe::D2Special { power }, generators: vec![h1, h2], table, notes: vec![] })
}

/// The `(u², w)` instance.
pub fn d2_special_table() -> PingPongSetup {
    d2_special_setup(2).expect("fixed data")
}

fn theorem1_units() -> (QuatElem, QuatElem) {
    let d = SquareFreeD::new(1).unwrap();
    let s = |k: i64| ImagQuad::surd(int(k), d);
    // Under Ψ these give z/(2z+1) and z+2.
    let u = QuatElem::from_slots(d, &[(Slot::One, s(1)), (Slot::J, s(-1)), (Slot::K, ImagQuad::from_int(1, d))]);
    let w = QuatElem::from_slots(d, &[(Slot::One, s(1)), (Slot::J, s(1)), (Slot::K, ImagQuad::from_int(1, d))]);
    (u, w)
}

/// `h₁ = z/(2z+1)`, `h₂ = z+2` on `A₁,₁ = ]−1,0[`, `A₁,₋₁ = [0,1]`,
/// `A₂,₁ = [−∞,−1]`, `A₂,₋₁ = ]1,∞[`. The point ∞ is assigned to `A₂,₁` only.
pub fn theorem1_setup() -> PingPongSetup {
    let mut s = theorem1_literal_setup();
    let d = s.table.d;
    let p = |n: i64| ExtPoint::Finite(QuadElem::from_int(n, d));
    s.table.slots[1][1] = ArcSet::from_arc(&Arc::open(p(1), ExtPoint::Infinity), d);
    s.notes.push("infinity is kept in A2,+1 and removed from A2,-1 so the sets are disjoint".into());
    s
}

/// The same data with `A₂,₋₁ = ]1,∞]`, which shares ∞ with `A₂,₁`.
pub fn theorem1_literal_setup() -> PingPongSetup {
    let d = SquareFreeD::new(1).unwrap();
    let p = |n: i64| ExtPoint::Finite(QuadElem::from_int(n, d));
    let (u, w) = theorem1_units();
    let h1 = Generator::from_unit("h1 = z/(2z+1)", u).unwrap();
    let h2 = Generator::from_unit("h2 = z+2", w).unwrap();
    let table = PingPongTable::from_arcs(
        d,
        vec![
            [vec![Arc::open(p(-1), p(0))], vec![Arc::closed(p(0), p(1))]],
            [vec![Arc::closed(ExtPoint::Infinity, p(-1))], vec![Arc::new(p(1), ExtPoint::Infinity, false, true).unwrap()]],
        ],
    );
    PingPongSetup { recipe: Recipe::Theorem1, generators: vec![h1, h2], table, notes: vec![] }
}

/// What a ping-pong certificate for `(h₁, h₂)` says about `⟨h₁ⁿ, h₂ⁿ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerVerdict {
    Free { reason: String },
    Undecided { reason: String },
}

impl PowerVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, PowerVerdict::Free { .. })
    }

    pub fn reason(&self) -> &str {
        match self {
            PowerVerdict::Free { reason } | PowerVerdict::Undecided { reason } => reason,
        }
    }
}

/// Powers of a free basis generate a free subgroup, so a passing certificate
/// for `(h₁, h₂)` settles every `n`. For the d = 2 pair built on `u^p` this
/// covers `n` divisible by `p`; other `n ≥ 2` get the same table re-checked
/// with `uⁿ`, and `n = 1` stays open.
pub fn power_certificate(base: &Certificate, n: u32) -> Result<PowerVerdict> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if !base.passed {
        return Ok(PowerVerdict::Undecided { reason: "the base certificate fails".into() });
    }
    let subgroup = |what: &str| PowerVerdict::Free {
        reason: format!("<h1^{n}, h2^{n}> is a subgroup of the free group {what} generated by powers of its basis"),
    };
    match base.recipe {
        Recipe::D2Special { power } if !n.is_multiple_of(power) => {
            if n == 1 {
                return Ok(PowerVerdict::Undecided {
                    reason: format!("only <w, u^{power}> is certified; the pair (w, u) fails every table of this shape"),
                });
            }
            let direct = d2_special_setup(n)?.check()?;
            Ok(if direct.passed {
                PowerVerdict::Free { reason: format!("the same table certifies <w, u^{n}>, which contains <w^{n}, u^{n}>") }
            } else {
                PowerVerdict::Undecided { reason: format!("the table does not certify <w, u^{n}>") }
            })
        }
        Recipe::D2Special { power } => Ok(PowerVerdict::Free {
            reason: format!("<w^{n}, u^{n}> is a subgroup of the certified free group <w, u^{power}>"),
        }),
        _ => Ok(subgroup("<h1, h2>")),
    }
}
