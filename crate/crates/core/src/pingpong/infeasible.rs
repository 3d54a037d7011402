//! The d = 2 pair `u = 1 + (sqrt −2)i`, `w = sqrt −2 + k` admits no table of
//! the interval shape with `a₂ < −sqrt 2 < sqrt 2 < b₂` and
//! `−1/sqrt 2 < a₁ < 0 < b₁ < 1/sqrt 2`. This module samples that family.

use super::{Generator, PingPongSetup, PingPongTable, Recipe};
use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadElem, SquareFreeD};
use crate::mobius::{ExtPoint, MobiusMap};
use crate::par::{self, Execution};
use crate::pell::pell_fundamental;
use crate::quaternion::{pp1_homothety_unit, w1_unit};

pub const INFEASIBILITY_METHOD: &str =
    "sampled falsification of the constrained family plus exact check of the reduced two-inequality system";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityReport {
    pub resolution: u32,
    pub system_samples: u64,
    pub system_solutions: u64,
    /// `(a₂, a₁)` of the first sample satisfying both inequalities.
    pub first_solution: Option<(QuadElem, QuadElem)>,
    pub table_samples: u64,
    pub table_passes: u64,
    /// `(a₂, a₁, b₁, b₂)` of the first sampled table that passes.
    pub first_passing_table: Option<[QuadElem; 4]>,
    pub method: &'static str,
}

impl InfeasibilityReport {
    pub fn infeasible(&self) -> bool {
        self.system_solutions == 0 && self.table_passes == 0
    }
}

fn d2() -> SquareFreeD {
    SquareFreeD::new(2).unwrap()
}

fn maps() -> (Generator, Generator) {
    let e = pell_fundamental(d2()).unwrap();
    let w = Generator::from_unit("h1 = phi_w", w1_unit(&e)).unwrap();
    let u = Generator::from_unit("h2 = phi_u", pp1_homothety_unit(&e)).unwrap();
    (w, u)
}

fn value(m: &MobiusMap, z: &QuadElem) -> Option<QuadElem> {
    match m.apply_finite(z) {
        ExtPoint::Finite(q) => Some(q),
        ExtPoint::Infinity => None,
    }
}

/// The pair of inequalities `ρ·a₂ < h₁(a₁)` and `h₁(a₂) < a₁/ρ`, with
/// `h₁(z) = (sqrt2·z + 1)/(z + sqrt2)` and `ρ = (1 − sqrt2)/(1 + sqrt2)`.
pub fn infeasibility_system(a2: &QuadElem, a1: &QuadElem) -> (bool, bool) {
    let d = d2();
    let s2 = QuadElem::sqrt_d(d);
    let one = QuadElem::one(d);
    let rho = (&one - &s2) / (&one + &s2);
    let h1 = MobiusMap::new(s2.clone(), one.clone(), one, s2).unwrap();
    let first = value(&h1, a1).is_some_and(|h| &rho * a2 < h);
    let second = value(&h1, a2).is_some_and(|h| h < a1 / &rho);
    (first, second)
}

/// Grid abscissae: `a₂` runs below `−1415/1000 < −sqrt 2`, quadratically
/// spread out to about −51; `a₁` runs through `]−7071/10000, 0[`.
fn grid(resolution: u32) -> (Vec<QuadElem>, Vec<QuadElem>) {
    let d = d2();
    let n = resolution as i64;
    let a2 = (0..n).map(|i| QuadElem::rational(-(rat(1415, 1000) + rat(50 * i * i, n * n)), d)).collect();
    let a1 = (0..n).map(|j| QuadElem::rational(-(rat(7071, 10000) * rat(j + 1, n + 1)), d)).collect();
    (a2, a1)
}

/// Exact evaluation of the reduced system on a `resolution × resolution`
/// grid, and `check_ping_pong` on as many full tables from the constraint
/// box. Even cells use the symmetric table `b = −a`; odd cells draw `b₁, b₂`
/// from scrambled grid indices.
pub fn infeasibility_sweep(resolution: u32, exec: Execution) -> Result<InfeasibilityReport> {
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let (g2, g1) = grid(resolution);
    let n = resolution as usize;
    let (w, u) = maps();
    let rows: Vec<usize> = (0..n).collect();
    let per_row = par::map(&rows, exec, |&i| {
        let mut sys: (u64, Option<(QuadElem, QuadElem)>) = (0, None);
        let mut tab: (u64, Option<[QuadElem; 4]>) = (0, None);
        for j in 0..n {
            let (a2, a1) = (&g2[i], &g1[j]);
            if let (true, true) = infeasibility_system(a2, a1) {
                sys.0 += 1;
                sys.1.get_or_insert_with(|| (a2.clone(), a1.clone()));
            }
            let (bi, bj) = if (i + j) % 2 == 0 { (i, j) } else { ((7 * i + 3 * j + 1) % n, (3 * i + 7 * j + 2) % n) };
            let (b2, b1) = (-&g2[bi], -&g1[bj]);
            let table = PingPongTable::interval_layout(a2, a1, &b1, &b2, false);
            let setup = PingPongSetup { recipe: Recipe::User, generators: vec![w.clone(), u.clone()], table, notes: vec![] };
            if setup.check().expect("matching arity").passed {
                tab.0 += 1;
                tab.1.get_or_insert_with(|| [a2.clone(), a1.clone(), b1.clone(), b2.clone()]);
            }
        }
        (sys, tab)
    });
    let mut report = InfeasibilityReport {
        resolution,
        system_samples: (n * n) as u64,
        system_solutions: 0,
        first_solution: None,
        table_samples: (n * n) as u64,
        table_passes: 0,
        first_passing_table: None,
        method: INFEASIBILITY_METHOD,
    };
    for (sys, tab) in per_row {
        report.system_solutions += sys.0;
        report.table_passes += tab.0;
        if report.first_solution.is_none() {
            report.first_solution = sys.1;
        }
        if report.first_passing_table.is_none() {
            report.first_passing_table = tab.1;
        }
    }
    Ok(report)
}
