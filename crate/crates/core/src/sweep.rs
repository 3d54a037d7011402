//! Every recipe over a range of square-free `d`. Which recipes apply to a
//! given `d` is decided by their constructors' preconditions.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactnum::SquareFreeD;
use crate::par::{self, Execution};
use crate::pell::{pell_fundamental, FundUnit};
use crate::pingpong::{corollary_table, d2_special_table, standard_table, verify_interval_lemmas, WKind};
use crate::semigroup::standard_semigroup_data;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The recipe's preconditions exclude this `d`.
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub item: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub d: SquareFreeD,
    pub fund: FundUnit,
    pub entries: Vec<SweepEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: u32,
    pub fail: u32,
    pub skipped: u32,
}

fn outcome(r: Result<bool>) -> Outcome {
    match r {
        Ok(true) => Outcome::Pass,
        Ok(false) => Outcome::Fail,
        Err(e) => Outcome::NotApplicable(e.to_string()),
    }
}

pub fn sweep_row(d: SquareFreeD) -> Result<SweepRow> {
    let e = pell_fundamental(d)?;
    let mut entries = Vec::new();
    let mut push = |item: String, o: Outcome| entries.push(SweepEntry { item, outcome: o });
    for k in WKind::ALL {
        push(format!("group-{k}"), outcome(standard_table(&e, k).and_then(|s| s.check()).map(|c| c.passed)));
    }
    push("group-corollary".into(), outcome(corollary_table(&e).and_then(|s| s.check()).map(|c| c.passed)));
    let special = if d.get() == 2 {
        outcome(d2_special_table().check().map(|c| c.passed))
    } else {
        Outcome::NotApplicable("only defined for d = 2".into())
    };
    push("group-d2special".into(), special);
    for k in WKind::ALL {
        push(format!("lemmas-{k}"), outcome(verify_interval_lemmas(&e, k).map(|r| r.passed())));
    }
    for k in WKind::ALL {
        push(format!("semigroup-{k}"), outcome(standard_semigroup_data(&e, k).and_then(|s| s.check()).map(|c| c.passed)));
    }
    Ok(SweepRow { d, fund: e, entries })
}

/// Rows for every square-free `d` in `[d_min, d_max]`, sorted by `d`.
pub fn sweep(d_min: u64, d_max: u64, exec: Execution) -> Result<Vec<SweepRow>> {
    let ds = SquareFreeD::range(d_min.max(2), d_max);
    par::map(&ds, exec, |&d| sweep_row(d)).into_iter().collect()
}

pub fn tally(rows: &[SweepRow]) -> BTreeMap<String, Tally> {
    let mut out: BTreeMap<String, Tally> = BTreeMap::new();
    for row in rows {
        for e in &row.entries {
            let t = out.entry(e.item.clone()).or_default();
            match e.outcome {
                Outcome::Pass => t.pass += 1,
                Outcome::Fail => t.fail += 1,
                Outcome::NotApplicable(_) => t.skipped += 1,
            }
        }
    }
    out
}
