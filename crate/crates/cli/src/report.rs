//! The serialized document every subcommand emits. All numbers that are not
//! counts are exact strings such as `3/2+1/2*sqrt(7)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use quatfree::exactnum::SquareFreeD;
use quatfree::mobius::{Arc, ArcSet, MobiusMap};
use quatfree::oracle::{GroupOracleReport, SemigroupOracleReport};
use quatfree::pell::PellUnit;
use quatfree::pingpong::{Certificate, PowerVerdict};
use quatfree::quaternion::{QuatElem, Slot};
use quatfree::semigroup::SemigroupCertificate;
use quatfree::sweep::{Outcome, SweepRow, Tally};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Inputs,
    pub certificate: Option<CertificatePayload>,
    pub oracle: Option<OracleSummary>,
    pub timing_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<Results>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, Default)]
pub struct Inputs {
    pub d: Option<u64>,
    pub fundamental_unit: Option<PellDoc>,
    #[serde(default)]
    pub units: Vec<UnitDoc>,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PellDoc {
    pub d: u64,
    pub x: String,
    pub y: String,
    pub norm: i32,
}

impl From<&PellUnit> for PellDoc {
    fn from(e: &PellUnit) -> Self {
        PellDoc { d: e.d.get(), x: e.x.to_string(), y: e.y.to_string(), norm: e.norm }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct UnitDoc {
    pub label: String,
    /// Coefficients of `1, i, j, k`.
    pub coefficients: Vec<String>,
    pub norm: String,
    pub support: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_order: Option<bool>,
}

impl UnitDoc {
    pub fn new(label: impl Into<String>, u: &QuatElem) -> Self {
        UnitDoc {
            label: label.into(),
            coefficients: u.coeff_strings(),
            norm: u.norm().to_string(),
            support: u.support().slots().map(|s| s.symbol().to_string()).collect(),
            in_order: None,
        }
    }

    pub fn unit(&self, d: SquareFreeD) -> quatfree::Result<QuatElem> {
        QuatElem::parse_coeffs(&self.coefficients, d)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MapDoc {
    pub label: String,
    /// `[m11, m12, m21, m22]` for `z -> (m11 z + m12)/(m21 z + m22)`.
    pub matrix: Vec<String>,
}

impl MapDoc {
    pub fn new(label: impl Into<String>, m: &MobiusMap) -> Self {
        MapDoc { label: label.into(), matrix: m.entries().iter().map(|q| q.to_string()).collect() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SetDoc {
    pub label: String,
    pub arcs: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ConditionDoc {
    pub id: String,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs_arc: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs_arc: Option<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn of(passed: bool) -> Verdict {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PowerDoc {
    pub n: u32,
    pub free: bool,
    pub reason: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CertificatePayload {
    pub kind: String,
    pub recipe: String,
    pub d: u64,
    pub verdict: Verdict,
    pub maps: Vec<MapDoc>,
    #[serde(default)]
    pub sets: Vec<SetDoc>,
    pub conditions: Vec<ConditionDoc>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guidance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerDoc>,
}

impl CertificatePayload {
    pub fn group(c: &Certificate, notes: &[String]) -> Self {
        let maps = c.generators.iter().map(|g| MapDoc::new(g.label.clone(), &g.map)).collect();
        let sets = c
            .table
            .slots
            .iter()
            .enumerate()
            .flat_map(|(i, s)| {
                s.iter().enumerate().map(move |(e, a)| SetDoc { label: quatfree::pingpong::PingPongTable::label(i, e), arcs: a.to_string() })
            })
            .collect();
        let conditions = c
            .conditions
            .iter()
            .map(|k| ConditionDoc {
                id: k.id.clone(),
                description: k.description.clone(),
                lhs_arc: Some(k.lhs.to_string()),
                rhs_arc: Some(k.rhs.to_string()),
                verdict: Verdict::of(k.passed),
                witness: k.witness.clone(),
            })
            .collect();
        CertificatePayload {
            kind: "group".into(),
            recipe: c.recipe.to_string(),
            d: c.d.get(),
            verdict: Verdict::of(c.passed),
            maps,
            sets,
            conditions,
            notes: notes.to_vec(),
            guidance: None,
            power: None,
        }
    }

    pub fn semigroup(c: &SemigroupCertificate, recipe: &str, note: &str) -> Self {
        let d = c.phi1.d();
        let conditions = c
            .conditions
            .iter()
            .map(|k| ConditionDoc {
                id: k.id.to_string(),
                description: k.description.clone(),
                lhs_arc: k.lhs.as_ref().map(ArcSet::to_string),
                rhs_arc: k.rhs.as_ref().map(ArcSet::to_string),
                verdict: Verdict::of(k.passed),
                witness: k.witness.clone(),
            })
            .collect();
        CertificatePayload {
            kind: "semigroup".into(),
            recipe: recipe.into(),
            d: d.get(),
            verdict: Verdict::of(c.passed),
            maps: vec![MapDoc::new("phi1", &c.phi1), MapDoc::new("phi2", &c.phi2)],
            sets: vec![
                SetDoc { label: "U".into(), arcs: c.u.to_string() },
                SetDoc { label: "x0".into(), arcs: Arc::Point(c.x0.clone()).to_string() },
            ],
            conditions,
            notes: vec![note.to_string()],
            guidance: None,
            power: None,
        }
    }

    pub fn with_power(mut self, n: u32, v: &PowerVerdict) -> Self {
        self.power = Some(PowerDoc { n, free: v.is_free(), reason: v.reason().to_string() });
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass && self.power.as_ref().is_none_or(|p| p.free)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleSummary {
    pub kind: String,
    pub depth: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    pub counts: Vec<u64>,
    pub words_checked: u64,
    /// `none` when no relation (or collision) was found.
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_one: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<String>,
}

impl OracleSummary {
    pub fn group(r: &GroupOracleReport, power: Option<u32>) -> Self {
        OracleSummary {
            kind: "group".into(),
            depth: r.depth,
            power,
            counts: r.counts.clone(),
            words_checked: r.words_checked(),
            result: r.counterexample.as_ref().map_or_else(|| "none".into(), |w| format!("{w} = 1")),
            minus_one: r.minus_one.as_ref().map(|w| format!("{w} = -1")),
            degenerate: r.degenerate.clone(),
        }
    }

    pub fn semigroup(r: &SemigroupOracleReport, power: Option<u32>) -> Self {
        OracleSummary {
            kind: "semigroup".into(),
            depth: r.depth,
            power,
            counts: r.counts.clone(),
            words_checked: r.words_checked(),
            result: r.collision.as_ref().map_or_else(|| "none".into(), |(a, b)| format!("{a} = {b}")),
            minus_one: None,
            degenerate: r.degenerate.clone(),
        }
    }

    pub fn clean(&self) -> bool {
        self.result == "none" && self.degenerate.is_none()
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Results {
    Pell(Vec<PellDoc>),
    Units(Vec<UnitDoc>),
    Sweep(SweepDoc),
    Infeasibility(InfeasibilityDoc),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SweepDoc {
    pub rows: Vec<SweepRowDoc>,
    pub summary: BTreeMap<String, TallyDoc>,
    pub failures: u32,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SweepRowDoc {
    pub unit: PellDoc,
    /// Item name to `pass`, `fail` or `n/a: reason`.
    pub outcomes: BTreeMap<String, String>,
}

impl From<&SweepRow> for SweepRowDoc {
    fn from(r: &SweepRow) -> Self {
        let outcomes = r
            .entries
            .iter()
            .map(|e| {
                let o = match &e.outcome {
                    Outcome::Pass => "pass".to_string(),
                    Outcome::Fail => "fail".to_string(),
                    Outcome::NotApplicable(why) => format!("n/a: {why}"),
                };
                (e.item.clone(), o)
            })
            .collect();
        SweepRowDoc { unit: (&r.fund).into(), outcomes }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TallyDoc {
    pub pass: u32,
    pub fail: u32,
    pub skipped: u32,
}

impl From<&Tally> for TallyDoc {
    fn from(t: &Tally) -> Self {
        TallyDoc { pass: t.pass, fail: t.fail, skipped: t.skipped }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityDoc {
    pub resolution: u32,
    pub method: String,
    pub system_samples: u64,
    pub system_solutions: u64,
    pub first_solution: Option<Vec<String>>,
    pub table_samples: u64,
    pub table_passes: u64,
    pub first_passing_table: Option<Vec<String>>,
    pub infeasible: bool,
}

/// Pretty JSON with object keys sorted, so re-serializing a parsed document
/// reproduces it byte for byte.
pub fn to_canonical_json(doc: &CertificateDocument) -> String {
    let value = serde_json::to_value(doc).expect("document serializes");
    serde_json::to_string_pretty(&value).expect("value serializes")
}

/// Inverse of `ArcSet`'s display form.
pub fn parse_arcset(s: &str, d: SquareFreeD) -> quatfree::Result<ArcSet> {
    if s.trim() == "{}" {
        return Ok(ArcSet::empty(d));
    }
    let arcs = s.split(" U ").map(|a| Arc::parse(a, d)).collect::<quatfree::Result<Vec<_>>>()?;
    Ok(ArcSet::from_arcs(&arcs, d))
}

/// Slot list such as `i,1` or `k,j,1`.
pub fn parse_slots(s: &str) -> quatfree::Result<Vec<Slot>> {
    s.split(',').map(Slot::parse).collect()
}
