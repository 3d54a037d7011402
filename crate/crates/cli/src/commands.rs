use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use quatfree::exactnum::SquareFreeD;
use quatfree::mobius::mobius_of;
use quatfree::oracle::{
    free_group_word_check, free_semigroup_word_check, power_semigroup_word_check, power_word_check, DEFAULT_GROUP_DEPTH,
    DEFAULT_SEMIGROUP_DEPTH,
};
use quatfree::par::Execution;
use quatfree::pell::{pell_fundamental, pell_fundamental_2d, FundUnit};
use quatfree::pingpong::{
    corollary_layout, corollary_table, d2_special_table, infeasibility_sweep, power_certificate, standard_table,
    theorem1_setup, PingPongSetup, PingPongTable, Recipe, WKind,
};
use quatfree::quaternion::{
    gauss_unit, pell2_unit, pell3_unit, pell4_unit, pell4_unit_from_square, prop_pp1_units, PlusMinus, QuatElem, Slot,
};
use quatfree::semigroup::{standard_semigroup_data, SemigroupData};
use quatfree::sweep::{sweep as run_sweep, tally, Outcome};
use quatfree::{Error, Result};

use crate::args::{Family, GroupArgs, OracleArgs, PairArgs, RangeArgs, SemigroupArgs, UnitsArgs};
use crate::report::*;

/// A finished command: its document, the text rendering, and the exit code.
pub struct Run {
    pub doc: CertificateDocument,
    pub text: String,
    pub code: u8,
}

fn sf(d: u64) -> Result<SquareFreeD> {
    SquareFreeD::new(d)
}

fn document(command: &str, inputs: Inputs) -> CertificateDocument {
    CertificateDocument {
        schema_version: SCHEMA_VERSION,
        command: command.into(),
        inputs,
        certificate: None,
        oracle: None,
        timing_ms: 0,
        results: None,
    }
}

fn code(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn range(a: &RangeArgs) -> Result<Vec<SquareFreeD>> {
    match (a.d, a.d_max) {
        (Some(d), None) => Ok(vec![sf(d)?]),
        (None, Some(hi)) => {
            if a.d_min < 2 {
                return Err(Error::DTooSmall { min: 2, got: a.d_min });
            }
            if hi < a.d_min {
                return Err(Error::InvalidInput(format!("--d-max {hi} is below --d-min {}", a.d_min)));
            }
            Ok(SquareFreeD::range(a.d_min, hi))
        }
        (Some(_), Some(_)) => Err(Error::InvalidInput("give either --d or --d-max".into())),
        (None, None) => Err(Error::InvalidInput("one of --d or --d-max is required".into())),
    }
}

fn sign_str(n: i32) -> &'static str {
    if n == 1 {
        "+1"
    } else {
        "-1"
    }
}

pub fn pell(a: &RangeArgs) -> Result<Run> {
    let ds = range(a)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in ds {
        let e = pell_fundamental(d)?;
        writeln!(text, "d={} x={} y={} norm={}", d, e.x, e.y, sign_str(e.norm)).unwrap();
        rows.push(PellDoc::from(&e));
    }
    let mut doc = document("pell", Inputs { d: a.d, ..Default::default() });
    doc.inputs.parameters.insert("d_min".into(), a.d_min.to_string());
    if let Some(hi) = a.d_max {
        doc.inputs.parameters.insert("d_max".into(), hi.to_string());
    }
    doc.results = Some(Results::Pell(rows));
    Ok(Run { doc, text, code: 0 })
}

fn perms<const N: usize>() -> Vec<[Slot; N]> {
    fn go<const N: usize>(cur: &mut Vec<Slot>, out: &mut Vec<[Slot; N]>) {
        if cur.len() == N {
            out.push(cur.clone().try_into().unwrap());
            return;
        }
        for s in Slot::ALL {
            if !cur.contains(&s) {
                cur.push(s);
                go(cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut out);
    out
}

fn slot_choices<const N: usize>(given: &Option<String>) -> Result<Vec<[Slot; N]>> {
    match given {
        None => Ok(perms::<N>()),
        Some(s) => {
            let v = parse_slots(s)?;
            let n = v.len();
            let arr: [Slot; N] = v.try_into().map_err(|_| Error::InvalidInput(format!("expected {N} slots, got {n}")))?;
            Ok(vec![arr])
        }
    }
}

fn slot_names(s: &[Slot]) -> String {
    s.iter().map(|s| s.symbol()).collect::<Vec<_>>().join(",")
}

pub fn units(a: &UnitsArgs) -> Result<Run> {
    let d = sf(a.d)?;
    let mut list: Vec<UnitDoc> = Vec::new();
    let mut fund: Option<FundUnit> = None;
    let mut push = |label: String, u: &QuatElem, in_order: Option<bool>| -> Result<()> {
        if u.unit_norm().is_none() {
            return Err(Error::NonUnit(u.norm().to_string()));
        }
        let mut doc = UnitDoc::new(label, u);
        doc.in_order = in_order;
        list.push(doc);
        Ok(())
    };
    match a.family {
        Family::Pell2 => {
            let e = pell_fundamental(d)?;
            for [xi, psi] in slot_choices::<2>(&a.slots)? {
                push(format!("pell2 xi={} psi={}", xi.symbol(), psi.symbol()), &pell2_unit(&e, xi, psi)?, None)?;
            }
            fund = Some(e);
        }
        Family::Pell3 => {
            let data = pell_fundamental_2d(d)?.ok_or_else(|| {
                Error::InvalidInput(format!("no suitable unit of Z[sqrt {}] within the power bound", 2 * d.get()))
            })?;
            for s in slot_choices::<3>(&a.slots)? {
                push(format!("pell3 slots={}", slot_names(&s)), &pell3_unit(&data, s)?, None)?;
            }
            fund = Some(pell_fundamental(d)?);
        }
        Family::Pell4 => {
            let e = pell_fundamental(d)?;
            let signs = match a.pm.as_deref() {
                None => vec![PlusMinus::Plus, PlusMinus::Minus],
                Some("+") => vec![PlusMinus::Plus],
                Some("-") => vec![PlusMinus::Minus],
                Some(other) => return Err(Error::Parse(other.to_string())),
            };
            let mut last_err = None;
            for s in slot_choices::<4>(&a.slots)? {
                for &pm in &signs {
                    match pell4_unit(&e, s, pm) {
                        Ok(u) => {
                            let sym = if pm == PlusMinus::Plus { "+" } else { "-" };
                            push(format!("pell4 slots={} sign={sym}", slot_names(&s)), &u, None)?;
                        }
                        Err(err @ Error::NonIntegral(_)) => last_err = Some(err),
                        Err(err) => return Err(err),
                    }
                }
            }
            if let (true, Some(err)) = (list.is_empty(), last_err) {
                return Err(err);
            }
            fund = Some(e);
        }
        Family::Pell4sq => {
            let e = pell_fundamental(d)?;
            push("pell4 from the square of the fundamental unit".into(), &pell4_unit_from_square(&e)?, None)?;
            fund = Some(e);
        }
        Family::Gauss => {
            let u = gauss_unit(d, a.m, a.sign)?.ok_or_else(|| {
                Error::InvalidInput(format!("m^2 d {} 1 has no three-squares decomposition with support > 1", if a.sign == 1 { "+" } else { "-" }))
            })?;
            push(format!("gauss m={} sign={}", a.m, sign_str(a.sign)), &u, None)?;
        }
        Family::Pp1 => {
            let e = pell_fundamental(d)?;
            for (name, au) in ["u", "w1", "w2", "w3"].iter().zip(prop_pp1_units(&e)?) {
                push(name.to_string(), &au.unit, Some(au.in_order))?;
            }
            fund = Some(e);
        }
    }
    let mut text = String::new();
    for u in &list {
        let q = u.unit(d)?;
        write!(text, "{}: {}  norm={}  support={{{}}}", u.label, q, u.norm, u.support.join(",")).unwrap();
        if let Some(o) = u.in_order {
            write!(text, "  in_order={o}").unwrap();
        }
        text.push('\n');
    }
    let mut inputs = Inputs { d: Some(d.get()), fundamental_unit: fund.as_ref().map(PellDoc::from), ..Default::default() };
    inputs.parameters.insert("family".into(), format!("{:?}", a.family).to_lowercase());
    if a.family == Family::Gauss {
        inputs.parameters.insert("m".into(), a.m.to_string());
        inputs.parameters.insert("sign".into(), sign_str(a.sign).into());
    }
    let mut doc = document("units", inputs);
    doc.results = Some(Results::Units(list));
    Ok(Run { doc, text, code: 0 })
}

struct Pair {
    setup: PingPongSetup,
    fund: Option<FundUnit>,
    guidance: Option<String>,
}

fn resolve_pair(p: &PairArgs) -> Result<Pair> {
    if p.theorem1 {
        if p.d.is_some_and(|d| d != 1) {
            return Err(Error::InvalidInput("--theorem1 is the d = 1 pair".into()));
        }
        return Ok(Pair { setup: theorem1_setup(), fund: None, guidance: None });
    }
    if p.d2special {
        if p.d.is_some_and(|d| d != 2) {
            return Err(Error::InvalidInput("--d2special is the d = 2 pair".into()));
        }
        let e = pell_fundamental(sf(2)?)?;
        return Ok(Pair { setup: d2_special_table(), fund: Some(e), guidance: None });
    }
    let d = p.d.ok_or_else(|| Error::InvalidInput("--d is required unless --theorem1 or --d2special is given".into()))?;
    let e = pell_fundamental(sf(d)?)?;
    if p.corollary {
        return Ok(Pair { setup: corollary_table(&e)?, fund: Some(e), guidance: None });
    }
    let kind: WKind = p.w_kind.map(Into::into).unwrap_or(WKind::W1);
    if e.norm == -1 && kind == WKind::W1 {
        if e.x == 1.into() {
            let mut setup = corollary_layout(&e)?;
            setup.notes.push("norm -1: w1 uses the corollary table".into());
            let guidance = "for d = 2 the pair (w, u) satisfies no table of this interval shape \
                            (see the infeasibility command); use --d2special to certify <u^2, w>";
            return Ok(Pair { setup, fund: Some(e), guidance: Some(guidance.into()) });
        }
        let mut setup = corollary_table(&e)?;
        setup.notes.push("norm -1: w1 uses the corollary table".into());
        return Ok(Pair { setup, fund: Some(e), guidance: None });
    }
    Ok(Pair { setup: standard_table(&e, kind)?, fund: Some(e), guidance: None })
}

#[derive(Deserialize)]
struct TableFile {
    slots: Vec<[String; 2]>,
}

fn read_table(path: &Path, d: SquareFreeD) -> Result<PingPongTable> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let file: TableFile = serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let slots = file
        .slots
        .iter()
        .map(|[p, m]| Ok([parse_arcset(p, d)?, parse_arcset(m, d)?]))
        .collect::<Result<Vec<_>>>()?;
    Ok(PingPongTable { d, slots })
}

fn unit_inputs(d: SquareFreeD, fund: Option<&FundUnit>, units: &[(String, &QuatElem)]) -> Inputs {
    Inputs {
        d: Some(d.get()),
        fundamental_unit: fund.map(PellDoc::from),
        units: units.iter().map(|(l, u)| UnitDoc::new(l.clone(), u)).collect(),
        parameters: BTreeMap::new(),
    }
}

fn generator_units(setup: &PingPongSetup) -> Result<(QuatElem, QuatElem)> {
    match setup.generators.iter().map(|g| g.unit.clone()).collect::<Option<Vec<_>>>().as_deref() {
        Some([a, b]) => Ok((a.clone(), b.clone())),
        _ => Err(Error::InvalidInput("the oracle needs two generators given as quaternions".into())),
    }
}

fn render_payload(text: &mut String, p: &CertificatePayload) {
    writeln!(text, "{} certificate, recipe {} (d = {})", p.kind, p.recipe, p.d).unwrap();
    for m in &p.maps {
        let [a, b, c, e] = [&m.matrix[0], &m.matrix[1], &m.matrix[2], &m.matrix[3]];
        writeln!(text, "  {}: z -> (({a})z + ({b}))/(({c})z + ({e}))", m.label).unwrap();
    }
    for s in &p.sets {
        writeln!(text, "  {} = {}", s.label, s.arcs).unwrap();
    }
    for c in &p.conditions {
        writeln!(text, "  [{}] {}: {}", c.verdict.as_str(), c.id, c.description).unwrap();
        if c.verdict == Verdict::Fail {
            if let (Some(l), Some(r)) = (&c.lhs_arc, &c.rhs_arc) {
                writeln!(text, "         lhs = {l}\n         rhs = {r}").unwrap();
            }
            if let Some(w) = &c.witness {
                writeln!(text, "         witness: {w}").unwrap();
            }
        }
    }
    for n in &p.notes {
        writeln!(text, "  note: {n}").unwrap();
    }
    writeln!(text, "certificate: {}", p.verdict.as_str()).unwrap();
    if let Some(pw) = &p.power {
        writeln!(text, "power n = {}: {} ({})", pw.n, if pw.free { "free" } else { "undecided" }, pw.reason).unwrap();
    }
    if let Some(g) = &p.guidance {
        writeln!(text, "hint: {g}").unwrap();
    }
}

fn render_oracle(text: &mut String, o: &OracleSummary) {
    let what = if o.kind == "group" { "reduced" } else { "positive" };
    let power = o.power.map(|n| format!(" in the powers g1^{n}, g2^{n}")).unwrap_or_default();
    writeln!(text, "oracle: {} {what} words up to length {}{power}; relation: {}", o.words_checked, o.depth, o.result).unwrap();
    if let Some(m) = &o.minus_one {
        writeln!(text, "oracle: {m}").unwrap();
    }
    if let Some(g) = &o.degenerate {
        writeln!(text, "oracle: degenerate pair, {g}").unwrap();
    }
}

pub fn certify_group(a: &GroupArgs) -> Result<Run> {
    let Pair { mut setup, fund, guidance } = resolve_pair(&a.pair)?;
    if let Some(path) = &a.table {
        setup.table = read_table(path, setup.table.d)?;
        setup.recipe = Recipe::User;
    }
    let cert = setup.check()?;
    let mut payload = CertificatePayload::group(&cert, &setup.notes);
    if !cert.passed {
        payload.guidance = guidance;
    }
    if let Some(n) = a.n {
        payload = payload.with_power(n, &power_certificate(&cert, n)?);
    }
    let labelled: Vec<(String, &QuatElem)> =
        setup.generators.iter().filter_map(|g| g.unit.as_ref().map(|u| (g.label.clone(), u))).collect();
    let mut inputs = unit_inputs(cert.d, fund.as_ref(), &labelled);
    inputs.parameters.insert("recipe".into(), setup.recipe.to_string());
    let mut doc = document("certify group", inputs);
    if !a.no_oracle {
        let (u, w) = generator_units(&setup)?;
        let summary = match a.n {
            Some(n) if n > 1 => OracleSummary::group(&power_word_check(&u, &w, n, a.depth)?, Some(n)),
            _ => OracleSummary::group(&free_group_word_check(&u, &w, a.depth)?, None),
        };
        doc.oracle = Some(summary);
    }
    let ok = payload.passed() && doc.oracle.as_ref().is_none_or(OracleSummary::clean);
    let mut text = String::new();
    render_payload(&mut text, &payload);
    if let Some(o) = &doc.oracle {
        render_oracle(&mut text, o);
    }
    doc.certificate = Some(payload);
    Ok(Run { doc, text, code: code(ok) })
}

/// Quaternions whose maps are exactly `φ₁` and `φ₂`.
fn semigroup_units(data: &SemigroupData) -> Result<(QuatElem, QuatElem)> {
    let pick = |q: &QuatElem, m| -> Result<QuatElem> {
        if mobius_of(q)?.projectively_eq(m) {
            Ok(q.clone())
        } else {
            q.inverse()
        }
    };
    Ok((pick(&data.units.0, &data.phi1)?, pick(&data.units.1, &data.phi2)?))
}

pub fn certify_semigroup(a: &SemigroupArgs) -> Result<Run> {
    let d = sf(a.d)?;
    let e = pell_fundamental(d)?;
    let kind: WKind = a.w_kind.into();
    let data = standard_semigroup_data(&e, kind)?;
    let cert = data.check()?;
    let payload = CertificatePayload::semigroup(&cert, &format!("semigroup-{kind}"), &data.note);
    let (q1, q2) = semigroup_units(&data)?;
    let mut inputs = unit_inputs(d, Some(&e), &[("phi1".into(), &q1), ("phi2".into(), &q2)]);
    inputs.parameters.insert("w_kind".into(), kind.to_string());
    let mut doc = document("certify semigroup", inputs);
    if !a.no_oracle {
        doc.oracle = Some(OracleSummary::semigroup(&free_semigroup_word_check(&q1, &q2, a.depth)?, None));
    }
    let ok = payload.passed() && doc.oracle.as_ref().is_none_or(OracleSummary::clean);
    let mut text = String::new();
    render_payload(&mut text, &payload);
    if let Some(o) = &doc.oracle {
        render_oracle(&mut text, o);
    }
    doc.certificate = Some(payload);
    Ok(Run { doc, text, code: code(ok) })
}

pub fn oracle(a: &OracleArgs) -> Result<Run> {
    if a.n == 0 {
        return Err(Error::InvalidInput("--n must be at least 1".into()));
    }
    let power = (a.n > 1).then_some(a.n);
    let (summary, inputs) = if a.semigroup {
        if a.pair.theorem1 || a.pair.corollary {
            return Err(Error::InvalidInput("--semigroup takes --d and --w-kind".into()));
        }
        let d = sf(a.pair.d.unwrap_or(2))?;
        let e = pell_fundamental(d)?;
        let data = standard_semigroup_data(&e, a.pair.w_kind.map(Into::into).unwrap_or(WKind::W1))?;
        let (q1, q2) = semigroup_units(&data)?;
        let depth = a.depth.unwrap_or(DEFAULT_SEMIGROUP_DEPTH);
        let r = match power {
            Some(n) => power_semigroup_word_check(&q1, &q2, n, depth)?,
            None => free_semigroup_word_check(&q1, &q2, depth)?,
        };
        (OracleSummary::semigroup(&r, power), unit_inputs(d, Some(&e), &[("g1".into(), &q1), ("g2".into(), &q2)]))
    } else {
        let pair = resolve_pair(&a.pair)?;
        let (u, w) = generator_units(&pair.setup)?;
        let depth = a.depth.unwrap_or(DEFAULT_GROUP_DEPTH);
        let r = match power {
            Some(n) => power_word_check(&u, &w, n, depth)?,
            None => free_group_word_check(&u, &w, depth)?,
        };
        let mut inputs = unit_inputs(u.d(), pair.fund.as_ref(), &[("g1".into(), &u), ("g2".into(), &w)]);
        inputs.parameters.insert("recipe".into(), pair.setup.recipe.to_string());
        (OracleSummary::group(&r, power), inputs)
    };
    let mut text = String::new();
    render_oracle(&mut text, &summary);
    let mut doc = document("oracle", inputs);
    let ok = summary.clean();
    doc.oracle = Some(summary);
    Ok(Run { doc, text, code: code(ok) })
}

pub fn sweep(a: &RangeArgs) -> Result<Run> {
    let ds = range(a)?;
    let rows = match (ds.first(), ds.last()) {
        (Some(lo), Some(hi)) => run_sweep(lo.get(), hi.get(), Execution::default())?,
        _ => Vec::new(),
    };
    let t = tally(&rows);
    let items: Vec<String> = rows.first().map(|r| r.entries.iter().map(|e| e.item.clone()).collect()).unwrap_or_default();
    let mut text = String::new();
    writeln!(text, "{:>5} {:>4}  {}", "d", "N", items.join(" ")).unwrap();
    for r in &rows {
        let cells: Vec<String> = r
            .entries
            .iter()
            .map(|e| {
                let mark = match e.outcome {
                    Outcome::Pass => "pass",
                    Outcome::Fail => "FAIL",
                    Outcome::NotApplicable(_) => "-",
                };
                format!("{mark:>w$}", w = e.item.len())
            })
            .collect();
        writeln!(text, "{:>5} {:>4}  {}", r.d, sign_str(r.fund.norm), cells.join(" ")).unwrap();
    }
    let failures: u32 = t.values().map(|x| x.fail).sum();
    writeln!(text, "\nsummary over {} values of d:", rows.len()).unwrap();
    for (item, x) in &t {
        writeln!(text, "  {item:<16} pass {:>3}  fail {:>3}  not applicable {:>3}", x.pass, x.fail, x.skipped).unwrap();
    }
    let mut inputs = Inputs::default();
    inputs.parameters.insert("d_min".into(), ds.first().map_or(String::new(), |d| d.to_string()));
    inputs.parameters.insert("d_max".into(), ds.last().map_or(String::new(), |d| d.to_string()));
    let mut doc = document("sweep", inputs);
    doc.results = Some(Results::Sweep(SweepDoc {
        rows: rows.iter().map(SweepRowDoc::from).collect(),
        summary: t.iter().map(|(k, v)| (k.clone(), v.into())).collect(),
        failures,
    }));
    Ok(Run { doc, text, code: code(failures == 0) })
}

pub fn infeasibility(resolution: u32) -> Result<Run> {
    let r = infeasibility_sweep(resolution, Execution::default())?;
    let strings = |v: &[quatfree::exactnum::QuadElem]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>();
    let body = InfeasibilityDoc {
        resolution,
        method: r.method.to_string(),
        system_samples: r.system_samples,
        system_solutions: r.system_solutions,
        first_solution: r.first_solution.as_ref().map(|(a, b)| strings(&[a.clone(), b.clone()])),
        table_samples: r.table_samples,
        table_passes: r.table_passes,
        first_passing_table: r.first_passing_table.as_ref().map(|t| strings(t)),
        infeasible: r.infeasible(),
    };
    let mut text = String::new();
    writeln!(text, "d = 2 pair h1 = phi_w, h2 = phi_u at resolution {resolution}").unwrap();
    writeln!(text, "  reduced system: {} of {} samples satisfy both inequalities", r.system_solutions, r.system_samples).unwrap();
    writeln!(text, "  full tables:    {} of {} sampled tables pass", r.table_passes, r.table_samples).unwrap();
    if let Some(t) = &body.first_passing_table {
        writeln!(text, "  first passing table (a2, a1, b1, b2) = ({})", t.join(", ")).unwrap();
    }
    writeln!(text, "verdict: {}", if r.infeasible() { "no table found" } else { "a table was found" }).unwrap();
    let mut inputs = Inputs { d: Some(2), ..Default::default() };
    inputs.parameters.insert("resolution".into(), resolution.to_string());
    let mut doc = document("infeasibility", inputs);
    doc.results = Some(Results::Infeasibility(body));
    Ok(Run { doc, text, code: code(r.infeasible()) })
}
