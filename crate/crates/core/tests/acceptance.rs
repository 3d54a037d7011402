//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use quatfree::exactnum::SquareFreeD;
use quatfree::mobius::{arc_image, imag_to_complex, psi};
use quatfree::oracle::{free_group_word_check, free_semigroup_word_check};
use quatfree::par::Execution;
use quatfree::pell::{pell_fundamental, pell_fundamental_2d, unit_power, FundUnit};
use quatfree::pingpong::{
    corollary_table, d2_special_table, infeasibility_sweep, standard_table, theorem1_setup, verify_interval_lemmas,
    PingPongSetup, WKind,
};
use quatfree::quaternion::{
    gauss_unit, pell2_psi_form, pell2_unit, pell3_unit, pell4_unit, pell4_unit_from_square, prop_pp1_units, PlusMinus,
    QuatElem, Slot,
};
use quatfree::semigroup::{d2_semigroup_units, standard_semigroup_data};
use support::*;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ds(hi: u64) -> Vec<SquareFreeD> {
    SquareFreeD::range(2, hi)
}

fn fund(d: SquareFreeD) -> FundUnit {
    pell_fundamental(d).expect("d >= 2")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(setup: &PingPongSetup) -> std::result::Result<(), String> {
    let c = setup.check().map_err(|e| e.to_string())?;
    let failed: Vec<&str> = c.failures().map(|f| f.id.as_str()).collect();
    ensure(c.passed, || format!("failed conditions {failed:?}"))
}

fn perms<const N: usize>() -> Vec<[Slot; N]> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    go::<N>(&mut cur, &mut out);
    out
}

fn pell_oracle() -> Check {
    let mut n = 0;
    for d in ds(200) {
        let e = fund(d);
        let (x, y, s) = brute_force_pell(d.get());
        ensure((&e.x, &e.y, e.norm) == (&x, &y, s), || format!("d = {d}: got ({}, {}, {}), oracle ({x}, {y}, {s})", e.x, e.y, e.norm))?;
        n += 1;
    }
    Ok(format!("{n} values of d"))
}

fn unit_norms() -> Check {
    let mut n = 0u32;
    let mut check = |label: &str, d: SquareFreeD, u: &QuatElem| -> std::result::Result<(), String> {
        n += 1;
        ensure(matches!(u.unit_norm(), Some(1 | -1)), || format!("{label} at d = {d}: norm {}", u.norm()))
    };
    for d in ds(100) {
        let e = fund(d);
        for [xi, psi] in perms::<2>() {
            check("pell2", d, &pell2_unit(&e, xi, psi).unwrap())?;
        }
        if let Ok(Some(data)) = pell_fundamental_2d(d) {
            for s in perms::<3>() {
                check("pell3", d, &pell3_unit(&data, s).unwrap())?;
            }
        }
        for s in perms::<4>() {
            for sign in [PlusMinus::Plus, PlusMinus::Minus] {
                if let Ok(u) = pell4_unit(&e, s, sign) {
                    check("pell4", d, &u)?;
                }
            }
        }
        if let Ok(u) = pell4_unit_from_square(&e) {
            check("pell4-from-square", d, &u)?;
        }
        for m in 1..=4 {
            for sign in [1, -1] {
                if let Some(u) = gauss_unit(d, m, sign).unwrap() {
                    check("gauss", d, &u)?;
                    ensure(u.unit_norm() == Some(sign), || format!("gauss m = {m} at d = {d}"))?;
                }
            }
        }
        if let Ok(list) = prop_pp1_units(&e) {
            for a in &list {
                check("pp1", d, &a.unit)?;
            }
        }
    }
    Ok(format!("{n} units"))
}

fn power_identity() -> Check {
    let mut n = 0;
    for d in ds(50) {
        let e = fund(d);
        for psi in [Slot::I, Slot::J, Slot::K] {
            let u = pell2_psi_form(&e, psi).unwrap();
            for k in 1..=10u32 {
                let lhs = u.pow(k as i64).unwrap();
                let rhs = pell2_psi_form(&unit_power(&e, k).unwrap(), psi).unwrap();
                ensure(lhs == rhs, || format!("d = {d}, psi = {}, n = {k}", psi.symbol()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} identities"))
}

fn main_theorem() -> Check {
    let mut n = 0;
    for d in ds(100) {
        let e = fund(d);
        if e.norm != 1 {
            continue;
        }
        for k in WKind::ALL {
            let setup = standard_table(&e, k);
            if k == WKind::W2 && e.x <= 2.into() {
                ensure(setup.is_err(), || format!("w2 accepted at d = {d} with x = {}", e.x))?;
                continue;
            }
            passes(&setup.map_err(|err| format!("{k} at d = {d}: {err}"))?).map_err(|m| format!("{k} at d = {d}: {m}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} certificates"))
}

fn corollary() -> Check {
    let mut n = 0;
    for d in ds(100) {
        let e = fund(d);
        if e.norm != -1 || e.x == 1.into() {
            continue;
        }
        passes(&corollary_table(&e).map_err(|err| format!("d = {d}: {err}"))?).map_err(|m| format!("d = {d}: {m}"))?;
        n += 1;
    }
    Ok(format!("{n} certificates"))
}

fn theorem1() -> Check {
    passes(&theorem1_setup())?;
    Ok("h1 = z/(2z+1), h2 = z+2".into())
}

fn d2_special() -> Check {
    passes(&d2_special_table())?;
    let r = infeasibility_sweep(100, Execution::default()).map_err(|e| e.to_string())?;
    ensure(r.table_samples == 10_000, || format!("{} samples", r.table_samples))?;
    ensure(r.infeasible(), || format!("{} passing tables, {} system solutions", r.table_passes, r.system_solutions))?;
    Ok(format!("(u^2, w) passes; (u, w): 0 of {} sampled tables pass", r.table_samples))
}

fn interval_lemmas() -> Check {
    let (mut n, mut checks) = (0, 0);
    for d in ds(100) {
        let e = fund(d);
        for k in WKind::ALL {
            let Ok(report) = verify_interval_lemmas(&e, k) else { continue };
            if let Some(bad) = report.checks.iter().find(|c| !c.holds) {
                return Err(format!("{} at d = {d} ({k}): {}", bad.id, bad.statement));
            }
            n += 1;
            checks += report.checks.len();
        }
    }
    Ok(format!("{checks} inclusions over {n} (d, kind) pairs"))
}

fn semigroup() -> Check {
    let mut n = 0;
    for d in ds(100) {
        let e = fund(d);
        for k in WKind::ALL {
            if k != WKind::W1 && e.norm != 1 {
                continue;
            }
            let data = standard_semigroup_data(&e, k).map_err(|err| format!("{k} at d = {d}: {err}"))?;
            let c = data.check().map_err(|err| err.to_string())?;
            let failed: Vec<&str> = c.conditions.iter().filter(|c| !c.passed).map(|c| c.id).collect();
            ensure(c.passed, || format!("{k} at d = {d}: {failed:?}"))?;
            n += 1;
        }
    }
    let (u, w) = d2_semigroup_units();
    let data = standard_semigroup_data(&fund(SquareFreeD::new(2).unwrap()), WKind::W1).map_err(|e| e.to_string())?;
    ensure(data.units == (w, u) && data.check().map_err(|e| e.to_string())?.passed, || "d = 2 instance".into())?;
    Ok(format!("{n} criteria"))
}

fn oracle() -> Check {
    let mut pairs: Vec<(String, PingPongSetup)> = Vec::new();
    for d in [3, 5, 7, 11] {
        let e = fund(SquareFreeD::new(d).unwrap());
        for k in WKind::ALL {
            if let Ok(s) = standard_table(&e, k) {
                pairs.push((format!("{k} d = {d}"), s));
            }
        }
        if let Ok(s) = corollary_table(&e) {
            pairs.push((format!("corollary d = {d}"), s));
        }
    }
    pairs.push(("(u^2, w) d = 2".into(), d2_special_table()));
    let mut words = 0;
    for (label, setup) in &pairs {
        passes(setup).map_err(|m| format!("{label} is not certified: {m}"))?;
        let units: Vec<&QuatElem> = setup.generators.iter().filter_map(|g| g.unit.as_ref()).collect();
        let r = free_group_word_check(units[0], units[1], 8).map_err(|e| e.to_string())?;
        ensure(r.counterexample.is_none() && r.degenerate.is_none(), || format!("{label}: relation {:?}", r.counterexample))?;
        words += r.words_checked();
    }
    let (u, w) = d2_semigroup_units();
    let s = free_semigroup_word_check(&u, &w, 12).map_err(|e| e.to_string())?;
    ensure(s.collision.is_none(), || format!("semigroup collision {:?}", s.collision))?;
    let d = SquareFreeD::new(3).unwrap();
    let t = free_group_word_check(&QuatElem::basis(Slot::I, d), &QuatElem::basis(Slot::J, d), 4).map_err(|e| e.to_string())?;
    ensure(t.counterexample.is_some(), || "(i, j) gave no relation by depth 4".into())?;
    Ok(format!(
        "{} pairs, {words} reduced words; {} positive words; (i, j) relation {}",
        pairs.len(),
        s.words_checked(),
        t.counterexample.unwrap()
    ))
}

fn property<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>) -> std::result::Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn invariants() -> Check {
    property("psi multiplicativity", with_d(|d| (arb_quat(d), arb_quat(d))), |(_, (p, q))| {
        prop_assert_eq!(psi(&(&p * &q)), psi(&p).mul(&psi(&q)));
        Ok(())
    })?;
    property("det vs norm", with_d(arb_quat), |(_, q)| {
        prop_assert_eq!(psi(&q).det(), imag_to_complex(&q.norm()));
        Ok(())
    })?;
    property("arc_image composition", with_d(|d| (arb_map(d), arb_map(d), arb_arc(d))), |(_, (m, n, a))| {
        prop_assert_eq!(arc_image(&m.compose(&n), &a), arc_image(&m, &arc_image(&n, &a)));
        Ok(())
    })?;
    property("membership", with_d(|d| (arb_map(d), arb_arc(d), arb_point(d))), |(_, (m, a, z))| {
        prop_assert_eq!(arc_image(&m, &a).contains(&m.apply(&z)), a.contains(&z));
        Ok(())
    })?;
    Ok("4 properties x 1000 cases".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("pell fundamental vs brute force, d <= 200", 5, pell_oracle),
        ("unit norms, d <= 100", 10, unit_norms),
        ("power identity, n <= 10, d <= 50", 5, power_identity),
        ("w1/w2/w3 ping-pong certificates, d <= 100", 30, main_theorem),
        ("norm -1 certificates, d <= 100", 10, corollary),
        ("d = 1 fixed table", 1, theorem1),
        ("d = 2 special pair and infeasibility", 30, d2_special),
        ("interval lemmas, d <= 100", 10, interval_lemmas),
        ("semigroup criterion, d <= 100", 10, semigroup),
        ("word oracle cross-checks", 120, oracle),
        ("homomorphism and geometry invariants", 30, invariants),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let on_time = took <= Duration::from_secs(limit);
        let (verdict, detail) = match (&result, on_time) {
            (Ok(msg), true) => ("PASS", msg.clone()),
            (Ok(msg), false) => ("FAIL", format!("{msg}; over the {limit} s bound")),
            (Err(msg), _) => ("FAIL", msg.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {verdict} [{:.2} s / {limit} s] {name}: {detail}", i + 1, took.as_secs_f64());
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
