use quatfree::par::Execution;
use quatfree::sweep::{sweep, tally, Outcome};

#[test]
fn sweep_to_one_hundred_has_no_failures() {
    let rows = sweep(2, 100, Execution::default()).unwrap();
    assert_eq!(rows.len(), 60);
    let t = tally(&rows);
    for (item, counts) in &t {
        assert_eq!(counts.fail, 0, "{item}");
    }
    assert_eq!(t["group-d2special"].pass, 1);
    assert_eq!(t["group-w1"].pass + t["group-corollary"].pass, 59);
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let a = sweep(2, 40, Execution::Sequential).unwrap();
    let b = sweep(2, 40, Execution::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn w2_skipped_only_for_small_x() {
    let rows = sweep(2, 100, Execution::default()).unwrap();
    for r in rows {
        let w2 = &r.entries.iter().find(|e| e.item == "group-w2").unwrap().outcome;
        let skipped = matches!(w2, Outcome::NotApplicable(_));
        assert_eq!(skipped, r.fund.norm != 1 || r.fund.x <= 2.into(), "d = {}", r.d);
    }
}
