use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatfree")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn pell_examples() {
    let o = run(&["pell", "--d", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "d=7 x=8 y=3 norm=+1\n");
    assert_eq!(stdout(&run(&["pell", "--d", "2"])), "d=2 x=1 y=1 norm=-1\n");
    let bad = run(&["pell", "--d", "8"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("NotSquareFree"));
    assert_eq!(stdout(&run(&["pell", "--d-max", "10"])).lines().count(), 6);
}

#[test]
fn units_examples() {
    let o = run(&["units", "--d", "3", "--family", "pp1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);
    let g = run(&["units", "--d", "7", "--family", "gauss", "--m", "2", "--sign", "+1"]);
    assert!(stdout(&g).contains("2*sqrt(-7) + (2)i + (3)j + (4)k"), "{}", stdout(&g));
    let p4 = run(&["units", "--d", "2", "--family", "pell4"]);
    assert_eq!(code(&p4), 2);
    assert!(String::from_utf8_lossy(&p4.stderr).contains("NormMinusOne"));
    let p2 = run(&["units", "--d", "5", "--family", "pell2", "--slots", "i,1"]);
    assert_eq!(stdout(&p2).lines().count(), 1);
    assert_eq!(code(&run(&["units", "--d", "5", "--family", "pell2", "--slots", "i,i"])), 2);
}

#[test]
fn certify_group_examples() {
    assert_eq!(code(&run(&["certify", "group", "--d", "7", "--w-kind", "w1"])), 0);
    assert_eq!(code(&run(&["certify", "group", "--theorem1"])), 0);
    assert_eq!(code(&run(&["certify", "group", "--d2special", "--no-oracle"])), 0);
    let d2 = run(&["certify", "group", "--d", "2", "--w-kind", "w1", "--no-oracle"]);
    assert_eq!(code(&d2), 1);
    assert!(stdout(&d2).contains("--d2special"));
    assert_eq!(code(&run(&["certify", "group", "--d", "3", "--w-kind", "w2"])), 2);
    assert_eq!(code(&run(&["certify", "group", "--w-kind", "w1"])), 2);
}

#[test]
fn certify_semigroup_examples() {
    assert_eq!(code(&run(&["certify", "semigroup", "--d", "2", "--w-kind", "w1"])), 0);
    assert_eq!(code(&run(&["certify", "semigroup", "--d", "3", "--w-kind", "w2"])), 0);
    assert_eq!(code(&run(&["certify", "semigroup", "--d", "2", "--w-kind", "w3"])), 2);
}

#[test]
fn oracle_examples() {
    let o = run(&["oracle", "--d", "2", "--semigroup", "--L", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relation: none"));
    let p = run(&["oracle", "--d2special", "--L", "5", "--n", "2"]);
    assert_eq!(code(&p), 0);
}

#[test]
fn sweep_and_infeasibility() {
    let s = run(&["sweep", "--d-max", "30"]);
    assert_eq!(code(&s), 0);
    assert!(stdout(&s).contains("summary over 18 values of d"));
    let i = run(&["infeasibility", "--resolution", "16"]);
    assert_eq!(code(&i), 0);
    assert!(stdout(&i).contains("0 of 256 sampled tables pass"));
    assert_eq!(code(&run(&["infeasibility", "--resolution", "0"])), 2);
}

#[test]
fn json_output_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = run(&["certify", "group", "--d", "7", "--w-kind", "w3", "--L", "4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let raw = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", raw);
    for key in ["schema_version", "command", "inputs", "certificate", "oracle", "timing_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let c = &v["certificate"]["conditions"][0];
    for key in ["id", "description", "lhs_arc", "rhs_arc", "verdict"] {
        assert!(c.get(key).is_some(), "{key}");
    }
    assert_eq!(v["certificate"]["verdict"], "pass");
}

#[test]
fn user_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let json = run(&["certify", "group", "--d", "7", "--no-oracle", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let sets: Vec<String> = v["certificate"]["sets"].as_array().unwrap().iter().map(|s| s["arcs"].as_str().unwrap().to_string()).collect();
    let good = serde_json::json!({ "slots": [[sets[0], sets[1]], [sets[2], sets[3]]] });
    let path = dir.path().join("table.json");
    std::fs::write(&path, good.to_string()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&run(&["certify", "group", "--d", "7", "--no-oracle", "--table", p])), 0);
    let swapped = serde_json::json!({ "slots": [[sets[1], sets[0]], [sets[2], sets[3]]] });
    std::fs::write(&path, swapped.to_string()).unwrap();
    let o = run(&["certify", "group", "--d", "7", "--no-oracle", "--table", p]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] h1^+1"));
    std::fs::write(&path, "{\"slots\": [[\"[1, 2\", \"{}\"]]}").unwrap();
    assert_eq!(code(&run(&["certify", "group", "--d", "7", "--no-oracle", "--table", p])), 2);
}
