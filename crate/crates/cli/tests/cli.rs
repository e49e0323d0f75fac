use std::process::{Command, Output};

fn jsbo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jsbo")).args(args).output().expect("run jsbo")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(jsbo(&["--help"]).status.code(), Some(0));
    assert_eq!(jsbo(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two_with_json_diagnostic() {
    for args in [
        vec!["frobnicate"],
        vec!["schur", "--d", "2", "--m", "1,2"],
        vec!["schur", "--d", "2"],
        vec!["kernel", "--domain", "sym:0", "--m", "1"],
        vec!["operator", "emit", "--pair", "u-uu", "--sizes", "1,1"],
        vec!["operator", "emit", "--pair", "sp-u", "--sizes", "1,1", "--lambda", "x/y"],
    ] {
        let o = jsbo(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let diag: serde_json::Value = serde_json::from_slice(&o.stderr).expect("json diagnostic");
        assert_eq!(diag["error"], "usage");
    }
}

#[test]
fn schur_emits_power_sums() {
    let o = jsbo(&["schur", "--d", "2", "--m", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert!(v.is_object());
}

#[test]
fn domains_list_names_the_desk() {
    let o = jsbo(&["domains", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    for name in ["sym:2", "mat:2x3", "skew:5", "quadric:3"] {
        assert!(s.contains(name), "{name} missing from\n{s}");
    }
}

#[test]
fn emitted_operator_round_trips() {
    let o = jsbo(&["operator", "emit", "--pair", "sp-u", "--sizes", "1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let j: jsbo::sbo::PolyOperatorJson = serde_json::from_value(v.clone()).expect("operator json");
    let op = jsbo::sbo::PolyOperator::from_json(&j).unwrap();
    assert!(!j.terms.is_empty());
    assert_eq!(op.to_json()["terms"], v["terms"]);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("jsbo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let o = jsbo(&["kernel-expand", "--domain", "sym:2", "--degree", "3", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verification_passes_with_exit_zero() {
    let o = jsbo(&["verify", "intertwine", "--pair", "tensor-sl2", "--k", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["passed"], true);
}
