use std::process::{Command, Output};

fn knotq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotq")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn parse_round_trips_the_trefoil() {
    let out = knotq(&["--format", "text", "parse", "--pd", "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"), "{text}");
    assert!(text.contains("3 classical, 0 virtual"));
    let unknot = json(&knotq(&["parse", "--pd", "PD[]"]));
    assert_eq!(unknot["crossings"].as_array().unwrap().len(), 0);
}

#[test]
fn malformed_input_fails_with_a_message() {
    let out = knotq(&["parse", "--pd", "PD[X[1,2]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(out.stdout.is_empty());
    let none = knotq(&["parse"]);
    assert!(!none.status.success());
}

#[test]
fn quotients() {
    let fig8 = json(&knotq(&["quotient", "--knot", "4_1", "--axioms", "involutory"]));
    assert_eq!(fig8["quandle"]["n"], 5);
    let trefoil = json(&knotq(&["quotient", "--knot", "3_1", "--axioms", "involutory,anti-abelian"]));
    assert_eq!(trefoil["quandle"]["n"], 3);
    let cut = knotq(&["quotient", "--knot", "4_1", "--max-gens", "2"]);
    assert_eq!(cut.status.code(), Some(2));
}

#[test]
fn flag_of_the_cinquefoil() {
    let r = json(&knotq(&["flag", "--knot", "5_1"]));
    assert_eq!(r["cardinality"], 7);
    assert_eq!(r["determinant"], "5");
    let a = json(&knotq(&["alexander", "--knot", "6_2"]));
    assert_eq!(a["determinant"], "11");
}

#[test]
fn empty_expectation_file_passes() {
    let path = std::env::temp_dir().join(format!("knotq-empty-{}.json", std::process::id()));
    std::fs::write(&path, "").unwrap();
    let out = knotq(&["regress", "--table", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(json(&out)["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn reports_without_timings_are_reproducible() {
    let args = ["--no-timings", "regress", "--bundled", "quotients"];
    let a = knotq(&args);
    let b = knotq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let flag = ["--no-timings", "flag", "--knot", "7_2"];
    assert_eq!(knotq(&flag).stdout, knotq(&flag).stdout);
}
