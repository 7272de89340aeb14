mod common;

use common::{golden_cases, golden_mismatch, modlattice};
use serde_json::Value;

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_z6_example() {
    let r = modlattice(&[
        "classify",
        "--ring",
        "Z/6",
        "--module",
        r#"{"rank":1,"relations":[[0]]}"#,
        "--submodule",
        r#"{"generators":[[3]]}"#,
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json_of(&r.stdout);
    assert_eq!(v["result"]["classicalPrime"], true);
    assert_eq!(v["result"]["prime"], true);
    assert_eq!(v["inputEcho"]["ring"], "Z/6");
    assert!(v["toolVersion"].as_str().unwrap().starts_with("modlattice "));
}

#[test]
fn lattice_of_z2_squared() {
    let r = modlattice(&["lattice", "--ring", "Z/2", "--module", r#"{"rank":2}"#]);
    let v = json_of(&r.stdout);
    assert_eq!(v["result"]["counts"]["submodules"], 5);
    assert_eq!(v["result"]["counts"]["edges"], 6);
    assert_eq!(v["result"]["counts"]["maximal"], 3);
    let dot = modlattice(&["lattice", "--ring", "Z/2", "--module", r#"{"rank":2}"#, "--format", "dot"]).stdout;
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches(" -> ").count(), 6);
    assert_eq!(dot.matches("MPCR").count(), 3);
}

#[test]
fn lattice_chain_and_zero_module() {
    let dot = modlattice(&["lattice", "--ring", "Z/4", "--module", r#"{"rank":1}"#, "--format", "dot"]).stdout;
    assert!(dot.contains("n0 -> n1;\n  n1 -> n2;\n"));
    assert_eq!(dot.matches(" -> ").count(), 2);
    let zero =
        modlattice(&["lattice", "--ring", "Z/4", "--module", r#"{"rank":1,"relations":[[1]]}"#, "--format", "dot"]);
    assert_eq!(zero.stdout.matches("[label=").count(), 1);
    assert_eq!(zero.stdout.matches(" -> ").count(), 0);
}

#[test]
fn zloc_free_module_is_not_cl_hilbert() {
    let r = modlattice(&["cl-hilbert", "--domain", "Zloc(3)", "--module", r#"{"rank":1,"relations":[]}"#]);
    let v = json_of(&r.stdout);
    assert_eq!(v["result"]["holds"], false);
    assert_eq!(v["result"]["witness"]["generators"], serde_json::json!([]));
    assert_eq!(v["result"]["witness"]["radical"]["free"], 3);
}

#[test]
fn exit_codes() {
    let m = r#"{"rank":1,"relations":[]}"#;
    let sub = r#"{"generators":[]}"#;
    assert_eq!(modlattice(&["classify", "--ring", "Z/1", "--module", m, "--submodule", sub]).code, 3);
    assert_eq!(modlattice(&["classify", "--ring", "Z/4", "--module", "[", "--submodule", sub]).code, 2);
    assert_eq!(modlattice(&["frobnicate"]).code, 2);
    assert_eq!(modlattice(&["laws", "run", "--all"]).code, 2);
    assert_eq!(modlattice(&["--help"]).code, 0);
    let big = modlattice(&["lattice", "--ring", "Z/2", "--module", r#"{"rank":10}"#, "--max-lattice", "512"]);
    assert_eq!(big.code, 4, "{}", big.stderr);
    let r = modlattice(&["laws", "run", "--law", "L2.5", "--ring", "Z/12", "--max-module", "256", "--seed", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json_of(&r.stdout)["result"]["allPassed"], true);
}

#[test]
fn max_cells_from_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_modlattice"))
        .args(["lattice", "--ring", "Z/4", "--module", r#"{"rank":3}"#])
        .env("MODLATTICE_MAX_CELLS", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_modlattice"))
        .args(["lattice", "--ring", "Z/4", "--module", r#"{"rank":1}"#])
        .env("MODLATTICE_MAX_CELLS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn out_file_is_written_whole() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    let r = modlattice(&["witness", "zx", "--p", "3", "--samples", "500", "--seed", "9", "--out", p]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let v = json_of(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(v["result"]["falsifier"]["outcome"], "noCounterexample");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1, "no temporary files left behind");
}

#[test]
fn identical_jobs_give_identical_bytes() {
    let args = ["laws", "run", "--law", "L3.6", "--samples", "50", "--seed", "42"];
    let (a, b) = (modlattice(&args), modlattice(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_reports() {
    let bad: Vec<String> = golden_cases().iter().filter_map(|(n, a)| golden_mismatch(n, a)).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}
