#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn modlattice(args: &[&str]) -> Run {
    let out =
        Command::new(env!("CARGO_BIN_EXE_modlattice")).args(args).env_remove("MODLATTICE_MAX_CELLS").output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Golden file name and argv. `pZ ⊕ 0` in `Z²` for small primes, and the
/// free and torsion rank-one modules over `Z_(p)`.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut out = Vec::new();
    let args = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    for p in [2, 3, 5, 7] {
        let sub = format!(r#"{{"generators":[[{p},0]]}}"#);
        out.push((
            format!("classify_z2_p{p}.json"),
            args(&["classify", "--domain", "Z", "--module", r#"{"rank":2,"relations":[]}"#, "--submodule", &sub]),
        ));
    }
    for p in [2, 3, 5] {
        let domain = format!("Zloc({p})");
        out.push((
            format!("clhilbert_zloc{p}_free.json"),
            args(&["cl-hilbert", "--domain", &domain, "--module", r#"{"rank":1,"relations":[]}"#]),
        ));
        let torsion = format!(r#"{{"rank":2,"relations":[[{p},0],[0,{}]]}}"#, p * p);
        out.push((
            format!("clhilbert_zloc{p}_torsion.json"),
            args(&["cl-hilbert", "--domain", &domain, "--module", &torsion]),
        ));
    }
    out
}

/// `None` when the output matches its golden file byte for byte.
pub fn golden_mismatch(name: &str, args: &[String]) -> Option<String> {
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let run = modlattice(&argv);
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &run.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_default();
    (run.code != 0 || run.stdout != want).then(|| format!("{name}: exit {} stderr {}", run.code, run.stderr))
}
