//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use modlattice::euclid::matrix::{det, identity, is_unimodular, mul};
use modlattice::euclid::sampling::{planted_classical_prime, planted_with_shape, SampleConfig};
use modlattice::euclid::{smith, Matrix};
use modlattice::laws::{run_law_reported, LawConfig, LawId, LawReport};
use modlattice::rings::{EuclideanDomain, GfPolys, Integers, LocalIntegers};
use modlattice::zx::{
    classical_prime_falsify, classical_prime_falsify_with, corrupted_in_ideal_px, not_prime_witness,
    radical_obstruction, FalsifyConfig, FalsifyOutcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{golden_cases, golden_mismatch, modlattice};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn laws(ids: &[LawId], cfg: &LawConfig, seed: u64) -> Check {
    let reports: Vec<LawReport> = ids.iter().map(|&id| run_law_reported(id, cfg, seed)).collect();
    let summary: Vec<String> =
        reports.iter().map(|r| format!("{} {}/{}", r.law_id, r.passed, r.instances_generated)).collect();
    if reports.iter().all(|r| r.ok() && r.instances_generated > 0) {
        Ok(summary.join(", "))
    } else {
        Err(format!("{summary:?} {:?}", reports.iter().map(|r| (&r.counterexample, &r.error)).collect::<Vec<_>>()))
    }
}

fn within(limit: Duration, start: Instant, check: Check) -> Check {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()));
    }
    check
}

fn routes_agree() -> Check {
    let start = Instant::now();
    let check = laws(&[LawId::L23Eq, LawId::L24Eq], &LawConfig::default(), 1);
    within(Duration::from_secs(300), start, check)
}

fn corpus_is_cl_hilbert() -> Check {
    laws(&[LawId::L218, LawId::L2171, LawId::L2173], &LawConfig::default(), 1)
}

fn larger_primes_equivalence() -> Check {
    laws(&[LawId::L25], &LawConfig::default(), 1)
}

fn json_result(args: &[&str]) -> Result<Value, String> {
    let run = modlattice(args);
    if run.code != 0 {
        return Err(format!("exit {}: {}", run.code, run.stderr));
    }
    let v: Value = serde_json::from_str(&run.stdout).map_err(|e| e.to_string())?;
    Ok(v["result"].clone())
}

fn pz_plus_zero() -> Check {
    for p in [2, 3, 5, 7] {
        let sub = format!(r#"{{"generators":[[{p},0]]}}"#);
        let r = json_result(&["classify", "--domain", "Z", "--module", r#"{"rank":2}"#, "--submodule", &sub])?;
        if r["classicalPrime"] != true || r["prime"] != false {
            return Err(format!("p = {p}: {r}"));
        }
    }
    Ok("classical prime, not prime, for p = 2, 3, 5, 7".into())
}

fn dedekind_radicals_on<D: EuclideanDomain>(d: &D, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SampleConfig::default();
    for i in 0..500 {
        let planted = planted_classical_prime(d, &mut rng, &cfg);
        let (m, p) = (&planted.module, &planted.prime);
        let classical = m.is_classical_prime(p).map_err(|e| e.to_string())?;
        let rad_zero = m.radical_shape(p).map_err(|e| e.to_string())?.is_zero();
        if !classical || !rad_zero || m.rank() > 3 {
            return Err(format!("{:?} sample {i}: classical {classical}, Rad(M/P) = 0 {rad_zero}", d.kind()));
        }
    }
    Ok(500)
}

fn dedekind_radicals() -> Check {
    let start = Instant::now();
    let check = (|| {
        let a = dedekind_radicals_on(&Integers, 5)?;
        let b = dedekind_radicals_on(&GfPolys::new(2).unwrap(), 5)?;
        let c = dedekind_radicals_on(&GfPolys::new(5).unwrap(), 5)?;
        Ok(format!("Z {a}, GF(2)[x] {b}, GF(5)[x] {c} samples with Rad(M/P) = 0"))
    })();
    within(Duration::from_secs(120), start, check)
}

fn local_controls() -> Check {
    for p in [2u64, 3, 5] {
        let domain = format!("Zloc({p})");
        let free = json_result(&["cl-hilbert", "--domain", &domain, "--module", r#"{"rank":1,"relations":[]}"#])?;
        let w = &free["witness"];
        if free["holds"] != false || w["generators"] != serde_json::json!([]) || w["radical"]["free"] != p {
            return Err(format!("free Zloc({p}): {free}"));
        }
        for (rank, rel) in [(1, format!("[[{p}]]")), (2, format!("[[{p},0],[0,{}]]", p * p))] {
            let module = format!(r#"{{"rank":{rank},"relations":{rel}}}"#);
            let t = json_result(&["cl-hilbert", "--domain", &domain, "--module", &module])?;
            if t["holds"] != true {
                return Err(format!("torsion Zloc({p}) {module}: {t}"));
            }
        }
    }
    Ok("free rank one false with P = 0 and Rad = (p); torsion modules true; p = 2, 3, 5".into())
}

fn zx_suite() -> Check {
    let mut found = Vec::new();
    for p in [2u64, 5] {
        if !not_prime_witness(p).verified {
            return Err(format!("p = {p}: not-prime witness fails"));
        }
        let ro = radical_obstruction(p);
        if !(ro.in_p_times_module && ro.not_in_ppx) {
            return Err(format!("p = {p}: radical obstruction {ro:?}"));
        }
        let cfg = FalsifyConfig { samples: 100_000, degree_bound: 4, coeff_bound: 9, seed: 2024 + p };
        match classical_prime_falsify(p, &cfg) {
            FalsifyOutcome::NoCounterexample { premise_held, .. } if premise_held > 0 => {}
            other => return Err(format!("p = {p}: {other:?}")),
        }
        let mutant = FalsifyConfig { samples: 1_000, ..cfg };
        match classical_prime_falsify_with(p, &mutant, corrupted_in_ideal_px) {
            FalsifyOutcome::Counterexample(c) => {
                found.push(format!("p = {p} mutant caught at sample {}", c.sample_index))
            }
            other => return Err(format!("p = {p}: corrupted membership survived: {other:?}")),
        }
    }
    Ok(format!("witnesses verified, 10^5 samples clean; {}", found.join(", ")))
}

fn lemma_split() -> Check {
    let z = Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let cfg = SampleConfig::default();
    for i in 0..200 {
        let k = rng.gen_range(2..=3);
        let r = rng.gen_range(1..k);
        let s = rng.gen_range(1..=k - r);
        let planted = planted_with_shape(&z, &mut rng, &cfg, k, r, s);
        let (m, p) = (&planted.module, &planted.prime);
        let Some((a, b)) = m.split_classical_prime(p).map_err(|e| e.to_string())? else {
            return Err(format!("sample {i}: mixed shape not split"));
        };
        if !(m.is_prime(&a).unwrap() && m.is_prime(&b).unwrap()) {
            return Err(format!("sample {i}: a component is not prime"));
        }
        let meet = m.intersect(&a, &b);
        let p_in_meet = p.generators().rows().iter().all(|g| m.contains(&a, g) && m.contains(&b, g));
        let meet_in_p = meet.generators().rows().iter().all(|g| m.contains(p, g));
        if !(p_in_meet && meet_in_p) {
            return Err(format!("sample {i}: P ⊆ A ∩ B {p_in_meet}, A ∩ B ⊆ P {meet_in_p}"));
        }
    }
    Ok("200 mixed-shape classical primes over Z equal their two prime components".into())
}

fn snf_holds<D: EuclideanDomain>(d: &D, a: &Matrix<D::Elem>) -> Result<(), String> {
    let f = smith(d, a);
    if mul(d, &mul(d, &f.u, a), &f.v) != f.d {
        return Err("U·A·V differs from D".into());
    }
    if !is_unimodular(d, &f.u) || !is_unimodular(d, &f.v) || mul(d, &f.v, &f.v_inv) != identity(d, a.ncols()) {
        return Err("transform not unimodular".into());
    }
    for (i, row) in f.d.rows().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j && i < f.diag.len() { f.diag[i].clone() } else { d.zero() };
            if *x != want {
                return Err(format!("entry ({i},{j}) is {x}"));
            }
        }
    }
    if f.diag.iter().any(|e| d.is_zero(e) || d.canonical(e) != *e)
        || f.diag.windows(2).any(|w| !d.divides(&w[0], &w[1]))
    {
        return Err(format!("diagonal {:?} is not a normalized divisibility chain", f.diag));
    }
    // The determinant is the product of the invariant factors up to a unit.
    if a.nrows() == a.ncols() {
        let prod =
            if f.diag.len() == a.nrows() { f.diag.iter().fold(d.one(), |acc, x| d.mul(&acc, x)) } else { d.zero() };
        if !d.associates(&det(d, a), &prod) {
            return Err("determinant disagrees with the invariant factors".into());
        }
    }
    Ok(())
}

fn snf_on<D: EuclideanDomain>(d: &D, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..10_000 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows = (0..m).map(|_| (0..n).map(|_| d.random_elem(&mut rng, 9)).collect()).collect();
        let a = Matrix::new(n, rows).unwrap();
        snf_holds(d, &a).map_err(|e| format!("{:?} matrix {i} {a:?}: {e}", d.kind()))?;
    }
    Ok(())
}

fn snf_self_check() -> Check {
    let start = Instant::now();
    let check = (|| {
        snf_on(&Integers, 9)?;
        snf_on(&GfPolys::new(3).unwrap(), 9)?;
        snf_on(&LocalIntegers::new(2).unwrap(), 9)?;
        Ok("10^4 matrices each over Z, GF(3)[x], Zloc(2)".to_string())
    })();
    within(Duration::from_secs(60), start, check)
}

fn determinism() -> Check {
    let args = ["laws", "run", "--all", "--seed", "42"];
    let (a, b) = (modlattice(&args), modlattice(&args));
    if a.code != 0 || b.code != 0 || a.stdout != b.stdout {
        return Err(format!("exit {} and {}, identical {}", a.code, b.code, a.stdout == b.stdout));
    }
    let reports = serde_json::from_str::<Value>(&a.stdout).map_err(|e| e.to_string())?["result"]["reports"]
        .as_array()
        .map_or(0, Vec::len);
    let cases = golden_cases();
    let bad: Vec<String> = cases.iter().filter_map(|(n, args)| golden_mismatch(n, args)).collect();
    if !bad.is_empty() {
        return Err(format!("golden mismatches: {bad:?}"));
    }
    Ok(format!("two runs of {reports} reports byte-identical; {} golden files match", cases.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("classical-prime and prime routes agree on the corpus", routes_agree),
        ("every corpus module is cl.Hilbert", corpus_is_cl_hilbert),
        ("larger-primes characterization agrees on the corpus", larger_primes_equivalence),
        ("pZ ⊕ 0 in Z² is classical prime but not prime", pz_plus_zero),
        ("Rad(M/P) = 0 for sampled classical primes over Dedekind domains", dedekind_radicals),
        ("Zloc(p) negative control", local_controls),
        ("P(p,x) in Z[x]² witness suite", zx_suite),
        ("mixed classical primes over Z split into two primes", lemma_split),
        ("Smith normal form self-verification", snf_self_check),
        ("determinism and golden reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
