use modlattice::laws::{all_passed, run_all, run_law, LawConfig, LawId};
use modlattice::rings::parse_ring;

#[test]
fn default_suite_passes_and_is_reproducible() {
    let cfg = LawConfig::default();
    let a = run_all(&cfg, 42);
    assert_eq!(a.len(), 19);
    for r in &a {
        assert!(r.ok(), "{}: {:?} {:?}", r.law_id, r.counterexample, r.error);
        assert!(r.instances_generated > 0, "{} generated nothing", r.law_id);
    }
    assert!(all_passed(&a));
    let b = run_all(&cfg, 42);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn a_law_alone_matches_the_batch() {
    let cfg = LawConfig { samples: 60, ..LawConfig::default() };
    let batch = run_all(&cfg, 7);
    let alone = run_law(LawId::L36, &cfg, 7).unwrap();
    let in_batch = batch.iter().find(|r| r.law_id == LawId::L36).unwrap();
    assert_eq!(serde_json::to_value(&alone).unwrap(), serde_json::to_value(in_batch).unwrap());
}

#[test]
fn zero_bound_fails_every_law_with_a_bound_error() {
    let cfg = LawConfig { max_module: 0, ..LawConfig::default() };
    let reports = run_all(&cfg, 42);
    assert!(reports.iter().all(|r| r.is_bound_error()));
    assert!(!all_passed(&reports));
}

#[test]
fn restricted_corpus() {
    let cfg = LawConfig { rings: Some(vec![parse_ring("Z/12").unwrap()]), ..LawConfig::default() };
    let r = run_law(LawId::L25, &cfg, 1).unwrap();
    assert!(r.ok());
    let full = run_law(LawId::L25, &LawConfig::default(), 1).unwrap();
    assert!(r.instances_generated < full.instances_generated);
}

#[test]
fn sampled_laws_scale_with_samples() {
    let small = run_law(LawId::L32, &LawConfig { samples: 20, ..LawConfig::default() }, 3).unwrap();
    let large = run_law(LawId::L32, &LawConfig { samples: 80, ..LawConfig::default() }, 3).unwrap();
    assert!(small.ok() && large.ok());
    assert!(small.instances_generated < large.instances_generated);
}
