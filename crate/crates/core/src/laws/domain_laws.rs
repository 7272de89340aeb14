//! Laws sampled over `Z`, `GF(p)[x]` and `Z_(p)`, plus the negative controls.

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::classify::is_cl_hilbert;
use crate::error::Result;
use crate::euclid::sampling::{planted_classical_prime, random_module, random_submodule, random_torsion_module};
use crate::euclid::{PresentedModule, SubmodulePres};
use crate::rings::{EuclideanDomain, FiniteRing, GfPolys, Integers, LocalIntegers};

use super::corpus::ModuleSpec;
use super::runner::{Fixture, Instance, Tally, Verdict};
use super::LawConfig;

/// Primes for the local rings `Z_(p)`.
const LOCAL_PRIMES: [u64; 3] = [2, 3, 5];

/// A presented module with one submodule.
#[derive(Clone, Debug)]
pub struct DomainInstance<D: EuclideanDomain> {
    pub module: PresentedModule<D>,
    pub sub: SubmodulePres<D::Elem>,
}

impl<D: EuclideanDomain> DomainInstance<D> {
    fn rebuild(&self, rels: Vec<Vec<D::Elem>>, gens: Vec<Vec<D::Elem>>) -> Self {
        let module = PresentedModule::new(self.module.domain().clone(), self.module.rank(), rels).expect("same width");
        let sub = module.submodule(gens).expect("same width");
        DomainInstance { module, sub }
    }
}

impl<D: EuclideanDomain> Instance for DomainInstance<D> {
    fn shrink(&self) -> Vec<Self> {
        let rels = self.module.relations().rows().to_vec();
        let gens = self.sub.generators().rows().to_vec();
        let mut out = Vec::new();
        for i in 0..rels.len() {
            let mut r = rels.clone();
            r.remove(i);
            out.push(self.rebuild(r, gens.clone()));
        }
        for i in 0..gens.len() {
            let mut g = gens.clone();
            g.remove(i);
            out.push(self.rebuild(rels.clone(), g));
        }
        out
    }

    fn to_json(&self) -> Value {
        let d = self.module.domain();
        let rows = |rs: &[Vec<D::Elem>]| -> Vec<Vec<Value>> {
            rs.iter().map(|r| r.iter().map(|e| d.to_json(e)).collect()).collect()
        };
        json!({
            "domain": d.kind().to_string(),
            "rank": self.module.rank(),
            "relations": rows(self.module.relations().rows()),
            "generators": rows(self.sub.generators().rows()),
        })
    }
}

fn fail(what: &str, extra: Value) -> Verdict {
    Ok(Some(json!({ "violation": what, "data": extra })))
}

/// The saturation of `N0`: the preimage of the torsion of `M/N0`, so that
/// `M/N` is torsion-free.
fn saturate<D: EuclideanDomain>(m: &PresentedModule<D>, n0: &SubmodulePres<D::Elem>) -> SubmodulePres<D::Elem> {
    let t = m.quotient(n0).torsion_submodule();
    m.submodule(t.generators().rows().to_vec()).expect("same width")
}

fn torsion_free_quotient_law<D: EuclideanDomain>(inst: &DomainInstance<D>) -> Verdict {
    let m = &inst.module;
    let n = saturate(m, &inst.sub);
    if !m.is_torsion_free_quotient(&n) {
        return fail("saturation leaves torsion", Value::Null);
    }
    if m.cl_hilbert().holds && !m.submodule_as_module(&n).cl_hilbert().holds {
        return fail("submodule with torsion-free quotient is not cl.Hilbert", Value::Null);
    }
    Ok(None)
}

fn sample_pairs<D: EuclideanDomain>(
    d: &D,
    cfg: &LawConfig,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
    law: impl Fn(&DomainInstance<D>) -> Verdict,
) -> Result<()> {
    for _ in 0..cfg.samples {
        let module = random_module(d, rng, &cfg.sampling);
        let sub = random_submodule(&module, rng, &cfg.sampling);
        tally.check(DomainInstance { module, sub }, &law)?;
    }
    Ok(())
}

pub(super) fn torsion_free_quotients(cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    sample_pairs(&Integers, cfg, rng, tally, torsion_free_quotient_law)?;
    sample_pairs(&GfPolys::new(3)?, cfg, rng, tally, torsion_free_quotient_law)?;
    for p in LOCAL_PRIMES {
        sample_pairs(&LocalIntegers::new(p)?, cfg, rng, tally, torsion_free_quotient_law)?;
    }
    Ok(())
}

fn torsion_and_pure_law<D: EuclideanDomain>(inst: &DomainInstance<D>) -> Verdict {
    let m = &inst.module;
    let holds = m.cl_hilbert().holds;
    if holds && !m.submodule_as_module(&m.torsion_submodule()).cl_hilbert().holds {
        return fail("torsion submodule is not cl.Hilbert", Value::Null);
    }
    if m.shape().invariant_factors.is_empty() {
        // Torsion-free: purity is the same as a torsion-free quotient.
        let n0 = &inst.sub;
        if m.is_pure_submodule(n0)? != m.is_torsion_free_quotient(n0) {
            return fail("purity and torsion-free quotient disagree", Value::Null);
        }
        let n = saturate(m, n0);
        if !m.is_pure_submodule(&n)? {
            return fail("saturated submodule is not pure", Value::Null);
        }
        if holds && !m.submodule_as_module(&n).cl_hilbert().holds {
            return fail("pure submodule is not cl.Hilbert", Value::Null);
        }
    }
    Ok(None)
}

pub(super) fn torsion_and_pure(cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    sample_pairs(&Integers, cfg, rng, tally, torsion_and_pure_law)?;
    sample_pairs(&GfPolys::new(3)?, cfg, rng, tally, torsion_and_pure_law)?;
    for p in LOCAL_PRIMES {
        sample_pairs(&LocalIntegers::new(p)?, cfg, rng, tally, torsion_and_pure_law)?;
    }
    Ok(())
}

/// `Z_(p)` has `J = (p) ≠ 0` and is one-dimensional: its free module of
/// rank one must come out not cl.Hilbert, with the zero submodule as witness.
pub(super) fn local_free_controls(tally: &mut Tally) -> Result<()> {
    for p in LOCAL_PRIMES {
        let d = LocalIntegers::new(p)?;
        let m = PresentedModule::free(d.clone(), 1)?;
        let fixture = Fixture(json!({ "control": "free module of rank 1", "domain": d.kind().to_string() }));
        tally.check(fixture, |_| {
            let v = m.cl_hilbert();
            let Some(w) = v.witness.as_ref() else {
                return fail("control reported cl.Hilbert", Value::Null);
            };
            let rad = m.radical_shape(w)?;
            let expected_rad = rad.free.as_ref().is_some_and(|g| d.associates(g, &d.from_i64(p as i64)));
            if v.holds
                || !m.same_submodule(w, &m.zero_submodule())
                || !expected_rad
                || d.is_zero(&d.jacobson_generator())
            {
                return fail("control did not fail as expected", json!({ "holds": v.holds }));
            }
            Ok(None)
        })?;
    }
    Ok(())
}

/// Classical primes of a torsion module have `Rad(M/P) = 0`, and the module
/// is cl.Hilbert.
fn torsion_law<D: EuclideanDomain>(inst: &DomainInstance<D>) -> Verdict {
    let m = &inst.module;
    if !m.shape().is_torsion() {
        return Ok(None);
    }
    if !m.cl_hilbert().holds {
        return fail("torsion module is not cl.Hilbert", Value::Null);
    }
    let p = &inst.sub;
    if !m.quotient_shape(p).is_zero() && m.is_classical_prime(p)? && !m.radical_shape(p)?.is_zero() {
        return fail("classical prime of a torsion module has Rad(M/P) ≠ 0", Value::Null);
    }
    Ok(None)
}

fn sample_torsion<D: EuclideanDomain>(d: &D, cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    for _ in 0..cfg.samples {
        let module = random_torsion_module(d, rng, &cfg.sampling);
        let sub = random_submodule(&module, rng, &cfg.sampling);
        tally.check(DomainInstance { module, sub }, torsion_law)?;
    }
    Ok(())
}

/// A torsion `Z`-module `⊕ Z/(d_i)` realized as a finite module over `Z/n`,
/// `n` the exponent; `None` when it is zero or too large.
fn finite_realization(m: &PresentedModule<Integers>, max_module: usize) -> Option<ModuleSpec> {
    use num_traits::ToPrimitive;
    let factors = m.shape().invariant_factors;
    let sizes: Vec<u64> = factors.iter().map(|f| f.to_u64()).collect::<Option<_>>()?;
    let total = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s))?;
    if sizes.is_empty() || total > max_module as u64 {
        return None;
    }
    let n = *sizes.last().unwrap();
    let ring = FiniteRing::cyclic(n).ok()?;
    let k = sizes.len();
    let rows = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (0..k).map(|j| if i == j { ring.from_int(s as i128) } else { ring.zero() }).collect())
        .collect();
    Some(ModuleSpec::new(&ring, k, rows))
}

pub(super) fn torsion_modules(cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let limits = cfg.module_limits();
    for _ in 0..cfg.samples {
        let m = random_torsion_module(&Integers, rng, &cfg.sampling);
        if let Some(spec) = finite_realization(&m, cfg.max_module) {
            tally.check(spec, |s| {
                if is_cl_hilbert(&s.build(&limits)?, &limits)? {
                    Ok(None)
                } else {
                    fail("finite torsion module is not cl.Hilbert", Value::Null)
                }
            })?;
        }
    }
    sample_torsion(&Integers, cfg, rng, tally)?;
    sample_torsion(&GfPolys::new(2)?, cfg, rng, tally)?;
    for p in LOCAL_PRIMES {
        sample_torsion(&LocalIntegers::new(p)?, cfg, rng, tally)?;
    }
    // Dropping the torsion hypothesis over Z_(p) must break the conclusion.
    local_free_controls(tally)
}

fn split_law<D: EuclideanDomain>(inst: &DomainInstance<D>) -> Verdict {
    let (m, p) = (&inst.module, &inst.sub);
    if m.quotient_shape(p).is_zero() || !m.is_classical_prime(p)? {
        return Ok(None);
    }
    let Some((p1, p2)) = m.split_classical_prime(p)? else {
        return if m.is_prime(p)? { Ok(None) } else { fail("classical prime with no split is not prime", Value::Null) };
    };
    if !m.is_prime(&p1)? || !m.is_prime(&p2)? {
        return fail("split parts are not prime", Value::Null);
    }
    let inside =
        |a: &SubmodulePres<D::Elem>, b: &SubmodulePres<D::Elem>| a.generators().rows().iter().all(|v| m.contains(b, v));
    let meet = m.intersect(&p1, &p2);
    if !(inside(p, &p1) && inside(p, &p2) && inside(&meet, p)) {
        return fail("P is not the intersection of its split", Value::Null);
    }
    Ok(None)
}

fn sample_planted<D: EuclideanDomain>(
    d: &D,
    cfg: &LawConfig,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
    law: impl Fn(&DomainInstance<D>) -> Verdict,
) -> Result<()> {
    for _ in 0..cfg.samples {
        let planted = planted_classical_prime(d, rng, &cfg.sampling);
        tally.check(DomainInstance { module: planted.module, sub: planted.prime }, &law)?;
    }
    Ok(())
}

pub(super) fn classical_primes_split(cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    sample_planted(&Integers, cfg, rng, tally, split_law)?;
    sample_planted(&GfPolys::new(2)?, cfg, rng, tally, split_law)
}

fn dedekind_law<D: EuclideanDomain>(inst: &DomainInstance<D>) -> Verdict {
    let (m, p) = (&inst.module, &inst.sub);
    if !m.cl_hilbert().holds {
        return fail("module is not cl.Hilbert", Value::Null);
    }
    if m.quotient_shape(p).is_zero() || !m.is_classical_prime(p)? {
        return Ok(None);
    }
    if !m.radical_shape(p)?.is_zero() {
        return fail("Rad(M/P) ≠ 0", Value::Null);
    }
    Ok(None)
}

fn free_rank_two<D: EuclideanDomain>(d: &D, tally: &mut Tally) -> Result<()> {
    let m = PresentedModule::free(d.clone(), 2)?;
    let fixture = Fixture(json!({ "module": "free module of rank 2", "domain": d.kind().to_string() }));
    tally.check(fixture, |_| if m.cl_hilbert().holds { Ok(None) } else { fail("D^2 is not cl.Hilbert", Value::Null) })
}

pub(super) fn dedekind_radicals(cfg: &LawConfig, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let int = Integers;
    let gf2 = GfPolys::new(2)?;
    let gf5 = GfPolys::new(5)?;
    free_rank_two(&int, tally)?;
    sample_planted(&int, cfg, rng, tally, dedekind_law)?;
    free_rank_two(&gf2, tally)?;
    sample_planted(&gf2, cfg, rng, tally, dedekind_law)?;
    free_rank_two(&gf5, tally)?;
    sample_planted(&gf5, cfg, rng, tally, dedekind_law)?;
    // Unplanted submodules too: most are not classical prime, which
    // exercises the hypothesis filter.
    sample_pairs(&int, cfg, rng, tally, dedekind_law)?;
    local_free_controls(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use num_bigint::BigInt;
    use rand::SeedableRng;

    #[test]
    fn finite_realizations() {
        let m = PresentedModule::new(
            Integers,
            2,
            vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(6)]],
        )
        .unwrap();
        let spec = finite_realization(&m, 256).unwrap();
        assert_eq!(spec.ring.to_string(), "Z/6");
        assert_eq!(spec.build(&Limits::default()).unwrap().size(), 12);
        assert!(finite_realization(&m, 8).is_none());
    }

    #[test]
    fn split_law_catches_a_wrong_meet() {
        let d = Integers;
        let m = PresentedModule::free(d, 2).unwrap();
        let p = m.submodule(vec![vec![BigInt::from(3), BigInt::from(0)]]).unwrap();
        assert_eq!(split_law(&DomainInstance { module: m.clone(), sub: p }).unwrap(), None);
        let q = m.submodule(vec![vec![BigInt::from(4), BigInt::from(0)]]).unwrap();
        assert_eq!(split_law(&DomainInstance { module: m, sub: q }).unwrap(), None);
    }

    #[test]
    fn controls_pass() {
        let mut t = Tally::default();
        local_free_controls(&mut t).unwrap();
        assert_eq!((t.generated, t.passed), (3, 3));
    }

    #[test]
    fn instance_shrinks_and_serializes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let planted = planted_classical_prime(&Integers, &mut rng, &Default::default());
        let inst = DomainInstance { module: planted.module, sub: planted.prime };
        let v = inst.to_json();
        assert_eq!(v["domain"], "Z");
        let n = inst.module.relations().nrows() + inst.sub.generators().nrows();
        assert_eq!(inst.shrink().len(), n);
    }
}
