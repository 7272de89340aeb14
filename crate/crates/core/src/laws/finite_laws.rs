//! Laws checked exhaustively over the finite corpus.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::classify::{
    annihilator_spectrum, cl_hilbert_on, is_cl_hilbert, is_classical_prime, is_classical_prime_chain,
    is_classical_prime_def, is_hilbert, is_intersection_of_maximals, is_intersection_of_maximals_lattice, is_prime_def,
    is_prime_sub, minimal_classical_primes, radical_of_module, spectrum_all_maximal, theorem25_check, Lattice,
};
use crate::error::Result;
use crate::finmod::{
    annihilator, colon_ideal, direct_sum, ideal_times, over_quotient_ring, quotient_module, submodule_as_module,
    FiniteModule, SubmoduleF,
};
use crate::json::submodule_to_json;
use crate::limits::Limits;
use crate::rings::{all_ideals, is_prime_ideal, minimal_primes, nilradical, quotient_ring, FiniteRing, IdealF};

use super::corpus::{corpus_modules, corpus_pairs, has_nilpotents, ModuleSpec, PairSpec};
use super::runner::{Tally, Verdict};
use super::LawConfig;

/// Runs `law` on every corpus module over the configured rings passing `filter`.
fn each_module(
    cfg: &LawConfig,
    tally: &mut Tally,
    filter: impl Fn(&FiniteRing) -> bool,
    law: impl Fn(&FiniteModule, &Limits) -> Verdict,
) -> Result<()> {
    let limits = cfg.module_limits();
    let eval = |s: &ModuleSpec| law(&s.build(&limits)?, &limits);
    for ring in cfg.rings().iter().filter(|r| filter(r)) {
        for spec in corpus_modules(ring, cfg.max_module, &cfg.limits)? {
            tally.check(spec, eval)?;
        }
    }
    Ok(())
}

fn any_ring(_: &FiniteRing) -> bool {
    true
}

fn is_domain(r: &FiniteRing) -> bool {
    is_prime_ideal(&crate::rings::ideal::zero_ideal(r))
}

fn proper(lat: &Lattice) -> impl Iterator<Item = &SubmoduleF> {
    lat.nodes().iter().filter(|p| p.is_proper())
}

fn cl_hilbert_lat(m: &FiniteModule, lat: &Lattice, limits: &Limits) -> Result<bool> {
    Ok(m.is_zero_module() || cl_hilbert_on(lat, limits)?)
}

fn fail(what: &str, extra: Value) -> Verdict {
    Ok(Some(json!({ "violation": what, "data": extra })))
}

pub(super) fn lemma_2_3(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        for p in proper(&lat) {
            let definition = is_classical_prime_def(p)?;
            let spectrum = annihilator_spectrum(p)?;
            let all_prime = spectrum.iter().all(is_prime_ideal);
            let chain = is_classical_prime_chain(p)?;
            let colon_and_chain = is_prime_ideal(&colon_ideal(p)) && chain;
            if !(definition == all_prime && all_prime == chain && chain == colon_and_chain) {
                return fail(
                    "classical prime routes disagree",
                    json!({
                        "submodule": submodule_to_json(p),
                        "definition": definition,
                        "primeAnnihilators": all_prime,
                        "primeChain": chain,
                        "primeColonAndChain": colon_and_chain,
                    }),
                );
            }
        }
        Ok(None)
    })
}

pub(super) fn lemma_2_4(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        for p in proper(&lat) {
            let definition = is_prime_def(p)?;
            let colon = colon_ideal(p);
            let spectrum = annihilator_spectrum(p)?;
            let each_equals_colon = spectrum.iter().all(|a| is_prime_ideal(a) && *a == colon);
            let singleton = is_prime_sub(p)?;
            if !(definition == each_equals_colon && each_equals_colon == singleton) {
                return fail(
                    "prime routes disagree",
                    json!({
                        "submodule": submodule_to_json(p),
                        "definition": definition,
                        "annihilatorsEqualPrimeColon": each_equals_colon,
                        "singletonSpectrum": singleton,
                    }),
                );
            }
        }
        Ok(None)
    })
}

pub(super) fn larger_primes(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let c = theorem25_check(m, limits)?;
        if c.agree() {
            return Ok(None);
        }
        fail("sides disagree", json!({ "clHilbert": c.cl_hilbert, "largerPrimesMeet": c.larger_primes_meet }))
    })
}

pub(super) fn images(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        let module_ch = cl_hilbert_lat(m, &lat, limits)?;
        let classical: BTreeSet<&SubmoduleF> = lat.classical_primes()?.into_iter().collect();
        let maximal: BTreeSet<&SubmoduleF> = lat.maximal()?.into_iter().collect();
        for n in lat.nodes() {
            let q = quotient_module(n, limits)?;
            let qlat = Lattice::new(q.module(), limits)?;
            if module_ch && !cl_hilbert_lat(q.module(), &qlat, limits)? {
                return fail("image is not cl.Hilbert", json!({ "submodule": submodule_to_json(n) }));
            }
            // Classical primes and maximals of M/N are exactly the images of those of M above N.
            let lifted =
                |xs: Vec<&SubmoduleF>| -> BTreeSet<SubmoduleF> { xs.into_iter().map(|t| q.preimage(t)).collect() };
            let above = |set: &BTreeSet<&SubmoduleF>| -> BTreeSet<SubmoduleF> {
                set.iter().filter(|p| n.is_subset(p)).map(|p| (*p).clone()).collect()
            };
            if lifted(qlat.classical_primes()?) != above(&classical) || lifted(qlat.maximal()?) != above(&maximal) {
                return fail("correspondence above N fails", json!({ "submodule": submodule_to_json(n) }));
            }
        }
        Ok(None)
    })
}

pub(super) fn quotients_and_minimal_primes(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        let module_ch = cl_hilbert_lat(m, &lat, limits)?;
        let mut all_quotients = true;
        for n in lat.nodes() {
            all_quotients &= is_cl_hilbert(quotient_module(n, limits)?.module(), limits)?;
        }
        let mut minimal_quotients = true;
        for n in minimal_classical_primes(m, limits)? {
            minimal_quotients &= is_cl_hilbert(quotient_module(&n, limits)?.module(), limits)?;
        }
        if module_ch == all_quotients && all_quotients == minimal_quotients {
            return Ok(None);
        }
        fail(
            "statements disagree",
            json!({ "clHilbert": module_ch, "allQuotients": all_quotients, "minimalPrimeQuotients": minimal_quotients }),
        )
    })
}

pub(super) fn summands(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    let limits = cfg.module_limits();
    let eval = |p: &PairSpec| -> Verdict {
        let (a, b) = (p.0.build(&limits)?, p.1.build(&limits)?);
        let sum = direct_sum(&a, &b, &limits)?;
        if !is_cl_hilbert(sum.module(), &limits)? {
            return Ok(None);
        }
        let (ca, cb) = (is_cl_hilbert(&a, &limits)?, is_cl_hilbert(&b, &limits)?);
        if ca && cb {
            return Ok(None);
        }
        fail("summand is not cl.Hilbert", json!({ "left": ca, "right": cb }))
    };
    for ring in cfg.rings() {
        for pair in corpus_pairs(&ring, cfg.max_module, &cfg.limits)? {
            tally.check(pair, eval)?;
        }
    }
    Ok(())
}

pub(super) fn change_of_rings(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        let module_ch = cl_hilbert_lat(m, &lat, limits)?;
        let ann = annihilator(m);
        for i in all_ideals(m.ring(), limits)?.iter().filter(|i| i.is_subset(&ann)) {
            let over = over_quotient_ring(m, &quotient_ring(i)?, limits)?;
            let ch = is_cl_hilbert(over.module(), limits)?;
            if ch != module_ch {
                return fail("cl.Hilbert changes over R/I", json!({ "idealSize": i.len(), "overQuotient": ch }));
            }
            for p in proper(&lat) {
                if is_classical_prime(p)? != is_classical_prime(&over.transport(p))? {
                    return fail(
                        "classical prime not preserved over R/I",
                        json!({ "idealSize": i.len(), "submodule": submodule_to_json(p) }),
                    );
                }
            }
        }
        Ok(None)
    })
}

pub(super) fn nil_quotients(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let module_ch = is_cl_hilbert(m, limits)?;
        let nil = nilradical(m.ring(), limits)?;
        let q = quotient_module(&ideal_times(&nil, &SubmoduleF::whole(m)), limits)?;
        let over_r = is_cl_hilbert(q.module(), limits)?;
        let reduced = over_quotient_ring(q.module(), &quotient_ring(&nil)?, limits)?;
        let over_reduced = is_cl_hilbert(reduced.module(), limits)?;
        if module_ch == over_r && over_r == over_reduced {
            return Ok(None);
        }
        fail(
            "statements disagree",
            json!({ "clHilbert": module_ch, "moduloNilOverR": over_r, "moduloNilOverReduced": over_reduced }),
        )
    })
}

pub(super) fn quotient_radicals(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        let module_ch = cl_hilbert_lat(m, &lat, limits)?;
        let mut radicals_zero = true;
        let mut over_colon = true;
        for p in lat.classical_primes()? {
            let q = quotient_module(p, limits)?;
            radicals_zero &= radical_of_module(q.module(), limits)?.is_zero();
            let over = over_quotient_ring(q.module(), &quotient_ring(&colon_ideal(p))?, limits)?;
            over_colon &= is_cl_hilbert(over.module(), limits)?;
        }
        if module_ch == radicals_zero && radicals_zero == over_colon {
            return Ok(None);
        }
        fail(
            "statements disagree",
            json!({ "clHilbert": module_ch, "quotientRadicalsZero": radicals_zero, "overColonRings": over_colon }),
        )
    })
}

/// `rm ∈ N` with `r ≠ 0` forces `m ∈ N`.
fn torsion_free_quotient(n: &SubmoduleF) -> bool {
    let m = n.parent();
    let ring = m.ring();
    m.elements().filter(|&x| !n.contains(x)).all(|x| ring.elements().skip(1).all(|r| !n.contains(m.act(r, x))))
}

/// `{m : rm = 0 for some r ≠ 0}`; a submodule when `R` is a domain.
fn torsion_elements(m: &FiniteModule) -> Vec<crate::finmod::ModElem> {
    let ring = m.ring();
    m.elements().filter(|&x| ring.elements().skip(1).any(|r| m.act(r, x) == m.zero_elem())).collect()
}

fn as_module_cl_hilbert(n: &SubmoduleF, limits: &Limits) -> Result<bool> {
    is_cl_hilbert(submodule_as_module(n, limits)?.module(), limits)
}

pub(super) fn torsion_free_quotients(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, is_domain, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        if !cl_hilbert_lat(m, &lat, limits)? {
            return Ok(None);
        }
        for n in lat.nodes().iter().filter(|n| torsion_free_quotient(n)) {
            if !as_module_cl_hilbert(n, limits)? {
                return fail(
                    "submodule with torsion-free quotient is not cl.Hilbert",
                    json!({ "submodule": submodule_to_json(n) }),
                );
            }
        }
        Ok(None)
    })
}

/// `IN = N ∩ IM` for every ideal `I`.
fn is_pure(n: &SubmoduleF, ideals: &[IdealF]) -> bool {
    let whole = SubmoduleF::whole(n.parent());
    ideals.iter().all(|i| ideal_times(i, n) == n.intersection(&ideal_times(i, &whole)))
}

pub(super) fn torsion_and_pure(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, is_domain, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        if !cl_hilbert_lat(m, &lat, limits)? {
            return Ok(None);
        }
        let torsion = crate::finmod::submodule_generated(m, &torsion_elements(m));
        if !as_module_cl_hilbert(&torsion, limits)? {
            return fail("torsion submodule is not cl.Hilbert", json!({ "torsion": submodule_to_json(&torsion) }));
        }
        if !torsion.is_zero() {
            return Ok(None);
        }
        let ideals = all_ideals(m.ring(), limits)?;
        for n in lat.nodes().iter().filter(|n| is_pure(n, &ideals)) {
            if !as_module_cl_hilbert(n, limits)? {
                return fail("pure submodule is not cl.Hilbert", json!({ "submodule": submodule_to_json(n) }));
            }
        }
        Ok(None)
    })
}

pub(super) fn maximal_spectrum(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        for p in lat.classical_primes()? {
            if spectrum_all_maximal(&annihilator_spectrum(p)?) && !is_intersection_of_maximals_lattice(p, lat.nodes())?
            {
                return fail("not an intersection of maximals", json!({ "submodule": submodule_to_json(p) }));
            }
        }
        Ok(None)
    })
}

pub(super) fn zero_dimensional(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        if is_cl_hilbert(m, limits)? {
            Ok(None)
        } else {
            fail("module is not cl.Hilbert", Value::Null)
        }
    })
}

pub(super) fn artinian(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        for p in lat.classical_primes()? {
            let spectrum_maximal = spectrum_all_maximal(&annihilator_spectrum(p)?);
            let meet = is_intersection_of_maximals(p, limits)?;
            if !(spectrum_maximal && meet) {
                return fail(
                    "classical prime escapes the Artinian argument",
                    json!({ "submodule": submodule_to_json(p), "spectrumMaximal": spectrum_maximal, "intersectionOfMaximals": meet }),
                );
            }
        }
        Ok(None)
    })
}

pub(super) fn every_module(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, any_ring, |m, limits| {
        let (ch, h) = (is_cl_hilbert(m, limits)?, is_hilbert(m, limits)?);
        if ch && h {
            Ok(None)
        } else {
            fail("module is not (cl.)Hilbert", json!({ "clHilbert": ch, "hilbert": h }))
        }
    })
}

pub(super) fn minimal_primes_transport(cfg: &LawConfig, tally: &mut Tally) -> Result<()> {
    each_module(cfg, tally, has_nilpotents, |m, limits| {
        let lat = Lattice::new(m, limits)?;
        let module_ch = cl_hilbert_lat(m, &lat, limits)?;
        let mins = minimal_primes(m.ring(), limits)?;
        let mut all_transported = true;
        for p in lat.classical_primes()? {
            let colon = colon_ideal(p);
            let p0 = mins.iter().find(|q| q.is_subset(&colon)).expect("a prime contains a minimal prime");
            let q = quotient_module(p, limits)?;
            let over = over_quotient_ring(q.module(), &quotient_ring(p0)?, limits)?;
            let transported = is_intersection_of_maximals(&SubmoduleF::zero(over.module()), limits)?;
            let direct = is_intersection_of_maximals(p, limits)?;
            if transported != direct {
                return fail(
                    "status differs over R/P0",
                    json!({ "submodule": submodule_to_json(p), "overR": direct, "overMinimalPrimeQuotient": transported }),
                );
            }
            all_transported &= transported;
        }
        if module_ch != all_transported {
            return fail(
                "module status differs",
                json!({ "clHilbert": module_ch, "viaMinimalPrimes": all_transported }),
            );
        }
        for p0 in &mins {
            let q = quotient_module(&ideal_times(p0, &SubmoduleF::whole(m)), limits)?;
            let over = over_quotient_ring(q.module(), &quotient_ring(p0)?, limits)?;
            if is_cl_hilbert(q.module(), limits)? != is_cl_hilbert(over.module(), limits)? {
                return fail("M/P0M changes status over R/P0", json!({ "minimalPrimeSize": p0.len() }));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::submodule_generated;
    use crate::rings::parse_ring;

    #[test]
    fn torsion_free_and_pure_helpers() {
        let limits = Limits::default();
        let f = parse_ring("Z/3").unwrap();
        let m = FiniteModule::free(&f, 2, &limits).unwrap();
        let line = submodule_generated(&m, &[m.basis(0)]);
        assert!(torsion_free_quotient(&line));
        assert!(is_pure(&line, &all_ideals(&f, &limits).unwrap()));
        assert!(torsion_elements(&m) == vec![m.zero_elem()]);

        let z4 = parse_ring("Z/4").unwrap();
        let m = FiniteModule::free(&z4, 1, &limits).unwrap();
        let two = submodule_generated(&m, &[m.act(z4.from_int(2), m.basis(0))]);
        assert!(!torsion_free_quotient(&two));
        assert!(!is_pure(&two, &all_ideals(&z4, &limits).unwrap()));
    }

    #[test]
    fn domains_in_corpus() {
        let names: Vec<String> =
            crate::laws::corpus_rings().into_iter().filter(is_domain).map(|r| r.to_string()).collect();
        assert_eq!(names, ["Z/2", "Z/3", "GF(2)[x]/[1,1,1]"]);
    }
}
