//! Dispatch from a job to the library, producing the report text.

use modlattice::classify::{
    classify, is_cl_hilbert, is_classical_prime, is_intersection_of_maximals_lattice, is_maximal_sub, is_prime_sub,
    Lattice,
};
use modlattice::euclid::PresentedModule;
use modlattice::json::{
    build_module, build_presented, build_presented_submodule, build_submodule, classification_to_json,
    domain_rows_to_json, module_to_json, parse_module_json, radical_to_json, shape_to_json, submodule_to_json,
    to_canonical_string, ModuleJson,
};
use modlattice::laws::{all_passed, run_all, run_law_reported, LawConfig, LawReport};
use modlattice::rings::{
    parse_ring_with_cells, DomainKind, EuclideanDomain, FiniteRing, GfPolys, Integers, LocalIntegers,
};
use modlattice::zx::{zx_report, FalsifyConfig, FalsifyOutcome};
use modlattice::{Limits, Result};
use serde_json::{json, Value};

use crate::dot::export_dot;
use crate::job::{Command, Format, JobSpec, Target};
use crate::{EXIT_BOUNDS, EXIT_INTERNAL, EXIT_LAW_FAILURE, EXIT_OK};

/// Runs a generic body with the concrete domain for a [`DomainKind`].
macro_rules! with_domain {
    ($kind:expr, |$d:ident| $body:expr) => {
        match $kind {
            DomainKind::Int => {
                let $d = Integers;
                $body
            }
            DomainKind::PolyOverGf(p) => {
                let $d = GfPolys::new(p)?;
                $body
            }
            DomainKind::IntLocAt(p) => {
                let $d = LocalIntegers::new(p)?;
                $body
            }
        }
    };
}

/// Falsifier search box for `witness zx`.
pub const WITNESS_DEGREE_BOUND: usize = 4;
pub const WITNESS_COEFF_BOUND: i64 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

pub fn report(job: &JobSpec, result: Value) -> Value {
    json!({
        "toolVersion": concat!("modlattice ", env!("CARGO_PKG_VERSION")),
        "inputEcho": job.echo(),
        "result": result,
    })
}

pub fn execute(job: &JobSpec, limits: &Limits) -> Result<Outcome> {
    let (result, exit_code) = match &job.command {
        Command::Classify { target, module, generators, bounds } => {
            (classify_job(target, module, generators, &bounds.apply(limits))?, EXIT_OK)
        }
        Command::Lattice { ring, module, bounds, format } => {
            let result = lattice_job(ring, module, &bounds.apply(limits))?;
            if *format == Format::Dot {
                return Ok(Outcome { text: export_dot(&result), exit_code: EXIT_OK });
            }
            (result, EXIT_OK)
        }
        Command::ClHilbert { target, module, bounds } => {
            (cl_hilbert_job(target, module, &bounds.apply(limits))?, EXIT_OK)
        }
        Command::Laws { law, rings, max_module, samples, seed } => {
            let mut cfg = LawConfig { limits: *limits, ..LawConfig::default() };
            if !rings.is_empty() {
                cfg.rings =
                    Some(rings.iter().map(|r| parse_ring_with_cells(r, limits.max_cells)).collect::<Result<_>>()?);
            }
            cfg.max_module = max_module.unwrap_or(cfg.max_module);
            cfg.samples = samples.unwrap_or(cfg.samples);
            let reports = match law {
                Some(id) => vec![run_law_reported(*id, &cfg, *seed)],
                None => run_all(&cfg, *seed),
            };
            laws_result(&reports)
        }
        Command::Witness { p, samples, seed } => {
            let cfg = FalsifyConfig {
                samples: *samples,
                degree_bound: WITNESS_DEGREE_BOUND,
                coeff_bound: WITNESS_COEFF_BOUND,
                seed: *seed,
            };
            let r = zx_report(*p, &cfg);
            let held = r.not_prime.verified
                && r.radical_obstruction.verified
                && matches!(r.falsifier, FalsifyOutcome::NoCounterexample { .. });
            let mut v = serde_json::to_value(&r).expect("witness records serialize");
            v["degreeBound"] = json!(WITNESS_DEGREE_BOUND);
            v["coeffBound"] = json!(WITNESS_COEFF_BOUND);
            (v, if held { EXIT_OK } else { EXIT_LAW_FAILURE })
        }
    };
    Ok(Outcome { text: to_canonical_string(&report(job, result)), exit_code })
}

/// Counterexamples outrank errors; bound errors outrank the rest.
fn laws_result(reports: &[LawReport]) -> (Value, i32) {
    let code = if all_passed(reports) {
        EXIT_OK
    } else if reports.iter().any(|r| r.counterexample.is_some()) {
        EXIT_LAW_FAILURE
    } else if reports.iter().any(LawReport::is_bound_error) {
        EXIT_BOUNDS
    } else {
        EXIT_INTERNAL
    };
    (json!({ "allPassed": code == EXIT_OK, "reports": reports }), code)
}

fn module_spec(module: &Value) -> Result<ModuleJson> {
    parse_module_json(&module.to_string())
}

fn finite_ring(ring: &str, limits: &Limits) -> Result<FiniteRing> {
    parse_ring_with_cells(ring, limits.max_cells)
}

fn classify_job(target: &Target, module: &Value, generators: &Value, limits: &Limits) -> Result<Value> {
    match target {
        Target::Ring(r) => {
            let m = build_module(&finite_ring(r, limits)?, &module_spec(module)?, limits)?;
            let p = build_submodule(&m, generators)?;
            let mut v = classification_to_json(&classify(&p, limits)?);
            v["submodule"] = submodule_to_json(&p);
            v["moduleSize"] = json!(m.size());
            Ok(v)
        }
        Target::Domain(kind) => {
            with_domain!(*kind, |d| classify_over(d, module, generators))
        }
    }
}

fn classify_over<D: EuclideanDomain>(d: D, module: &Value, generators: &Value) -> Result<Value> {
    let m = build_presented(&d, &module_spec(module)?)?;
    let p = build_presented_submodule(&m, generators)?;
    let shape = m.quotient_shape(&p);
    let mut v = json!({
        "quotientShape": shape_to_json(&d, &shape),
        "radical": radical_to_json(&d, &m.radical_shape(&p)?),
    });
    if shape.is_zero() {
        for k in ["proper", "maximal", "prime", "classicalPrime", "intersectionOfMaximals"] {
            v[k] = json!(false);
        }
        return Ok(v);
    }
    // Simple quotient: exactly one invariant factor, prime, and no free part.
    let maximal =
        shape.free_rank == 0 && shape.invariant_factors.len() == 1 && d.is_prime_elem(&shape.invariant_factors[0])?;
    v["proper"] = json!(true);
    v["maximal"] = json!(maximal);
    v["prime"] = json!(m.is_prime(&p)?);
    v["classicalPrime"] = json!(m.is_classical_prime(&p)?);
    v["intersectionOfMaximals"] = json!(m.is_intersection_of_maximals(&p)?);
    if let Some((a, b)) = m.split_classical_prime(&p)? {
        v["primeSplit"] = json!([domain_rows_to_json(&d, a.generators()), domain_rows_to_json(&d, b.generators())]);
    }
    Ok(v)
}

fn lattice_job(ring: &str, module: &Value, limits: &Limits) -> Result<Value> {
    let m = build_module(&finite_ring(ring, limits)?, &module_spec(module)?, limits)?;
    let lat = Lattice::new(&m, limits)?;
    let nodes = lat.nodes();
    let mut out = Vec::with_capacity(nodes.len());
    let mut counts = [0usize; 4];
    for (i, n) in nodes.iter().enumerate() {
        let flags = if n.is_proper() {
            [
                is_maximal_sub(n)?,
                is_prime_sub(n)?,
                is_classical_prime(n)?,
                is_intersection_of_maximals_lattice(n, nodes)?,
            ]
        } else {
            [false; 4]
        };
        for (c, f) in counts.iter_mut().zip(flags) {
            *c += f as usize;
        }
        let mut v = submodule_to_json(n);
        v["id"] = json!(i);
        v["maximal"] = json!(flags[0]);
        v["prime"] = json!(flags[1]);
        v["classicalPrime"] = json!(flags[2]);
        v["intersectionOfMaximals"] = json!(flags[3]);
        out.push(v);
    }
    let edges: Vec<[usize; 2]> = lat.covers().into_iter().map(|(i, j)| [i, j]).collect();
    Ok(json!({
        "module": module_to_json(&m),
        "moduleSize": m.size(),
        "nodes": out,
        "edges": edges,
        "counts": {
            "submodules": nodes.len(),
            "edges": edges.len(),
            "maximal": counts[0],
            "prime": counts[1],
            "classicalPrime": counts[2],
            "intersectionOfMaximals": counts[3],
        },
    }))
}

fn cl_hilbert_job(target: &Target, module: &Value, limits: &Limits) -> Result<Value> {
    match target {
        Target::Ring(r) => {
            let m = build_module(&finite_ring(r, limits)?, &module_spec(module)?, limits)?;
            Ok(json!({ "holds": is_cl_hilbert(&m, limits)?, "justification": "Enumerated", "witness": null }))
        }
        Target::Domain(kind) => with_domain!(*kind, |d| cl_hilbert_over(d, module)),
    }
}

fn cl_hilbert_over<D: EuclideanDomain>(d: D, module: &Value) -> Result<Value> {
    let m: PresentedModule<D> = build_presented(&d, &module_spec(module)?)?;
    let verdict = m.cl_hilbert();
    let witness = match &verdict.witness {
        None => Value::Null,
        Some(p) => json!({
            "generators": domain_rows_to_json(&d, p.generators()),
            "quotientShape": shape_to_json(&d, &m.quotient_shape(p)),
            "radical": radical_to_json(&d, &m.radical_shape(p)?),
        }),
    };
    Ok(json!({
        "holds": verdict.holds,
        "justification": verdict.justification,
        "moduleShape": shape_to_json(&d, &m.shape()),
        "witness": witness,
    }))
}
