//! JSON forms for finite-ring elements, module specs, submodules and
//! classification records.
//!
//! A ring element is written per component: an integer for a `Z/n`
//! coordinate, an ascending coefficient array for a `GF(p)[x]/(f)`
//! coordinate. Single-component rings drop the outer array. On input a bare
//! integer always means `n·1`.

use serde_json::{json, Map, Value};

use crate::classify::Classification;
use crate::error::{Error, Result};
use crate::euclid::{Matrix, PresentedModule, QuotientShape, RadicalShape, SubmodulePres};
use crate::finmod::{submodule_generated, FiniteModule, SubmoduleF};
use crate::limits::Limits;
use crate::rings::{ideal_generated, Coord, EuclideanDomain, FiniteRing, IdealF, RingElem};

fn coord_to_json(c: &Coord) -> Value {
    match c {
        Coord::Residue(r) => json!(r),
        Coord::Coeffs(cs) => json!(cs),
    }
}

pub fn elem_to_json(ring: &FiniteRing, e: RingElem) -> Value {
    let coords = ring.coords(e);
    if coords.len() == 1 {
        coord_to_json(&coords[0])
    } else {
        Value::Array(coords.iter().map(coord_to_json).collect())
    }
}

fn int_of(v: &Value) -> Option<i128> {
    v.as_i64().map(i128::from).or_else(|| v.as_u64().map(i128::from))
}

fn coeffs_of(v: &Value) -> Result<Vec<u64>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("expected coefficient array, found {v}")))?;
    arr.iter()
        .map(|c| c.as_u64().ok_or_else(|| Error::Parse(format!("coefficient {c} is not a nonnegative integer"))))
        .collect()
}

fn coord_from_json(v: &Value) -> Result<Coord> {
    if let Some(n) = int_of(v) {
        return u64::try_from(n).map(Coord::Residue).map_err(|_| Error::Parse(format!("negative coordinate {v}")));
    }
    coeffs_of(v).map(Coord::Coeffs)
}

pub fn elem_from_json(ring: &FiniteRing, v: &Value) -> Result<RingElem> {
    if let Some(n) = int_of(v) {
        return Ok(ring.from_int(n));
    }
    let comps = ring.components();
    if comps.len() == 1 {
        return ring.from_coords(&[Coord::Coeffs(coeffs_of(v)?)]);
    }
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("bad ring element {v}")))?;
    let coords = arr.iter().map(coord_from_json).collect::<Result<Vec<_>>>()?;
    ring.from_coords(&coords)
}

pub fn row_to_json(ring: &FiniteRing, row: &[RingElem]) -> Value {
    Value::Array(row.iter().map(|&e| elem_to_json(ring, e)).collect())
}

fn parse_rows<E>(
    v: Option<&Value>,
    width: usize,
    what: &str,
    elem: impl Fn(&Value) -> Result<E>,
) -> Result<Vec<Vec<E>>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let rows = v.as_array().ok_or_else(|| Error::Parse(format!("`{what}` must be an array of rows")))?;
    rows.iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| Error::Parse(format!("`{what}` row {r} is not an array")))?;
            if r.len() != width {
                return Err(Error::Parse(format!("`{what}` row has {} entries, expected {width}", r.len())));
            }
            r.iter().map(&elem).collect()
        })
        .collect()
}

fn rows_from_json(ring: &FiniteRing, v: Option<&Value>, width: usize, what: &str) -> Result<Vec<Vec<RingElem>>> {
    parse_rows(v, width, what, |e| elem_from_json(ring, e))
}

/// Parsed `{"ring", "rank", "relations"}`; `ring` may come from elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleJson {
    pub ring: Option<String>,
    pub rank: usize,
    pub relations: Value,
}

pub fn parse_module_json(text: &str) -> Result<ModuleJson> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("module JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("module JSON must be an object".into()))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "ring" | "rank" | "relations")) {
        return Err(Error::Parse(format!("unknown module field `{k}`")));
    }
    let ring = match obj.get("ring") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => return Err(Error::Parse(format!("`ring` must be a string, found {other}"))),
    };
    let rank = obj
        .get("rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("module JSON needs a nonnegative integer `rank`".into()))?;
    Ok(ModuleJson { ring, rank: rank as usize, relations: obj.get("relations").cloned().unwrap_or(json!([])) })
}

pub fn build_module(ring: &FiniteRing, spec: &ModuleJson, limits: &Limits) -> Result<FiniteModule> {
    let rows = rows_from_json(ring, Some(&spec.relations), spec.rank, "relations")?;
    FiniteModule::new(ring, spec.rank, rows, limits)
}

pub fn parse_generators(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("submodule JSON: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("submodule JSON must be an object".into()))?;
    if let Some(k) = obj.keys().find(|k| k.as_str() != "generators") {
        return Err(Error::Parse(format!("unknown submodule field `{k}`")));
    }
    Ok(obj.get("generators").cloned().unwrap_or(json!([])))
}

pub fn build_submodule(module: &FiniteModule, generators: &Value) -> Result<SubmoduleF> {
    let rows = rows_from_json(module.ring(), Some(generators), module.rank(), "generators")?;
    let gens = rows.iter().map(|r| module.from_vector(r)).collect::<Result<Vec<_>>>()?;
    Ok(submodule_generated(module, &gens))
}

pub fn module_to_json(m: &FiniteModule) -> Value {
    let ring = m.ring();
    json!({
        "ring": ring.to_string(),
        "rank": m.rank(),
        "relations": m.relations().iter().map(|r| row_to_json(ring, r)).collect::<Vec<_>>(),
    })
}

/// A module over a Euclidean domain from `{"rank", "relations"}`.
pub fn build_presented<D: EuclideanDomain>(d: &D, spec: &ModuleJson) -> Result<PresentedModule<D>> {
    if spec.ring.is_some() {
        return Err(Error::Parse("`ring` is not allowed in a module over a domain".into()));
    }
    let rows = parse_rows(Some(&spec.relations), spec.rank, "relations", |e| d.parse_json(e))?;
    PresentedModule::new(d.clone(), spec.rank, rows)
}

pub fn build_presented_submodule<D: EuclideanDomain>(
    m: &PresentedModule<D>,
    generators: &Value,
) -> Result<SubmodulePres<D::Elem>> {
    let d = m.domain();
    m.submodule(parse_rows(Some(generators), m.rank(), "generators", |e| d.parse_json(e))?)
}

pub fn domain_rows_to_json<D: EuclideanDomain>(d: &D, rows: &Matrix<D::Elem>) -> Value {
    Value::Array(rows.rows().iter().map(|r| Value::Array(r.iter().map(|e| d.to_json(e)).collect())).collect())
}

pub fn shape_to_json<D: EuclideanDomain>(d: &D, s: &QuotientShape<D::Elem>) -> Value {
    let factors: Vec<Value> = s.invariant_factors.iter().map(|e| d.to_json(e)).collect();
    json!({ "freeRank": s.free_rank, "invariantFactors": factors })
}

/// `free` is the generator of `J(D)` on the free part, `null` without one.
pub fn radical_to_json<D: EuclideanDomain>(d: &D, r: &RadicalShape<D::Elem>) -> Value {
    let torsion: Vec<Value> =
        r.torsion.iter().map(|(f, rad)| json!({ "factor": d.to_json(f), "radical": d.to_json(rad) })).collect();
    json!({ "free": r.free.as_ref().map(|j| d.to_json(j)), "torsion": torsion, "zero": r.is_zero() })
}

/// Greedy generators in element order: depends only on the element set.
pub fn canonical_ideal_generators(ideal: &IdealF) -> Vec<RingElem> {
    let ring = ideal.ring();
    let mut gens = Vec::new();
    let mut cur = ideal_generated(ring, &[]);
    for e in ideal.elements() {
        if !cur.contains(e) {
            gens.push(e);
            cur = ideal_generated(ring, &gens);
        }
    }
    gens
}

pub fn ideal_to_json(ideal: &IdealF) -> Value {
    let ring = ideal.ring();
    let gens: Vec<Value> = canonical_ideal_generators(ideal).into_iter().map(|e| elem_to_json(ring, e)).collect();
    json!({ "generators": gens, "size": ideal.len() })
}

pub fn canonical_submodule_generators(n: &SubmoduleF) -> Vec<Vec<RingElem>> {
    let module = n.parent();
    let mut cur = SubmoduleF::zero(module);
    let mut gens = Vec::new();
    for m in n.elements() {
        if !cur.contains(m) {
            gens.push(module.rep(m));
            cur = cur.add_element(m);
        }
    }
    gens
}

pub fn submodule_to_json(n: &SubmoduleF) -> Value {
    let ring = n.parent().ring();
    let gens: Vec<Value> = canonical_submodule_generators(n).iter().map(|r| row_to_json(ring, r)).collect();
    json!({ "generators": gens, "size": n.len() })
}

pub fn classification_to_json(c: &Classification) -> Value {
    let mut o = Map::new();
    o.insert("proper".into(), json!(c.proper));
    o.insert("maximal".into(), json!(c.maximal));
    o.insert("prime".into(), json!(c.prime));
    o.insert("classicalPrime".into(), json!(c.classical_prime));
    o.insert("intersectionOfMaximals".into(), json!(c.intersection_of_maximals));
    o.insert("colon".into(), ideal_to_json(&c.colon));
    o.insert("annSpectrum".into(), Value::Array(c.ann_spectrum.iter().map(ideal_to_json).collect()));
    Value::Object(o)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
