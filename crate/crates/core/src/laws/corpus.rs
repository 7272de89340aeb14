//! The fixed finite ring corpus, the modules generated over it, and the
//! shrinking moves for finite instances.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finmod::FiniteModule;
use crate::json::row_to_json;
use crate::limits::Limits;
use crate::rings::{all_ideals, gf, parse_ring, Component, Coord, FiniteRing, RingElem};

use super::runner::Instance;

pub const CORPUS_RINGS: [&str; 9] =
    ["Z/2", "Z/3", "Z/4", "Z/6", "Z/8", "Z/12", "GF(2)[x]/[0,0,1]", "GF(2)[x]/[1,1,1]", "Z/2 x Z/3"];

/// Largest free rank generated.
pub const MAX_RANK: usize = 3;

pub fn corpus_rings() -> Vec<FiniteRing> {
    CORPUS_RINGS.iter().map(|s| parse_ring(s).expect("corpus rings parse")).collect()
}

/// `R^k` modulo explicit relation rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub ring: FiniteRing,
    pub rank: usize,
    pub relations: Vec<Vec<RingElem>>,
}

impl ModuleSpec {
    pub fn new(ring: &FiniteRing, rank: usize, relations: Vec<Vec<RingElem>>) -> Self {
        ModuleSpec { ring: ring.clone(), rank, relations }
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteModule> {
        FiniteModule::new(&self.ring, self.rank, self.relations.clone(), limits)
    }

    fn map_ring(&self, target: &FiniteRing, f: &dyn Fn(RingElem) -> RingElem) -> ModuleSpec {
        let relations = self.relations.iter().map(|r| r.iter().map(|&e| f(e)).collect()).collect();
        ModuleSpec { ring: target.clone(), rank: self.rank, relations }
    }

    /// Fewer relations, then fewer coordinates.
    fn shrink_generators(&self) -> Vec<ModuleSpec> {
        let mut out = Vec::new();
        for i in 0..self.relations.len() {
            let mut rel = self.relations.clone();
            rel.remove(i);
            out.push(ModuleSpec { relations: rel, ..self.clone() });
        }
        if self.rank > 1 {
            for c in 0..self.rank {
                let relations = self
                    .relations
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &e)| e).collect())
                    .collect();
                out.push(ModuleSpec { ring: self.ring.clone(), rank: self.rank - 1, relations });
            }
        }
        out
    }
}

impl Instance for ModuleSpec {
    fn shrink(&self) -> Vec<Self> {
        let mut out = self.shrink_generators();
        for (target, map) in smaller_rings(&self.ring) {
            out.push(self.map_ring(&target, &map));
        }
        out
    }

    fn to_json(&self) -> Value {
        json!({
            "ring": self.ring.to_string(),
            "rank": self.rank,
            "relations": self.relations.iter().map(|r| row_to_json(&self.ring, r)).collect::<Vec<_>>(),
        })
    }
}

/// Two modules over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec(pub ModuleSpec, pub ModuleSpec);

impl Instance for PairSpec {
    fn shrink(&self) -> Vec<Self> {
        let mut out: Vec<PairSpec> =
            self.0.shrink_generators().into_iter().map(|a| PairSpec(a, self.1.clone())).collect();
        out.extend(self.1.shrink_generators().into_iter().map(|b| PairSpec(self.0.clone(), b)));
        for (target, map) in smaller_rings(&self.0.ring) {
            out.push(PairSpec(self.0.map_ring(&target, &map), self.1.map_ring(&target, &map)));
        }
        out
    }

    fn to_json(&self) -> Value {
        json!({ "left": self.0.to_json(), "right": self.1.to_json() })
    }
}

type RingMap = Box<dyn Fn(RingElem) -> RingElem>;

/// Proper quotient rings with the projection onto each: a smaller modulus
/// or degree in one component, or one component dropped.
pub fn smaller_rings(ring: &FiniteRing) -> Vec<(FiniteRing, RingMap)> {
    let comps = ring.components();
    // Component lists with the index of the dropped component, if any.
    let mut candidates: Vec<(Vec<Component>, Option<usize>)> = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let mut with = |replacement: Option<Component>| {
            let mut cs = comps.to_vec();
            match replacement {
                Some(r) => {
                    cs[i] = r;
                    candidates.push((cs, None));
                }
                None => {
                    cs.remove(i);
                    candidates.push((cs, Some(i)));
                }
            }
        };
        match c {
            Component::CyclicInt { n } => {
                for d in (2..*n).filter(|d| n % d == 0) {
                    with(Some(Component::CyclicInt { n: d }));
                }
            }
            Component::PolyQuot { p, modulus } => {
                for (g, _) in gf::factor(*p, modulus) {
                    if g.degree() < modulus.degree() {
                        with(Some(Component::poly_quot(*p, g.coeffs()).expect("factor has positive degree")));
                    }
                }
            }
        }
        if comps.len() > 1 {
            with(None);
        }
    }
    candidates
        .into_iter()
        .filter_map(|(cs, dropped)| {
            let keep: Vec<bool> = (0..comps.len()).map(|j| dropped != Some(j)).collect();
            let target = FiniteRing::new(cs).ok()?;
            let (src, tgt) = (ring.clone(), target.clone());
            let map: RingMap = Box::new(move |e| {
                let coords: Vec<Coord> =
                    src.coords(e).into_iter().zip(&keep).filter(|(_, &k)| k).map(|(c, _)| c).collect();
                tgt.from_coords(&coords).expect("projection onto a quotient")
            });
            Some((target, map))
        })
        .collect()
}

/// `R^k`, `R/I`, `R/I ⊕ R/J` and `R^2/(v)`, deduplicated, each of size at
/// most `max_module`. Errors when nothing fits.
pub fn corpus_modules(ring: &FiniteRing, max_module: usize, limits: &Limits) -> Result<Vec<ModuleSpec>> {
    let limits = Limits { max_module, ..*limits };
    let ideals: Vec<_> = all_ideals(ring, &limits)?.into_iter().filter(|i| !i.is_whole()).collect();
    let mut specs = Vec::new();
    for k in 1..=MAX_RANK {
        specs.push(ModuleSpec::new(ring, k, Vec::new()));
    }
    for i in &ideals {
        specs.push(ModuleSpec::new(ring, 1, i.generators().iter().map(|&g| vec![g]).collect()));
    }
    let zero = ring.zero();
    for (a, i) in ideals.iter().enumerate() {
        for j in &ideals[a..] {
            let mut rows: Vec<Vec<RingElem>> = i.generators().iter().map(|&g| vec![g, zero]).collect();
            rows.extend(j.generators().iter().map(|&g| vec![zero, g]));
            specs.push(ModuleSpec::new(ring, 2, rows));
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if (a, b) != (zero, zero) {
                specs.push(ModuleSpec::new(ring, 2, vec![vec![a, b]]));
            }
        }
    }
    let mut built: Vec<FiniteModule> = Vec::new();
    let mut out = Vec::new();
    for s in specs {
        let m = match s.build(&limits) {
            Ok(m) => m,
            Err(Error::BoundExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        if m.is_zero_module() || built.contains(&m) {
            continue;
        }
        built.push(m);
        out.push(s);
    }
    if out.is_empty() {
        return Err(Error::bound("corpus module size", ring.size() as u128, max_module as u128));
    }
    Ok(out)
}

/// Cyclic modules `R/I` for every proper ideal, as pairs whose direct sum fits.
pub fn corpus_pairs(ring: &FiniteRing, max_module: usize, limits: &Limits) -> Result<Vec<PairSpec>> {
    let limits = Limits { max_module, ..*limits };
    let cyclic: Vec<ModuleSpec> = all_ideals(ring, &limits)?
        .into_iter()
        .filter(|i| !i.is_whole())
        .map(|i| ModuleSpec::new(ring, 1, i.generators().iter().map(|&g| vec![g]).collect()))
        .collect();
    let mut out = Vec::new();
    for (a, x) in cyclic.iter().enumerate() {
        for y in &cyclic[a..] {
            let size = x.build(&limits)?.size() * y.build(&limits)?.size();
            if size <= max_module {
                out.push(PairSpec(x.clone(), y.clone()));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::bound("corpus module size", ring.size() as u128, max_module as u128));
    }
    Ok(out)
}

/// Whether `R` has nonzero nilpotents: the rings where passing to a minimal
/// prime changes something.
pub fn has_nilpotents(ring: &FiniteRing) -> bool {
    ring.elements().skip(1).any(|a| ring.pow(a, ring.size() as u32) == ring.zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let rings = corpus_rings();
        assert_eq!(rings.len(), 9);
        let limits = Limits::default();
        let z2 = &rings[0];
        let mods = corpus_modules(z2, 256, &limits).unwrap();
        // (Z/2)^1..3 and the three lines (Z/2)^2/(v); R/I ⊕ R/J adds nothing new.
        assert_eq!(mods.len(), 6);
        for r in &rings {
            let mods = corpus_modules(r, 256, &limits).unwrap();
            for (i, a) in mods.iter().enumerate() {
                let ma = a.build(&limits).unwrap();
                assert!(ma.size() <= 256);
                for b in &mods[i + 1..] {
                    assert_ne!(ma, b.build(&limits).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_bound_is_an_error() {
        let r = parse_ring("Z/4").unwrap();
        assert!(matches!(corpus_modules(&r, 1, &Limits::default()), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn nilpotent_rings() {
        let names: Vec<String> = corpus_rings().into_iter().filter(has_nilpotents).map(|r| r.to_string()).collect();
        assert_eq!(names, ["Z/4", "Z/8", "Z/12", "GF(2)[x]/[0,0,1]"]);
    }

    #[test]
    fn smaller_rings_are_quotients() {
        let r = parse_ring("Z/12").unwrap();
        let names: Vec<String> = smaller_rings(&r).into_iter().map(|(t, _)| t.to_string()).collect();
        assert_eq!(names, ["Z/2", "Z/3", "Z/4", "Z/6"]);
        for (t, f) in smaller_rings(&parse_ring("Z/2 x GF(2)[x]/[0,0,1]").unwrap()) {
            let src = parse_ring("Z/2 x GF(2)[x]/[0,0,1]").unwrap();
            for a in src.elements() {
                for b in src.elements() {
                    assert_eq!(f(src.mul(a, b)), t.mul(f(a), f(b)));
                    assert_eq!(f(src.add(a, b)), t.add(f(a), f(b)));
                }
            }
        }
    }

    #[test]
    fn shrink_moves() {
        let r = parse_ring("Z/6").unwrap();
        let s = ModuleSpec::new(&r, 2, vec![vec![r.from_int(2), r.from_int(3)]]);
        let c = s.shrink();
        assert!(c.contains(&ModuleSpec::new(&r, 2, vec![])));
        assert!(c.contains(&ModuleSpec::new(&r, 1, vec![vec![r.from_int(3)]])));
        let z2 = parse_ring("Z/2").unwrap();
        assert!(c.contains(&ModuleSpec::new(&z2, 2, vec![vec![z2.zero(), z2.one()]])));
    }
}
