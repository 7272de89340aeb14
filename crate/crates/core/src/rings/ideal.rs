//! Ideals of finite rings as enumerated element sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use super::finite::{Component, FiniteRing, RingElem};
use super::gf::{self, GfPoly};
use crate::error::{Error, Result};
use crate::limits::{self, Limits};

#[derive(Clone)]
pub struct IdealF {
    ring: FiniteRing,
    members: FixedBitSet,
    generators: Vec<RingElem>,
}

impl fmt::Debug for IdealF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<u32> = self.elements().iter().map(|e| e.0).collect();
        write!(f, "IdealF{els:?}")
    }
}

impl PartialEq for IdealF {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for IdealF {}

impl std::hash::Hash for IdealF {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.as_slice().hash(state);
    }
}

impl Ord for IdealF {
    /// By size, then by the sorted element list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for IdealF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl IdealF {
    /// Wraps an element set already known to be an ideal, choosing a small
    /// generating set greedily in element order.
    pub(crate) fn from_members(ring: &FiniteRing, members: FixedBitSet) -> Self {
        let mut generators = Vec::new();
        let mut span = FixedBitSet::with_capacity(ring.size());
        span.insert(0);
        for i in members.ones() {
            if !span.contains(i) {
                let g = RingElem(i as u32);
                generators.push(g);
                span = sum_sets(ring, &span, &principal_set(ring, g));
            }
        }
        debug_assert_eq!(span, members);
        IdealF { ring: ring.clone(), members, generators }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: RingElem) -> bool {
        self.members.contains(e.index())
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[RingElem] {
        &self.generators
    }

    pub fn elements(&self) -> Vec<RingElem> {
        self.members.ones().map(|i| RingElem(i as u32)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.ring.size()
    }

    pub fn is_subset(&self, other: &IdealF) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &IdealF) -> IdealF {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        IdealF::from_members(&self.ring, m)
    }

    pub fn sum(&self, other: &IdealF) -> IdealF {
        IdealF::from_members(&self.ring, sum_sets(&self.ring, &self.members, &other.members))
    }
}

fn principal_set(ring: &FiniteRing, a: RingElem) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        s.insert(ring.mul(r, a).index());
    }
    s
}

fn sum_sets(ring: &FiniteRing, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(ring.size());
    let bs: Vec<usize> = b.ones().collect();
    for x in a.ones() {
        for &y in &bs {
            s.insert(ring.add(RingElem(x as u32), RingElem(y as u32)).index());
        }
    }
    s
}

/// The principal ideal `Ra`.
pub fn principal(ring: &FiniteRing, a: RingElem) -> IdealF {
    let members = principal_set(ring, a);
    let generators = if a == ring.zero() { vec![] } else { vec![a] };
    IdealF { ring: ring.clone(), members, generators }
}

pub fn zero_ideal(ring: &FiniteRing) -> IdealF {
    principal(ring, ring.zero())
}

pub fn whole_ring(ring: &FiniteRing) -> IdealF {
    principal(ring, ring.one())
}

/// The smallest ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[RingElem]) -> IdealF {
    let members =
        gens.iter().fold(principal_set(ring, ring.zero()), |acc, &g| sum_sets(ring, &acc, &principal_set(ring, g)));
    IdealF { ring: ring.clone(), members, generators: gens.to_vec() }
}

/// Every ideal of `ring` exactly once, sorted by size then element list.
///
/// Starts from the principal ideals and closes under sums with principal
/// ideals; every ideal of a finite ring is a finite sum of principal ones.
pub fn all_ideals(ring: &FiniteRing, limits: &Limits) -> Result<Vec<IdealF>> {
    limits::check("ring carrier", ring.size(), limits.max_ring)?;
    let mut principals: Vec<FixedBitSet> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    for a in ring.elements() {
        let s = principal_set(ring, a);
        if seen.insert(s.clone()) {
            principals.push(s);
        }
    }
    limits::check("ideal count", seen.len(), limits.max_ideals)?;
    let mut queue: VecDeque<FixedBitSet> = principals.iter().cloned().collect();
    while let Some(ideal) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&ideal) {
                continue;
            }
            let s = sum_sets(ring, &ideal, p);
            if !seen.contains(&s) {
                limits::check("ideal count", seen.len() + 1, limits.max_ideals)?;
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    let sorted: BTreeSet<IdealF> = seen.into_iter().map(|m| IdealF::from_members(ring, m)).collect();
    Ok(sorted.into_iter().collect())
}

/// Proper, and `ab` in `I` forces `a` or `b` in `I` (exhaustive).
pub fn is_prime_ideal(ideal: &IdealF) -> bool {
    if ideal.is_whole() {
        return false;
    }
    let ring = ideal.ring();
    let outside: Vec<RingElem> = ring.elements().filter(|&a| !ideal.contains(a)).collect();
    outside.iter().all(|&a| outside.iter().all(|&b| !ideal.contains(ring.mul(a, b))))
}

/// Proper, and no strictly larger proper ideal exists; equivalently every
/// element outside `I` is invertible modulo `I`.
pub fn is_maximal_ideal(ideal: &IdealF) -> bool {
    if ideal.is_whole() {
        return false;
    }
    let ring = ideal.ring();
    let one = ring.one();
    ring.elements()
        .filter(|&a| !ideal.contains(a))
        .all(|a| ring.elements().any(|b| ideal.contains(ring.sub(ring.mul(a, b), one))))
}

fn intersect_all<'a>(ring: &FiniteRing, ideals: impl Iterator<Item = &'a IdealF>) -> IdealF {
    let mut m = whole_ring(ring).members;
    for i in ideals {
        m.intersect_with(&i.members);
    }
    IdealF::from_members(ring, m)
}

/// Intersection of all prime ideals.
pub fn nilradical(ring: &FiniteRing, limits: &Limits) -> Result<IdealF> {
    let ideals = all_ideals(ring, limits)?;
    Ok(intersect_all(ring, ideals.iter().filter(|i| is_prime_ideal(i))))
}

/// Intersection of all maximal ideals.
pub fn jacobson_radical(ring: &FiniteRing, limits: &Limits) -> Result<IdealF> {
    let ideals = all_ideals(ring, limits)?;
    Ok(intersect_all(ring, ideals.iter().filter(|i| is_maximal_ideal(i))))
}

pub fn prime_ideals(ring: &FiniteRing, limits: &Limits) -> Result<Vec<IdealF>> {
    Ok(all_ideals(ring, limits)?.into_iter().filter(is_prime_ideal).collect())
}

/// Prime ideals containing no smaller prime ideal.
pub fn minimal_primes(ring: &FiniteRing, limits: &Limits) -> Result<Vec<IdealF>> {
    let primes = prime_ideals(ring, limits)?;
    Ok(primes.iter().filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect())
}

/// `R/I` together with the canonical surjection.
#[derive(Clone, Debug)]
pub struct RingQuotient {
    source: FiniteRing,
    target: FiniteRing,
    kernel: IdealF,
    projection: Vec<RingElem>,
}

impl RingQuotient {
    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.target
    }

    pub fn kernel(&self) -> &IdealF {
        &self.kernel
    }

    pub fn project(&self, e: RingElem) -> RingElem {
        self.projection[e.index()]
    }

    /// Least preimage of an element of the quotient.
    pub fn lift(&self, e: RingElem) -> RingElem {
        self.source.elements().find(|&s| self.project(s) == e).expect("projection is onto")
    }
}

/// The quotient ring `R/I`, again a product of cyclic and polynomial
/// quotient components: an ideal of a product is the product of its
/// projections, and each component ideal is principal.
pub fn quotient_ring(ideal: &IdealF) -> Result<RingQuotient> {
    if ideal.is_whole() {
        return Err(Error::NotProperIdeal);
    }
    let ring = ideal.ring();
    let elems = ideal.elements();
    let coords: Vec<_> = elems.iter().map(|&e| ring.coords(e)).collect();
    let mut kept: Vec<(usize, Component)> = Vec::new();
    for (ci, comp) in ring.components().iter().enumerate() {
        match comp {
            Component::CyclicInt { n } => {
                let d = coords.iter().fold(*n, |g, c| match &c[ci] {
                    super::finite::Coord::Residue(r) => g.gcd(r),
                    _ => unreachable!(),
                });
                if d > 1 {
                    kept.push((ci, Component::cyclic(d)?));
                }
            }
            Component::PolyQuot { p, modulus } => {
                let g = coords.iter().fold(modulus.clone(), |g, c| match &c[ci] {
                    super::finite::Coord::Coeffs(cs) => gf::gcd(*p, &g, &GfPoly::from_coeffs(*p, cs.iter().copied())),
                    _ => unreachable!(),
                });
                if g.degree().unwrap_or(0) > 0 {
                    kept.push((ci, Component::PolyQuot { p: *p, modulus: g }));
                }
            }
        }
    }
    let target = FiniteRing::new(kept.iter().map(|(_, c)| c.clone()).collect())?;
    let projection: Vec<RingElem> = ring
        .elements()
        .map(|e| {
            let c = ring.coords(e);
            let picked: Vec<_> = kept.iter().map(|(ci, _)| c[*ci].clone()).collect();
            target.from_coords(&picked).expect("coordinates match target components")
        })
        .collect();
    let kernel_size = projection.iter().filter(|&&x| x == target.zero()).count();
    debug_assert_eq!(kernel_size, ideal.len());
    Ok(RingQuotient { source: ring.clone(), target, kernel: ideal.clone(), projection })
}
