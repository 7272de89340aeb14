//! Finite modules `R^k / K` over finite rings, their submodules and lattices.
//!
//! A vector of `R^k` is stored as a mixed-radix index with the first
//! coordinate most significant, so index order is lexicographic order. Each
//! module element is the coset of its least index; module elements are
//! numbered in the order of those representatives, so the zero coset is 0.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::rings::ideal::{IdealF, RingQuotient};
use crate::rings::{FiniteRing, RingElem};

const ADD_TABLE_MAX: usize = 1024;
const ACT_TABLE_CELLS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElem(pub u32);

impl ModElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct ModInner {
    ring: FiniteRing,
    rank: usize,
    relations: Vec<Vec<RingElem>>,
    /// Free-cover index of each element's representative.
    reps: Vec<u64>,
    coset_of: Vec<u32>,
    add_table: Option<Vec<u32>>,
    act_table: Option<Vec<u32>>,
}

#[derive(Clone)]
pub struct FiniteModule(Arc<ModInner>);

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.rank == other.0.rank && self.0.coset_of == other.0.coset_of)
    }
}

impl Eq for FiniteModule {}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({self}, size {})", self.size())
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^{}", self.0.ring, self.0.rank)?;
        if !self.0.relations.is_empty() {
            let rows: Vec<String> = self
                .0
                .relations
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, " / <{}>", rows.join(", "))?;
        }
        Ok(())
    }
}

/// Coordinate arithmetic on free-cover indices.
struct Cover<'a> {
    ring: &'a FiniteRing,
    rank: usize,
    base: u64,
}

impl<'a> Cover<'a> {
    fn new(ring: &'a FiniteRing, rank: usize) -> Self {
        Cover { ring, rank, base: ring.size() as u64 }
    }

    fn encode(&self, v: &[RingElem]) -> u64 {
        v.iter().fold(0, |acc, e| acc * self.base + e.0 as u64)
    }

    fn decode(&self, mut x: u64) -> Vec<RingElem> {
        let mut v = vec![RingElem(0); self.rank];
        for slot in v.iter_mut().rev() {
            *slot = RingElem((x % self.base) as u32);
            x /= self.base;
        }
        v
    }

    fn digitwise(&self, mut a: u64, mut b: u64, op: impl Fn(RingElem, RingElem) -> RingElem) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.rank {
            let d = op(RingElem((a % self.base) as u32), RingElem((b % self.base) as u32));
            out += d.0 as u64 * place;
            place *= self.base;
            a /= self.base;
            b /= self.base;
        }
        out
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        self.digitwise(a, b, |x, y| self.ring.add(x, y))
    }

    fn scale(&self, r: RingElem, a: u64) -> u64 {
        self.digitwise(a, 0, |x, _| self.ring.mul(r, x))
    }

    /// The subgroup `S + T` of the free cover, both given as element lists.
    fn sum(&self, s: &[u64], t: &[u64], cells: usize) -> Vec<u64> {
        let mut seen = FixedBitSet::with_capacity(cells);
        let mut out = Vec::new();
        for &x in s {
            for &y in t {
                let z = self.add(x, y);
                if !seen.put(z as usize) {
                    out.push(z);
                }
            }
        }
        out
    }
}

impl FiniteModule {
    /// `R^k` modulo the submodule spanned by the rows of `relations`.
    pub fn new(ring: &FiniteRing, rank: usize, relations: Vec<Vec<RingElem>>, limits: &Limits) -> Result<Self> {
        if rank == 0 {
            return Err(Error::spec("module rank must be at least 1"));
        }
        if let Some(row) = relations.iter().find(|r| r.len() != rank) {
            return Err(Error::spec(format!("relation row of length {} in a rank {rank} module", row.len())));
        }
        if let Some(e) = relations.iter().flatten().find(|e| e.index() >= ring.size()) {
            return Err(Error::spec(format!("ring element index {} out of range", e.0)));
        }
        let cells = (ring.size() as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
        if cells > limits.max_cells as u128 {
            return Err(Error::bound("free cover cells", cells, limits.max_cells as u128));
        }
        let cells = cells as usize;
        let cover = Cover::new(ring, rank);

        let mut kernel = vec![0u64];
        let mut in_kernel = FixedBitSet::with_capacity(cells);
        in_kernel.insert(0);
        for row in &relations {
            let g = cover.encode(row);
            if in_kernel.contains(g as usize) {
                continue;
            }
            let mut multiples: Vec<u64> = ring.elements().map(|r| cover.scale(r, g)).collect();
            multiples.sort_unstable();
            multiples.dedup();
            kernel = cover.sum(&kernel, &multiples, cells);
            in_kernel.clear();
            kernel.iter().for_each(|&x| in_kernel.insert(x as usize));
        }
        let size = cells / kernel.len();
        limits::check("module size", size, limits.max_module)?;

        let mut coset_of = vec![u32::MAX; cells];
        let mut reps = Vec::with_capacity(size);
        for x in 0..cells as u64 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &k in &kernel {
                coset_of[cover.add(x, k) as usize] = id;
            }
        }
        debug_assert_eq!(reps.len(), size);

        let mut inner =
            ModInner { ring: ring.clone(), rank, relations, reps, coset_of, add_table: None, act_table: None };
        if size <= ADD_TABLE_MAX {
            let mut t = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    t.push(inner.coset_of[cover.add(inner.reps[a], inner.reps[b]) as usize]);
                }
            }
            inner.add_table = Some(t);
        }
        if size * ring.size() <= ACT_TABLE_CELLS {
            let mut t = Vec::with_capacity(size * ring.size());
            for r in ring.elements() {
                for a in 0..size {
                    t.push(inner.coset_of[cover.scale(r, inner.reps[a]) as usize]);
                }
            }
            inner.act_table = Some(t);
        }
        Ok(FiniteModule(Arc::new(inner)))
    }

    pub fn free(ring: &FiniteRing, rank: usize, limits: &Limits) -> Result<Self> {
        Self::new(ring, rank, Vec::new(), limits)
    }

    /// The cyclic module `R/I`.
    pub fn cyclic(ideal: &IdealF, limits: &Limits) -> Result<Self> {
        let rows = ideal.generators().iter().map(|&g| vec![g]).collect();
        Self::new(ideal.ring(), 1, rows, limits)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::new(ring, 1, vec![vec![ring.one()]], &Limits::default()).expect("zero module always fits")
    }

    fn cover(&self) -> Cover<'_> {
        Cover::new(&self.0.ring, self.0.rank)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.0.ring
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn relations(&self) -> &[Vec<RingElem>] {
        &self.0.relations
    }

    pub fn size(&self) -> usize {
        self.0.reps.len()
    }

    pub fn is_zero_module(&self) -> bool {
        self.size() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = ModElem> {
        (0..self.size() as u32).map(ModElem)
    }

    pub fn zero_elem(&self) -> ModElem {
        ModElem(0)
    }

    /// Lexicographically least vector of `R^k` in the coset.
    pub fn rep(&self, m: ModElem) -> Vec<RingElem> {
        self.cover().decode(self.0.reps[m.index()])
    }

    pub fn from_vector(&self, v: &[RingElem]) -> Result<ModElem> {
        if v.len() != self.rank() {
            return Err(Error::spec(format!("vector of length {} in a rank {} module", v.len(), self.rank())));
        }
        if v.iter().any(|e| e.index() >= self.ring().size()) {
            return Err(Error::spec("ring element out of range"));
        }
        Ok(self.from_cover_index(self.cover().encode(v)))
    }

    fn from_cover_index(&self, x: u64) -> ModElem {
        ModElem(self.0.coset_of[x as usize])
    }

    /// Image of the `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> ModElem {
        let mut v = vec![self.ring().zero(); self.rank()];
        v[i] = self.ring().one();
        self.from_vector(&v).expect("basis vector")
    }

    pub fn add(&self, a: ModElem, b: ModElem) -> ModElem {
        match &self.0.add_table {
            Some(t) => ModElem(t[a.index() * self.size() + b.index()]),
            None => self.from_cover_index(self.cover().add(self.0.reps[a.index()], self.0.reps[b.index()])),
        }
    }

    pub fn act(&self, r: RingElem, m: ModElem) -> ModElem {
        match &self.0.act_table {
            Some(t) => ModElem(t[r.index() * self.size() + m.index()]),
            None => self.from_cover_index(self.cover().scale(r, self.0.reps[m.index()])),
        }
    }

    pub fn neg(&self, m: ModElem) -> ModElem {
        self.act(self.ring().neg(self.ring().one()), m)
    }

    pub fn sub(&self, a: ModElem, b: ModElem) -> ModElem {
        self.add(a, self.neg(b))
    }

    /// `Rm` as an element set.
    fn cyclic_set(&self, m: ModElem) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        for r in self.ring().elements() {
            s.insert(self.act(r, m).index());
        }
        s
    }

    fn sum_sets(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        let bs: Vec<usize> = b.ones().collect();
        for x in a.ones() {
            for &y in &bs {
                s.insert(self.add(ModElem(x as u32), ModElem(y as u32)).index());
            }
        }
        s
    }
}

/// A submodule, held as its element set.
#[derive(Clone)]
pub struct SubmoduleF {
    parent: FiniteModule,
    members: FixedBitSet,
    generators: Vec<ModElem>,
}

impl fmt::Debug for SubmoduleF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<u32> = self.members.ones().map(|i| i as u32).collect();
        write!(f, "SubmoduleF{els:?}")
    }
}

impl PartialEq for SubmoduleF {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent == other.parent
    }
}

impl Eq for SubmoduleF {}

impl std::hash::Hash for SubmoduleF {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.as_slice().hash(state);
    }
}

impl Ord for SubmoduleF {
    /// By size, then by the sorted element list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for SubmoduleF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl SubmoduleF {
    /// Wraps an element set known to be a submodule; generators are picked
    /// greedily in element order.
    pub(crate) fn from_members(parent: &FiniteModule, members: FixedBitSet) -> Self {
        let mut generators = Vec::new();
        let mut span = FixedBitSet::with_capacity(parent.size());
        span.insert(0);
        for i in members.ones() {
            if !span.contains(i) {
                let g = ModElem(i as u32);
                generators.push(g);
                span = parent.sum_sets(&span, &parent.cyclic_set(g));
            }
        }
        debug_assert_eq!(span, members);
        SubmoduleF { parent: parent.clone(), members, generators }
    }

    pub fn zero(parent: &FiniteModule) -> Self {
        let mut members = FixedBitSet::with_capacity(parent.size());
        members.insert(0);
        SubmoduleF { parent: parent.clone(), members, generators: Vec::new() }
    }

    pub fn whole(parent: &FiniteModule) -> Self {
        let gens: Vec<ModElem> = (0..parent.rank()).map(|i| parent.basis(i)).collect();
        submodule_generated(parent, &gens)
    }

    pub fn parent(&self) -> &FiniteModule {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    /// Never true: a submodule holds zero.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: ModElem) -> bool {
        self.members.contains(m.index())
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> Vec<ModElem> {
        self.members.ones().map(|i| ModElem(i as u32)).collect()
    }

    pub fn generators(&self) -> &[ModElem] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.parent.size()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn is_subset(&self, other: &SubmoduleF) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubmoduleF) -> SubmoduleF {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        SubmoduleF::from_members(&self.parent, m)
    }

    pub fn sum(&self, other: &SubmoduleF) -> SubmoduleF {
        let members = self.parent.sum_sets(&self.members, &other.members);
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().filter(|g| !self.contains(**g)));
        SubmoduleF { parent: self.parent.clone(), members, generators }
    }

    /// `N + Rm`.
    pub fn add_element(&self, m: ModElem) -> SubmoduleF {
        if self.contains(m) {
            return self.clone();
        }
        let members = self.parent.sum_sets(&self.members, &self.parent.cyclic_set(m));
        let mut generators = self.generators.clone();
        generators.push(m);
        SubmoduleF { parent: self.parent.clone(), members, generators }
    }
}

pub fn submodule_generated(m: &FiniteModule, gens: &[ModElem]) -> SubmoduleF {
    gens.iter().fold(SubmoduleF::zero(m), |acc, &g| acc.add_element(g))
}

/// Every submodule exactly once, sorted by size then element list.
pub fn all_submodules(m: &FiniteModule, limits: &Limits) -> Result<Vec<SubmoduleF>> {
    limits::check("module size for lattice", m.size(), limits.max_lattice)?;
    let mut cyclics: Vec<(ModElem, FixedBitSet)> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found: Vec<SubmoduleF> = Vec::new();
    for e in m.elements() {
        let s = m.cyclic_set(e);
        if seen.insert(s.clone()) {
            let gens = if e.0 == 0 { Vec::new() } else { vec![e] };
            cyclics.push((e, s.clone()));
            found.push(SubmoduleF { parent: m.clone(), members: s, generators: gens });
        }
    }
    limits::check("submodule count", found.len(), limits.max_submodules)?;
    let mut queue: VecDeque<usize> = (0..found.len()).collect();
    while let Some(i) = queue.pop_front() {
        for (e, c) in &cyclics {
            if c.is_subset(&found[i].members) {
                continue;
            }
            let s = m.sum_sets(&found[i].members, c);
            if seen.contains(&s) {
                continue;
            }
            limits::check("submodule count", found.len() + 1, limits.max_submodules)?;
            seen.insert(s.clone());
            let mut generators = found[i].generators.clone();
            generators.push(*e);
            found.push(SubmoduleF { parent: m.clone(), members: s, generators });
            queue.push_back(found.len() - 1);
        }
    }
    let sorted: BTreeSet<SubmoduleF> = found.into_iter().collect();
    Ok(sorted.into_iter().collect())
}

/// `M/N` with the projection and a section.
#[derive(Clone, Debug)]
pub struct ModuleQuotient {
    source: FiniteModule,
    target: FiniteModule,
    kernel: SubmoduleF,
    projection: Vec<ModElem>,
    lift: Vec<ModElem>,
}

impl ModuleQuotient {
    pub fn source(&self) -> &FiniteModule {
        &self.source
    }

    pub fn module(&self) -> &FiniteModule {
        &self.target
    }

    pub fn kernel(&self) -> &SubmoduleF {
        &self.kernel
    }

    pub fn project(&self, m: ModElem) -> ModElem {
        self.projection[m.index()]
    }

    /// A preimage of `t`; the least one in free-cover order.
    pub fn lift(&self, t: ModElem) -> ModElem {
        self.lift[t.index()]
    }

    /// Image of a submodule of the source.
    pub fn image(&self, n: &SubmoduleF) -> SubmoduleF {
        let gens: Vec<ModElem> = n.generators().iter().map(|&g| self.project(g)).collect();
        submodule_generated(&self.target, &gens)
    }

    /// Full preimage of a submodule of the quotient.
    pub fn preimage(&self, t: &SubmoduleF) -> SubmoduleF {
        let mut members = FixedBitSet::with_capacity(self.source.size());
        for m in self.source.elements() {
            if t.contains(self.project(m)) {
                members.insert(m.index());
            }
        }
        SubmoduleF::from_members(&self.source, members)
    }
}

pub fn quotient_module(n: &SubmoduleF, limits: &Limits) -> Result<ModuleQuotient> {
    let source = n.parent().clone();
    let mut relations = source.relations().to_vec();
    relations.extend(n.generators().iter().map(|&g| source.rep(g)));
    let target = FiniteModule::new(source.ring(), source.rank(), relations, limits)?;
    let projection = source.elements().map(|m| target.from_cover_index(source.0.reps[m.index()])).collect();
    let lift = target.elements().map(|t| source.from_cover_index(target.0.reps[t.index()])).collect();
    debug_assert_eq!(target.size() * n.len(), source.size());
    Ok(ModuleQuotient { source, target, kernel: n.clone(), projection, lift })
}

/// `M1 ⊕ M2` with injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    module: FiniteModule,
    left: FiniteModule,
    right: FiniteModule,
}

impl DirectSum {
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn inject_left(&self, m: ModElem) -> ModElem {
        let mut v = self.left.rep(m);
        v.resize(self.module.rank(), self.module.ring().zero());
        self.module.from_vector(&v).expect("injection")
    }

    pub fn inject_right(&self, m: ModElem) -> ModElem {
        let mut v = vec![self.module.ring().zero(); self.left.rank()];
        v.extend(self.right.rep(m));
        self.module.from_vector(&v).expect("injection")
    }

    pub fn project_left(&self, m: ModElem) -> ModElem {
        let v = self.module.rep(m);
        self.left.from_vector(&v[..self.left.rank()]).expect("projection")
    }

    pub fn project_right(&self, m: ModElem) -> ModElem {
        let v = self.module.rep(m);
        self.right.from_vector(&v[self.left.rank()..]).expect("projection")
    }

    /// Image of a submodule of the left summand.
    pub fn left_image(&self, n: &SubmoduleF) -> SubmoduleF {
        let gens: Vec<ModElem> = n.generators().iter().map(|&g| self.inject_left(g)).collect();
        submodule_generated(&self.module, &gens)
    }

    pub fn right_image(&self, n: &SubmoduleF) -> SubmoduleF {
        let gens: Vec<ModElem> = n.generators().iter().map(|&g| self.inject_right(g)).collect();
        submodule_generated(&self.module, &gens)
    }
}

pub fn direct_sum(m1: &FiniteModule, m2: &FiniteModule, limits: &Limits) -> Result<DirectSum> {
    if m1.ring() != m2.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m1.ring();
    let (k1, k2) = (m1.rank(), m2.rank());
    let mut rows = Vec::new();
    for r in m1.relations() {
        let mut row = r.clone();
        row.resize(k1 + k2, ring.zero());
        rows.push(row);
    }
    for r in m2.relations() {
        let mut row = vec![ring.zero(); k1];
        row.extend(r.iter().copied());
        rows.push(row);
    }
    let module = FiniteModule::new(ring, k1 + k2, rows, limits)?;
    Ok(DirectSum { module, left: m1.clone(), right: m2.clone() })
}

/// A submodule presented as a module in its own right: `R^g` modulo the
/// relations among its generators, with the embedding into the parent.
#[derive(Clone, Debug)]
pub struct SubmoduleAsModule {
    module: FiniteModule,
    embedding: Vec<ModElem>,
}

impl SubmoduleAsModule {
    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn embed(&self, e: ModElem) -> ModElem {
        self.embedding[e.index()]
    }
}

pub fn submodule_as_module(n: &SubmoduleF, limits: &Limits) -> Result<SubmoduleAsModule> {
    let parent = n.parent();
    let ring = parent.ring();
    let gens: Vec<ModElem> = if n.generators().is_empty() { vec![parent.zero_elem()] } else { n.generators().to_vec() };
    let free = FiniteModule::free(ring, gens.len(), limits).or_else(|e| match e {
        // The free cover itself may exceed the module bound even though its cells fit.
        Error::BoundExceeded { .. } => {
            FiniteModule::free(ring, gens.len(), &Limits { max_module: limits.max_cells, ..*limits })
        }
        other => Err(other),
    })?;
    let image = |v: &[RingElem]| {
        v.iter().zip(&gens).fold(parent.zero_elem(), |acc, (&r, &g)| parent.add(acc, parent.act(r, g)))
    };
    let mut kernel = SubmoduleF::zero(&free);
    for e in free.elements() {
        if image(&free.rep(e)).0 == 0 {
            kernel = kernel.add_element(e);
        }
    }
    let rows = kernel.generators().iter().map(|&g| free.rep(g)).collect();
    let module = FiniteModule::new(ring, gens.len(), rows, limits)?;
    let embedding: Vec<ModElem> = module.elements().map(|e| image(&module.rep(e))).collect();
    debug_assert_eq!(module.size(), n.len());
    Ok(SubmoduleAsModule { module, embedding })
}

/// `{r : rm = 0}`.
pub fn ann_of_element(m: &FiniteModule, e: ModElem) -> IdealF {
    let ring = m.ring();
    let mut members = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        if m.act(r, e).0 == 0 {
            members.insert(r.index());
        }
    }
    IdealF::from_members(ring, members)
}

/// `(N : M) = {r : rM ⊆ N}`; testing the basis images suffices.
pub fn colon_ideal(n: &SubmoduleF) -> IdealF {
    let m = n.parent();
    let ring = m.ring();
    let basis: Vec<ModElem> = (0..m.rank()).map(|i| m.basis(i)).collect();
    let mut members = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        if basis.iter().all(|&b| n.contains(m.act(r, b))) {
            members.insert(r.index());
        }
    }
    IdealF::from_members(ring, members)
}

pub fn annihilator(m: &FiniteModule) -> IdealF {
    colon_ideal(&SubmoduleF::zero(m))
}

/// `I·N`, spanned by products of generators.
pub fn ideal_times(ideal: &IdealF, n: &SubmoduleF) -> SubmoduleF {
    let m = n.parent();
    let mut gens = Vec::new();
    for &a in ideal.generators() {
        for &g in n.generators() {
            gens.push(m.act(a, g));
        }
    }
    submodule_generated(m, &gens)
}

/// A module killed by `I`, viewed over `R/I`.
#[derive(Clone, Debug)]
pub struct ModuleOverQuotient {
    source: FiniteModule,
    target: FiniteModule,
    map: Vec<ModElem>,
}

impl ModuleOverQuotient {
    pub fn module(&self) -> &FiniteModule {
        &self.target
    }

    /// The identification of underlying sets.
    pub fn map(&self, m: ModElem) -> ModElem {
        self.map[m.index()]
    }

    pub fn transport(&self, n: &SubmoduleF) -> SubmoduleF {
        let mut members = FixedBitSet::with_capacity(self.target.size());
        for e in n.elements() {
            members.insert(self.map(e).index());
        }
        SubmoduleF::from_members(&self.target, members)
    }

    pub fn source(&self) -> &FiniteModule {
        &self.source
    }
}

pub fn over_quotient_ring(m: &FiniteModule, q: &RingQuotient, limits: &Limits) -> Result<ModuleOverQuotient> {
    if q.source() != m.ring() {
        return Err(Error::RingMismatch);
    }
    if !q.kernel().is_subset(&annihilator(m)) {
        return Err(Error::spec("the ideal does not annihilate the module"));
    }
    let project = |v: &[RingElem]| -> Vec<RingElem> { v.iter().map(|&e| q.project(e)).collect() };
    let rows = m.relations().iter().map(|r| project(r)).collect();
    let target = FiniteModule::new(q.ring(), m.rank(), rows, limits)?;
    let map: Vec<ModElem> = m.elements().map(|e| target.from_vector(&project(&m.rep(e))).expect("same rank")).collect();
    if target.size() != m.size() {
        return Err(Error::spec("the ideal does not annihilate the module"));
    }
    Ok(ModuleOverQuotient { source: m.clone(), target, map })
}
