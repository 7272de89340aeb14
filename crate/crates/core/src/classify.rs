//! Primeness, classical primeness, radicals and the (classical) Hilbert
//! property for submodules of finite modules.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::finmod::{
    all_submodules, colon_ideal, ideal_times, quotient_module, submodule_as_module, FiniteModule, ModElem, SubmoduleF,
};
use crate::limits::Limits;
use crate::rings::ideal::{is_maximal_ideal, is_prime_ideal, jacobson_radical, IdealF};

/// Everything the predicates say about one submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub proper: bool,
    pub maximal: bool,
    pub prime: bool,
    pub classical_prime: bool,
    pub intersection_of_maximals: bool,
    /// Distinct `(0 :_R m̄)` over nonzero `m̄` in `M/P`, sorted.
    pub ann_spectrum: Vec<IdealF>,
    pub colon: IdealF,
}

fn require_proper(p: &SubmoduleF) -> Result<()> {
    if p.is_whole() {
        Err(Error::NotProper)
    } else {
        Ok(())
    }
}

/// `{r : rm ∈ P}`, the annihilator of `m + P` in `M/P`.
fn ann_mod(p: &SubmoduleF, m: ModElem) -> IdealF {
    let module = p.parent();
    let ring = module.ring();
    let mut members = FixedBitSet::with_capacity(ring.size());
    for r in ring.elements() {
        if p.contains(module.act(r, m)) {
            members.insert(r.index());
        }
    }
    IdealF::from_members(ring, members)
}

pub fn annihilator_spectrum(p: &SubmoduleF) -> Result<Vec<IdealF>> {
    require_proper(p)?;
    let module = p.parent();
    let mut seen = std::collections::BTreeSet::new();
    let mut done = FixedBitSet::with_capacity(module.size());
    for m in module.elements() {
        if p.contains(m) || done.contains(m.index()) {
            continue;
        }
        // Every element of the coset m + P has the same annihilator.
        for q in p.elements() {
            done.insert(module.add(m, q).index());
        }
        seen.insert(ann_mod(p, m));
    }
    Ok(seen.into_iter().collect())
}

/// `abm ∈ P ⇒ am ∈ P or bm ∈ P`, by exhaustive scan.
pub fn is_classical_prime_def(p: &SubmoduleF) -> Result<bool> {
    require_proper(p)?;
    let module = p.parent();
    let ring = module.ring();
    for m in module.elements().filter(|&m| !p.contains(m)) {
        let out: Vec<_> = ring.elements().filter(|&a| !p.contains(module.act(a, m))).collect();
        for &a in &out {
            for &b in &out {
                if p.contains(module.act(ring.mul(a, b), m)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The annihilators of nonzero elements of `M/P` are prime and form a chain.
pub fn is_classical_prime_chain(p: &SubmoduleF) -> Result<bool> {
    let spec = annihilator_spectrum(p)?;
    Ok(spec.iter().all(is_prime_ideal) && spec.windows(2).all(|w| w[0].is_subset(&w[1])))
}

/// Default classical-prime test.
pub fn is_classical_prime(p: &SubmoduleF) -> Result<bool> {
    is_classical_prime_chain(p)
}

/// `(P:M)` prime and a single annihilator across `M/P`.
pub fn is_prime_sub(p: &SubmoduleF) -> Result<bool> {
    let spec = annihilator_spectrum(p)?;
    Ok(is_prime_ideal(&colon_ideal(p)) && spec.len() == 1)
}

/// `rm ∈ P ⇒ m ∈ P or rM ⊆ P`, by exhaustive scan.
pub fn is_prime_def(p: &SubmoduleF) -> Result<bool> {
    require_proper(p)?;
    let module = p.parent();
    let colon = colon_ideal(p);
    for r in module.ring().elements().filter(|&r| !colon.contains(r)) {
        if module.elements().any(|m| !p.contains(m) && p.contains(module.act(r, m))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P + Rm = M` for every `m` outside `P`.
pub fn is_maximal_sub(p: &SubmoduleF) -> Result<bool> {
    require_proper(p)?;
    let module = p.parent();
    let mut checked = FixedBitSet::with_capacity(module.size());
    for m in module.elements() {
        if p.contains(m) || checked.contains(m.index()) {
            continue;
        }
        if !p.add_element(m).is_whole() {
            return Ok(false);
        }
        // Units times m give the same cyclic submodule; skip their cosets.
        for u in module.ring().elements().filter(|&u| module.ring().inverse(u).is_some()) {
            checked.insert(module.act(u, m).index());
        }
    }
    Ok(true)
}

/// `J(R)·M`. Over a finite (Artinian) ring this equals the radical.
pub fn jacobson_times_module(module: &FiniteModule, limits: &Limits) -> Result<SubmoduleF> {
    let j = jacobson_radical(module.ring(), limits)?;
    Ok(ideal_times(&j, &SubmoduleF::whole(module)))
}

/// Intersection of the maximal submodules; `M` itself when there are none.
/// Modules past the lattice bound fall back to `J(R)·M`.
pub fn radical_of_module(module: &FiniteModule, limits: &Limits) -> Result<SubmoduleF> {
    if module.size() > limits.max_lattice {
        return jacobson_times_module(module, limits);
    }
    let lattice = all_submodules(module, limits)?;
    let mut rad = SubmoduleF::whole(module);
    for n in lattice.iter().filter(|n| n.is_proper()) {
        if is_maximal_sub(n)? {
            rad = rad.intersection(n);
        }
    }
    Ok(rad)
}

/// Whether `Rad(M/P) = 0`.
pub fn is_intersection_of_maximals(p: &SubmoduleF, limits: &Limits) -> Result<bool> {
    require_proper(p)?;
    let q = quotient_module(p, limits)?;
    Ok(radical_of_module(q.module(), limits)?.is_zero())
}

/// The intersection of the maximal submodules containing `P` equals `P`,
/// read off an enumerated lattice.
pub fn is_intersection_of_maximals_lattice(p: &SubmoduleF, lattice: &[SubmoduleF]) -> Result<bool> {
    require_proper(p)?;
    let mut meet = SubmoduleF::whole(p.parent());
    for n in lattice.iter().filter(|n| n.is_proper() && p.is_subset(n)) {
        if is_maximal_sub(n)? {
            meet = meet.intersection(n);
        }
    }
    Ok(&meet == p)
}

pub fn classify(p: &SubmoduleF, limits: &Limits) -> Result<Classification> {
    let colon = colon_ideal(p);
    if p.is_whole() {
        return Ok(Classification {
            proper: false,
            maximal: false,
            prime: false,
            classical_prime: false,
            intersection_of_maximals: false,
            ann_spectrum: Vec::new(),
            colon,
        });
    }
    let ann_spectrum = annihilator_spectrum(p)?;
    let classical_prime =
        ann_spectrum.iter().all(is_prime_ideal) && ann_spectrum.windows(2).all(|w| w[0].is_subset(&w[1]));
    let prime = is_prime_ideal(&colon) && ann_spectrum.len() == 1;
    Ok(Classification {
        proper: true,
        maximal: is_maximal_sub(p)?,
        prime,
        classical_prime,
        intersection_of_maximals: is_intersection_of_maximals(p, limits)?,
        ann_spectrum,
        colon,
    })
}

/// The submodule lattice of a module together with per-node predicates.
#[derive(Clone, Debug)]
pub struct Lattice {
    module: FiniteModule,
    nodes: Vec<SubmoduleF>,
}

impl Lattice {
    pub fn new(module: &FiniteModule, limits: &Limits) -> Result<Self> {
        Ok(Lattice { module: module.clone(), nodes: all_submodules(module, limits)? })
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn nodes(&self) -> &[SubmoduleF] {
        &self.nodes
    }

    pub fn index_of(&self, n: &SubmoduleF) -> Option<usize> {
        self.nodes.binary_search(n).ok()
    }

    fn select(&self, pred: impl Fn(&SubmoduleF) -> Result<bool>) -> Result<Vec<&SubmoduleF>> {
        let mut out = Vec::new();
        for n in self.nodes.iter().filter(|n| n.is_proper()) {
            if pred(n)? {
                out.push(n);
            }
        }
        Ok(out)
    }

    pub fn maximal(&self) -> Result<Vec<&SubmoduleF>> {
        self.select(is_maximal_sub)
    }

    pub fn primes(&self) -> Result<Vec<&SubmoduleF>> {
        self.select(is_prime_sub)
    }

    pub fn classical_primes(&self) -> Result<Vec<&SubmoduleF>> {
        self.select(is_classical_prime)
    }

    /// Pairs `(i, j)` where node `j` covers node `i`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.nodes.iter().enumerate() {
            let above: Vec<usize> =
                (i + 1..self.nodes.len()).filter(|&j| a != &self.nodes[j] && a.is_subset(&self.nodes[j])).collect();
            for &j in &above {
                let b = &self.nodes[j];
                if !above.iter().any(|&k| k != j && self.nodes[k].is_subset(b) && &self.nodes[k] != b) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn minimal_among(xs: &[&SubmoduleF]) -> Vec<SubmoduleF> {
    xs.iter().filter(|a| !xs.iter().any(|b| b != *a && b.is_subset(a))).map(|a| (*a).clone()).collect()
}

pub fn minimal_classical_primes(module: &FiniteModule, limits: &Limits) -> Result<Vec<SubmoduleF>> {
    let lattice = Lattice::new(module, limits)?;
    Ok(minimal_among(&lattice.classical_primes()?))
}

/// Every classical prime submodule is an intersection of maximal submodules.
/// The zero module holds vacuously.
pub fn is_cl_hilbert(module: &FiniteModule, limits: &Limits) -> Result<bool> {
    if module.is_zero_module() {
        return Ok(true);
    }
    let lattice = Lattice::new(module, limits)?;
    cl_hilbert_on(&lattice, limits)
}

pub(crate) fn cl_hilbert_on(lattice: &Lattice, limits: &Limits) -> Result<bool> {
    for p in lattice.classical_primes()? {
        if !is_intersection_of_maximals(p, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`is_cl_hilbert`], over prime submodules only.
pub fn is_hilbert(module: &FiniteModule, limits: &Limits) -> Result<bool> {
    if module.is_zero_module() {
        return Ok(true);
    }
    let lattice = Lattice::new(module, limits)?;
    for p in lattice.primes()? {
        if !is_intersection_of_maximals(p, limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the characterization by larger classical primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LargerPrimesCheck {
    pub cl_hilbert: bool,
    /// Every non-maximal classical prime is the intersection of the
    /// classical primes strictly above it.
    pub larger_primes_meet: bool,
}

impl LargerPrimesCheck {
    pub fn agree(&self) -> bool {
        self.cl_hilbert == self.larger_primes_meet
    }
}

pub fn theorem25_check(module: &FiniteModule, limits: &Limits) -> Result<LargerPrimesCheck> {
    let lattice = Lattice::new(module, limits)?;
    let cl_hilbert = module.is_zero_module() || cl_hilbert_on(&lattice, limits)?;
    let primes = lattice.classical_primes()?;
    let mut larger_primes_meet = true;
    for p in &primes {
        if is_maximal_sub(p)? {
            continue;
        }
        let mut meet = SubmoduleF::whole(module);
        for q in primes.iter().filter(|q| *q != p && p.is_subset(q)) {
            meet = meet.intersection(q);
        }
        if &meet != *p {
            larger_primes_meet = false;
            break;
        }
    }
    Ok(LargerPrimesCheck { cl_hilbert, larger_primes_meet })
}

pub fn theorem25_equivalent(module: &FiniteModule, limits: &Limits) -> Result<bool> {
    Ok(theorem25_check(module, limits)?.agree())
}

/// Outcome of searching one cl.Hilbert module for a submodule that is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleMining {
    pub module_is_cl_hilbert: bool,
    pub submodules_examined: usize,
    /// Submodules (by lattice position) that failed, when the module passed.
    pub counterexamples: Vec<usize>,
    /// Submodules skipped because their presentation exceeded a bound.
    pub skipped: usize,
}

/// Examines every submodule of a cl.Hilbert module as a module in its own
/// right. Reports findings without drawing a conclusion.
pub fn mine_submodule_question(module: &FiniteModule, limits: &Limits) -> Result<SubmoduleMining> {
    let lattice = Lattice::new(module, limits)?;
    let module_is_cl_hilbert = module.is_zero_module() || cl_hilbert_on(&lattice, limits)?;
    let mut out =
        SubmoduleMining { module_is_cl_hilbert, submodules_examined: 0, counterexamples: Vec::new(), skipped: 0 };
    if !module_is_cl_hilbert {
        return Ok(out);
    }
    for (i, n) in lattice.nodes().iter().enumerate() {
        let sm = match submodule_as_module(n, limits) {
            Ok(sm) => sm,
            Err(Error::BoundExceeded { .. }) => {
                out.skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        out.submodules_examined += 1;
        if !is_cl_hilbert(sm.module(), limits)? {
            out.counterexamples.push(i);
        }
    }
    Ok(out)
}

/// Annihilators in the spectrum that are maximal ideals.
pub fn spectrum_all_maximal(spec: &[IdealF]) -> bool {
    spec.iter().all(is_maximal_ideal)
}
