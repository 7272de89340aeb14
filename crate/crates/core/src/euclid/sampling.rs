//! Seeded random presented modules and submodules, including planted
//! classical primes with a known quotient shape.

use rand::Rng;

use crate::rings::EuclideanDomain;

use super::matrix::{identity, mul, Matrix};
use super::module::{PresentedModule, SubmodulePres};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub max_rank: usize,
    pub max_relations: usize,
    /// Coefficient box passed to the domain's sampler.
    pub coeff_bound: u32,
    /// Elementary operations used to scramble planted bases.
    pub scramble_steps: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { max_rank: 3, max_relations: 2, coeff_bound: 6, scramble_steps: 4 }
    }
}

fn random_rows<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    n: usize,
    k: usize,
    bound: u32,
) -> Vec<Vec<D::Elem>> {
    (0..n).map(|_| (0..k).map(|_| d.random_elem(rng, bound)).collect()).collect()
}

pub fn random_module<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    cfg: &SampleConfig,
) -> PresentedModule<D> {
    let k = rng.gen_range(1..=cfg.max_rank);
    let n = rng.gen_range(0..=cfg.max_relations);
    PresentedModule::new(d.clone(), k, random_rows(d, rng, n, k, cfg.coeff_bound)).expect("well-formed")
}

/// A module with no free part: enough relations to make it torsion.
pub fn random_torsion_module<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    cfg: &SampleConfig,
) -> PresentedModule<D> {
    loop {
        let k = rng.gen_range(1..=cfg.max_rank);
        let n = k + rng.gen_range(0..=cfg.max_relations);
        let m = PresentedModule::new(d.clone(), k, random_rows(d, rng, n, k, cfg.coeff_bound)).expect("well-formed");
        if m.shape().is_torsion() {
            return m;
        }
    }
}

pub fn random_submodule<D: EuclideanDomain, R: Rng + ?Sized>(
    m: &PresentedModule<D>,
    rng: &mut R,
    cfg: &SampleConfig,
) -> SubmodulePres<D::Elem> {
    let n = rng.gen_range(0..=m.rank() + 1);
    m.submodule(random_rows(m.domain(), rng, n, m.rank(), cfg.coeff_bound)).expect("well-formed")
}

/// A prime element: a prime factor of a random non-unit.
pub fn random_prime<D: EuclideanDomain, R: Rng + ?Sized>(d: &D, rng: &mut R, bound: u32) -> D::Elem {
    loop {
        let a = d.random_elem(rng, bound);
        if d.is_zero(&a) || d.is_unit(&a) {
            continue;
        }
        if let Ok(f) = d.factor(&a) {
            if !f.is_empty() {
                return f[rng.gen_range(0..f.len())].0.clone();
            }
        }
    }
}

/// A product of random elementary row operations, with its inverse.
pub fn random_unimodular<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    k: usize,
    steps: usize,
    bound: u32,
) -> (Matrix<D::Elem>, Matrix<D::Elem>) {
    let mut w = identity(d, k).into_rows();
    let mut inv = identity(d, k).into_rows();
    if k < 2 {
        return (Matrix::new(k, w).unwrap(), Matrix::new(k, inv).unwrap());
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(1..k)) % k;
        let c = d.random_elem(rng, bound);
        // W <- E·W with E = I + c·e_i e_j^T; the inverse picks up (I - c·e_i e_j^T) on the right.
        let src = w[j].clone();
        for (x, y) in w[i].iter_mut().zip(&src) {
            *x = d.add(x, &d.mul(&c, y));
        }
        for r in inv.iter_mut() {
            r[j] = d.sub(&r[j], &d.mul(&c, &r[i]));
        }
    }
    (Matrix::new(k, w).unwrap(), Matrix::new(k, inv).unwrap())
}

/// A module with a classical prime of known shape `D^r ⊕ (D/π)^s`.
#[derive(Clone, Debug)]
pub struct PlantedPrime<D: EuclideanDomain> {
    pub module: PresentedModule<D>,
    pub prime: SubmodulePres<D::Elem>,
    pub free_rank: usize,
    pub torsion_count: usize,
    pub pi: D::Elem,
}

pub fn planted_classical_prime<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    cfg: &SampleConfig,
) -> PlantedPrime<D> {
    let k = rng.gen_range(1..=cfg.max_rank);
    let r = rng.gen_range(0..=k);
    let s = if r == 0 { rng.gen_range(1..=k) } else { rng.gen_range(0..=k - r) };
    planted_with_shape(d, rng, cfg, k, r, s)
}

pub fn planted_with_shape<D: EuclideanDomain, R: Rng + ?Sized>(
    d: &D,
    rng: &mut R,
    cfg: &SampleConfig,
    k: usize,
    r: usize,
    s: usize,
) -> PlantedPrime<D> {
    assert!(r + s <= k && r + s >= 1);
    let pi = random_prime(d, rng, cfg.coeff_bound);
    let unit_vec =
        |i: usize, c: D::Elem| -> Vec<D::Elem> { (0..k).map(|j| if j == i { c.clone() } else { d.zero() }).collect() };
    let mut p0: Vec<Vec<D::Elem>> = (0..s).map(|i| unit_vec(i, pi.clone())).collect();
    p0.extend((s..k - r).map(|i| unit_vec(i, d.one())));
    let n_rel = rng.gen_range(0..=cfg.max_relations);
    let rels: Vec<Vec<D::Elem>> = (0..n_rel)
        .map(|_| {
            p0.iter().fold(vec![d.zero(); k], |acc, g| {
                let c = d.random_elem(rng, cfg.coeff_bound);
                acc.iter().zip(g).map(|(a, b)| d.add(a, &d.mul(&c, b))).collect()
            })
        })
        .collect();
    let (w, _) = random_unimodular(d, rng, k, cfg.scramble_steps, cfg.coeff_bound);
    let apply = |rows: Vec<Vec<D::Elem>>| -> Vec<Vec<D::Elem>> {
        if rows.is_empty() {
            return rows;
        }
        mul(d, &Matrix::new(k, rows).unwrap(), &w).into_rows()
    };
    let module = PresentedModule::new(d.clone(), k, apply(rels)).expect("well-formed");
    let prime = module.submodule(apply(p0)).expect("well-formed");
    PlantedPrime { module, prime, free_rank: r, torsion_count: s, pi }
}
