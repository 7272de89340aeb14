//! Over `Z` and `GF(2)[x]`, a submodule `P` with finite `M/P` is checked
//! against the finite classifier: with `e` the exponent of `M/P`, the
//! quotient is `(D/e)^k` modulo the reduced rows of `K + P`, and `P`
//! corresponds to the zero submodule there.

use modlattice::classify::classify;
use modlattice::euclid::sampling::{planted_with_shape, random_submodule, random_torsion_module, SampleConfig};
use modlattice::euclid::{PresentedModule, SubmodulePres};
use modlattice::finmod::{FiniteModule, SubmoduleF};
use modlattice::rings::{Component, Coord, EuclideanDomain, FiniteRing, GfPolys, Integers, RingElem};
use modlattice::Limits;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_SIZE: u64 = 256;

struct Shadow<D: EuclideanDomain> {
    ring: FiniteRing,
    reduce: Box<dyn Fn(&D::Elem) -> RingElem>,
}

fn int_shadow(e: &num_bigint::BigInt) -> Option<Shadow<Integers>> {
    let n = e.to_u64()?;
    let ring = FiniteRing::new(vec![Component::cyclic(n).ok()?]).ok()?;
    let r = ring.clone();
    Some(Shadow { ring, reduce: Box::new(move |x| r.from_int(x.to_i128().expect("small entries"))) })
}

fn gf2_shadow(e: &modlattice::rings::GfPoly) -> Option<Shadow<GfPolys>> {
    let ring = FiniteRing::new(vec![Component::poly_quot(2, e.coeffs()).ok()?]).ok()?;
    let r = ring.clone();
    Some(Shadow { ring, reduce: Box::new(move |x| r.from_coords(&[Coord::Coeffs(x.coeffs().to_vec())]).unwrap()) })
}

fn quotient_size<E>(factors: &[E], size_of: impl Fn(&E) -> Option<u64>) -> Option<u64> {
    factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(size_of(f)?))
}

/// `(classical, prime, maximal, intersection of maximals)` both ways, or
/// `None` when the quotient is infinite, zero or too large.
fn compare<D: EuclideanDomain>(
    m: &PresentedModule<D>,
    p: &SubmodulePres<D::Elem>,
    size_of: impl Fn(&D::Elem) -> Option<u64>,
    shadow: impl Fn(&D::Elem) -> Option<Shadow<D>>,
) -> Option<([bool; 4], [bool; 4])> {
    let d = m.domain();
    let shape = m.quotient_shape(p);
    if shape.free_rank > 0 || shape.is_zero() {
        return None;
    }
    if quotient_size(&shape.invariant_factors, &size_of)? > MAX_SIZE {
        return None;
    }
    let s = shadow(shape.invariant_factors.last()?)?;
    let rows: Vec<Vec<RingElem>> = m
        .relations()
        .rows()
        .iter()
        .chain(p.generators().rows())
        .map(|r| r.iter().map(|x| (s.reduce)(x)).collect())
        .collect();
    let fm = FiniteModule::new(&s.ring, m.rank(), rows, &Limits::default()).ok()?;
    assert_eq!(fm.size() as u64, quotient_size(&shape.invariant_factors, &size_of)?);
    let c = classify(&SubmoduleF::zero(&fm), &Limits::default()).unwrap();
    let finite = [c.classical_prime, c.prime, c.maximal, c.intersection_of_maximals];
    let maximal = shape.invariant_factors.len() == 1 && d.is_prime_elem(&shape.invariant_factors[0]).unwrap();
    let euclid =
        [m.is_classical_prime(p).unwrap(), m.is_prime(p).unwrap(), maximal, m.is_intersection_of_maximals(p).unwrap()];
    Some((euclid, finite))
}

fn sample<D: EuclideanDomain>(d: &D, seed: u64) -> (PresentedModule<D>, SubmodulePres<D::Elem>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = SampleConfig { coeff_bound: 4, ..SampleConfig::default() };
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=k);
        let planted = planted_with_shape(d, &mut rng, &cfg, k, 0, s);
        return (planted.module, planted.prime);
    }
    let m = random_torsion_module(d, &mut rng, &cfg);
    let p = random_submodule(&m, &mut rng, &cfg);
    (m, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn integers_agree_with_finite_classifier(seed in any::<u64>()) {
        let (m, p) = sample(&Integers, seed);
        if let Some((euclid, finite)) = compare(&m, &p, |f| f.magnitude().to_u64(), int_shadow) {
            prop_assert_eq!(euclid, finite);
        }
    }

    #[test]
    fn gf2_polynomials_agree_with_finite_classifier(seed in any::<u64>()) {
        let d = GfPolys::new(2).unwrap();
        let (m, p) = sample(&d, seed);
        let size = |f: &modlattice::rings::GfPoly| f.degree().and_then(|k| 1u64.checked_shl(k as u32));
        if let Some((euclid, finite)) = compare(&m, &p, size, gf2_shadow) {
            prop_assert_eq!(euclid, finite);
        }
    }
}

#[test]
fn shadow_covers_positive_and_negative_cases() {
    let mut seen = [[0usize; 2]; 4];
    for seed in 0..400 {
        let (m, p) = sample(&Integers, seed);
        if let Some((euclid, _)) = compare(&m, &p, |f| f.magnitude().to_u64(), int_shadow) {
            for (i, b) in euclid.iter().enumerate() {
                seen[i][*b as usize] += 1;
            }
        }
    }
    assert!(seen.iter().all(|s| s[0] > 0 && s[1] > 0), "{seen:?}");
}
