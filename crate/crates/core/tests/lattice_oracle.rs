//! Submodule lattices of tiny modules against brute force over all subsets.

use modlattice::classify::{classify, Lattice};
use modlattice::finmod::{FiniteModule, ModElem};
use modlattice::rings::{parse_ring, RingElem};
use modlattice::Limits;
use proptest::prelude::*;

const RINGS: [&str; 5] = ["Z/2", "Z/3", "Z/4", "Z/6", "GF(2)[x]/[0,0,1]"];

fn is_submodule(m: &FiniteModule, set: u32) -> bool {
    let has = |e: ModElem| set >> e.index() & 1 == 1;
    has(m.zero_elem())
        && m.elements().filter(|&a| has(a)).all(|a| {
            m.elements().filter(|&b| has(b)).all(|b| has(m.add(a, b))) && m.ring().elements().all(|r| has(m.act(r, a)))
        })
}

fn module() -> impl Strategy<Value = FiniteModule> {
    (prop::sample::select(RINGS.to_vec()), 1usize..=2, prop::collection::vec(any::<u8>(), 0..4)).prop_filter_map(
        "too large",
        |(spec, rank, seeds)| {
            let r = parse_ring(spec).unwrap();
            let els: Vec<RingElem> = r.elements().collect();
            let rows = seeds
                .chunks(rank)
                .filter(|c| c.len() == rank)
                .map(|c| c.iter().map(|&s| els[s as usize % els.len()]).collect())
                .collect();
            let m = FiniteModule::new(&r, rank, rows, &Limits::default()).ok()?;
            (m.size() <= 16).then_some(m)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn lattice_matches_brute_force(m in module()) {
        let lat = Lattice::new(&m, &Limits::default()).unwrap();
        let brute = (0u32..1 << m.size()).filter(|&s| is_submodule(&m, s)).count();
        prop_assert_eq!(lat.nodes().len(), brute);
    }

    #[test]
    fn covers_are_exactly_the_gaps(m in module()) {
        let lat = Lattice::new(&m, &Limits::default()).unwrap();
        let nodes = lat.nodes();
        let covers = lat.covers();
        for (i, a) in nodes.iter().enumerate() {
            for (j, b) in nodes.iter().enumerate() {
                let strictly = a != b && a.is_subset(b);
                let between = nodes.iter().any(|c| c != a && c != b && a.is_subset(c) && c.is_subset(b));
                prop_assert_eq!(covers.contains(&(i, j)), strictly && !between);
            }
        }
    }

    #[test]
    fn predicate_implications(m in module()) {
        let limits = Limits::default();
        let lat = Lattice::new(&m, &limits).unwrap();
        for p in lat.nodes().iter().filter(|p| p.is_proper()) {
            let c = classify(p, &limits).unwrap();
            prop_assert!(!c.maximal || c.prime);
            prop_assert!(!c.prime || c.classical_prime);
            // Finite rings are zero-dimensional, so every classical prime is an intersection of maximals.
            prop_assert!(!c.classical_prime || c.intersection_of_maximals);
            prop_assert!(c.ann_spectrum.windows(2).all(|w| !c.classical_prime || w[0].is_subset(&w[1])));
        }
    }
}
