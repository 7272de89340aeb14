//! Arithmetic checks for the submodule `P·(p,x)` of `Z[x] ⊕ Z[x]`, where
//! `P = (p, x)`.
//!
//! `f ∈ (p, x)` iff `p` divides the constant term of `f`. Elements of
//! `P·(p,x)` are the vectors `z·(p, x)` with `z ∈ P`: such a vector
//! `(f, g)` has `p | f`, `xf = pg`, and then `z = f/p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Polynomial in `Z[x]`, ascending coefficients without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(crate::rings::euclidean::int_to_json))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn divisible_by(&self, c: &BigInt) -> bool {
        self.0.iter().all(|a| a.is_multiple_of(c))
    }

    /// Exact coefficientwise division; `None` unless `c` divides every coefficient.
    pub fn div_exact(&self, c: &BigInt) -> Option<IntPoly> {
        self.divisible_by(c).then(|| IntPoly(self.0.iter().map(|a| a / c).collect()))
    }

    /// `f / x`, when the constant term vanishes.
    pub fn div_x(&self) -> Option<IntPoly> {
        if self.constant_term().is_zero() {
            Some(IntPoly(self.0.iter().skip(1).cloned().collect()))
        } else {
            None
        }
    }

    /// Uniform over degree `≤ deg` with coefficients in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, deg: usize, bound: i64) -> IntPoly {
        Self::new((0..=deg).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(","))
    }
}

/// An element `(f, g)` of `Z[x] ⊕ Z[x]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ZxVec {
    pub f: IntPoly,
    pub g: IntPoly,
}

impl ZxVec {
    pub fn new(f: IntPoly, g: IntPoly) -> Self {
        ZxVec { f, g }
    }

    pub fn zero() -> Self {
        ZxVec::new(IntPoly::zero(), IntPoly::zero())
    }

    /// `(p, x)`.
    pub fn px(p: u64) -> Self {
        ZxVec::new(IntPoly::constant(p), IntPoly::x())
    }

    pub fn scale(&self, r: &IntPoly) -> ZxVec {
        ZxVec::new(r.mul(&self.f), r.mul(&self.g))
    }

    pub fn add(&self, other: &ZxVec) -> ZxVec {
        ZxVec::new(self.f.add(&other.f), self.g.add(&other.g))
    }
}

/// Membership in the ideal `(p, x)`.
pub fn in_ideal_px(f: &IntPoly, p: u64) -> bool {
    f.constant_term().is_multiple_of(&BigInt::from(p))
}

/// Membership in `P·(p,x)`, with the ideal test passed in.
pub fn in_ppx_with(v: &ZxVec, p: u64, in_ideal: impl Fn(&IntPoly, u64) -> bool) -> bool {
    let pb = BigInt::from(p);
    let Some(z) = v.f.div_exact(&pb) else { return false };
    v.f.mul(&IntPoly::x()) == v.g.scale(&pb) && in_ideal(&z, p)
}

pub fn in_ppx_submodule(v: &ZxVec, p: u64) -> bool {
    in_ppx_with(v, p, in_ideal_px)
}

/// `r·m ∈ N`, `m ∉ N`, and `r·(1,0) ∉ N` for `N = P·(p,x)`, `r = p`,
/// `m = (p,x)`: so `N` is not a prime submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NotPrimeWitness {
    pub r: IntPoly,
    pub m: ZxVec,
    pub rm_in_submodule: bool,
    pub m_not_in_submodule: bool,
    pub r_times_free_generator_not_in_submodule: bool,
    pub verified: bool,
}

pub fn not_prime_witness(p: u64) -> NotPrimeWitness {
    let r = IntPoly::constant(p);
    let m = ZxVec::px(p);
    let rm_in = in_ppx_submodule(&m.scale(&r), p);
    let m_out = !in_ppx_submodule(&m, p);
    let probe = ZxVec::new(IntPoly::constant(1), IntPoly::zero()).scale(&r);
    let probe_out = !in_ppx_submodule(&probe, p);
    NotPrimeWitness {
        r,
        m,
        rm_in_submodule: rm_in,
        m_not_in_submodule: m_out,
        r_times_free_generator_not_in_submodule: probe_out,
        verified: rm_in && m_out && probe_out,
    }
}

/// `(p,x) = p·(1,0) + x·(0,1)` lies in `P·(Z[x]⊕Z[x])` but not in `P·(p,x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RadicalObstruction {
    pub in_p_times_module: bool,
    pub not_in_ppx: bool,
    pub verified: bool,
    /// The step over all maximal submodules is argued, not computed.
    pub quantifier_step: &'static str,
}

pub fn radical_obstruction(p: u64) -> RadicalObstruction {
    let px = ZxVec::px(p);
    let e1 = ZxVec::new(IntPoly::constant(1), IntPoly::zero());
    let e2 = ZxVec::new(IntPoly::zero(), IntPoly::constant(1));
    let (a, b) = (IntPoly::constant(p), IntPoly::x());
    // Both coefficients lie in P and recombine to (p, x).
    let in_pm = in_ideal_px(&a, p) && in_ideal_px(&b, p) && e1.scale(&a).add(&e2.scale(&b)) == px;
    let not_in = !in_ppx_submodule(&px, p);
    RadicalObstruction {
        in_p_times_module: in_pm,
        not_in_ppx: not_in,
        verified: in_pm && not_in,
        quantifier_step: "argued",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FalsifyConfig {
    pub samples: u64,
    pub degree_bound: usize,
    pub coeff_bound: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub r: IntPoly,
    pub s: IntPoly,
    pub v: ZxVec,
    pub sample_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "outcome")]
pub enum FalsifyOutcome {
    NoCounterexample { samples: u64, premise_held: u64 },
    Counterexample(Counterexample),
}

/// One sample: `r`, `s` nonzero and `v = h·(p,x)`. When `rs ≠ 0`, every `v`
/// with `rs·v ∈ P·(p,x)` has this form, so nothing in the premise slice is
/// missed. One of `r`, `s`, `h` is planted in `(p,x)` two times in three;
/// otherwise all three are uniform and the premise is left to chance.
fn draw<R: Rng + ?Sized>(rng: &mut R, p: u64, cfg: &FalsifyConfig) -> (IntPoly, IntPoly, IntPoly) {
    let (d, b) = (cfg.degree_bound, cfg.coeff_bound);
    let nonzero = |rng: &mut R| loop {
        let f = IntPoly::random(rng, d, b);
        if !f.is_zero() {
            return f;
        }
    };
    let in_p = |rng: &mut R| loop {
        let u = IntPoly::random(rng, d, b);
        let w = IntPoly::random(rng, d.saturating_sub(1), b);
        let z = u.scale(&BigInt::from(p)).add(&w.mul(&IntPoly::x()));
        if !z.is_zero() {
            return z;
        }
    };
    let mut slots = [nonzero(rng), nonzero(rng), IntPoly::random(rng, d, b)];
    if let k @ 0..=3 = rng.gen_range(0..6) {
        slots[k % 3] = in_p(rng)
    }
    let [r, s, h] = slots;
    (r, s, h)
}

/// Searches for `r, s, v` with `rs·v ∈ P·(p,x)` but neither `r·v` nor
/// `s·v` in it. Finding none is evidence, not proof.
pub fn classical_prime_falsify_with(
    p: u64,
    cfg: &FalsifyConfig,
    in_ideal: impl Fn(&IntPoly, u64) -> bool + Copy,
) -> FalsifyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let px = ZxVec::px(p);
    let mut premise_held = 0;
    for i in 0..cfg.samples {
        let (r, s, h) = draw(&mut rng, p, cfg);
        let v = px.scale(&h);
        if !in_ppx_with(&v.scale(&r.mul(&s)), p, in_ideal) {
            continue;
        }
        premise_held += 1;
        if !in_ppx_with(&v.scale(&r), p, in_ideal) && !in_ppx_with(&v.scale(&s), p, in_ideal) {
            return FalsifyOutcome::Counterexample(Counterexample { r, s, v, sample_index: i });
        }
    }
    FalsifyOutcome::NoCounterexample { samples: cfg.samples, premise_held }
}

pub fn classical_prime_falsify(p: u64, cfg: &FalsifyConfig) -> FalsifyOutcome {
    classical_prime_falsify_with(p, cfg, in_ideal_px)
}

/// Full record for the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ZxReport {
    pub p: u64,
    pub not_prime: NotPrimeWitness,
    pub radical_obstruction: RadicalObstruction,
    pub falsifier: FalsifyOutcome,
}

pub fn zx_report(p: u64, cfg: &FalsifyConfig) -> ZxReport {
    ZxReport {
        p,
        not_prime: not_prime_witness(p),
        radical_obstruction: radical_obstruction(p),
        falsifier: classical_prime_falsify(p, cfg),
    }
}

/// A deliberately wrong membership rule (constant term divisible by `p²`),
/// used to check that the falsifier notices a broken predicate.
pub fn corrupted_in_ideal_px(f: &IntPoly, p: u64) -> bool {
    f.constant_term().is_multiple_of(&(BigInt::from(p) * BigInt::from(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// All polynomials of degree `≤ deg` with coefficients in `[-b, b]`.
    fn box_polys(deg: usize, b: i64) -> Vec<IntPoly> {
        let mut out = vec![vec![]];
        for _ in 0..=deg {
            out =
                out.into_iter().flat_map(|v: Vec<i64>| (-b..=b).map(move |c| [v.clone(), vec![c]].concat())).collect();
        }
        out.iter().map(|v| IntPoly::from_i64s(v)).collect()
    }

    /// `f = p·a + x·b` for some `a` of degree ≤ 1 with small coefficients.
    fn ideal_oracle(f: &IntPoly, p: u64) -> bool {
        box_polys(1, 5).iter().any(|a| f.sub(&a.scale(&BigInt::from(p))).div_x().is_some())
    }

    #[test]
    fn ideal_rule_matches_cofactor_search() {
        for p in [2, 3, 5] {
            for f in box_polys(3, 5) {
                assert_eq!(in_ideal_px(&f, p), ideal_oracle(&f, p), "{f} p={p}");
            }
        }
    }

    #[test]
    fn submodule_rule_matches_search() {
        for p in [2, 3, 5] {
            let px = ZxVec::px(p);
            let generated: HashSet<ZxVec> =
                box_polys(2, 4).iter().filter(|z| in_ideal_px(z, p)).map(|z| px.scale(z)).collect();
            let small = box_polys(2, 3);
            for f in &small {
                for g in &small {
                    let v = ZxVec::new(f.clone(), g.clone());
                    assert_eq!(in_ppx_submodule(&v, p), generated.contains(&v), "{v:?} p={p}");
                }
            }
        }
    }

    #[test]
    fn ideal_examples() {
        let p = 3;
        assert!(in_ideal_px(&IntPoly::constant(p), p));
        assert!(in_ideal_px(&IntPoly::from_i64s(&[21, 0, 1]), p));
        assert!(!in_ideal_px(&IntPoly::constant(1), p));
    }

    #[test]
    fn submodule_examples() {
        for p in [2u64, 3, 5] {
            let pi = p as i64;
            assert!(in_ppx_submodule(&ZxVec::new(IntPoly::constant(p * p), IntPoly::from_i64s(&[0, pi])), p));
            assert!(!in_ppx_submodule(&ZxVec::px(p), p));
            assert!(in_ppx_submodule(&ZxVec::new(IntPoly::from_i64s(&[0, pi]), IntPoly::from_i64s(&[0, 0, 1])), p));
        }
    }

    #[test]
    fn membership_implies_components_in_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3, 7] {
            for _ in 0..500 {
                let u = IntPoly::random(&mut rng, 3, 9);
                let w = IntPoly::random(&mut rng, 2, 9);
                let z = u.scale(&BigInt::from(p)).add(&w.mul(&IntPoly::x()));
                let v = ZxVec::px(p).scale(&z);
                assert!(in_ppx_submodule(&v, p));
                assert!(in_ideal_px(&v.f, p) && in_ideal_px(&v.g, p));
            }
        }
    }

    #[test]
    fn witnesses() {
        for p in [2, 5, 7] {
            assert!(not_prime_witness(p).verified);
            assert!(radical_obstruction(p).verified);
            assert_eq!(radical_obstruction(p).not_in_ppx, !in_ppx_submodule(&ZxVec::px(p), p));
        }
        assert!(in_ppx_submodule(&ZxVec::zero().scale(&IntPoly::constant(5)), 5));
    }

    #[test]
    fn falsifier_finds_nothing_and_is_deterministic() {
        let cfg = FalsifyConfig { samples: 20_000, degree_bound: 4, coeff_bound: 9, seed: 7 };
        let a = classical_prime_falsify(2, &cfg);
        assert!(matches!(a, FalsifyOutcome::NoCounterexample { premise_held, .. } if premise_held > 1000));
        assert_eq!(a, classical_prime_falsify(2, &cfg));
    }

    #[test]
    fn falsifier_catches_corrupted_predicate() {
        let cfg = FalsifyConfig { samples: 20_000, degree_bound: 4, coeff_bound: 9, seed: 7 };
        match classical_prime_falsify_with(2, &cfg, corrupted_in_ideal_px) {
            FalsifyOutcome::Counterexample(c) => {
                assert!(c.sample_index < 1000);
                let rs = c.r.mul(&c.s);
                assert!(in_ppx_with(&c.v.scale(&rs), 2, corrupted_in_ideal_px));
            }
            other => panic!("corruption went unnoticed: {other:?}"),
        }
    }
}
