//! Finitely generated modules `D^k / K` over a Euclidean domain and the
//! decidable forms of the primeness and Hilbert predicates.
//!
//! Everything is read off the Smith form of the stacked matrix
//! `[relations; generators of P]`: in the coordinates `y = x·V` the quotient
//! `M/P` is `⊕ D/(d_i) ⊕ D^r`.
//!
//! Over a PID the annihilator of a nonzero element of `D^r ⊕ ⊕ D/(d_i)` is
//! `(0)` when it has a free component and otherwise a nonzero ideal. The
//! annihilators are all prime and pairwise comparable exactly when every
//! `d_i` is one fixed prime `π`: two distinct nonzero primes are
//! incomparable, a composite `d_i` gives an element whose annihilator is
//! not prime, and `{(0), (π)}` is a chain. Hence classical prime means shape
//! `D^r ⊕ (D/π)^s`, and prime (a single annihilator) means `s = 0` or `r = 0`.

use crate::error::{Error, Result};
use crate::rings::EuclideanDomain;

use super::matrix::{echelon, intersection, same_span, scale_vec, smith, span_contains, Matrix, Snf};

#[derive(Clone, Debug)]
pub struct PresentedModule<D: EuclideanDomain> {
    domain: D,
    rank: usize,
    relations: Matrix<D::Elem>,
}

impl<D: EuclideanDomain> PresentedModule<D> {
    pub fn new(domain: D, rank: usize, relations: Vec<Vec<D::Elem>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::spec("module rank must be at least 1"));
        }
        let relations = Matrix::new(rank, relations)?;
        Ok(PresentedModule { domain, rank, relations })
    }

    pub fn free(domain: D, rank: usize) -> Result<Self> {
        Self::new(domain, rank, Vec::new())
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Matrix<D::Elem> {
        &self.relations
    }

    pub fn zero_submodule(&self) -> SubmodulePres<D::Elem> {
        SubmodulePres { generators: Matrix::empty(self.rank) }
    }

    pub fn whole(&self) -> SubmodulePres<D::Elem> {
        let d = &self.domain;
        let rows =
            (0..self.rank).map(|i| (0..self.rank).map(|j| if i == j { d.one() } else { d.zero() }).collect()).collect();
        SubmodulePres { generators: Matrix::new(self.rank, rows).expect("square") }
    }

    pub fn submodule(&self, gens: Vec<Vec<D::Elem>>) -> Result<SubmodulePres<D::Elem>> {
        Ok(SubmodulePres { generators: Matrix::new(self.rank, gens)? })
    }

    /// Relations stacked over the generators: the full preimage of `P` in `D^k`.
    pub fn preimage(&self, p: &SubmodulePres<D::Elem>) -> Matrix<D::Elem> {
        self.relations.stack(&p.generators)
    }

    /// Whether the coset of `v` lies in `P`.
    pub fn contains(&self, p: &SubmodulePres<D::Elem>, v: &[D::Elem]) -> bool {
        echelon(&self.domain, &self.preimage(p)).contains(&self.domain, v)
    }

    /// `A ⊆ B` as submodules of `M`.
    pub fn is_subset(&self, a: &SubmodulePres<D::Elem>, b: &SubmodulePres<D::Elem>) -> bool {
        span_contains(&self.domain, &self.preimage(b), &a.generators)
    }

    pub fn same_submodule(&self, a: &SubmodulePres<D::Elem>, b: &SubmodulePres<D::Elem>) -> bool {
        same_span(&self.domain, &self.preimage(a), &self.preimage(b))
    }

    pub fn intersect(&self, a: &SubmodulePres<D::Elem>, b: &SubmodulePres<D::Elem>) -> SubmodulePres<D::Elem> {
        SubmodulePres { generators: intersection(&self.domain, &self.preimage(a), &self.preimage(b)) }
    }

    pub fn sum(&self, a: &SubmodulePres<D::Elem>, b: &SubmodulePres<D::Elem>) -> SubmodulePres<D::Elem> {
        SubmodulePres { generators: a.generators.stack(&b.generators) }
    }

    /// `N` as a module in its own right, presented on the echelon basis of
    /// its preimage. The zero submodule comes back as `D/(1)`.
    pub fn submodule_as_module(&self, n: &SubmodulePres<D::Elem>) -> PresentedModule<D> {
        let d = &self.domain;
        let ech = echelon(d, &self.preimage(n));
        let m = ech.basis.nrows();
        if m == 0 {
            return PresentedModule {
                domain: d.clone(),
                rank: 1,
                relations: Matrix::new(1, vec![vec![d.one()]]).unwrap(),
            };
        }
        let rows =
            self.relations.rows().iter().map(|k| ech.reduce(d, k).expect("relations lie in every preimage")).collect();
        PresentedModule { domain: d.clone(), rank: m, relations: Matrix::new(m, rows).expect("width") }
    }

    /// `c·P`.
    pub fn scale(&self, c: &D::Elem, p: &SubmodulePres<D::Elem>) -> SubmodulePres<D::Elem> {
        let rows = p.generators.rows().iter().map(|r| scale_vec(&self.domain, c, r)).collect();
        SubmodulePres { generators: Matrix::new(self.rank, rows).expect("same width") }
    }

    pub fn decompose(&self, p: &SubmodulePres<D::Elem>) -> Decomposition<D::Elem> {
        let snf = smith(&self.domain, &self.preimage(p));
        let t = snf.diag.len();
        let shape = QuotientShape {
            free_rank: self.rank - t,
            invariant_factors: snf.diag.iter().filter(|e| !self.domain.is_unit(e)).cloned().collect(),
        };
        Decomposition { shape, snf }
    }

    pub fn quotient_shape(&self, p: &SubmodulePres<D::Elem>) -> QuotientShape<D::Elem> {
        self.decompose(p).shape
    }

    pub fn shape(&self) -> QuotientShape<D::Elem> {
        self.quotient_shape(&self.zero_submodule())
    }

    /// `M/P` realized as a module in its own right, given by the diagonal relations.
    pub fn quotient(&self, p: &SubmodulePres<D::Elem>) -> PresentedModule<D> {
        let d = &self.domain;
        let rows = self.preimage(p).into_rows();
        PresentedModule { domain: d.clone(), rank: self.rank, relations: Matrix::new(self.rank, rows).expect("width") }
    }

    fn proper_shape(&self, p: &SubmodulePres<D::Elem>) -> Result<QuotientShape<D::Elem>> {
        let shape = self.quotient_shape(p);
        if shape.is_zero() {
            return Err(Error::NotProper);
        }
        Ok(shape)
    }

    pub fn is_classical_prime(&self, p: &SubmodulePres<D::Elem>) -> Result<bool> {
        let shape = self.proper_shape(p)?;
        shape.single_prime(&self.domain).map(|s| s.is_some() || shape.invariant_factors.is_empty())
    }

    pub fn is_prime(&self, p: &SubmodulePres<D::Elem>) -> Result<bool> {
        let shape = self.proper_shape(p)?;
        if shape.invariant_factors.is_empty() {
            return Ok(true);
        }
        Ok(shape.free_rank == 0 && shape.single_prime(&self.domain)?.is_some())
    }

    pub fn radical_shape(&self, p: &SubmodulePres<D::Elem>) -> Result<RadicalShape<D::Elem>> {
        radical_of_shape(&self.domain, &self.quotient_shape(p))
    }

    /// Whether `P` is an intersection of maximal submodules, via `Rad(M/P) = 0`.
    pub fn is_intersection_of_maximals(&self, p: &SubmodulePres<D::Elem>) -> Result<bool> {
        self.proper_shape(p)?;
        Ok(self.radical_shape(p)?.is_zero())
    }

    /// Rows of `V^{-1}` are the images of the adapted basis vectors in `D^k`.
    fn adapted(&self, dec: &Decomposition<D::Elem>, i: usize) -> Vec<D::Elem> {
        dec.snf.v_inv.row(i).to_vec()
    }

    /// The torsion submodule of `M`: the preimage of the torsion part.
    pub fn torsion_submodule(&self) -> SubmodulePres<D::Elem> {
        let dec = self.decompose(&self.zero_submodule());
        let rows = (0..dec.snf.diag.len()).map(|i| self.adapted(&dec, i)).collect();
        SubmodulePres { generators: Matrix::new(self.rank, rows).expect("width") }
    }

    pub fn is_torsion_free_quotient(&self, n: &SubmodulePres<D::Elem>) -> bool {
        self.quotient_shape(n).invariant_factors.is_empty()
    }

    /// `IN = N ∩ IM` for every ideal `I`. Over a PID only the powers
    /// `π^e` of primes dividing the torsion exponent of `M/N` need checking,
    /// with `e` up to the multiplicity of `π` in that exponent.
    pub fn is_pure_submodule(&self, n: &SubmodulePres<D::Elem>) -> Result<bool> {
        let d = &self.domain;
        let shape = self.quotient_shape(n);
        let Some(exponent) = shape.invariant_factors.last() else { return Ok(true) };
        let whole = self.whole();
        for (pi, v) in d.factor(exponent)? {
            let mut q = d.one();
            for _ in 0..v {
                q = d.mul(&q, &pi);
                let meet = self.intersect(&self.scale(&q, &whole), n);
                if !self.is_subset(&meet, &self.scale(&q, n)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Classical `P` of shape `D^r ⊕ (D/π)^s` with `r, s ≥ 1` as the meet of
    /// two primes: the preimage of the torsion part and the preimage of
    /// `πD^r ⊕ 0`. `None` when the shape is not of that kind.
    pub fn split_classical_prime(&self, p: &SubmodulePres<D::Elem>) -> Result<Option<PrimePair<D::Elem>>> {
        let d = &self.domain;
        let dec = self.decompose(p);
        let shape = &dec.shape;
        if shape.free_rank == 0 || shape.invariant_factors.is_empty() {
            return Ok(None);
        }
        let Some(pi) = shape.single_prime(d)? else { return Ok(None) };
        let t = dec.snf.diag.len();
        let torsion: Vec<_> = (0..t).map(|i| self.adapted(&dec, i)).collect();
        let mut p2: Vec<_> = (0..t).map(|i| scale_vec(d, &dec.snf.diag[i], &self.adapted(&dec, i))).collect();
        p2.extend((t..self.rank).map(|j| scale_vec(d, &pi, &self.adapted(&dec, j))));
        Ok(Some((self.submodule(torsion)?, self.submodule(p2)?)))
    }

    /// cl.Hilbert status with its justification. Over `Z` and `GF(p)[x]`
    /// (Dedekind, `J = 0`) always true. Over `Z_(p)` the radical of a module
    /// is `pA`, so a classical prime `P` is an intersection of maximals
    /// exactly when `p(M/P) = 0`; that fails for some `P` iff `M` has a free
    /// summand.
    pub fn cl_hilbert(&self) -> ClHilbertVerdict<D::Elem> {
        let d = &self.domain;
        if d.is_zero(&d.jacobson_generator()) {
            return ClHilbertVerdict { holds: true, justification: Justification::TheoremBacked, witness: None };
        }
        let dec = self.decompose(&self.zero_submodule());
        if dec.shape.free_rank == 0 {
            return ClHilbertVerdict { holds: true, justification: Justification::Derived, witness: None };
        }
        // Kill the torsion and all but the last free coordinate: M/P ≅ D.
        let rows = (0..self.rank - 1).map(|i| self.adapted(&dec, i)).collect();
        let witness = SubmodulePres { generators: Matrix::new(self.rank, rows).expect("width") };
        ClHilbertVerdict { holds: false, justification: Justification::Derived, witness: Some(witness) }
    }
}

/// Two prime submodules whose intersection is a given classical prime.
pub type PrimePair<E> = (SubmodulePres<E>, SubmodulePres<E>);

/// A submodule of `D^k / K`, given by generators in `D^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodulePres<E> {
    generators: Matrix<E>,
}

impl<E: Clone> SubmodulePres<E> {
    pub fn generators(&self) -> &Matrix<E> {
        &self.generators
    }
}

/// `M/P ≅ D^r ⊕ ⊕ D/(d_i)` with `d_1 | d_2 | …`, units dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientShape<E> {
    pub free_rank: usize,
    pub invariant_factors: Vec<E>,
}

impl<E: Clone + Eq> QuotientShape<E> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// `Some(π)` when every invariant factor is the same prime `π`.
    pub fn single_prime<D: EuclideanDomain<Elem = E>>(&self, d: &D) -> Result<Option<E>> {
        let Some(first) = self.invariant_factors.first() else { return Ok(None) };
        if self.invariant_factors.iter().any(|e| e != first) {
            return Ok(None);
        }
        Ok(d.is_prime_elem(first)?.then(|| first.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition<E> {
    pub shape: QuotientShape<E>,
    pub snf: Snf<E>,
}

/// Componentwise radical of `D^r ⊕ ⊕ D/(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalShape<E> {
    /// `J(D)` on the free part, when there is one.
    pub free: Option<E>,
    /// `(d_i, rad(d_i))`: the summand `D/(d_i)` has radical `(rad d_i)/(d_i)`.
    pub torsion: Vec<(E, E)>,
    zero: bool,
}

impl<E> RadicalShape<E> {
    pub fn is_zero(&self) -> bool {
        self.zero
    }
}

pub fn radical_of_shape<D: EuclideanDomain>(d: &D, shape: &QuotientShape<D::Elem>) -> Result<RadicalShape<D::Elem>> {
    let j = d.jacobson_generator();
    let free = (shape.free_rank > 0).then(|| j.clone());
    let mut zero = shape.free_rank == 0 || d.is_zero(&j);
    let mut torsion = Vec::new();
    for f in &shape.invariant_factors {
        let r = d.radical(f)?;
        zero &= d.associates(&r, f);
        torsion.push((f.clone(), r));
    }
    Ok(RadicalShape { free, torsion, zero })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Justification {
    TheoremBacked,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClHilbertVerdict<E> {
    pub holds: bool,
    pub justification: Justification,
    /// A classical prime that is not an intersection of maximal submodules.
    pub witness: Option<SubmodulePres<E>>,
}

/// `Λ(a,b) = {(x,y) : xb = ya}` in `D²`, spanned by `(a,b)/gcd(a,b)`.
pub fn lambda<D: EuclideanDomain>(
    d: &D,
    a: &D::Elem,
    b: &D::Elem,
) -> Result<(PresentedModule<D>, SubmodulePres<D::Elem>)> {
    let m = PresentedModule::free(d.clone(), 2)?;
    if d.is_zero(a) && d.is_zero(b) {
        let whole = m.whole();
        return Ok((m, whole));
    }
    let g = d.gcd(a, b);
    let row = vec![d.exact_div(a, &g).expect("gcd divides"), d.exact_div(b, &g).expect("gcd divides")];
    let p = m.submodule(vec![row])?;
    Ok((m, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{GfPolys, Integers, LocalIntegers};
    use num_bigint::BigInt;

    fn z(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn zmod(k: usize, rels: &[&[i64]]) -> PresentedModule<Integers> {
        PresentedModule::new(Integers, k, z(rels)).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn shapes() {
        let m = zmod(2, &[]);
        let s = m.quotient_shape(&m.submodule(z(&[&[5, 0]])).unwrap());
        assert_eq!(s, QuotientShape { free_rank: 1, invariant_factors: ints(&[5]) });
        let s = m.quotient_shape(&m.submodule(z(&[&[2, 0], &[0, 3]])).unwrap());
        assert_eq!(s, QuotientShape { free_rank: 0, invariant_factors: ints(&[6]) });
        assert!(m.quotient_shape(&m.whole()).is_zero());
        assert_eq!(m.is_classical_prime(&m.whole()), Err(Error::NotProper));
    }

    #[test]
    fn classical_prime_and_prime() {
        let m = zmod(2, &[]);
        for p in [2, 3, 5] {
            let pz = m.submodule(z(&[&[p, 0]])).unwrap();
            assert!(m.is_classical_prime(&pz).unwrap());
            assert!(!m.is_prime(&pz).unwrap());
            let pp = m.submodule(z(&[&[p, 0], &[0, p]])).unwrap();
            assert!(m.is_prime(&pp).unwrap());
        }
        assert!(!m.is_classical_prime(&m.submodule(z(&[&[4, 0]])).unwrap()).unwrap());
        let (m2, l) = lambda(&Integers, &BigInt::from(2), &BigInt::from(3)).unwrap();
        assert!(m2.is_prime(&l).unwrap());
        let zz = zmod(1, &[]);
        assert!(zz.is_classical_prime(&zz.zero_submodule()).unwrap());
    }

    #[test]
    fn radicals() {
        let m = zmod(2, &[]);
        assert!(m.radical_shape(&m.submodule(z(&[&[7, 0]])).unwrap()).unwrap().is_zero());
        let l = LocalIntegers::new(5).unwrap();
        let ml = PresentedModule::free(l.clone(), 1).unwrap();
        let r = ml.radical_shape(&ml.zero_submodule()).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.free, Some(l.from_i64(5)));
        let zz = zmod(1, &[]);
        assert!(zz.radical_shape(&zz.zero_submodule()).unwrap().is_zero());
        assert!(!zz.radical_shape(&zz.submodule(z(&[&[12]])).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cl_hilbert_verdicts() {
        let v = zmod(2, &[]).cl_hilbert();
        assert!(v.holds);
        assert_eq!(v.justification, Justification::TheoremBacked);
        let g = GfPolys::new(3).unwrap();
        assert!(PresentedModule::free(g, 3).unwrap().cl_hilbert().holds);

        let l = LocalIntegers::new(3).unwrap();
        let m = PresentedModule::free(l.clone(), 1).unwrap();
        let v = m.cl_hilbert();
        assert!(!v.holds);
        assert_eq!(v.justification, Justification::Derived);
        let w = v.witness.unwrap();
        assert!(m.same_submodule(&w, &m.zero_submodule()));
        assert!(m.is_classical_prime(&w).unwrap());
        assert!(!m.is_intersection_of_maximals(&w).unwrap());

        let t = PresentedModule::new(l.clone(), 1, vec![vec![l.from_i64(9)]]).unwrap();
        assert!(t.cl_hilbert().holds);
    }

    #[test]
    fn local_witness_with_torsion_and_rank() {
        let l = LocalIntegers::new(2).unwrap();
        let rels = vec![vec![l.from_i64(4), l.from_i64(2), l.zero()]];
        let m = PresentedModule::new(l.clone(), 3, rels).unwrap();
        let w = m.cl_hilbert().witness.unwrap();
        let s = m.quotient_shape(&w);
        assert_eq!(s, QuotientShape { free_rank: 1, invariant_factors: vec![] });
        assert!(m.is_classical_prime(&w).unwrap());
        assert!(!m.is_intersection_of_maximals(&w).unwrap());
    }

    #[test]
    fn torsion_and_purity() {
        let m = zmod(2, &[]);
        let (_, l) = lambda(&Integers, &BigInt::from(2), &BigInt::from(3)).unwrap();
        assert!(m.is_torsion_free_quotient(&l));
        assert!(m.is_pure_submodule(&l).unwrap());
        let two = m.submodule(z(&[&[2, 0]])).unwrap();
        assert!(!m.is_torsion_free_quotient(&two));
        assert!(!m.is_pure_submodule(&two).unwrap());
        let zz = zmod(1, &[]);
        assert!(zz.is_pure_submodule(&zz.zero_submodule()).unwrap());

        let t = zmod(3, &[&[2, 0, 0], &[0, 6, 0]]);
        let tor = t.torsion_submodule();
        assert_eq!(t.quotient_shape(&tor), QuotientShape { free_rank: 1, invariant_factors: vec![] });
        assert!(t.contains(&tor, &ints(&[1, 1, 0])));
        assert!(!t.contains(&tor, &ints(&[0, 0, 1])));
        // Z/2 inside Z/2 ⊕ Z/4 as the first summand is pure; 2·(Z/4) is not.
        let m2 = zmod(2, &[&[2, 0], &[0, 4]]);
        assert!(m2.is_pure_submodule(&m2.submodule(z(&[&[1, 0]])).unwrap()).unwrap());
        assert!(!m2.is_pure_submodule(&m2.submodule(z(&[&[0, 2]])).unwrap()).unwrap());
    }

    #[test]
    fn split_classical_prime_meets_back() {
        let m = zmod(3, &[]);
        let p = m.submodule(z(&[&[3, 0, 0], &[0, 3, 3]])).unwrap();
        assert!(m.is_classical_prime(&p).unwrap());
        let (p1, p2) = m.split_classical_prime(&p).unwrap().unwrap();
        assert!(m.is_prime(&p1).unwrap());
        assert!(m.is_prime(&p2).unwrap());
        assert!(m.same_submodule(&m.intersect(&p1, &p2), &p));
    }

    #[test]
    fn submodules_as_modules() {
        // 2Z ⊕ 0 inside Z/4 ⊕ Z is Z/2.
        let m = zmod(2, &[&[4, 0]]);
        let n = m.submodule(z(&[&[2, 0]])).unwrap();
        assert_eq!(m.submodule_as_module(&n).shape(), QuotientShape { free_rank: 0, invariant_factors: ints(&[2]) });
        let n = m.submodule(z(&[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!(m.submodule_as_module(&n).shape(), QuotientShape { free_rank: 1, invariant_factors: ints(&[4]) });
        assert!(m.submodule_as_module(&m.zero_submodule()).shape().is_zero());
        let tor = m.submodule_as_module(&m.torsion_submodule()).shape();
        assert_eq!(tor, QuotientShape { free_rank: 0, invariant_factors: ints(&[4]) });
    }
}
