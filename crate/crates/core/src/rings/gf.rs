//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficients are stored in ascending order and kept trimmed, so the zero
//! polynomial is the empty vector and two polynomials are equal iff their
//! coefficient vectors are equal. All arithmetic takes the prime explicitly;
//! primes are limited to `p < 2^31` so that products of residues fit in `u64`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const MAX_FIELD_PRIME: u64 = 1 << 31;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GfPoly(Vec<u64>);

impl GfPoly {
    pub fn zero() -> Self {
        GfPoly(Vec::new())
    }

    pub fn one() -> Self {
        GfPoly(vec![1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        GfPoly(vec![0, 1])
    }

    /// Builds a polynomial from ascending coefficients, reducing each mod `p`.
    pub fn from_coeffs(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        trim(&mut v);
        GfPoly(v)
    }

    /// Builds a polynomial from signed coefficients, reducing each into `[0, p)`.
    pub fn from_signed(p: u64, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let pi = p as i64;
        Self::from_coeffs(p, coeffs.into_iter().map(|c| c.rem_euclid(pi) as u64))
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_coeffs(p, [c])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// Coefficients padded with zeros to exactly `width` entries.
    pub fn padded(&self, width: usize) -> Vec<u64> {
        let mut v = self.0.clone();
        v.resize(width.max(v.len()), 0);
        v
    }
}

impl fmt::Debug for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue mod a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn add(p: u64, a: &GfPoly, b: &GfPoly) -> GfPoly {
    let n = a.0.len().max(b.0.len());
    let v = (0..n).map(|i| (a.coeff(i) + b.coeff(i)) % p).collect::<Vec<_>>();
    let mut v = v;
    trim(&mut v);
    GfPoly(v)
}

pub fn neg(p: u64, a: &GfPoly) -> GfPoly {
    GfPoly(a.0.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
}

pub fn sub(p: u64, a: &GfPoly, b: &GfPoly) -> GfPoly {
    add(p, a, &neg(p, b))
}

pub fn scale(p: u64, a: &GfPoly, c: u64) -> GfPoly {
    let c = c % p;
    if c == 0 {
        return GfPoly::zero();
    }
    GfPoly(a.0.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub fn mul(p: u64, a: &GfPoly, b: &GfPoly) -> GfPoly {
    if a.is_zero() || b.is_zero() {
        return GfPoly::zero();
    }
    let mut v = vec![0u64; a.0.len() + b.0.len() - 1];
    for (i, &x) in a.0.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.0.iter().enumerate() {
            v[i + j] = (v[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut v);
    GfPoly(v)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(p: u64, a: &GfPoly, b: &GfPoly) -> (GfPoly, GfPoly) {
    assert!(!b.is_zero(), "polynomial division by zero");
    let db = b.0.len() - 1;
    if a.0.len() <= db {
        return (GfPoly::zero(), a.clone());
    }
    let inv_lead = inv_mod(b.lead(), p);
    let mut r = a.0.clone();
    let mut q = vec![0u64; a.0.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], inv_lead, p);
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.0.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[k + j] = (r[k + j] + p - t) % p;
        }
    }
    trim(&mut q);
    trim(&mut r);
    (GfPoly(q), GfPoly(r))
}

pub fn rem(p: u64, a: &GfPoly, b: &GfPoly) -> GfPoly {
    div_rem(p, a, b).1
}

/// Monic associate together with the scalar it was multiplied by.
pub fn monic(p: u64, a: &GfPoly) -> (GfPoly, u64) {
    if a.is_zero() {
        return (GfPoly::zero(), 1);
    }
    let u = inv_mod(a.lead(), p);
    (scale(p, a, u), u)
}

/// Monic gcd (zero only when both inputs are zero).
pub fn gcd(p: u64, a: &GfPoly, b: &GfPoly) -> GfPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = rem(p, &a, &b);
        a = b;
        b = r;
    }
    monic(p, &a).0
}

pub fn derivative(p: u64, a: &GfPoly) -> GfPoly {
    let v: Vec<u64> = a.0.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
    let mut v = v;
    trim(&mut v);
    GfPoly(v)
}

pub fn mul_mod_poly(p: u64, a: &GfPoly, b: &GfPoly, m: &GfPoly) -> GfPoly {
    rem(p, &mul(p, a, b), m)
}

pub fn pow_mod_poly(p: u64, base: &GfPoly, exp: &BigUint, m: &GfPoly) -> GfPoly {
    let mut acc = rem(p, &GfPoly::one(), m);
    let base = rem(p, base, m);
    for i in (0..exp.bits()).rev() {
        acc = mul_mod_poly(p, &acc, &acc, m);
        if exp.bit(i) {
            acc = mul_mod_poly(p, &acc, &base, m);
        }
    }
    acc
}

fn pow_mod_poly_small(p: u64, base: &GfPoly, exp: u64, m: &GfPoly) -> GfPoly {
    pow_mod_poly(p, base, &BigUint::from(exp), m)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with every
/// `g` squarefree, pairwise coprime, and `f = prod g^i`.
fn squarefree_decomposition(p: u64, f: &GfPoly) -> Vec<(GfPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = gcd(p, f, &derivative(p, f));
    let mut w = div_rem(p, f, &c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(p, &w, &c);
        let fac = div_rem(p, &w, &y).0;
        if !fac.is_one() {
            out.push((monic(p, &fac).0, i));
        }
        w = y;
        c = div_rem(p, &c, &w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: c(x) = d(x^p), and coefficients are fixed by Frobenius.
        let root = GfPoly::from_coeffs(p, c.0.iter().step_by(p as usize).copied());
        for (g, j) in squarefree_decomposition(p, &root) {
            out.push((g, j * p as u32));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial.
fn distinct_degree(p: u64, f: &GfPoly) -> Vec<(GfPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = GfPoly::x();
    let mut h = rem(p, &x, &f);
    let mut i = 1usize;
    while f.degree().unwrap_or(0) >= 2 * i {
        h = pow_mod_poly_small(p, &h, p, &f);
        let g = gcd(p, &sub(p, &h, &x), &f);
        if !g.is_one() {
            f = div_rem(p, &f, &g).0;
            h = rem(p, &h, &f);
            out.push((g, i));
        }
        i += 1;
    }
    if f.degree().unwrap_or(0) > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

fn random_below(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> GfPoly {
    GfPoly::from_coeffs(p, (0..deg).map(|_| rng.gen_range(0..p)))
}

/// Equal-degree split (Cantor-Zassenhaus) of a product of distinct irreducibles of degree `d`.
fn equal_degree(p: u64, f: &GfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<GfPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a = random_below(p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mul_mod_poly(p, &t, &t, f);
                acc = add(p, &acc, &t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            sub(p, &pow_mod_poly(p, &a, &e, f), &GfPoly::one())
        };
        let g = gcd(p, &b, f);
        let dg = g.degree().unwrap_or(0);
        if !b.is_zero() && dg > 0 && dg < n {
            let h = div_rem(p, f, &g).0;
            let mut out = equal_degree(p, &g, d, rng);
            out.extend(equal_degree(p, &monic(p, &h).0, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by factor. Constant polynomials give an empty list.
pub fn factor(p: u64, f: &GfPoly) -> Vec<(GfPoly, u32)> {
    assert!(!f.is_zero(), "factor of zero polynomial");
    let f = monic(p, f).0;
    let seed = f.0.iter().fold(p, |h, &c| h.wrapping_mul(1_000_003).wrapping_add(c));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sq, mult) in squarefree_decomposition(p, &f) {
        for (g, d) in distinct_degree(p, &sq) {
            for h in equal_degree(p, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    out
}

pub fn is_irreducible(p: u64, f: &GfPoly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    let fs = factor(p, f);
    fs.len() == 1 && fs[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> GfPoly {
        GfPoly::from_coeffs(p, c.iter().copied())
    }

    fn expand(p: u64, fs: &[(GfPoly, u32)]) -> GfPoly {
        let mut acc = GfPoly::one();
        for (g, e) in fs {
            for _ in 0..*e {
                acc = mul(p, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn gcd_of_square_over_gf2() {
        // (x+1)^2 = x^2 + 1 over GF(2)
        assert_eq!(gcd(2, &poly(2, &[1, 0, 1]), &poly(2, &[1, 1])), poly(2, &[1, 1]));
    }

    #[test]
    fn division_identity() {
        let p = 7;
        let a = poly(p, &[3, 1, 4, 1, 5, 2]);
        let b = poly(p, &[2, 0, 3]);
        let (q, r) = div_rem(p, &a, &b);
        assert_eq!(add(p, &mul(p, &q, &b), &r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn factors_multiply_back() {
        for &(p, ref c) in &[
            (2u64, vec![0u64, 0, 1, 1, 1, 0, 1, 1]),
            (2, vec![1, 0, 0, 0, 1]),
            (3, vec![2, 0, 0, 1, 0, 0, 1]),
            (5, vec![4, 3, 0, 1, 2, 1, 1, 1]),
            (5, vec![0, 0, 0, 0, 0, 1]),
        ] {
            let f = poly(p, c);
            let fs = factor(p, &f);
            assert_eq!(expand(p, &fs), monic(p, &f).0, "p={p} f={f}");
            for (g, _) in &fs {
                assert!(g.is_monic());
            }
        }
    }

    #[test]
    fn irreducibility_by_exhaustion_gf2_degree_4() {
        // Count irreducible monic quartics over GF(2): there are exactly 3.
        let count = (0..16u64)
            .filter(|bits| {
                let f = poly(2, &[bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1, 1]);
                is_irreducible(2, &f)
            })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn irreducible_quadratics_gf5() {
        // (p^2 - p)/2 = 10 monic irreducible quadratics over GF(5)
        let mut n = 0;
        for a in 0..5 {
            for b in 0..5 {
                if is_irreducible(5, &poly(5, &[a, b, 1])) {
                    n += 1;
                }
            }
        }
        assert_eq!(n, 10);
    }

    #[test]
    fn pth_power_squarefree_part() {
        // x^4 + 1 = (x+1)^4 over GF(2)
        let fs = factor(2, &poly(2, &[1, 0, 0, 0, 1]));
        assert_eq!(fs, vec![(poly(2, &[1, 1]), 4)]);
    }
}
