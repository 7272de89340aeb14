//! The three computable Euclidean domains: `Z`, `GF(p)[x]`, and `Z` localized
//! at a prime `p`.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

use super::gf::{self, GfPoly};
use super::spec::DomainKind;
use crate::error::{Error, Result};

/// Integers are factored by trial division with primes up to this bound.
pub const INT_FACTOR_BOUND: u64 = 1_000_000;
/// Polynomials above this degree are not factored.
pub const POLY_FACTOR_DEGREE: usize = 64;

/// Largest integer magnitude that is emitted as a JSON number.
const JSON_SAFE_INT: i64 = (1 << 53) - 1;

pub trait EuclideanDomain: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;
    /// Euclidean size; zero is the smallest.
    type Size: Ord;

    fn kind(&self) -> DomainKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a = q*b + r` with `r = 0` or `size(r) < size(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem)>;
    fn size(&self, a: &Self::Elem) -> Self::Size;
    /// Canonical associate `c` and the unit `u` with `c = a*u`. Zero maps to `(0, 1)`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Generator of the Jacobson radical of the domain.
    fn jacobson_generator(&self) -> Self::Elem;
    /// Prime factorization of a nonzero element: normalized primes with
    /// multiplicities, sorted. Units factor as the empty list.
    fn factor(&self, a: &Self::Elem) -> Result<Vec<(Self::Elem, u32)>>;
    /// A random element from a box whose size grows with `bound`.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> Self::Elem;
    fn parse_json(&self, v: &Value) -> Result<Self::Elem>;
    fn to_json(&self, a: &Self::Elem) -> Value;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Unit-normalized greatest common divisor.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !self.is_zero(&b) {
            let r = self.div_rem(&a, &b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        self.normalize(&a).0
    }

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        self.normalize(a).0
    }

    /// Whether `a` divides `b`.
    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).expect("nonzero divisor").1)
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let (q, r) = self.div_rem(a, b).ok()?;
        self.is_zero(&r).then_some(q)
    }

    fn associates(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn is_prime_elem(&self, a: &Self::Elem) -> Result<bool> {
        if self.is_zero(a) || self.is_unit(a) {
            return Ok(false);
        }
        let f = self.factor(a)?;
        Ok(f.len() == 1 && f[0].1 == 1)
    }

    /// Product of the distinct prime divisors of a nonzero element.
    fn radical(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.factor(a)?.iter().fold(self.one(), |acc, (p, _)| self.mul(&acc, p)))
    }

    /// All normalized divisors of a nonzero element, sorted by size then value.
    fn divisors(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>> {
        let mut out = vec![self.one()];
        for (p, e) in self.factor(a)? {
            let mut next = Vec::new();
            for d in &out {
                let mut cur = d.clone();
                next.push(cur.clone());
                for _ in 0..e {
                    cur = self.mul(&cur, &p);
                    next.push(cur.clone());
                }
            }
            out = next;
        }
        let mut out: Vec<_> = out.into_iter().map(|d| self.canonical(&d)).collect();
        out.sort_by(|x, y| self.size(x).cmp(&self.size(y)).then_with(|| x.to_string().cmp(&y.to_string())));
        Ok(out)
    }
}

/// Integers as JSON numbers when exactly representable, decimal strings otherwise.
pub fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) if x.abs() <= JSON_SAFE_INT => Value::from(x),
        _ => Value::String(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::Parse(format!("`{n}` is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

/// Trial-division factorization of a positive integer.
pub fn factor_integer(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    assert!(!n.is_zero());
    let mut m = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= INT_FACTOR_BOUND && BigUint::from(d) * BigUint::from(d) <= m {
        let mut e = 0;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if BigUint::from(d) * BigUint::from(d) > m {
            out.push((m, 1));
        } else {
            return Err(Error::RequiresFactorization(format!(
                "{n} has a cofactor {m} with no prime factor up to {INT_FACTOR_BOUND}"
            )));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;
    type Size = BigUint;

    fn kind(&self) -> DomainKind {
        DomainKind::Int
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.div_mod_floor(b))
    }

    fn size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }

    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-a, -BigInt::one())
        } else {
            (a.clone(), BigInt::one())
        }
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }

    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn jacobson_generator(&self) -> BigInt {
        BigInt::zero()
    }

    fn factor(&self, a: &BigInt) -> Result<Vec<(BigInt, u32)>> {
        if a.is_zero() {
            return Err(Error::RequiresFactorization("zero has no factorization".into()));
        }
        Ok(factor_integer(a.magnitude())?.into_iter().map(|(p, e)| (BigInt::from(p), e)).collect())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> BigInt {
        let b = bound as i64;
        BigInt::from(rng.gen_range(-b..=b))
    }

    fn parse_json(&self, v: &Value) -> Result<BigInt> {
        int_from_json(v)
    }

    fn to_json(&self, a: &BigInt) -> Value {
        int_to_json(a)
    }
}

/// `GF(p)[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfPolys {
    p: u64,
}

impl GfPolys {
    pub fn new(p: u64) -> Result<Self> {
        if !gf::is_prime_u64(p) || p >= gf::MAX_FIELD_PRIME {
            return Err(Error::spec(format!("GF({p})[x]: {p} is not a supported prime")));
        }
        Ok(GfPolys { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn poly(&self, coeffs: &[i64]) -> GfPoly {
        GfPoly::from_signed(self.p, coeffs.iter().copied())
    }
}

impl EuclideanDomain for GfPolys {
    type Elem = GfPoly;
    type Size = Option<usize>;

    fn kind(&self) -> DomainKind {
        DomainKind::PolyOverGf(self.p)
    }

    fn zero(&self) -> GfPoly {
        GfPoly::zero()
    }

    fn one(&self) -> GfPoly {
        GfPoly::one()
    }

    fn is_zero(&self, a: &GfPoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &GfPoly, b: &GfPoly) -> GfPoly {
        gf::add(self.p, a, b)
    }

    fn neg(&self, a: &GfPoly) -> GfPoly {
        gf::neg(self.p, a)
    }

    fn mul(&self, a: &GfPoly, b: &GfPoly) -> GfPoly {
        gf::mul(self.p, a, b)
    }

    fn div_rem(&self, a: &GfPoly, b: &GfPoly) -> Result<(GfPoly, GfPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(gf::div_rem(self.p, a, b))
    }

    fn size(&self, a: &GfPoly) -> Option<usize> {
        a.degree()
    }

    fn normalize(&self, a: &GfPoly) -> (GfPoly, GfPoly) {
        let (m, u) = gf::monic(self.p, a);
        (m, GfPoly::constant(self.p, u))
    }

    fn is_unit(&self, a: &GfPoly) -> bool {
        a.degree() == Some(0)
    }

    fn from_i64(&self, n: i64) -> GfPoly {
        GfPoly::from_signed(self.p, [n])
    }

    fn jacobson_generator(&self) -> GfPoly {
        GfPoly::zero()
    }

    fn factor(&self, a: &GfPoly) -> Result<Vec<(GfPoly, u32)>> {
        match a.degree() {
            None => Err(Error::RequiresFactorization("zero has no factorization".into())),
            Some(d) if d > POLY_FACTOR_DEGREE => Err(Error::RequiresFactorization(format!(
                "degree {d} exceeds the factorization bound {POLY_FACTOR_DEGREE}"
            ))),
            Some(_) => Ok(gf::factor(self.p, a)),
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> GfPoly {
        let deg = rng.gen_range(0..=bound as usize);
        GfPoly::from_coeffs(self.p, (0..=deg).map(|_| rng.gen_range(0..self.p)))
    }

    fn parse_json(&self, v: &Value) -> Result<GfPoly> {
        match v {
            Value::Array(cs) => {
                let cs = cs
                    .iter()
                    .map(|c| int_from_json(c).map(|n| n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GfPoly::from_coeffs(self.p, cs))
            }
            other => Ok(GfPoly::from_coeffs(
                self.p,
                [int_from_json(other)?.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()],
            )),
        }
    }

    fn to_json(&self, a: &GfPoly) -> Value {
        Value::from(a.coeffs().to_vec())
    }
}

/// `Z` localized at the prime ideal `(p)`: fractions `a/b` with `p` not dividing `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIntegers {
    p: u64,
    p_big: BigInt,
}

impl LocalIntegers {
    pub fn new(p: u64) -> Result<Self> {
        if !gf::is_prime_u64(p) || p >= gf::MAX_FIELD_PRIME {
            return Err(Error::spec(format!("Zloc({p}): {p} is not a supported prime")));
        }
        Ok(LocalIntegers { p, p_big: BigInt::from(p) })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The fraction `a/b`, provided it lies in the local ring.
    pub fn frac(&self, a: i64, b: i64) -> Result<BigRational> {
        self.check(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    fn check(&self, q: BigRational) -> Result<BigRational> {
        if (q.denom() % &self.p_big).is_zero() {
            return Err(Error::Parse(format!("{q} is not in Zloc({})", self.p)));
        }
        Ok(q)
    }

    /// `p`-adic valuation of a nonzero element.
    pub fn valuation(&self, a: &BigRational) -> u32 {
        let mut n = a.numer().abs();
        let mut v = 0;
        while !n.is_zero() && (&n % &self.p_big).is_zero() {
            n /= &self.p_big;
            v += 1;
        }
        v
    }
}

impl EuclideanDomain for LocalIntegers {
    type Elem = BigRational;
    type Size = Option<u32>;

    fn kind(&self) -> DomainKind {
        DomainKind::IntLocAt(self.p)
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn div_rem(&self, a: &BigRational, b: &BigRational) -> Result<(BigRational, BigRational)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Ok((self.zero(), self.zero()));
        }
        if self.valuation(a) >= self.valuation(b) {
            Ok((a / b, self.zero()))
        } else {
            Ok((self.zero(), a.clone()))
        }
    }

    fn size(&self, a: &BigRational) -> Option<u32> {
        (!a.is_zero()).then(|| self.valuation(a))
    }

    fn normalize(&self, a: &BigRational) -> (BigRational, BigRational) {
        if a.is_zero() {
            return (self.zero(), self.one());
        }
        let c = BigRational::from_integer(self.p_big.pow(self.valuation(a)));
        let u = &c / a;
        (c, u)
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero() && self.valuation(a) == 0
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn jacobson_generator(&self) -> BigRational {
        BigRational::from_integer(self.p_big.clone())
    }

    fn factor(&self, a: &BigRational) -> Result<Vec<(BigRational, u32)>> {
        if a.is_zero() {
            return Err(Error::RequiresFactorization("zero has no factorization".into()));
        }
        let v = self.valuation(a);
        Ok(if v == 0 { vec![] } else { vec![(self.jacobson_generator(), v)] })
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> BigRational {
        let b = bound.max(1) as i64;
        let num = rng.gen_range(-b..=b);
        let den = loop {
            let d = rng.gen_range(1..=b);
            if d % self.p as i64 != 0 {
                break d;
            }
        };
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_json(&self, v: &Value) -> Result<BigRational> {
        let q = match v {
            Value::String(s) if s.contains('/') => {
                let (a, b) = s.split_once('/').unwrap();
                let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
                let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(a, b)
            }
            other => BigRational::from_integer(int_from_json(other)?),
        };
        self.check(q)
    }

    fn to_json(&self, a: &BigRational) -> Value {
        if a.denom().is_one() {
            int_to_json(a.numer())
        } else {
            Value::String(a.to_string())
        }
    }
}
