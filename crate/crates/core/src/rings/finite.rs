//! Finite commutative rings presented as products of `Z/n` and `GF(p)[x]/(f)`.
//!
//! Every element is identified with an index into the carrier. The index is
//! the mixed-radix value of the element's digit string (component by
//! component, polynomial coefficients in ascending order), so index order is
//! the lexicographic order on coordinates.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::{self, GfPoly};
use crate::error::{Error, Result};
use crate::limits;

/// Rings at most this large cache full addition and multiplication tables.
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    /// `Z/n`.
    CyclicInt { n: u64 },
    /// `GF(p)[x]/(f)`, with `f` stored monic.
    PolyQuot { p: u64, modulus: GfPoly },
}

impl Component {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::spec(format!("Z/{n}: modulus must be at least 2")));
        }
        if n >= gf::MAX_FIELD_PRIME {
            return Err(Error::spec(format!("Z/{n}: modulus too large")));
        }
        Ok(Component::CyclicInt { n })
    }

    pub fn poly_quot(p: u64, coeffs: &[u64]) -> Result<Self> {
        if !gf::is_prime_u64(p) || p >= gf::MAX_FIELD_PRIME {
            return Err(Error::spec(format!("GF({p}): characteristic must be a prime below 2^31")));
        }
        let f = GfPoly::from_coeffs(p, coeffs.iter().copied());
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::spec(format!("GF({p})[x]/{coeffs:?}: modulus must have degree >= 1")));
        }
        Ok(Component::PolyQuot { p, modulus: gf::monic(p, &f).0 })
    }

    /// Number of digits an element of this component occupies.
    fn width(&self) -> usize {
        match self {
            Component::CyclicInt { .. } => 1,
            Component::PolyQuot { modulus, .. } => modulus.degree().unwrap(),
        }
    }

    fn radix(&self) -> u64 {
        match self {
            Component::CyclicInt { n } => *n,
            Component::PolyQuot { p, .. } => *p,
        }
    }

    pub fn size(&self) -> u128 {
        (self.radix() as u128).pow(self.width() as u32)
    }

    fn add(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let m = self.radix();
        for i in 0..a.len() {
            out[i] = (a[i] + b[i]) % m;
        }
    }

    fn neg(&self, a: &[u64], out: &mut [u64]) {
        let m = self.radix();
        for i in 0..a.len() {
            out[i] = (m - a[i]) % m;
        }
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        match self {
            Component::CyclicInt { n } => out[0] = gf::mul_mod(a[0], b[0], *n),
            Component::PolyQuot { p, modulus } => {
                let x = GfPoly::from_coeffs(*p, a.iter().copied());
                let y = GfPoly::from_coeffs(*p, b.iter().copied());
                let z = gf::mul_mod_poly(*p, &x, &y, modulus);
                out.copy_from_slice(&z.padded(a.len()));
            }
        }
    }

    fn one(&self, out: &mut [u64]) {
        out.fill(0);
        out[0] = 1;
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::CyclicInt { n } => write!(f, "Z/{n}"),
            Component::PolyQuot { p, modulus } => {
                let cs: Vec<String> = modulus.coeffs().iter().map(u64::to_string).collect();
                write!(f, "GF({p})[x]/[{}]", cs.join(","))
            }
        }
    }
}

/// Index of an element of a [`FiniteRing`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem(pub u32);

impl RingElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One coordinate of a ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coord {
    Residue(u64),
    Coeffs(Vec<u64>),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

#[derive(Debug)]
struct RingInner {
    components: Vec<Component>,
    radices: Vec<u64>,
    size: usize,
    tables: Option<Tables>,
}

/// A finite commutative ring. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FiniteRing(Arc<RingInner>);

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.components == other.0.components
    }
}

impl Eq for FiniteRing {}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.components.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FiniteRing {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        Self::with_cell_bound(components, limits::Limits::default().max_cells)
    }

    pub fn with_cell_bound(components: Vec<Component>, max_cells: usize) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::spec("ring needs at least one component"));
        }
        let size = components.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.size()));
        let size = match size {
            Some(s) if s <= max_cells as u128 => s as usize,
            Some(s) => return Err(Error::bound("ring carrier", s, max_cells as u128)),
            None => return Err(Error::bound("ring carrier", u128::MAX, max_cells as u128)),
        };
        let radices = components.iter().flat_map(|c| std::iter::repeat_n(c.radix(), c.width())).collect();
        let mut inner = RingInner { components, radices, size, tables: None };
        if size <= TABLE_LIMIT {
            let ring = FiniteRing(Arc::new(inner));
            let tables = ring.build_tables();
            inner = Arc::try_unwrap(ring.0).expect("fresh ring has one owner");
            inner.tables = Some(tables);
        }
        Ok(FiniteRing(Arc::new(inner)))
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![Component::cyclic(n)?])
    }

    fn build_tables(&self) -> Tables {
        let n = self.size();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let (x, y) = (RingElem(a as u32), RingElem(b as u32));
                let s = self.add_slow(x, y).0;
                let m = self.mul_slow(x, y).0;
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = m;
                mul[b * n + a] = m;
            }
        }
        Tables { add, mul }
    }

    pub fn components(&self) -> &[Component] {
        &self.0.components
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.0.size as u32).map(RingElem)
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        let mut d = vec![0u64; self.0.radices.len()];
        let mut off = 0;
        for c in &self.0.components {
            let w = c.width();
            c.one(&mut d[off..off + w]);
            off += w;
        }
        self.encode(&d)
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, n: i128) -> RingElem {
        let d: Vec<u64> = self
            .0
            .components
            .iter()
            .flat_map(|c| {
                let m = c.radix() as i128;
                let mut v = vec![0u64; c.width()];
                v[0] = n.rem_euclid(m) as u64;
                v
            })
            .collect();
        self.encode(&d)
    }

    fn decode(&self, e: RingElem) -> Vec<u64> {
        let mut idx = e.0 as u64;
        let mut d = vec![0u64; self.0.radices.len()];
        for (slot, &r) in d.iter_mut().zip(&self.0.radices).rev() {
            *slot = idx % r;
            idx /= r;
        }
        d
    }

    fn encode(&self, d: &[u64]) -> RingElem {
        let idx = d.iter().zip(&self.0.radices).fold(0u64, |acc, (&x, &r)| acc * r + x);
        RingElem(idx as u32)
    }

    fn zip_components(&self, a: &[u64], b: &[u64], op: impl Fn(&Component, &[u64], &[u64], &mut [u64])) -> Vec<u64> {
        let mut out = vec![0u64; a.len()];
        let mut off = 0;
        for c in &self.0.components {
            let w = c.width();
            op(c, &a[off..off + w], &b[off..off + w], &mut out[off..off + w]);
            off += w;
        }
        out
    }

    fn add_slow(&self, a: RingElem, b: RingElem) -> RingElem {
        let d = self.zip_components(&self.decode(a), &self.decode(b), |c, x, y, o| c.add(x, y, o));
        self.encode(&d)
    }

    fn mul_slow(&self, a: RingElem, b: RingElem) -> RingElem {
        let d = self.zip_components(&self.decode(a), &self.decode(b), |c, x, y, o| c.mul(x, y, o));
        self.encode(&d)
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.0.tables {
            Some(t) => RingElem(t.add[a.index() * self.0.size + b.index()]),
            None => self.add_slow(a, b),
        }
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.0.tables {
            Some(t) => RingElem(t.mul[a.index() * self.0.size + b.index()]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let x = self.decode(a);
        let d = self.zip_components(&x, &x, |c, x, _, o| c.neg(x, o));
        self.encode(&d)
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: RingElem, e: u32) -> RingElem {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: RingElem) -> Option<RingElem> {
        let one = self.one();
        self.elements().find(|&b| self.mul(a, b) == one)
    }

    pub fn is_field(&self) -> bool {
        self.elements().skip(1).all(|a| self.inverse(a).is_some())
    }

    pub fn coords(&self, e: RingElem) -> Vec<Coord> {
        let d = self.decode(e);
        let mut off = 0;
        self.0
            .components
            .iter()
            .map(|c| {
                let w = c.width();
                let coord = match c {
                    Component::CyclicInt { .. } => Coord::Residue(d[off]),
                    Component::PolyQuot { .. } => Coord::Coeffs(d[off..off + w].to_vec()),
                };
                off += w;
                coord
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[Coord]) -> Result<RingElem> {
        if coords.len() != self.0.components.len() {
            return Err(Error::Parse(format!(
                "element has {} coordinates, ring {self} has {} components",
                coords.len(),
                self.0.components.len()
            )));
        }
        let mut d = Vec::with_capacity(self.0.radices.len());
        for (c, coord) in self.0.components.iter().zip(coords) {
            match (c, coord) {
                (Component::CyclicInt { n }, Coord::Residue(r)) => d.push(r % n),
                (Component::PolyQuot { p, modulus }, Coord::Coeffs(cs)) => {
                    let f = gf::rem(*p, &GfPoly::from_coeffs(*p, cs.iter().copied()), modulus);
                    d.extend(f.padded(c.width()));
                }
                (Component::PolyQuot { p, modulus }, Coord::Residue(r)) => {
                    let f = gf::rem(*p, &GfPoly::constant(*p, *r), modulus);
                    d.extend(f.padded(c.width()));
                }
                (Component::CyclicInt { .. }, Coord::Coeffs(_)) => {
                    return Err(Error::Parse(format!("coefficient list given for cyclic component {c}")));
                }
            }
        }
        Ok(self.encode(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FiniteRing {
        FiniteRing::new(vec![Component::poly_quot(2, &[1, 1, 1]).unwrap()]).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(FiniteRing::cyclic(6).unwrap().size(), 6);
        let r = FiniteRing::new(vec![Component::cyclic(4).unwrap(), Component::cyclic(9).unwrap()]).unwrap();
        assert_eq!(r.size(), 36);
        assert_eq!(gf4().size(), 4);
    }

    #[test]
    fn gf4_is_a_field_by_exhaustion() {
        let r = gf4();
        for a in r.elements().skip(1) {
            assert!(r.elements().any(|b| r.mul(a, b) == r.one()));
        }
        assert!(r.is_field());
        assert!(!FiniteRing::cyclic(4).unwrap().is_field());
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(Component::cyclic(1), Err(Error::InvalidSpec(_))));
        assert!(matches!(Component::poly_quot(4, &[1, 1]), Err(Error::InvalidSpec(_))));
        assert!(matches!(Component::poly_quot(3, &[2]), Err(Error::InvalidSpec(_))));
        assert!(matches!(Component::poly_quot(3, &[1, 0, 3]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn index_order_is_lexicographic_on_coords() {
        let r =
            FiniteRing::new(vec![Component::cyclic(2).unwrap(), Component::poly_quot(3, &[0, 0, 1]).unwrap()]).unwrap();
        let coords: Vec<_> = r
            .elements()
            .map(|e| match &r.coords(e)[..] {
                [Coord::Residue(a), Coord::Coeffs(c)] => (*a, c.clone()),
                _ => unreachable!(),
            })
            .collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
        for e in r.elements() {
            assert_eq!(r.from_coords(&r.coords(e)).unwrap(), e);
        }
    }

    #[test]
    fn slow_and_table_paths_agree() {
        let r = FiniteRing::new(vec![Component::cyclic(12).unwrap(), Component::poly_quot(2, &[0, 0, 1]).unwrap()])
            .unwrap();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(r.add(a, b), r.add_slow(a, b));
                assert_eq!(r.mul(a, b), r.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn ring_axioms_hold_in_product() {
        let r =
            FiniteRing::new(vec![Component::cyclic(4).unwrap(), Component::poly_quot(2, &[1, 1, 1]).unwrap()]).unwrap();
        let one = r.one();
        for a in r.elements() {
            assert_eq!(r.mul(a, one), a);
            assert_eq!(r.add(a, r.neg(a)), r.zero());
            for b in r.elements() {
                assert_eq!(r.mul(a, b), r.mul(b, a));
                for c in r.elements().step_by(3) {
                    assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    assert_eq!(r.mul(a, r.mul(b, c)), r.mul(r.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn from_int_wraps() {
        let r = FiniteRing::cyclic(6).unwrap();
        assert_eq!(r.from_int(-1), RingElem(5));
        assert_eq!(r.from_int(13), RingElem(1));
    }
}
