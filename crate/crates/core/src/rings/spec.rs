//! Text forms for rings and domains.
//!
//! Finite rings: `Z/6`, `GF(2)[x]/[1,1,1]` (ascending coefficients, so
//! `1 + x + x^2`), and products joined by a standalone `x`:
//! `Z/4 x GF(3)[x]/[0,1]`. Euclidean domains: `Z`, `GF(5)[x]`, `Zloc(3)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::finite::{Component, FiniteRing};
use super::gf;
use crate::error::{Error, Result};

pub fn parse_ring(s: &str) -> Result<FiniteRing> {
    parse_ring_with_cells(s, crate::limits::Limits::default().max_cells)
}

pub fn parse_ring_with_cells(s: &str, max_cells: usize) -> Result<FiniteRing> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let mut comps = Vec::new();
    let mut expect_component = true;
    for tok in parts {
        if expect_component {
            comps.push(parse_component(tok)?);
        } else if tok != "x" {
            return Err(Error::Parse(format!("expected product separator `x`, found `{tok}`")));
        }
        expect_component = !expect_component;
    }
    if comps.is_empty() || expect_component {
        return Err(Error::Parse(format!("incomplete ring spec `{s}`")));
    }
    FiniteRing::with_cell_bound(comps, max_cells)
}

fn parse_component(tok: &str) -> Result<Component> {
    if let Some(n) = tok.strip_prefix("Z/") {
        let n: u64 = n.parse().map_err(|_| Error::Parse(format!("bad modulus in `{tok}`")))?;
        return Component::cyclic(n);
    }
    if let Some(rest) = tok.strip_prefix("GF(") {
        let (p, rest) = rest.split_once(")[x]/").ok_or_else(|| Error::Parse(format!("bad component `{tok}`")))?;
        let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad characteristic in `{tok}`")))?;
        let list = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad coefficient list in `{tok}`")))?;
        let coeffs = list
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient `{c}` in `{tok}`"))))
            .collect::<Result<Vec<_>>>()?;
        return Component::poly_quot(p, &coeffs);
    }
    Err(Error::Parse(format!("unknown ring component `{tok}`")))
}

/// Which computable Euclidean domain a presented module lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    Int,
    PolyOverGf(u64),
    IntLocAt(u64),
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::Int => write!(f, "Z"),
            DomainKind::PolyOverGf(p) => write!(f, "GF({p})[x]"),
            DomainKind::IntLocAt(p) => write!(f, "Zloc({p})"),
        }
    }
}

fn parse_prime(s: &str, ctx: &str) -> Result<u64> {
    let p: u64 = s.parse().map_err(|_| Error::Parse(format!("bad prime in `{ctx}`")))?;
    if !gf::is_prime_u64(p) || p >= gf::MAX_FIELD_PRIME {
        return Err(Error::spec(format!("`{ctx}`: {p} is not a supported prime")));
    }
    Ok(p)
}

impl FromStr for DomainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(DomainKind::Int);
        }
        if let Some(p) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(")[x]")) {
            return Ok(DomainKind::PolyOverGf(parse_prime(p, s)?));
        }
        if let Some(p) = s.strip_prefix("Zloc(").and_then(|r| r.strip_suffix(')')) {
            return Ok(DomainKind::IntLocAt(parse_prime(p, s)?));
        }
        Err(Error::Parse(format!("unknown domain `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        for s in ["Z/6", "GF(2)[x]/[1,1,1]", "Z/4 x GF(3)[x]/[0,1]"] {
            assert_eq!(parse_ring(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_ring("GF(3)[x]/[0,2]").unwrap().to_string(), "GF(3)[x]/[0,1]");
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse_ring("Z/1"), Err(Error::InvalidSpec(_))));
        assert!(matches!(parse_ring("Z/4 x"), Err(Error::Parse(_))));
        assert!(matches!(parse_ring("Z/4 * Z/2"), Err(Error::Parse(_))));
        assert!(matches!(parse_ring("Q"), Err(Error::Parse(_))));
        assert!(matches!(parse_ring("GF(6)[x]/[1,1]"), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn domains() {
        assert_eq!("Z".parse::<DomainKind>().unwrap(), DomainKind::Int);
        assert_eq!("GF(5)[x]".parse::<DomainKind>().unwrap(), DomainKind::PolyOverGf(5));
        assert_eq!("Zloc(3)".parse::<DomainKind>().unwrap(), DomainKind::IntLocAt(3));
        assert!("Zloc(4)".parse::<DomainKind>().is_err());
        for d in [DomainKind::Int, DomainKind::PolyOverGf(5), DomainKind::IntLocAt(3)] {
            assert_eq!(d.to_string().parse::<DomainKind>().unwrap(), d);
        }
    }
}
