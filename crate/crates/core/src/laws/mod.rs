//! The theorems as executable laws. Each law generates instances from a
//! config and a seed, evaluates its predicate through `classify` or `euclid`,
//! and shrinks the first failing instance before reporting it.
//!
//! Laws over the finite corpus are exhaustive; laws over Euclidean domains
//! sample. A law's stream depends only on the root seed and its id, so laws
//! can be run alone or together with identical results.

mod corpus;
mod domain_laws;
mod finite_laws;
mod runner;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::euclid::sampling::SampleConfig;
use crate::limits::{self, Limits};
use crate::rings::FiniteRing;

pub use corpus::{corpus_modules, corpus_pairs, corpus_rings, smaller_rings, ModuleSpec, PairSpec, CORPUS_RINGS};
pub use runner::{shrink, Fixture, Instance, Tally, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LawId {
    L23Eq,
    L24Eq,
    L25,
    L26,
    L27,
    L28Fwd,
    L210,
    L211,
    L212,
    L213,
    L214,
    L216,
    L2171,
    L2172,
    L2173,
    L218,
    L32,
    L36,
    L37Min,
}

impl LawId {
    pub const ALL: [LawId; 19] = [
        LawId::L23Eq,
        LawId::L24Eq,
        LawId::L25,
        LawId::L26,
        LawId::L27,
        LawId::L28Fwd,
        LawId::L210,
        LawId::L211,
        LawId::L212,
        LawId::L213,
        LawId::L214,
        LawId::L216,
        LawId::L2171,
        LawId::L2172,
        LawId::L2173,
        LawId::L218,
        LawId::L32,
        LawId::L36,
        LawId::L37Min,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::L23Eq => "L2.3eq",
            LawId::L24Eq => "L2.4eq",
            LawId::L25 => "L2.5",
            LawId::L26 => "L2.6",
            LawId::L27 => "L2.7",
            LawId::L28Fwd => "L2.8fwd",
            LawId::L210 => "L2.10",
            LawId::L211 => "L2.11",
            LawId::L212 => "L2.12",
            LawId::L213 => "L2.13",
            LawId::L214 => "L2.14",
            LawId::L216 => "L2.16",
            LawId::L2171 => "L2.17.1",
            LawId::L2172 => "L2.17.2",
            LawId::L2173 => "L2.17.3",
            LawId::L218 => "L2.18",
            LawId::L32 => "L3.2",
            LawId::L36 => "L3.6",
            LawId::L37Min => "L3.7min",
        }
    }

    /// What the law asserts.
    pub fn statement(self) -> &'static str {
        match self {
            LawId::L23Eq => "classical prime by definition, by prime annihilators, by a chain of prime annihilators, and with a prime colon all agree",
            LawId::L24Eq => "prime by definition, by annihilators equal to the prime colon, and by a singleton spectrum with prime colon all agree",
            LawId::L25 => "cl.Hilbert iff every non-maximal classical prime is an intersection of properly larger classical prime submodules",
            LawId::L26 => "any homomorphic image of a cl.Hilbert module is cl.Hilbert; classical primes and maximals above N correspond to those of M/N",
            LawId::L27 => "M is cl.Hilbert iff M/N is for every N iff M/N0 is for every minimal classical prime N0",
            LawId::L28Fwd => "if M1 ⊕ M2 is cl.Hilbert then each M_i is",
            LawId::L210 => "for I ⊆ Ann_R(M), cl.Hilbert over R equals cl.Hilbert over R/I, with classical primes transported",
            LawId::L211 => "M is cl.Hilbert iff M/Nil(R)M is, over R and over R/Nil(R)",
            LawId::L212 => "cl.Hilbert iff Rad_R(M/P) = 0 for each classical prime P iff M/P is cl.Hilbert over R/(P:M)",
            LawId::L213 => "over a domain, a submodule N of a cl.Hilbert module with torsion-free M/N is cl.Hilbert",
            LawId::L214 => "over a domain, the torsion submodule of a cl.Hilbert module and pure submodules of torsion-free ones are cl.Hilbert",
            LawId::L216 => "a classical prime whose annihilator spectrum consists only of maximal ideals is an intersection of maximal submodules",
            LawId::L2171 => "every module over a zero-dimensional ring is cl.Hilbert",
            LawId::L2172 => "every torsion module over a one-dimensional domain is cl.Hilbert",
            LawId::L2173 => "every Artinian module is cl.Hilbert: each annihilator in the spectrum is maximal",
            LawId::L218 => "over a ring with dim(R) = 0 every module is cl.Hilbert and Hilbert",
            LawId::L32 => "over a Dedekind domain every classical prime submodule is an intersection of prime submodules",
            LawId::L36 => "over a Dedekind domain with J(R) = 0 every finitely generated module is cl.Hilbert: Rad(M/P) = 0 for classical primes P",
            LawId::L37Min => "for each minimal prime P0 below (P:M), P is an intersection of maximals over R iff M/P is over R/P0",
        }
    }

    pub fn is_finite_corpus(self) -> bool {
        !matches!(self, LawId::L32 | LawId::L36)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownLaw(s.to_string()))
    }
}

impl Serialize for LawId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct LawConfig {
    /// Largest finite module generated.
    pub max_module: usize,
    /// Samples per domain for the sampled laws.
    pub samples: usize,
    /// Restricts the finite corpus to these rings.
    pub rings: Option<Vec<FiniteRing>>,
    pub limits: Limits,
    pub sampling: SampleConfig,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            max_module: 256,
            samples: 500,
            rings: None,
            limits: Limits::default(),
            sampling: SampleConfig::default(),
        }
    }
}

impl LawConfig {
    pub(crate) fn module_limits(&self) -> Limits {
        Limits { max_module: self.max_module, ..self.limits }
    }

    pub(crate) fn rings(&self) -> Vec<FiniteRing> {
        self.rings.clone().unwrap_or_else(corpus_rings)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawError {
    pub kind: &'static str,
    pub message: String,
}

impl LawError {
    fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NotProper => "NotProper",
            Error::NotProperIdeal => "NotProperIdeal",
            Error::DivisionByZero => "DivisionByZero",
            Error::RingMismatch => "RingMismatch",
            Error::RequiresFactorization(_) => "RequiresFactorization",
            Error::UnknownLaw(_) => "UnknownLaw",
            Error::Parse(_) => "Parse",
        };
        LawError { kind, message: e.to_string() }
    }
}

/// Outcome of one law. Timing is kept out of the serialized form so that
/// reports are reproducible byte for byte.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LawReport {
    pub law_id: LawId,
    pub statement: &'static str,
    pub seed: u64,
    pub instances_generated: u64,
    pub passed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<LawError>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.passed == self.instances_generated
    }

    pub fn is_bound_error(&self) -> bool {
        self.error.as_ref().is_some_and(|e| e.kind == "BoundExceeded")
    }

    fn errored(id: LawId, seed: u64, e: &Error, elapsed: Duration) -> Self {
        LawReport {
            law_id: id,
            statement: id.statement(),
            seed,
            instances_generated: 0,
            passed: 0,
            counterexample: None,
            error: Some(LawError::from_error(e)),
            elapsed,
        }
    }
}

/// The per-law seed: SplitMix64 over the root seed mixed with an FNV-1a hash
/// of the id.
pub fn law_seed(root: u64, id: LawId) -> u64 {
    let h = id.as_str().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    let mut z = root ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_law(id: LawId, cfg: &LawConfig, root_seed: u64) -> Result<LawReport> {
    let start = Instant::now();
    let seed = law_seed(root_seed, id);
    // Every module, even the zero module, has at least one element.
    limits::check("module size", 1, cfg.max_module)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    match id {
        LawId::L23Eq => finite_laws::lemma_2_3(cfg, &mut tally)?,
        LawId::L24Eq => finite_laws::lemma_2_4(cfg, &mut tally)?,
        LawId::L25 => finite_laws::larger_primes(cfg, &mut tally)?,
        LawId::L26 => finite_laws::images(cfg, &mut tally)?,
        LawId::L27 => finite_laws::quotients_and_minimal_primes(cfg, &mut tally)?,
        LawId::L28Fwd => finite_laws::summands(cfg, &mut tally)?,
        LawId::L210 => finite_laws::change_of_rings(cfg, &mut tally)?,
        LawId::L211 => finite_laws::nil_quotients(cfg, &mut tally)?,
        LawId::L212 => finite_laws::quotient_radicals(cfg, &mut tally)?,
        LawId::L213 => {
            finite_laws::torsion_free_quotients(cfg, &mut tally)?;
            domain_laws::torsion_free_quotients(cfg, &mut rng, &mut tally)?;
        }
        LawId::L214 => {
            finite_laws::torsion_and_pure(cfg, &mut tally)?;
            domain_laws::torsion_and_pure(cfg, &mut rng, &mut tally)?;
        }
        LawId::L216 => finite_laws::maximal_spectrum(cfg, &mut tally)?,
        LawId::L2171 => {
            finite_laws::zero_dimensional(cfg, &mut tally)?;
            domain_laws::local_free_controls(&mut tally)?;
        }
        LawId::L2172 => domain_laws::torsion_modules(cfg, &mut rng, &mut tally)?,
        LawId::L2173 => finite_laws::artinian(cfg, &mut tally)?,
        LawId::L218 => {
            finite_laws::every_module(cfg, &mut tally)?;
            domain_laws::local_free_controls(&mut tally)?;
        }
        LawId::L32 => domain_laws::classical_primes_split(cfg, &mut rng, &mut tally)?,
        LawId::L36 => domain_laws::dedekind_radicals(cfg, &mut rng, &mut tally)?,
        LawId::L37Min => finite_laws::minimal_primes_transport(cfg, &mut tally)?,
    }
    Ok(LawReport {
        law_id: id,
        statement: id.statement(),
        seed,
        instances_generated: tally.generated,
        passed: tally.passed,
        counterexample: tally.counterexample,
        error: None,
        elapsed: start.elapsed(),
    })
}

/// Runs a law named by its registry id.
pub fn run_law_named(name: &str, cfg: &LawConfig, root_seed: u64) -> Result<LawReport> {
    run_law(name.parse()?, cfg, root_seed)
}

/// Like [`run_law`], with errors folded into the report.
pub fn run_law_reported(id: LawId, cfg: &LawConfig, root_seed: u64) -> LawReport {
    let start = Instant::now();
    run_law(id, cfg, root_seed).unwrap_or_else(|e| LawReport::errored(id, law_seed(root_seed, id), &e, start.elapsed()))
}

/// Every registered law, in registry order. Laws run on separate threads;
/// each one's stream is fixed by its own seed, so the result does not
/// depend on scheduling.
pub fn run_all(cfg: &LawConfig, root_seed: u64) -> Vec<LawReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> =
            LawId::ALL.iter().map(|&id| s.spawn(move || run_law_reported(id, cfg, root_seed))).collect();
        handles.into_iter().map(|h| h.join().expect("law thread panicked")).collect()
    })
}

pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        assert_eq!(LawId::ALL.len(), 19);
        for id in LawId::ALL {
            assert_eq!(id.as_str().parse::<LawId>().unwrap(), id);
        }
        assert_eq!("L9.9".parse::<LawId>(), Err(Error::UnknownLaw("L9.9".into())));
    }

    #[test]
    fn seeds_differ_per_law_and_root() {
        let mut seeds: Vec<u64> = LawId::ALL.iter().map(|&id| law_seed(42, id)).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), 19);
        assert_ne!(law_seed(1, LawId::L25), law_seed(2, LawId::L25));
        assert_eq!(law_seed(7, LawId::L36), law_seed(7, LawId::L36));
    }

    #[test]
    fn zero_bound_reports_bound_exceeded() {
        let cfg = LawConfig { max_module: 0, ..LawConfig::default() };
        let reports = run_all(&cfg, 1);
        assert_eq!(reports.len(), 19);
        assert!(reports.iter().all(LawReport::is_bound_error));
        assert!(!all_passed(&reports));
    }

    #[test]
    fn report_json_omits_timing() {
        let cfg = LawConfig { rings: Some(vec![crate::rings::parse_ring("Z/4").unwrap()]), ..LawConfig::default() };
        let r = run_law(LawId::L25, &cfg, 3).unwrap();
        assert!(r.ok());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lawId"], "L2.5");
        assert!(v.get("elapsed").is_none());
        assert!(v.get("counterexample").is_none());
    }
}
