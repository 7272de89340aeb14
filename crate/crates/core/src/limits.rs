//! Enumeration ceilings shared by the finite-side algorithms.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_cells`].
pub const MAX_CELLS_ENV: &str = "MODLATTICE_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring carrier for ideal enumeration.
    pub max_ring: usize,
    /// Largest number of ideals kept during ideal enumeration.
    pub max_ideals: usize,
    /// Largest module for full submodule-lattice enumeration.
    pub max_lattice: usize,
    /// Largest number of submodules kept during lattice enumeration.
    pub max_submodules: usize,
    /// Largest module for single-submodule operations.
    pub max_module: usize,
    /// Largest free cover `|R|^k` that may be materialized.
    pub max_cells: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring: 4096,
            max_ideals: 20_000,
            max_lattice: 512,
            max_submodules: 50_000,
            max_module: 4096,
            max_cells: 1 << 20,
        }
    }
}

impl Limits {
    /// Defaults, with `max_cells` taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_CELLS_ENV) {
            limits.max_cells =
                raw.trim().parse().map_err(|_| Error::Parse(format!("{MAX_CELLS_ENV}={raw} is not a cell count")))?;
        }
        Ok(limits)
    }
}

pub(crate) fn check(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::bound(what, size as u128, bound as u128))
    } else {
        Ok(())
    }
}
