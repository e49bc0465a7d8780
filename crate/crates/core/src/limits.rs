use crate::error::{Error, Result};

/// Bounds that keep derived constructions at desk scale.
///
/// `from_env` reads `KANEXT_MAX_MORPHISMS`, `KANEXT_MAX_SEARCH` and
/// `KANEXT_MAX_AMBIENT`; unset or unparsable variables keep the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimits {
    /// Largest number of morphisms a derived category may have.
    pub max_morphisms: usize,
    /// Largest raw search space for brute-force enumerations.
    pub max_search: u128,
    /// Largest ambient dimension of a direct sum built by a weighted colimit.
    pub max_ambient: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        SizeLimits {
            max_morphisms: 10_000,
            max_search: 10_000_000,
            max_ambient: 4_096,
        }
    }
}

impl SizeLimits {
    pub fn from_env() -> Self {
        let mut limits = SizeLimits::default();
        if let Some(v) = read_var("KANEXT_MAX_MORPHISMS") {
            limits.max_morphisms = v as usize;
        }
        if let Some(v) = read_var("KANEXT_MAX_SEARCH") {
            limits.max_search = v;
        }
        if let Some(v) = read_var("KANEXT_MAX_AMBIENT") {
            limits.max_ambient = v as usize;
        }
        limits
    }

    pub(crate) fn check_morphisms(&self, what: &'static str, size: usize) -> Result<()> {
        guard(what, size as u128, self.max_morphisms as u128)
    }

    pub(crate) fn check_search(&self, what: &'static str, size: u128) -> Result<()> {
        guard(what, size, self.max_search)
    }

    pub(crate) fn check_ambient(&self, what: &'static str, size: usize) -> Result<()> {
        guard(what, size as u128, self.max_ambient as u128)
    }
}

fn guard(what: &'static str, size: u128, bound: u128) -> Result<()> {
    if size > bound {
        Err(Error::SizeGuard { what, size, bound })
    } else {
        Ok(())
    }
}

fn read_var(name: &str) -> Option<u128> {
    std::env::var(name).ok()?.trim().parse().ok()
}
