//! Enumeration bounds shared by the exhaustive searches.

use std::sync::OnceLock;

/// Bounds past which searches refuse with a resource error instead of
/// running (or guessing).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Ground-set size for circuit enumeration and separation search.
    pub enumeration: usize,
    /// Ground-set size for isomorphism testing.
    pub isomorphism: usize,
    /// Ground-set size of the target `N` in minor search.
    pub minor_target: usize,
    /// Largest rank gap `r(M) - r(N)` minor search will attempt.
    pub rank_gap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 20,
            isomorphism: 12,
            minor_target: 12,
            rank_gap: 8,
        }
    }
}

pub const CAPS_ENV: &str = "MATROID_CAPS";

impl Limits {
    /// Defaults, with `MATROID_CAPS` overriding the enumeration bound.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(CAPS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            l.enumeration = n.min(crate::set::MAX_ELEMENTS);
        }
        l
    }
}

static GLOBAL: OnceLock<Limits> = OnceLock::new();

/// Process-wide limits, read once from the environment.
pub fn current() -> Limits {
    *GLOBAL.get_or_init(Limits::from_env)
}
