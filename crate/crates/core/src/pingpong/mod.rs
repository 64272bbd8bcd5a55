//! Ping-pong certificates for pairs of circle maps, the search for a power
//! `b^k` that plays ping-pong with `a`, and word-level cross-checks.

mod certificate;
mod search;
mod words;

pub use certificate::{verify_certificate, PingPongCertificate, Split, Verdict};
pub use search::{free_power_search, Branch, SearchTrace};
pub use words::{
    exhaustive_normal_form_check, exhaustive_reduced_word_check, find_relation, random_normal_form_check,
    random_reduced_word_check, Letter,
};

use crate::plmap::{PlMap, DEFAULT_Q_MAX};

/// Bounds for [`free_power_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Cap on iterated powers (`v`, `z`, `m`, `N`).
    pub max_power: u64,
    /// Period bound for rotation numbers.
    pub q_max: u32,
    /// Cap on radius halvings.
    pub max_halvings: u32,
    /// Cap on the steepness exponent of step-like maps.
    pub max_steepness: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_power: 1 << 20, q_max: DEFAULT_Q_MAX, max_halvings: 256, max_steepness: 40 }
    }
}

/// Smallest `n <= bound` with `f^n = 1`. For a map with rotation number
/// `p/q` only `n = q` can work.
pub fn torsion_order(f: &PlMap, bound: u64) -> Option<u64> {
    let q_max = bound.min(u32::MAX as u64) as u32;
    let q = f.rotation_number(q_max).ok()?.denominator();
    (q <= bound && f.power(q as i64).is_identity()).then_some(q)
}
