//! Enumeration and arithmetic bounds.

/// Environment variable overriding the enumeration bounds.
pub const ENUM_ENV: &str = "COUSIN_MAX_ENUM";

/// Caps that keep malformed or oversized inputs from running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest root system accepted by the root closure.
    pub max_roots: usize,
    /// Largest Weyl group accepted by enumeration.
    pub max_group_order: usize,
    /// Largest number of weights in a truncated character.
    pub max_char_terms: usize,
    /// Largest numerator or denominator, in bits, accepted by valuations.
    pub max_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_roots: 10_000,
            max_group_order: 1_000_000,
            max_char_terms: 2_000_000,
            max_bits: 4096,
        }
    }
}

impl Limits {
    /// Defaults, with the group and character caps replaced by
    /// `COUSIN_MAX_ENUM` when it holds a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(ENUM_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            limits.max_group_order = n;
            limits.max_char_terms = n;
        }
        limits
    }
}
