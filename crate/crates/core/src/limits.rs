use serde::{Deserialize, Serialize};

/// Resource caps for the exponential parts of the engine.
///
/// Every cap is checked up front and reported as a cap error instead of
/// letting a computation run away.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest integer accepted by trial-division factorization.
    pub trial_division_cap: u64,
    /// Largest input degree accepted by `factor_q`.
    pub max_factor_degree: usize,
    /// Largest norm degree `deg(f)·[L:Q]` accepted by factorization over an extension.
    pub max_norm_degree: usize,
    /// Largest splitting-field degree that will be constructed.
    pub splitting_cap: usize,
    /// Largest group order for subgroup-lattice enumeration.
    pub max_group_order: usize,
    /// Largest group order for derived series and other cheap group queries.
    pub max_series_order: usize,
    /// Eisenstein shifts are searched in `[-B, B]`.
    pub eisenstein_shift_bound: i64,
    /// Mod-p certificates scan primes `p <= P`.
    pub mod_p_prime_bound: u64,
    /// Element-enumeration budget for finite fields.
    pub element_budget: u128,
    /// Candidate budget for exhaustive trial division over `F_p`.
    pub trial_factor_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            trial_division_cap: 1_000_000_000_000,
            max_factor_degree: 12,
            max_norm_degree: 120,
            splitting_cap: 24,
            max_group_order: 60,
            max_series_order: 720,
            eisenstein_shift_bound: 5,
            mod_p_prime_bound: 31,
            element_budget: 1 << 20,
            trial_factor_budget: 1 << 20,
        }
    }
}

impl Limits {
    /// Caps raised far enough for degree-60 splitting fields.
    pub fn raised() -> Self {
        Limits {
            max_factor_degree: 60,
            max_norm_degree: 400,
            splitting_cap: 120,
            max_group_order: 120,
            ..Limits::default()
        }
    }
}
