//! Brute-force ground truth for small systems.
//!
//! Everything here works from an explicit representative eigenstate and
//! exact integer arithmetic; nothing depends on the closed-form element
//! formula in [`crate::rdm`].

mod checks;
mod state;
mod trace;

pub use checks::{
    asymm_pair_matrix, decomposition_rhs, decomposition_term_check, half_identity, sigma_checks, sigma_matrix, Check,
    CheckReport, DecompositionTerm,
};
pub use state::{dicke_state, singlet, young_state, PureState};
pub use trace::{brute_rdm, partial_trace, subset_rdm, symmetrize};

/// Size limits for the exponential-cost oracle routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Explicit state construction.
    pub state_sites: usize,
    /// Subset-averaged partial trace: system size.
    pub trace_sites: usize,
    /// Subset-averaged partial trace: subsystem size.
    pub trace_subsystem: usize,
    /// Whole-system density matrix (L! permutations of a 2^L matrix).
    pub sigma_sites: usize,
    pub decomposition_sites: usize,
    pub decomposition_subsystem: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            state_sites: 16,
            trace_sites: 12,
            trace_subsystem: 6,
            sigma_sites: 6,
            decomposition_sites: 10,
            decomposition_subsystem: 4,
        }
    }
}
