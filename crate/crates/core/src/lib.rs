//! Exact reduced density matrices of permutation-invariant spin-1/2 systems.
//!
//! A chain of `L` spins in the eigenstate class `(L, N, r)` (fixed number
//! `N` of up spins, two-row Young tableau `{L-r, r}`) is described by the
//! uniform mixture over that irreducible representation. This crate gives
//! its `n`-site reduced density matrix in closed form, with the complete
//! spectrum, in exact rational arithmetic:
//!
//! - [`exact`]: big rationals, binomials, rational matrices, exact rank.
//! - [`rdm`]: element formula, natural-basis indexing, block bookkeeping,
//!   large-`L` limit.
//! - [`spectrum`]: eigenvalues and multiplicities per block, entropy, purity.
//! - [`oracle`]: brute-force partial traces of explicit states, used as
//!   ground truth at small sizes.
//! - [`verify`]: grid suites comparing the closed form with the oracle.
//! - [`emit`]: the CSV/JSON documents produced by the command-line tool.

pub mod emit;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod rdm;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
