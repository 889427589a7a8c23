//! Closed-form reduced density matrices.
//!
//! For an `(L, N, r)` eigenstate class every natural-basis element of the
//! `n`-site RDM is fixed by two integers: the block `k` (up spins in the
//! subsystem) and the number `Z` of raising/lowering pairs. Elements with
//! different polarization on the two sides vanish.

mod assemble;
mod element;
pub mod index;
mod system;
mod thermo;

pub(crate) use assemble::check_permutation;
pub use assemble::{
    assemble_block, assemble_matrix, for_each_nonzero, permute_pattern, AssemblyCaps, BlockView, RdmMatrix,
};
pub use element::{element_table, g_element};
pub use index::{block_dim, index_to_subblock, subblock_count, SubBlockIndex};
pub use system::{energy, validate, yt_degeneracy, RdmQuery, SystemSpec};
pub use thermo::{thermo_eta, thermo_g, ThermoParams};
