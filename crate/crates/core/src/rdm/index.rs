//! Natural-basis bookkeeping.
//!
//! Row `P` (1-based) of an `n`-site RDM carries the bit pattern of `P - 1`
//! with site 1 in the most significant position. A bit set means the site
//! holds one of the `N` counted (up) spins.

use crate::error::{Error, Result};
use crate::exact::{choose, BigInt};

/// Position of an element inside the block structure: block `k` (up spins
/// in the subsystem) and sub-block `Z` (number of raising/lowering pairs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubBlockIndex {
    pub k: usize,
    pub z: usize,
}

impl SubBlockIndex {
    pub fn new(k: usize, z: usize, subsystem: usize) -> Result<Self> {
        if k > subsystem {
            return Err(Error::out_of_range("k", k, format!("0 <= k <= n = {subsystem}")));
        }
        let z_max = k.min(subsystem - k);
        if z > z_max {
            return Err(Error::out_of_range("Z", z, format!("0 <= Z <= min(k, n-k) = {z_max}")));
        }
        Ok(Self { k, z })
    }

    /// All valid indices for an `n`-site subsystem, sorted by `(k, Z)`.
    pub fn all(subsystem: usize) -> impl Iterator<Item = SubBlockIndex> {
        (0..=subsystem).flat_map(move |k| (0..=k.min(subsystem - k)).map(move |z| SubBlockIndex { k, z }))
    }
}

/// Sub-block of the element between two 0-based bit patterns, or `None`
/// when the polarizations differ (such elements vanish).
pub fn subblock_of_patterns(row: u64, col: u64) -> Option<SubBlockIndex> {
    let k = row.count_ones();
    if k != col.count_ones() {
        return None;
    }
    Some(SubBlockIndex {
        k: k as usize,
        z: (row & !col).count_ones() as usize,
    })
}

/// Sub-block of element `(P, Q)`, both 1-based, of an `n`-site RDM.
pub fn index_to_subblock(p: u64, q: u64, subsystem: usize) -> Result<Option<SubBlockIndex>> {
    if subsystem >= 64 {
        return Err(Error::out_of_range("n", subsystem, "n < 64 for bit-pattern indexing"));
    }
    let dim = 1u64 << subsystem;
    for (what, v) in [("P", p), ("Q", q)] {
        if v == 0 || v > dim {
            return Err(Error::out_of_range(what, v, format!("1 <= {what} <= 2^n = {dim}")));
        }
    }
    Ok(subblock_of_patterns(p - 1, q - 1))
}

/// `dim B_k = C(n, k)`.
pub fn block_dim(subsystem: usize, k: usize) -> Result<BigInt> {
    if k > subsystem {
        return Err(Error::out_of_range("k", k, format!("0 <= k <= n = {subsystem}")));
    }
    Ok(choose(subsystem as u64, k as i64))
}

/// Number of entries in sub-block `G_Z` of block `B_k`:
/// `C(2Z, Z) C(n, 2Z) C(n - 2Z, k - Z)`.
pub fn subblock_count(subsystem: usize, k: usize, z: usize) -> Result<BigInt> {
    SubBlockIndex::new(k, z, subsystem)?;
    let n = subsystem as u64;
    let (k, z) = (k as i64, z as u64);
    Ok(choose(2 * z, z as i64) * choose(n, 2 * z as i64) * choose(n - 2 * z, k - z as i64))
}

/// Bit patterns of `n` sites with exactly `k` bits set, ascending.
pub fn patterns_with_weight(subsystem: usize, k: usize) -> Vec<u64> {
    (0..1u64 << subsystem)
        .filter(|x| x.count_ones() as usize == k)
        .collect()
}
