use std::collections::BTreeMap;

use num_traits::Zero;

use super::{RdmQuery, SubBlockIndex};
use crate::error::Result;
use crate::exact::{choose, BigInt, BigRational};

/// Common value `g_Z` of every element in sub-block `G_Z` of block `B_k`:
///
/// ```text
/// g_Z = C(L-n, N-k) / C(L, N)
///       * sum_{m=0..Z} (-1)^m C(N-r, Z-m) C(L-N-r, Z-m) C(r, m)
///       / (C(N, Z) C(L-N, Z))
/// ```
pub fn g_element(query: &RdmQuery, idx: SubBlockIndex) -> Result<BigRational> {
    let idx = SubBlockIndex::new(idx.k, idx.z, query.subsystem)?;
    let sys = &query.system;
    let (l, n_up, r) = (sys.sites as u64, sys.up_spins as u64, sys.singlet_pairs as u64);
    let n_down = l - n_up;
    let (k, z) = (idx.k as i64, idx.z as i64);

    // Zero prefactor means the block cannot be populated; the Z-dependent
    // denominator may also vanish there, so return before dividing.
    let prefactor = choose(l - query.subsystem as u64, n_up as i64 - k);
    if prefactor.is_zero() {
        return Ok(BigRational::zero());
    }

    let pair_sum: BigInt = (0..=z)
        .map(|m| {
            let term = choose(n_up - r, z - m) * choose(n_down - r, z - m) * choose(r, m);
            if m % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let denom = choose(l, n_up as i64) * choose(n_up, z) * choose(n_down, z);
    Ok(BigRational::new(prefactor * pair_sum, denom))
}

/// `g_Z` for every `(k, Z)` of the query, keyed and ordered by `(k, Z)`.
pub fn element_table(query: &RdmQuery) -> Result<BTreeMap<SubBlockIndex, BigRational>> {
    SubBlockIndex::all(query.subsystem)
        .map(|idx| Ok((idx, g_element(query, idx)?)))
        .collect()
}
