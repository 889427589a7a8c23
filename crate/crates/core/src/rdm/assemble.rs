use num_traits::Zero;

use super::element::element_table;
use super::index::{patterns_with_weight, subblock_of_patterns, SubBlockIndex};
use super::RdmQuery;
use crate::error::{Error, Result};
use crate::exact::{BigRational, RationalMatrix};

/// Size limits for materializing an RDM.
///
/// `dense` bounds full in-memory assembly (4^n rationals); `stream` bounds
/// entry-by-entry emission, which holds only the `(k, Z)` value table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssemblyCaps {
    pub dense: usize,
    pub stream: usize,
}

impl Default for AssemblyCaps {
    fn default() -> Self {
        Self { dense: 10, stream: 14 }
    }
}

/// The `2^n x 2^n` reduced density matrix in the natural basis.
///
/// Entry `(i, j)` (0-based) couples bit patterns `i` and `j`; see
/// [`crate::rdm::index`] for the site ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdmMatrix {
    subsystem: usize,
    entries: RationalMatrix,
}

impl RdmMatrix {
    /// Wraps a square matrix of side `2^subsystem`.
    pub fn from_matrix(subsystem: usize, entries: RationalMatrix) -> Result<Self> {
        let dim = 1usize << subsystem;
        if entries.rows() != dim || entries.cols() != dim {
            return Err(Error::Integrity(format!(
                "{}x{} matrix is not 2^{subsystem} square",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(Self { subsystem, entries })
    }

    pub fn subsystem(&self) -> usize {
        self.subsystem
    }

    pub fn dim(&self) -> usize {
        1 << self.subsystem
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.entries
    }

    /// Entry at 1-based `(P, Q)`.
    pub fn entry(&self, p: usize, q: usize) -> &BigRational {
        &self.entries[(p - 1, q - 1)]
    }

    pub fn trace(&self) -> BigRational {
        self.entries.trace()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.is_symmetric()
    }

    /// True when every entry between different polarizations is zero.
    pub fn obeys_ice_rule(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            (0..dim).all(|j| (i as u64).count_ones() == (j as u64).count_ones() || self.entries[(i, j)].is_zero())
        })
    }

    /// Nonzero entries as 1-based `(P, Q, value)` in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        let dim = self.dim();
        (0..dim).flat_map(move |i| {
            (0..dim).filter_map(move |j| {
                let v = &self.entries[(i, j)];
                (!v.is_zero()).then_some((i + 1, j + 1, v))
            })
        })
    }

    /// Block `B_k` with its sub-block labels.
    pub fn block(&self, k: usize) -> Result<BlockView> {
        if k > self.subsystem {
            return Err(Error::out_of_range("k", k, format!("0 <= k <= n = {}", self.subsystem)));
        }
        let patterns = patterns_with_weight(self.subsystem, k);
        let rows: Vec<usize> = patterns.iter().map(|&p| p as usize).collect();
        let matrix = self.entries.select(&rows, &rows);
        Ok(BlockView::new(k, patterns, matrix))
    }

    /// Conjugates by a permutation of the site slots: slot `i` of the result
    /// takes slot `perm[i]` of the input, on rows and columns alike.
    pub fn permute_sites(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.subsystem)?;
        let n = self.subsystem;
        let map: Vec<usize> = (0..self.dim() as u64)
            .map(|x| permute_pattern(x, perm, n) as usize)
            .collect();
        let mut out = RationalMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out[(map[i], map[j])] = self.entries[(i, j)].clone();
            }
        }
        Ok(Self {
            subsystem: n,
            entries: out,
        })
    }
}

/// One polarization block `B_k`, rows and columns ordered by ascending bit
/// pattern, with the `Z` label of every position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockView {
    pub k: usize,
    pub patterns: Vec<u64>,
    pub matrix: RationalMatrix,
    z_labels: Vec<usize>,
}

impl BlockView {
    fn new(k: usize, patterns: Vec<u64>, matrix: RationalMatrix) -> Self {
        let z_labels = patterns
            .iter()
            .flat_map(|&a| patterns.iter().map(move |&b| (a & !b).count_ones() as usize))
            .collect();
        Self {
            k,
            patterns,
            matrix,
            z_labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    /// `Z` of position `(i, j)` inside the block.
    pub fn z_at(&self, i: usize, j: usize) -> usize {
        self.z_labels[i * self.dim() + j]
    }
}

/// Slot `i` of the output takes bit `perm[i]` of `pattern`; slot 0 is the
/// most significant of `width` bits.
pub fn permute_pattern(pattern: u64, perm: &[usize], width: usize) -> u64 {
    perm.iter().enumerate().fold(0u64, |acc, (slot, &src)| {
        let bit = (pattern >> (width - 1 - src)) & 1;
        acc | (bit << (width - 1 - slot))
    })
}

pub(crate) fn check_permutation(perm: &[usize], width: usize) -> Result<()> {
    let mut seen = vec![false; width];
    if perm.len() != width
        || !perm
            .iter()
            .all(|&p| p < width && !std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidQuery(format!(
            "{perm:?} is not a permutation of {width} sites"
        )));
    }
    Ok(())
}

fn value_grid(query: &RdmQuery) -> Result<Vec<Vec<BigRational>>> {
    let table = element_table(query)?;
    let mut grid: Vec<Vec<BigRational>> = (0..=query.subsystem).map(|_| Vec::new()).collect();
    for (idx, v) in table {
        grid[idx.k].push(v);
    }
    Ok(grid)
}

/// Assembles the dense RDM from the closed-form sub-block values.
pub fn assemble_matrix(query: &RdmQuery, caps: AssemblyCaps) -> Result<RdmMatrix> {
    let n = query.subsystem;
    if n > caps.dense {
        return Err(Error::CapExceeded {
            what: "n (dense assembly)",
            value: n,
            cap: caps.dense,
        });
    }
    let grid = value_grid(query)?;
    let dim = 1usize << n;
    let mut m = RationalMatrix::zeros(dim, dim);
    for i in 0..dim as u64 {
        for j in 0..dim as u64 {
            if let Some(SubBlockIndex { k, z }) = subblock_of_patterns(i, j) {
                m[(i as usize, j as usize)] = grid[k][z].clone();
            }
        }
    }
    RdmMatrix::from_matrix(n, m)
}

/// Block `B_k` built straight from the element formula, without the full matrix.
pub fn assemble_block(query: &RdmQuery, k: usize) -> Result<BlockView> {
    if k > query.subsystem {
        return Err(Error::out_of_range(
            "k",
            k,
            format!("0 <= k <= n = {}", query.subsystem),
        ));
    }
    let values = value_grid(query)?.swap_remove(k);
    let patterns = patterns_with_weight(query.subsystem, k);
    let matrix = RationalMatrix::from_fn(patterns.len(), patterns.len(), |i, j| {
        values[(patterns[i] & !patterns[j]).count_ones() as usize].clone()
    });
    Ok(BlockView::new(k, patterns, matrix))
}

/// Calls `sink(P, Q, value)` for every nonzero entry, 1-based, in row-major
/// order, without materializing the matrix. Stops at the first sink error.
pub fn for_each_nonzero<E>(
    query: &RdmQuery,
    caps: AssemblyCaps,
    mut sink: impl FnMut(u64, u64, &BigRational) -> Result<(), E>,
) -> Result<Result<(), E>> {
    let n = query.subsystem;
    if n > caps.stream {
        return Err(Error::CapExceeded {
            what: "n (streaming)",
            value: n,
            cap: caps.stream,
        });
    }
    let grid = value_grid(query)?;
    let by_weight: Vec<Vec<u64>> = (0..=n).map(|k| patterns_with_weight(n, k)).collect();
    for row in 0..1u64 << n {
        let k = row.count_ones() as usize;
        if grid[k].iter().all(Zero::is_zero) {
            continue;
        }
        for &col in &by_weight[k] {
            let v = &grid[k][(row & !col).count_ones() as usize];
            if !v.is_zero() {
                if let Err(e) = sink(row + 1, col + 1, v) {
                    return Ok(Err(e));
                }
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::collections::{BTreeSet, HashMap};

    fn assemble(l: usize, n: usize, r: usize, sub: usize) -> RdmMatrix {
        assemble_matrix(&RdmQuery::of(l, n, r, sub).unwrap(), AssemblyCaps::default()).unwrap()
    }

    #[test]
    fn singlet_one_site() {
        let m = assemble(2, 1, 1, 1);
        assert_eq!(m.entry(1, 1), &rational(1, 2));
        assert_eq!(m.entry(2, 2), &rational(1, 2));
        assert!(m.entry(1, 2).is_zero());
    }

    #[test]
    fn half_filled_matrix_values() {
        let m = assemble(12, 6, 3, 6);
        let distinct: BTreeSet<BigRational> = m.matrix().entries().iter().cloned().collect();
        let expected: BTreeSet<BigRational> = [
            (1, 924),
            (1, 154),
            (5, 1848),
            (-1, 924),
            (5, 308),
            (5, 1386),
            (-1, 693),
            (5, 231),
            (0, 1),
        ]
        .into_iter()
        .map(|(a, b)| rational(a, b))
        .collect();
        assert_eq!(distinct, expected);
        // sparsity: C(12,6) nonzero positions minus the 20 anti-diagonal zeros of G_3 in B_3
        assert_eq!(m.matrix().count_nonzero(), 924 - 20);
    }

    #[test]
    fn matrix_invariants() {
        for spec in crate::rdm::SystemSpec::enumerate(9) {
            for sub in 1..=spec.sites.min(5) {
                let q = RdmQuery::new(spec.clone(), sub).unwrap();
                let m = assemble_matrix(&q, AssemblyCaps::default()).unwrap();
                assert!(m.is_symmetric());
                assert!(m.obeys_ice_rule());
                assert_eq!(m.trace(), rational(1, 1), "{spec:?} n={sub}");
            }
        }
    }

    #[test]
    fn subblocks_are_constant() {
        let m = assemble(10, 4, 2, 5);
        let mut seen: HashMap<SubBlockIndex, BigRational> = HashMap::new();
        for i in 0..32u64 {
            for j in 0..32u64 {
                if let Some(idx) = subblock_of_patterns(i, j) {
                    let v = m.matrix()[(i as usize, j as usize)].clone();
                    assert_eq!(seen.entry(idx).or_insert_with(|| v.clone()), &v);
                }
            }
        }
    }

    #[test]
    fn symmetric_sector_entries_depend_only_on_k() {
        let m = assemble(9, 4, 0, 4);
        for k in 0..=4 {
            let b = m.block(k).unwrap();
            let first = &b.matrix[(0, 0)];
            assert!(b.matrix.entries().iter().all(|v| v == first));
        }
    }

    #[test]
    fn invariant_under_site_permutations() {
        let mut rng = StdRng::seed_from_u64(7);
        let m = assemble(12, 5, 2, 6);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..6).collect();
            perm.shuffle(&mut rng);
            assert_eq!(m.permute_sites(&perm).unwrap(), m);
        }
    }

    #[test]
    fn full_system_selects_k_equal_n() {
        // n = L: only the block with k = N carries weight
        let m = assemble(4, 2, 1, 4);
        for k in [0, 1, 3, 4] {
            assert!(m.block(k).unwrap().matrix.entries().iter().all(Zero::is_zero));
        }
        assert_eq!(m.trace(), rational(1, 1));
    }

    #[test]
    fn block_views_agree() {
        let q = RdmQuery::of(8, 3, 1, 4).unwrap();
        let m = assemble_matrix(&q, AssemblyCaps::default()).unwrap();
        for k in 0..=4 {
            let direct = assemble_block(&q, k).unwrap();
            assert_eq!(direct, m.block(k).unwrap());
            for i in 0..direct.dim() {
                for j in 0..direct.dim() {
                    let z = direct.z_at(i, j);
                    assert_eq!(
                        direct.matrix[(i, j)],
                        crate::rdm::g_element(&q, SubBlockIndex { k, z }).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn streaming_matches_dense() {
        let q = RdmQuery::of(10, 5, 2, 5).unwrap();
        let m = assemble_matrix(&q, AssemblyCaps::default()).unwrap();
        let mut streamed = Vec::new();
        for_each_nonzero::<()>(&q, AssemblyCaps::default(), |p, c, v| {
            streamed.push((p as usize, c as usize, v.clone()));
            Ok(())
        })
        .unwrap()
        .unwrap();
        let dense: Vec<_> = m.nonzero_entries().map(|(p, c, v)| (p, c, v.clone())).collect();
        assert_eq!(streamed, dense);
    }

    #[test]
    fn caps_enforced() {
        let q = RdmQuery::of(16, 8, 2, 11).unwrap();
        assert!(matches!(
            assemble_matrix(&q, AssemblyCaps::default()),
            Err(Error::CapExceeded { .. })
        ));
        let q = RdmQuery::of(16, 8, 2, 15).unwrap();
        assert!(for_each_nonzero::<()>(&q, AssemblyCaps::default(), |_, _, _| Ok(())).is_err());
    }

    #[test]
    fn pattern_permutation() {
        // width 3: slot 0 <- bit of site 2
        assert_eq!(permute_pattern(0b001, &[2, 0, 1], 3), 0b100);
        assert_eq!(permute_pattern(0b110, &[0, 1, 2], 3), 0b110);
        assert!(check_permutation(&[0, 0, 1], 3).is_err());
        assert!(check_permutation(&[0, 1], 3).is_err());
    }
}
