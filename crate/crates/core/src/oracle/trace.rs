use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::state::{young_state, PureState};
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::exact::{choose, BigRational, RationalMatrix};
use crate::rdm::{check_permutation, permute_pattern, RdmMatrix, RdmQuery};

/// Integer numerators of an `n`-site matrix; the denominator is tracked by the caller.
type Counts = Vec<i128>;

/// Partial trace of `|psi><psi|` onto `sites` (0-based, in the given slot
/// order), scaled by `nsq` so all entries are integers.
fn partial_trace_counts(state: &PureState, sites: &[usize]) -> Counts {
    let n = sites.len();
    let dim = 1usize << n;
    let bit_of = |site: usize| state.sites - 1 - site;
    let kept_mask = sites.iter().fold(0u64, |acc, &s| acc | 1 << bit_of(s));

    let mut by_env: HashMap<u64, Vec<(usize, i64)>> = HashMap::new();
    for (&pattern, &c) in &state.coefficients {
        let sub = sites.iter().enumerate().fold(0usize, |acc, (slot, &s)| {
            acc | (((pattern >> bit_of(s)) & 1) as usize) << (n - 1 - slot)
        });
        by_env.entry(pattern & !kept_mask).or_default().push((sub, c));
    }

    let mut counts = vec![0i128; dim * dim];
    for group in by_env.values() {
        for &(a, ca) in group {
            for &(b, cb) in group {
                counts[a * dim + b] += ca as i128 * cb as i128;
            }
        }
    }
    counts
}

/// Sum of `counts` conjugated by every permutation of the `n` slots.
fn symmetrize_counts(counts: &Counts, n: usize) -> Counts {
    let dim = 1usize << n;
    let mut out = vec![0i128; dim * dim];
    for perm in (0..n).permutations(n) {
        let map: Vec<usize> = (0..dim as u64).map(|x| permute_pattern(x, &perm, n) as usize).collect();
        for a in 0..dim {
            for b in 0..dim {
                let v = counts[a * dim + b];
                if v != 0 {
                    out[map[a] * dim + map[b]] += v;
                }
            }
        }
    }
    out
}

fn counts_to_matrix(counts: &Counts, n: usize, denominator: &BigInt) -> Result<RdmMatrix> {
    let dim = 1usize << n;
    let m = RationalMatrix::from_fn(dim, dim, |a, b| {
        BigRational::new(BigInt::from(counts[a * dim + b]), denominator.clone())
    });
    RdmMatrix::from_matrix(n, m)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Brute-force RDM: average of the partial traces over all `C(L, n)` site
/// subsets (kept sites in ascending order), then averaged over all `n!`
/// permutations of the kept slots. Subsets are processed in parallel with
/// exact integer partial sums.
pub fn brute_rdm(query: &RdmQuery, caps: &OracleCaps) -> Result<RdmMatrix> {
    let spec = &query.system;
    if spec.sites > caps.trace_sites {
        return Err(Error::CapExceeded {
            what: "L (brute-force trace)",
            value: spec.sites,
            cap: caps.trace_sites,
        });
    }
    let n = query.subsystem;
    if n > caps.trace_subsystem {
        return Err(Error::CapExceeded {
            what: "n (brute-force trace)",
            value: n,
            cap: caps.trace_subsystem,
        });
    }
    let state = young_state(spec, caps.state_sites)?;
    let dim = 1usize << n;
    let subsets: Vec<Vec<usize>> = (0..spec.sites).combinations(n).collect();
    let summed = subsets.par_iter().map(|s| partial_trace_counts(&state, s)).reduce(
        || vec![0i128; dim * dim],
        |mut acc, part| {
            acc.iter_mut().zip(part).for_each(|(a, p)| *a += p);
            acc
        },
    );
    let symmetric = symmetrize_counts(&summed, n);
    let denominator = BigInt::from(state.nsq) * choose(spec.sites as u64, n as i64) * factorial(n);
    counts_to_matrix(&symmetric, n, &denominator)
}

/// Partial trace onto one fixed list of sites (0-based), averaged over the
/// permutations of the kept slots.
pub fn subset_rdm(state: &PureState, sites: &[usize]) -> Result<RdmMatrix> {
    if sites.is_empty() || sites.iter().any(|&s| s >= state.sites) || !sites.iter().all_unique() {
        return Err(Error::InvalidQuery(format!(
            "{sites:?} is not a nonempty set of distinct sites below {}",
            state.sites
        )));
    }
    let n = sites.len();
    let symmetric = symmetrize_counts(&partial_trace_counts(state, sites), n);
    counts_to_matrix(&symmetric, n, &(BigInt::from(state.nsq) * factorial(n)))
}

/// Partial trace of an `L`-site operator onto `keep` (0-based, in the given
/// slot order), without symmetrization.
pub fn partial_trace(m: &RationalMatrix, sites: usize, keep: &[usize]) -> Result<RdmMatrix> {
    if m.rows() != 1 << sites || !m.is_square() {
        return Err(Error::InvalidQuery(format!("matrix is not {0}x{0}", 1u64 << sites)));
    }
    if keep.is_empty() || keep.iter().any(|&s| s >= sites) || !keep.iter().all_unique() {
        return Err(Error::InvalidQuery(format!(
            "{keep:?} is not a nonempty set of distinct sites below {sites}"
        )));
    }
    let n = keep.len();
    let bit_of = |site: usize| sites - 1 - site;
    let kept_mask = keep.iter().fold(0usize, |acc, &s| acc | 1 << bit_of(s));
    let sub = |x: usize| {
        keep.iter()
            .enumerate()
            .fold(0usize, |acc, (slot, &s)| acc | ((x >> bit_of(s)) & 1) << (n - 1 - slot))
    };
    let mut out = RationalMatrix::zeros(1 << n, 1 << n);
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            if a & !kept_mask == b & !kept_mask && !m[(a, b)].is_zero() {
                out[(sub(a), sub(b))] += &m[(a, b)];
            }
        }
    }
    RdmMatrix::from_matrix(n, out)
}

/// Average of `m` conjugated by every permutation of its sites.
pub fn symmetrize(m: &RdmMatrix) -> RdmMatrix {
    let n = m.subsystem();
    let mut acc = RationalMatrix::zeros(m.dim(), m.dim());
    let mut count = 0i64;
    for perm in (0..n).permutations(n) {
        debug_assert!(check_permutation(&perm, n).is_ok());
        let p = m.permute_sites(&perm).expect("valid permutation");
        acc = acc.add(p.matrix());
        count += 1;
    }
    let scaled = acc.scale(&BigRational::new(1.into(), count.into()));
    RdmMatrix::from_matrix(n, scaled).expect("same shape")
}
