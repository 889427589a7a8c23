//! Verification suites over parameter grids.
//!
//! Each suite returns a [`CheckReport`]; the command-line `verify`
//! subcommand and the test suites share these entry points.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exact::{choose, rational_rank, to_wire, BigInt, BigRational};
use crate::oracle::{brute_rdm, decomposition_term_check, sigma_checks, Check, CheckReport, OracleCaps};
use crate::rdm::{assemble_block, assemble_matrix, AssemblyCaps, RdmQuery, SystemSpec};
use crate::spectrum::{full_spectrum, weighted_sum, AlphaTable};

fn label(query: &RdmQuery) -> String {
    let s = &query.system;
    format!(
        "L={},N={},r={},n={}",
        s.sites, s.up_spins, s.singlet_pairs, query.subsystem
    )
}

fn spec_label(s: &SystemSpec) -> String {
    format!("L={},N={},r={}", s.sites, s.up_spins, s.singlet_pairs)
}

/// Tally of one property over many instances, keeping the first failure.
struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn into_check(self, name: &str) -> Check {
        Check {
            name: name.into(),
            pass: self.failure.is_none(),
            detail: match self.failure {
                None => format!("{} cases", self.cases),
                Some(f) => format!("{} cases; first failure: {f}", self.cases),
            },
        }
    }
}

/// Integer identities of the eigenvalue coefficients for every `n <= max_n`,
/// `k <= n`, `s <= min(k, n-k)`:
///
/// - `alpha_0 = 1`
/// - `sum_Z alpha_Z = C(n, k)` for `s = 0`, and `0` for `s > 0`
/// - `sum_Z alpha_Z C(Z, p) = 0` for `p < s`
/// - `alpha_k = (-1)^s C(n-k-s, k-s)` when `k <= n - k`
pub fn alpha_properties(max_n: usize) -> Result<CheckReport> {
    let mut leading = Tally::new();
    let mut sum_zero_irrep = Tally::new();
    let mut sum_other = Tally::new();
    let mut moments = Tally::new();
    let mut last = Tally::new();
    for n in 0..=max_n {
        for k in 0..=n {
            let table = AlphaTable::new(n, k)?;
            for (s, row) in table.coefficients.iter().enumerate() {
                let at = || format!("n={n}, k={k}, s={s}");
                leading.record(row[0].is_one(), at);
                let sum: BigInt = row.iter().sum();
                if s == 0 {
                    sum_zero_irrep.record(sum == choose(n as u64, k as i64), || format!("{} sums to {sum}", at()));
                } else {
                    sum_other.record(sum.is_zero(), || format!("{} sums to {sum}", at()));
                }
                for p in 0..s {
                    let moment: BigInt = row
                        .iter()
                        .enumerate()
                        .map(|(z, a)| a * choose(z as u64, p as i64))
                        .sum();
                    moments.record(moment.is_zero(), || format!("{}, p={p}: {moment}", at()));
                }
                if k <= n - k {
                    let expected = choose((n - k - s) as u64, (k - s) as i64);
                    let expected = if s % 2 == 1 { -expected } else { expected };
                    last.record(row[k] == expected, || format!("{}: {} vs {expected}", at(), row[k]));
                }
            }
        }
    }
    let mut report = CheckReport::default();
    report.checks.push(leading.into_check("alpha_leading_is_one"));
    report
        .checks
        .push(sum_zero_irrep.into_check("alpha_sum_s0_is_block_dim"));
    report.checks.push(sum_other.into_check("alpha_sum_vanishes"));
    report.checks.push(moments.into_check("alpha_moments_vanish"));
    report.checks.push(last.into_check("alpha_last_coefficient"));
    Ok(report)
}

/// Closed-form assembly against the brute-force partial trace.
pub fn equivalence_check(query: &RdmQuery, oracle: &OracleCaps, assembly: AssemblyCaps) -> Result<Check> {
    let closed = assemble_matrix(query, assembly)?;
    let brute = brute_rdm(query, oracle)?;
    let mismatch = closed
        .matrix()
        .entries()
        .iter()
        .zip(brute.matrix().entries())
        .position(|(a, b)| a != b);
    let dim = closed.dim();
    Ok(Check {
        name: format!("equivalence/{}", label(query)),
        pass: mismatch.is_none(),
        detail: match mismatch {
            None => format!("{dim}x{dim} entries equal"),
            Some(i) => format!(
                "first difference at (P={}, Q={}): closed form {} vs brute force {}",
                i / dim + 1,
                i % dim + 1,
                to_wire(closed.entry(i / dim + 1, i % dim + 1)),
                to_wire(brute.entry(i / dim + 1, i % dim + 1))
            ),
        },
    })
}

/// Eigenvalues of one block grouped by value: irreps whose eigenvalues
/// coincide share one eigenspace, so the rank test applies per distinct value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenGroup {
    pub eigenvalue: BigRational,
    pub irreps: Vec<usize>,
    /// Sum of the irrep dimensions in the group.
    pub multiplicity: BigInt,
    /// `dim B_k - rank(B_k - lambda I)`, computed exactly.
    pub nullity: usize,
}

/// Exact-rank audit of block `k`.
pub fn block_eigen_groups(query: &RdmQuery, k: usize) -> Result<Vec<EigenGroup>> {
    let spectrum = full_spectrum(query)?;
    let block = assemble_block(query, k)?;
    let mut groups: BTreeMap<BigRational, (Vec<usize>, BigInt)> = BTreeMap::new();
    for e in spectrum.iter().filter(|e| e.k == k) {
        let g = groups
            .entry(e.eigenvalue.clone())
            .or_insert_with(|| (Vec::new(), BigInt::zero()));
        g.0.push(e.s);
        g.1 += &e.multiplicity;
    }
    Ok(groups
        .into_iter()
        .map(|(eigenvalue, (irreps, multiplicity))| {
            let nullity = block.dim() - rational_rank(&block.matrix.shift_diagonal(&eigenvalue));
            EigenGroup {
                eigenvalue,
                irreps,
                multiplicity,
                nullity,
            }
        })
        .collect())
}

/// Spectrum audit of one query: per block, each distinct eigenvalue has
/// nullity equal to its summed multiplicity and the multiplicities add to
/// `C(n, k)`; overall the weighted sum is 1 and no eigenvalue is negative.
pub fn spectrum_check(query: &RdmQuery) -> Result<Check> {
    let n = query.subsystem;
    let spectrum = full_spectrum(query)?;
    let mut problems = Vec::new();
    let mut distinct = 0;
    for k in 0..=n {
        let groups = block_eigen_groups(query, k)?;
        distinct += groups.len();
        let mut total = BigInt::zero();
        for g in &groups {
            total += &g.multiplicity;
            if BigInt::from(g.nullity) != g.multiplicity {
                problems.push(format!(
                    "k={k}, s={:?}: nullity {} vs multiplicity {} at {}",
                    g.irreps,
                    g.nullity,
                    g.multiplicity,
                    to_wire(&g.eigenvalue)
                ));
            }
        }
        if total != choose(n as u64, k as i64) {
            problems.push(format!("k={k}: multiplicities sum to {total}"));
        }
    }
    let sum = weighted_sum(&spectrum);
    if !sum.is_one() {
        problems.push(format!("weighted sum {}", to_wire(&sum)));
    }
    if let Some(e) = spectrum.iter().find(|e| e.eigenvalue.is_negative()) {
        problems.push(format!(
            "negative eigenvalue {} at k={}, s={}",
            to_wire(&e.eigenvalue),
            e.k,
            e.s
        ));
    }
    Ok(Check {
        name: format!("spectrum/{}", label(query)),
        pass: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} entries, {distinct} distinct per-block eigenvalues", spectrum.len())
        } else {
            problems.join("; ")
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridBounds {
    #[serde(rename = "maxL")]
    pub max_sites: usize,
    #[serde(rename = "maxn")]
    pub max_subsystem: usize,
}

/// The grid a verification run actually covered, after shrinking each
/// suite to its caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyGrid {
    pub requested: GridBounds,
    pub equivalence: GridBounds,
    pub spectrum: GridBounds,
    /// Whole-system checks have no subsystem.
    #[serde(rename = "sigma_maxL")]
    pub sigma_max_sites: usize,
    pub decomposition: GridBounds,
    pub alpha_max_n: usize,
    pub instances: usize,
}

/// Subsystems at or above this size skip the exact-rank spectrum audit.
pub const SPECTRUM_RANK_CAP: usize = 6;

impl VerifyGrid {
    pub fn plan(requested: GridBounds, oracle: &OracleCaps, assembly: AssemblyCaps) -> Self {
        let clip = |l: usize, n: usize| GridBounds {
            max_sites: requested.max_sites.min(l),
            max_subsystem: requested.max_subsystem.min(n),
        };
        Self {
            requested,
            equivalence: clip(oracle.trace_sites, oracle.trace_subsystem.min(assembly.dense)),
            spectrum: clip(usize::MAX, SPECTRUM_RANK_CAP.min(assembly.dense)),
            sigma_max_sites: requested.max_sites.min(oracle.sigma_sites),
            decomposition: clip(oracle.decomposition_sites, oracle.decomposition_subsystem),
            alpha_max_n: requested.max_subsystem,
            instances: 0,
        }
    }
}

fn queries(bounds: GridBounds) -> Vec<RdmQuery> {
    SystemSpec::enumerate(bounds.max_sites)
        .flat_map(|spec| {
            (1..=spec.sites.min(bounds.max_subsystem)).map(move |n| RdmQuery {
                system: spec.clone(),
                subsystem: n,
            })
        })
        .collect()
}

/// Runs every suite over the grid bounded by `requested`, shrunk to the caps.
pub fn run_grid(
    requested: GridBounds,
    oracle: &OracleCaps,
    assembly: AssemblyCaps,
) -> Result<(VerifyGrid, CheckReport)> {
    let mut grid = VerifyGrid::plan(requested, oracle, assembly);
    let mut report = CheckReport::default();

    report.merge("alpha", alpha_properties(grid.alpha_max_n)?);

    let equivalence: Vec<Check> = queries(grid.equivalence)
        .par_iter()
        .map(|q| equivalence_check(q, oracle, assembly))
        .collect::<Result<_>>()?;
    let spectra: Vec<Check> = queries(grid.spectrum)
        .par_iter()
        .map(spectrum_check)
        .collect::<Result<_>>()?;
    let sigma: Vec<CheckReport> = SystemSpec::enumerate(grid.sigma_max_sites)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|spec| sigma_checks(spec, oracle).map(|r| prefixed(&format!("sigma/{}", spec_label(spec)), r)))
        .collect::<Result<_>>()?;
    let decomposition: Vec<CheckReport> = queries(grid.decomposition)
        .par_iter()
        .map(|q| {
            decomposition_term_check(&q.system, q.subsystem, oracle)
                .map(|r| prefixed(&format!("decomposition/{}", label(q)), r))
        })
        .collect::<Result<_>>()?;

    grid.instances = equivalence.len() + spectra.len() + sigma.len() + decomposition.len();
    report.checks.extend(equivalence);
    report.checks.extend(spectra);
    for r in sigma.into_iter().chain(decomposition) {
        report.checks.extend(r.checks);
    }
    Ok((grid, report))
}

fn prefixed(prefix: &str, report: CheckReport) -> CheckReport {
    let mut out = CheckReport::default();
    out.merge(prefix, report);
    out
}
