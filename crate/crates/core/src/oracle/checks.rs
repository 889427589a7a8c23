use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::state::young_state;
use super::trace::{brute_rdm, symmetrize};
use super::OracleCaps;
use crate::error::{Error, Result};
use crate::exact::{choose, integer, rational, rational_rank, to_wire, BigInt, BigRational, RationalMatrix};
use crate::rdm::{permute_pattern, validate, yt_degeneracy, RdmMatrix, RdmQuery, SystemSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Ordered list of named pass/fail results.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Appends another report with `prefix/` prepended to each name.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        self.checks.extend(other.checks.into_iter().map(|c| Check {
            name: format!("{prefix}/{}", c.name),
            ..c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Projector onto the two-site singlet, in the `|i1 i2>` basis.
pub fn asymm_pair_matrix() -> RationalMatrix {
    let h = rational(1, 2);
    let mut m = RationalMatrix::zeros(4, 4);
    m[(1, 1)] = h.clone();
    m[(2, 2)] = h.clone();
    m[(1, 2)] = -h.clone();
    m[(2, 1)] = -h;
    m
}

/// Maximally mixed single site, `I / 2`.
pub fn half_identity() -> RationalMatrix {
    RationalMatrix::identity(2).scale(&rational(1, 2))
}

/// Whole-system density matrix: the normalized sum of `|P psi><P psi|` over
/// all `L!` site permutations of the representative state.
pub fn sigma_matrix(spec: &SystemSpec, caps: &OracleCaps) -> Result<RationalMatrix> {
    validate(spec)?;
    let l = spec.sites;
    if l > caps.sigma_sites {
        return Err(Error::CapExceeded {
            what: "L (whole-system density matrix)",
            value: l,
            cap: caps.sigma_sites,
        });
    }
    let state = young_state(spec, caps.state_sites)?;
    let dim = 1usize << l;
    let mut sum = vec![0i128; dim * dim];
    let mut perms = 0i128;
    for perm in (0..l).permutations(l) {
        let moved: Vec<(usize, i128)> = state
            .coefficients
            .iter()
            .map(|(&x, &c)| (permute_pattern(x, &perm, l) as usize, c as i128))
            .collect();
        for &(a, ca) in &moved {
            for &(b, cb) in &moved {
                sum[a * dim + b] += ca * cb;
            }
        }
        perms += 1;
    }
    let denom = BigInt::from(perms) * BigInt::from(state.nsq);
    Ok(RationalMatrix::from_fn(dim, dim, |a, b| {
        BigRational::new(BigInt::from(sum[a * dim + b]), denom.clone())
    }))
}

/// Verifies the whole-system density matrix: unit trace,
/// `sigma^2 = sigma / deg`, commutation with every site transposition, and
/// rank equal to the irrep dimension.
pub fn sigma_checks(spec: &SystemSpec, caps: &OracleCaps) -> Result<CheckReport> {
    let sigma = sigma_matrix(spec, caps)?;
    let deg = yt_degeneracy(spec.sites, spec.singlet_pairs)?;
    let mut report = CheckReport::default();

    let trace = sigma.trace();
    report.push("trace", trace == integer(1), format!("trace = {}", to_wire(&trace)));

    let square = sigma.mul(&sigma);
    let expected = sigma.scale(&BigRational::new(1.into(), deg.clone()));
    report.push(
        "square_equals_sigma_over_deg",
        square == expected,
        format!("deg = {deg}"),
    );

    let l = spec.sites;
    let as_rdm = RdmMatrix::from_matrix(l, sigma.clone())?;
    let mut broken = Vec::new();
    for (i, j) in (0..l).tuple_combinations() {
        let mut perm: Vec<usize> = (0..l).collect();
        perm.swap(i, j);
        if as_rdm.permute_sites(&perm)? != as_rdm {
            broken.push(format!("P({},{})", i + 1, j + 1));
        }
    }
    report.push(
        "commutes_with_transpositions",
        broken.is_empty(),
        if broken.is_empty() {
            format!("{} transpositions", l * l.saturating_sub(1) / 2)
        } else {
            format!("fails for {}", broken.join(", "))
        },
    );

    let rank = rational_rank(&sigma);
    report.push(
        "rank_equals_degeneracy",
        BigInt::from(rank) == deg,
        format!("rank = {rank}, deg = {deg}"),
    );
    Ok(report)
}

/// One term of the site-partition expansion: `symmetric_sites` sites taken
/// from the symmetric part of the tableau, `pairs` complete singlet columns
/// and `halves` single sites from distinct singlet columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTerm {
    pub symmetric_sites: usize,
    pub pairs: usize,
    pub halves: usize,
    pub weight: BigInt,
}

/// RDM of `m` sites of the Dicke state with `up` of `sites` up spins:
/// `delta(w, w') C(sites - m, up - w) / C(sites, up)`.
fn dicke_marginal(sites: usize, up: usize, m: usize) -> RationalMatrix {
    let dim = 1usize << m;
    let total = choose(sites as u64, up as i64);
    RationalMatrix::from_fn(dim, dim, |a, b| {
        let w = (a as u64).count_ones();
        if w != (b as u64).count_ones() {
            return BigRational::zero();
        }
        BigRational::new(choose((sites - m) as u64, up as i64 - w as i64), total.clone())
    })
}

/// Right-hand side of the expansion of `C(L, n) rho_n` over how the `n`
/// kept sites split between the symmetric and singlet parts of the tableau,
/// built from Dicke marginals, singlet projectors and `I/2` factors,
/// symmetrized and divided by `C(L, n)`.
pub fn decomposition_rhs(query: &RdmQuery) -> Result<(RdmMatrix, Vec<DecompositionTerm>)> {
    let spec = &query.system;
    let n = query.subsystem;
    let r = spec.singlet_pairs;
    let free = spec.sites - 2 * r;
    let free_up = spec.up_spins - r;
    let dim = 1usize << n;

    let mut terms = Vec::new();
    let mut acc = RationalMatrix::zeros(dim, dim);
    for z in 0..=n.min(2 * r) {
        let sym_weight = choose(free as u64, (n - z) as i64);
        if sym_weight.is_zero() {
            continue;
        }
        let base = dicke_marginal(free, free_up, n - z);
        for pairs in 0..=z / 2 {
            let halves = z - 2 * pairs;
            let weight = &sym_weight
                * choose(r as u64, pairs as i64)
                * (BigInt::from(1) << halves)
                * choose_nat(r - pairs, halves);
            if weight.is_zero() {
                continue;
            }
            let mut term = base.clone();
            for _ in 0..pairs {
                term = term.kron(&asymm_pair_matrix());
            }
            for _ in 0..halves {
                term = term.kron(&half_identity());
            }
            acc = acc.add(&term.scale(&BigRational::from_integer(weight.clone())));
            terms.push(DecompositionTerm {
                symmetric_sites: n - z,
                pairs,
                halves,
                weight,
            });
        }
    }
    let norm = BigRational::new(1.into(), choose(spec.sites as u64, n as i64));
    let rhs = symmetrize(&RdmMatrix::from_matrix(n, acc.scale(&norm))?);
    Ok((rhs, terms))
}

fn choose_nat(n: usize, k: usize) -> BigInt {
    choose(n as u64, k as i64)
}

/// Compares the partition expansion with the brute-force trace, entry by entry.
pub fn decomposition_term_check(spec: &SystemSpec, subsystem: usize, caps: &OracleCaps) -> Result<CheckReport> {
    if spec.sites > caps.decomposition_sites {
        return Err(Error::CapExceeded {
            what: "L (decomposition check)",
            value: spec.sites,
            cap: caps.decomposition_sites,
        });
    }
    if subsystem > caps.decomposition_subsystem {
        return Err(Error::CapExceeded {
            what: "n (decomposition check)",
            value: subsystem,
            cap: caps.decomposition_subsystem,
        });
    }
    let query = RdmQuery::new(spec.clone(), subsystem)?;
    let (rhs, terms) = decomposition_rhs(&query)?;
    let brute = brute_rdm(&query, caps)?;

    let mut report = CheckReport::default();
    let listing = terms
        .iter()
        .map(|t| {
            format!(
                "(sym={}, pairs={}, halves={}, w={})",
                t.symmetric_sites, t.pairs, t.halves, t.weight
            )
        })
        .join(" ");
    let total: BigInt = terms.iter().map(|t| t.weight.clone()).sum();
    let subsets = choose(spec.sites as u64, subsystem as i64);
    report.push(
        "term_weights_count_subsets",
        total == subsets,
        format!(
            "{} terms {listing}; weight sum {total} vs C(L,n) = {subsets}",
            terms.len()
        ),
    );

    let mismatch = (1..=rhs.dim())
        .cartesian_product(1..=rhs.dim())
        .find(|&(p, q)| rhs.entry(p, q) != brute.entry(p, q));
    report.push(
        "matches_brute_force",
        mismatch.is_none(),
        match mismatch {
            None => format!("{}x{} entries equal", rhs.dim(), rhs.dim()),
            Some((p, q)) => format!(
                "first difference at (P={p}, Q={q}): expansion {} vs brute force {}",
                to_wire(rhs.entry(p, q)),
                to_wire(brute.entry(p, q))
            ),
        },
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{is_positive_semidefinite, RationalMatrix};

    #[test]
    fn asymm_pair_properties() {
        let a = asymm_pair_matrix();
        assert_eq!(a.trace(), integer(1));
        assert_eq!(rational_rank(&a), 1);
        assert_eq!(a.mul(&a), a);
        assert!(is_positive_semidefinite(&a));
        let polarization = RationalMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                integer((i as u64).count_ones())
            } else {
                BigRational::zero()
            }
        });
        assert_eq!(a.mul(&polarization), polarization.mul(&a));
    }

    #[test]
    fn sigma_examples() {
        let caps = OracleCaps::default();
        let report = sigma_checks(&SystemSpec::new(2, 1, 1), &caps).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(
            report.get("rank_equals_degeneracy").unwrap().detail,
            "rank = 1, deg = 1"
        );
        let report = sigma_checks(&SystemSpec::new(4, 2, 1), &caps).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(
            report.get("rank_equals_degeneracy").unwrap().detail,
            "rank = 3, deg = 3"
        );
        let report = sigma_checks(&SystemSpec::new(4, 2, 2), &caps).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(
            report.get("rank_equals_degeneracy").unwrap().detail,
            "rank = 2, deg = 2"
        );
        assert!(sigma_checks(&SystemSpec::new(7, 3, 1), &caps).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let caps = OracleCaps::default();
        for (l, n_up, r, sub) in [(4, 2, 1, 2), (6, 3, 1, 2)] {
            let report = decomposition_term_check(&SystemSpec::new(l, n_up, r), sub, &caps).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        assert!(decomposition_term_check(&SystemSpec::new(11, 5, 1), 2, &caps).is_err());
        assert!(decomposition_term_check(&SystemSpec::new(8, 4, 1), 5, &caps).is_err());
    }

    #[test]
    fn symmetric_sector_has_single_term() {
        for spec in SystemSpec::enumerate(8).filter(|s| s.singlet_pairs == 0) {
            for sub in 1..=spec.sites.min(4) {
                let (_, terms) = decomposition_rhs(&RdmQuery::new(spec.clone(), sub).unwrap()).unwrap();
                assert_eq!(terms.len(), 1);
                assert_eq!((terms[0].symmetric_sites, terms[0].pairs, terms[0].halves), (sub, 0, 0));
            }
        }
    }

    #[test]
    fn report_merging() {
        let mut a = CheckReport::default();
        a.push("x", true, "");
        let mut b = CheckReport::default();
        b.push("y", false, "bad");
        a.merge("sub", b);
        assert!(!a.passed());
        assert_eq!(a.failures().next().unwrap().name, "sub/y");
    }
}
