use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{choose, integer, BigInt, BigRational};

/// State class of the whole chain: `sites` spins, `up_spins` of them up, in
/// the two-row Young-tableau sector with `singlet_pairs` boxes in the
/// second row. Couplings only enter [`energy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub sites: usize,
    pub up_spins: usize,
    pub singlet_pairs: usize,
    pub coupling: BigRational,
    pub field: BigRational,
}

impl SystemSpec {
    /// Unchecked constructor with `J = 1`, `h = 0`; see [`validate`].
    pub fn new(sites: usize, up_spins: usize, singlet_pairs: usize) -> Self {
        Self {
            sites,
            up_spins,
            singlet_pairs,
            coupling: BigRational::one(),
            field: BigRational::zero(),
        }
    }

    pub fn with_couplings(mut self, coupling: BigRational, field: BigRational) -> Self {
        self.coupling = coupling;
        self.field = field;
        self
    }

    /// `sites - up_spins`.
    pub fn down_spins(&self) -> usize {
        self.sites - self.up_spins
    }

    /// Every valid `(L, N, r)` with `1 <= L <= max_sites`, in lexicographic order.
    pub fn enumerate(max_sites: usize) -> impl Iterator<Item = SystemSpec> {
        (1..=max_sites)
            .flat_map(|l| (0..=l).flat_map(move |n| (0..=n.min(l - n)).map(move |r| SystemSpec::new(l, n, r))))
    }
}

/// Checks `L >= 1`, `0 <= N <= L` and `0 <= r <= min(N, L - N)`.
///
/// The upper bound on `r` is what a filled two-row tableau admits: the
/// `r` singlet columns consume `r` up and `r` down spins.
pub fn validate(spec: &SystemSpec) -> Result<&SystemSpec> {
    if spec.sites == 0 {
        return Err(Error::InvalidSystem("L must be at least 1".into()));
    }
    if spec.up_spins > spec.sites {
        return Err(Error::InvalidSystem(format!(
            "N = {} violates 0 <= N <= L = {}",
            spec.up_spins, spec.sites
        )));
    }
    let r_max = spec.up_spins.min(spec.down_spins());
    if spec.singlet_pairs > r_max {
        return Err(Error::InvalidSystem(format!(
            "r = {} exceeds min(N, L-N) = {}; a two-row tableau filling needs N-r >= 0 and L-N-r >= 0 \
             (the looser bound max(N, L-N) is not accepted)",
            spec.singlet_pairs, r_max
        )));
    }
    Ok(spec)
}

/// Dimension of the `{L-r, r}` irreducible representation of the symmetric
/// group: `C(L, r) - C(L, r-1)`.
pub fn yt_degeneracy(sites: usize, singlet_pairs: usize) -> Result<BigInt> {
    if 2 * singlet_pairs > sites {
        return Err(Error::out_of_range(
            "r",
            singlet_pairs,
            format!("0 <= r <= L/2 = {}", sites / 2),
        ));
    }
    let (l, r) = (sites as u64, singlet_pairs as i64);
    Ok(choose(l, r) - choose(l, r - 1))
}

/// Eigenvalue of the infinite-range Heisenberg Hamiltonian on the
/// `(L, N, r)` sector: `(J r (L - r + 1) / L + h (L - 2N)) / 2`.
pub fn energy(spec: &SystemSpec) -> Result<BigRational> {
    validate(spec)?;
    let l = spec.sites as i64;
    let r = spec.singlet_pairs as i64;
    let n = spec.up_spins as i64;
    let exchange = &spec.coupling * integer(r * (l - r + 1)) / integer(l);
    let zeeman = &spec.field * integer(l - 2 * n);
    Ok((exchange + zeeman) / integer(2))
}

/// A subsystem of `subsystem` sites cut from a validated system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdmQuery {
    pub system: SystemSpec,
    pub subsystem: usize,
}

impl RdmQuery {
    pub fn new(system: SystemSpec, subsystem: usize) -> Result<Self> {
        validate(&system)?;
        if subsystem == 0 || subsystem > system.sites {
            return Err(Error::InvalidQuery(format!(
                "n = {subsystem} violates 1 <= n <= L = {}",
                system.sites
            )));
        }
        Ok(Self { system, subsystem })
    }

    /// Shorthand for `RdmQuery::new(SystemSpec::new(l, n_up, r), n)`.
    pub fn of(sites: usize, up_spins: usize, singlet_pairs: usize, subsystem: usize) -> Result<Self> {
        Self::new(SystemSpec::new(sites, up_spins, singlet_pairs), subsystem)
    }
}
