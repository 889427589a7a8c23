use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::rdm::{validate, SystemSpec};

/// A real state with integer amplitudes over a shared normalizer:
/// amplitude of basis pattern `x` is `coefficients[x] / sqrt(nsq)`.
///
/// Site 1 is the most significant of `sites` bits; patterns absent from the
/// map have amplitude zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureState {
    pub sites: usize,
    pub coefficients: BTreeMap<u64, i64>,
    pub nsq: u64,
}

impl PureState {
    /// `sum coefficient^2 == nsq`.
    pub fn is_normalized(&self) -> bool {
        let sum: i128 = self.coefficients.values().map(|&c| (c as i128) * (c as i128)).sum();
        sum == self.nsq as i128
    }

    /// Common popcount of all patterns, if there is one.
    pub fn polarization(&self) -> Option<u32> {
        let mut weights = self.coefficients.keys().map(|x| x.count_ones());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Tensor product, `self` on the leading sites.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let coefficients = self
            .coefficients
            .iter()
            .cartesian_product(&other.coefficients)
            .map(|((&a, &ca), (&b, &cb))| ((a << other.sites) | b, ca * cb))
            .collect();
        PureState {
            sites: self.sites + other.sites,
            coefficients,
            nsq: self.nsq * other.nsq,
        }
    }
}

/// Equal-weight superposition of all `sites`-bit patterns with `up` bits set.
pub fn dicke_state(sites: usize, up: usize) -> Result<PureState> {
    if up > sites {
        return Err(Error::out_of_range("M", up, format!("0 <= M <= F = {sites}")));
    }
    if sites > 62 {
        return Err(Error::CapExceeded {
            what: "F",
            value: sites,
            cap: 62,
        });
    }
    let coefficients: BTreeMap<u64, i64> = (0..sites)
        .combinations(up)
        .map(|set| (set.iter().fold(0u64, |acc, &s| acc | 1 << (sites - 1 - s)), 1))
        .collect();
    let nsq = coefficients.len() as u64;
    Ok(PureState {
        sites,
        coefficients,
        nsq,
    })
}

/// `(|10> - |01>) / sqrt(2)`.
pub fn singlet() -> PureState {
    PureState {
        sites: 2,
        coefficients: BTreeMap::from([(0b10, 1), (0b01, -1)]),
        nsq: 2,
    }
}

/// Representative eigenstate of the `(L, N, r)` class: singlets on sites
/// `(1,2), ..., (2r-1, 2r)` times the Dicke state of `N - r` up spins on the
/// remaining `L - 2r` sites.
pub fn young_state(spec: &SystemSpec, max_sites: usize) -> Result<PureState> {
    validate(spec)?;
    if spec.sites > max_sites {
        return Err(Error::CapExceeded {
            what: "L (explicit state)",
            value: spec.sites,
            cap: max_sites,
        });
    }
    let pairs = spec.singlet_pairs;
    let mut state = dicke_state(spec.sites - 2 * pairs, spec.up_spins - pairs)?;
    for _ in 0..pairs {
        state = singlet().tensor(&state);
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicke_examples() {
        let s = dicke_state(2, 1).unwrap();
        assert_eq!(s.coefficients, BTreeMap::from([(0b10, 1), (0b01, 1)]));
        assert_eq!(s.nsq, 2);
        let s = dicke_state(3, 0).unwrap();
        assert_eq!(s.coefficients, BTreeMap::from([(0, 1)]));
        assert_eq!(s.nsq, 1);
        let s = dicke_state(4, 2).unwrap();
        assert_eq!(s.coefficients.len(), 6);
        assert_eq!(s.nsq, 6);
        assert!(dicke_state(2, 3).is_err());
        assert_eq!(dicke_state(0, 0).unwrap().coefficients, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn young_examples() {
        let s = young_state(&SystemSpec::new(2, 1, 1), 16).unwrap();
        assert_eq!(s, singlet());
        let s = young_state(&SystemSpec::new(4, 2, 0), 16).unwrap();
        assert_eq!(s, dicke_state(4, 2).unwrap());

        // 11 sites, 6 up, 4 singlet columns: 16 sign patterns times 3 placements
        let s = young_state(&SystemSpec::new(11, 6, 4), 16).unwrap();
        assert_eq!(s.nsq, 16 * 3);
        assert_eq!(s.coefficients.len(), 48);
        assert_eq!(s.polarization(), Some(6));
        assert!(s.is_normalized());
        // all four pairs as |10>, the remaining 3 sites hold 2 up spins
        assert_eq!(s.coefficients[&0b10101010110], 1);
        assert_eq!(s.coefficients[&0b01101010110], -1);

        assert!(young_state(&SystemSpec::new(17, 8, 0), 16).is_err());
        assert!(young_state(&SystemSpec::new(4, 2, 3), 16).is_err());
    }

    #[test]
    fn all_states_normalized_with_fixed_polarization() {
        for spec in SystemSpec::enumerate(12) {
            let s = young_state(&spec, 16).unwrap();
            assert!(s.is_normalized(), "{spec:?}");
            assert_eq!(s.polarization(), Some(spec.up_spins as u32));
        }
    }
}
