//! Large-`L` limit at fixed filling `p = N/L` and symmetry fraction `mu = r/L`.

use num_traits::{One, Signed, Zero};

use super::SubBlockIndex;
use crate::error::{Error, Result};
use crate::exact::{to_wire, BigRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThermoParams {
    pub p: BigRational,
    pub mu: BigRational,
    pub subsystem: usize,
    eta: BigRational,
}

impl ThermoParams {
    pub fn new(p: BigRational, mu: BigRational, subsystem: usize) -> Result<Self> {
        let eta = thermo_eta(&p, &mu)?;
        Ok(Self { p, mu, subsystem, eta })
    }

    pub fn eta(&self) -> &BigRational {
        &self.eta
    }
}

/// `eta = (p - mu)(1 - p - mu) / (p (1 - p))`, defined for `0 < p < 1` and
/// `0 <= mu <= min(p, 1 - p)`, where it lies in `[0, 1]`.
pub fn thermo_eta(p: &BigRational, mu: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    if !p.is_positive() || p >= &one {
        return Err(Error::Domain(format!("p = {} must satisfy 0 < p < 1", to_wire(p))));
    }
    let q = &one - p;
    let mu_max = if p < &q { p } else { &q };
    if mu.is_negative() || mu > mu_max {
        return Err(Error::Domain(format!(
            "mu = {} must satisfy 0 <= mu <= min(p, 1-p) = {}",
            to_wire(mu),
            to_wire(mu_max)
        )));
    }
    Ok((p - mu) * (&q - mu) / (p * &q))
}

/// Limit value `p^(n-k) (1-p)^k eta^Z` of the sub-block element.
pub fn thermo_g(params: &ThermoParams, idx: SubBlockIndex) -> Result<BigRational> {
    let idx = SubBlockIndex::new(idx.k, idx.z, params.subsystem)?;
    let q = BigRational::one() - &params.p;
    let pow = |base: &BigRational, e: usize| -> BigRational { (0..e).fold(BigRational::one(), |acc, _| acc * base) };
    let eta_pow = if idx.z == 0 {
        BigRational::one()
    } else if params.eta.is_zero() {
        BigRational::zero()
    } else {
        pow(&params.eta, idx.z)
    };
    Ok(pow(&params.p, params.subsystem - idx.k) * pow(&q, idx.k) * eta_pow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn eta_values() {
        assert_eq!(thermo_eta(&rational(1, 2), &rational(0, 1)).unwrap(), rational(1, 1));
        assert_eq!(thermo_eta(&rational(1, 2), &rational(1, 2)).unwrap(), rational(0, 1));
        assert_eq!(thermo_eta(&rational(1, 2), &rational(1, 4)).unwrap(), rational(1, 4));
    }

    #[test]
    fn eta_domain() {
        assert!(thermo_eta(&rational(0, 1), &rational(0, 1)).is_err());
        assert!(thermo_eta(&rational(1, 1), &rational(0, 1)).is_err());
        assert!(thermo_eta(&rational(1, 3), &rational(1, 2)).is_err());
        assert!(thermo_eta(&rational(1, 3), &rational(-1, 10)).is_err());
    }

    #[test]
    fn eta_stays_in_unit_interval() {
        for pn in 1..20 {
            let p = rational(pn, 20);
            let mu_max = pn.min(20 - pn);
            for mn in 0..=mu_max {
                let eta = thermo_eta(&p, &rational(mn, 20)).unwrap();
                assert!(eta >= rational(0, 1) && eta <= rational(1, 1));
            }
        }
    }

    #[test]
    fn limit_elements() {
        let sym = ThermoParams::new(rational(1, 2), rational(0, 1), 4).unwrap();
        assert_eq!(thermo_g(&sym, SubBlockIndex { k: 2, z: 1 }).unwrap(), rational(1, 16));
        let max_r = ThermoParams::new(rational(1, 2), rational(1, 2), 4).unwrap();
        assert_eq!(thermo_g(&max_r, SubBlockIndex { k: 2, z: 1 }).unwrap(), rational(0, 1));
        assert_eq!(thermo_g(&max_r, SubBlockIndex { k: 2, z: 0 }).unwrap(), rational(1, 16));
        let mid = ThermoParams::new(rational(1, 2), rational(1, 4), 2).unwrap();
        assert_eq!(thermo_g(&mid, SubBlockIndex { k: 1, z: 1 }).unwrap(), rational(1, 16));
        assert!(thermo_g(&mid, SubBlockIndex { k: 1, z: 2 }).is_err());
    }
}
