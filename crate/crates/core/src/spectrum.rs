//! Closed-form spectrum of the reduced density matrix.
//!
//! Block `B_k` splits further by the symmetric-group irrep `{n-s, s}` of the
//! subsystem, `0 <= s <= min(k, n-k)`. Each irrep contributes one eigenvalue
//! `lambda_s(n, k) = sum_Z alpha_Z^(s)(n, k) g_Z`, with integer coefficients
//! that do not depend on `(L, N, r)`, repeated `C(n, s) - C(n, s-1)` times.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{choose, choose_signed, to_f64, BigInt, BigRational};
use crate::rdm::{g_element, RdmQuery, SubBlockIndex};

fn signed(value: BigInt, negative: bool) -> BigInt {
    if negative {
        -value
    } else {
        value
    }
}

fn check_block(n: usize, k: usize) -> Result<usize> {
    if k > n {
        return Err(Error::out_of_range("k", k, format!("0 <= k <= n = {n}")));
    }
    Ok(k.min(n - k))
}

/// `alpha_Z^(s)(n, k)`. With `m = k - s`:
///
/// ```text
/// alpha = (-1)^Z sum_{i=0..m} (-1)^i C(m, i) C(n - 2k + m, i) C(k - m, Z - i)
/// ```
pub fn alpha(n: usize, k: usize, s: usize, z: usize) -> Result<BigInt> {
    let top = check_block(n, k)?;
    if s > top {
        return Err(Error::out_of_range("s", s, format!("0 <= s <= min(k, n-k) = {top}")));
    }
    if z > top {
        return Err(Error::out_of_range("Z", z, format!("0 <= Z <= min(k, n-k) = {top}")));
    }
    let m = (k - s) as i64;
    // n - 2k + m = n - k - s >= 0 whenever s <= n - k.
    let free = (n - k - s) as u64;
    let sum: BigInt = (0..=m)
        .map(|i| {
            let term = choose(m as u64, i) * choose(free, i) * choose_signed(k as i64 - m, z as i64 - i);
            signed(term, i % 2 == 1)
        })
        .sum();
    Ok(signed(sum, z % 2 == 1))
}

/// Closed form of `alpha_Z^(k-1)(n, k)`:
/// `(-1)^Z [C(k-1, Z) - (n-2k+1) C(k-1, Z-1)]`, for `1 <= k`, `Z <= k`.
pub fn alpha_last_but_one(n: usize, k: usize, z: usize) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    if z > k {
        return Err(Error::out_of_range("Z", z, format!("0 <= Z <= k = {k}")));
    }
    let spread = n as i64 - 2 * k as i64 + 1;
    let (k1, z) = (k as u64 - 1, z as i64);
    let value = choose(k1, z) - crate::exact::binom(spread, 1)? * choose(k1, z - 1);
    Ok(signed(value, z % 2 == 1))
}

/// All coefficients of one block: `coefficients[s][Z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTable {
    pub n: usize,
    pub k: usize,
    pub coefficients: Vec<Vec<BigInt>>,
}

impl AlphaTable {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let top = check_block(n, k)?;
        let coefficients = (0..=top)
            .map(|s| (0..=top).map(|z| alpha(n, k, s, z)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, k, coefficients })
    }

    /// `sum_Z alpha_Z^(s) values[Z]`.
    pub fn combine(&self, s: usize, values: &[BigRational]) -> BigRational {
        self.coefficients[s]
            .iter()
            .zip(values)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, g)| BigRational::from_integer(a.clone()) * g)
            .sum()
    }
}

/// `C(n, s) - C(n, s-1)`: dimension of the `{n-s, s}` irrep.
pub fn multiplicity(n: usize, s: usize) -> Result<BigInt> {
    if 2 * s > n {
        return Err(Error::out_of_range("s", s, format!("0 <= s <= n/2 = {}", n / 2)));
    }
    Ok(choose(n as u64, s as i64) - choose(n as u64, s as i64 - 1))
}

/// One distinct eigenvalue of block `k`, from irrep `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub s: usize,
    pub eigenvalue: BigRational,
    pub multiplicity: BigInt,
}

fn block_elements(query: &RdmQuery, k: usize) -> Result<Vec<BigRational>> {
    let top = check_block(query.subsystem, k)?;
    (0..=top).map(|z| g_element(query, SubBlockIndex { k, z })).collect()
}

/// `lambda_s(n, k)`.
pub fn eigenvalue(query: &RdmQuery, k: usize, s: usize) -> Result<BigRational> {
    let n = query.subsystem;
    let top = check_block(n, k)?;
    if s > top {
        return Err(Error::out_of_range("s", s, format!("0 <= s <= min(k, n-k) = {top}")));
    }
    let values = block_elements(query, k)?;
    let mut acc = BigRational::zero();
    for (z, g) in values.iter().enumerate() {
        let a = alpha(n, k, s, z)?;
        if !a.is_zero() {
            acc += BigRational::from_integer(a) * g;
        }
    }
    Ok(acc)
}

/// Every `(k, s)` eigenvalue with its multiplicity, sorted by `(k, s)`.
///
/// Blocks are evaluated in parallel; the output order is fixed.
pub fn full_spectrum(query: &RdmQuery) -> Result<Vec<SpectrumEntry>> {
    let n = query.subsystem;
    let blocks: Vec<Vec<SpectrumEntry>> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let table = AlphaTable::new(n, k)?;
            let values = block_elements(query, k)?;
            (0..table.coefficients.len())
                .map(|s| {
                    Ok(SpectrumEntry {
                        k,
                        s,
                        eigenvalue: table.combine(s, &values),
                        multiplicity: multiplicity(n, s)?,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// `sum multiplicity * lambda`.
pub fn weighted_sum(spectrum: &[SpectrumEntry]) -> BigRational {
    spectrum
        .iter()
        .map(|e| BigRational::from_integer(e.multiplicity.clone()) * &e.eigenvalue)
        .sum()
}

/// Von Neumann entropy in nats, `-sum multiplicity * lambda ln lambda`.
pub fn entropy(spectrum: &[SpectrumEntry]) -> Result<f64> {
    let mut total = 0.0;
    for e in spectrum {
        if e.eigenvalue.is_negative() {
            return Err(Error::Integrity(format!(
                "negative eigenvalue {} at k={}, s={}",
                crate::exact::to_wire(&e.eigenvalue),
                e.k,
                e.s
            )));
        }
        if e.eigenvalue.is_zero() {
            continue;
        }
        let lambda = to_f64(&e.eigenvalue);
        let mult = e.multiplicity.to_f64().unwrap_or(f64::INFINITY);
        total -= mult * lambda * lambda.ln();
    }
    Ok(total)
}

/// `sum multiplicity * lambda^2`, exactly.
pub fn purity(spectrum: &[SpectrumEntry]) -> BigRational {
    spectrum
        .iter()
        .map(|e| BigRational::from_integer(e.multiplicity.clone()) * &e.eigenvalue * &e.eigenvalue)
        .sum()
}
