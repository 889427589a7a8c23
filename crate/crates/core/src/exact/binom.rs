//! Binomial coefficients on arbitrary-precision integers.
//!
//! Out-of-range lower arguments yield zero, so alternating sums over
//! products of binomials truncate on their own without explicit bounds.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn memo() -> &'static RwLock<HashMap<(u64, u64), BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<(u64, u64), BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `C(n, k)` for a signed top argument.
///
/// Returns zero when `k < 0` or `k > n`; a negative `n` is a domain error.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial C({n}, {k}) has negative top argument")));
    }
    Ok(choose(n as u64, k))
}

/// `C(n, k)` for a natural top argument; zero outside `0 <= k <= n`.
pub fn choose(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    if k == 0 {
        return BigInt::one();
    }
    if k == 1 {
        return BigInt::from(n);
    }
    if let Some(v) = memo().read().expect("binomial memo poisoned").get(&(n, k)) {
        return v.clone();
    }
    // Each partial product is itself a binomial coefficient, so the division is exact.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    // Concurrent inserts of the same key store the same value.
    memo()
        .write()
        .expect("binomial memo poisoned")
        .entry((n, k))
        .or_insert_with(|| acc.clone());
    acc
}

/// `C(n, k)` with both arguments given as signed integers, treating a
/// negative `n` as an empty product (zero). Used where a formula's top
/// argument can go negative only in terms that vanish anyway.
pub(crate) fn choose_signed(n: i64, k: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        choose(n as u64, k)
    }
}
