//! Fraction-free (Bareiss) elimination on rational matrices.
//!
//! Rows are first cleared of denominators, which changes neither rank nor
//! the sign pattern relevant to definiteness; all further work is on
//! integers with exact divisions by the previous pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RationalMatrix;

fn row_lcm(row: &[super::BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled_row(row: &[super::BigRational], scale: &BigInt) -> Vec<BigInt> {
    row.iter().map(|x| x.numer() * (scale / x.denom())).collect()
}

/// Exact `(a*d - b*c) / prev`; Bareiss guarantees divisibility.
fn bareiss_update(pivot: &BigInt, x: &BigInt, left: &BigInt, top: &BigInt, prev: &BigInt) -> BigInt {
    let num = pivot * x - left * top;
    if prev.is_one() {
        return num;
    }
    let (q, r) = num.div_rem(prev);
    debug_assert!(r.is_zero(), "inexact Bareiss division");
    q
}

/// Rank over the rationals.
pub fn rational_rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            scaled_row(row, &row_lcm(row))
        })
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let left = std::mem::take(&mut row[c]);
            for j in c + 1..nc {
                row[j] = bareiss_update(pivot, &row[j], &left, &pivot_row[j], &prev);
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix.
///
/// Symmetric Bareiss elimination with diagonal pivoting: with every chosen
/// pivot positive, the remaining entries are positive multiples of the Schur
/// complement, so a negative diagonal, or a zero diagonal with a nonzero
/// off-diagonal, witnesses indefiniteness. Non-symmetric input returns false.
pub fn is_positive_semidefinite(m: &RationalMatrix) -> bool {
    if !m.is_symmetric() {
        return false;
    }
    let n = m.rows();
    let scale = (0..n).fold(BigInt::one(), |acc, i| acc.lcm(&row_lcm(m.row(i))));
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| scaled_row(m.row(i), &scale)).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = active.iter().position(|&i| a[i][i].is_positive()) else {
            return active.iter().all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
        };
        let p = active.swap_remove(pos);
        let pivot = a[p][p].clone();
        let pivot_row = a[p].clone();
        for &i in &active {
            let left = a[i][p].clone();
            for &j in &active {
                a[i][j] = bareiss_update(&pivot, &a[i][j], &left, &pivot_row[j], &prev);
            }
        }
        prev = pivot;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn m(rows: usize, cols: usize, v: &[(i64, i64)]) -> RationalMatrix {
        RationalMatrix::from_vec(rows, cols, v.iter().map(|&(n, d)| rational(n, d)).collect())
    }

    fn int(rows: usize, cols: usize, v: &[i64]) -> RationalMatrix {
        RationalMatrix::from_vec(rows, cols, v.iter().map(|&x| rational(x, 1)).collect())
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(rational_rank(&RationalMatrix::identity(2)), 2);
        assert_eq!(rational_rank(&int(2, 2, &[1, 1, 1, 1])), 1);
        assert_eq!(rational_rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rational_rank(&int(2, 3, &[1, 2, 3, 2, 4, 6])), 1);
        assert_eq!(rational_rank(&int(3, 2, &[0, 1, 0, 2, 0, 3])), 1);
        // first column zero forces a skipped pivot column
        assert_eq!(rational_rank(&int(3, 3, &[0, 1, 2, 0, 3, 4, 0, 5, 6])), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let a = m(2, 2, &[(1, 2), (1, 3), (3, 4), (1, 2)]);
        assert_eq!(rational_rank(&a), 1);
        let b = m(2, 2, &[(1, 2), (1, 3), (3, 4), (1, 5)]);
        assert_eq!(rational_rank(&b), 2);
    }

    #[test]
    fn psd_detection() {
        assert!(is_positive_semidefinite(&int(2, 2, &[1, 1, 1, 1])));
        assert!(is_positive_semidefinite(&int(2, 2, &[2, -1, -1, 2])));
        assert!(!is_positive_semidefinite(&int(2, 2, &[1, 2, 2, 1])));
        assert!(!is_positive_semidefinite(&int(2, 2, &[0, 1, 1, 0])));
        assert!(!is_positive_semidefinite(&int(2, 2, &[-1, 0, 0, 0])));
        assert!(is_positive_semidefinite(&RationalMatrix::zeros(3, 3)));
        // singular PSD with a zero diagonal row
        assert!(is_positive_semidefinite(&int(3, 3, &[0, 0, 0, 0, 1, -1, 0, -1, 1])));
        // non-symmetric input
        assert!(!is_positive_semidefinite(&int(2, 2, &[1, 0, 1, 1])));
    }
}
