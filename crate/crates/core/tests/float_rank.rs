use nalgebra::DMatrix;
use permrdm::exact::{rational, rational_rank, RationalMatrix};
use proptest::prelude::*;

fn float_rank(m: &DMatrix<f64>) -> usize {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-9)
        .count()
}

/// Random integer matrices of controlled rank: a product of `dim x rank`
/// and `rank x dim` factors with entries in [-5, 5].
fn low_rank(dim: usize) -> impl Strategy<Value = (Vec<i64>, usize)> {
    (0..=dim).prop_flat_map(move |rank| {
        (
            proptest::collection::vec(-5i64..=5, dim * rank),
            proptest::collection::vec(-5i64..=5, rank * dim),
        )
            .prop_map(move |(a, b)| {
                let mut out = vec![0i64; dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        out[i * dim + j] = (0..rank).map(|t| a[i * rank + t] * b[t * dim + j]).sum();
                    }
                }
                (out, rank)
            })
    })
}

proptest! {
    #[test]
    fn exact_rank_agrees_with_svd(entries in proptest::collection::vec(-5i64..=5, 36)) {
        let exact = RationalMatrix::from_fn(6, 6, |i, j| rational(entries[i * 6 + j], 1));
        let float = DMatrix::from_fn(6, 6, |i, j| entries[i * 6 + j] as f64);
        prop_assert_eq!(rational_rank(&exact), float_rank(&float));
    }

    #[test]
    fn exact_rank_of_products((entries, bound) in low_rank(6), scale in 1i64..=7) {
        let exact = RationalMatrix::from_fn(6, 6, |i, j| rational(entries[i * 6 + j], scale));
        let float = DMatrix::from_fn(6, 6, |i, j| entries[i * 6 + j] as f64 / scale as f64);
        let r = rational_rank(&exact);
        prop_assert!(r <= bound);
        prop_assert_eq!(r, float_rank(&float));
    }
}
