//! Numeric substrate: big integers and rationals, binomials with the
//! zero-outside-range convention, dense rational matrices and exact rank.

mod binom;
mod elim;
mod matrix;
mod rational;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub(crate) use binom::choose_signed;
pub use binom::{binom, choose};
pub use elim::{is_positive_semidefinite, rational_rank};
pub use matrix::RationalMatrix;
pub use rational::{from_wire, integer, rational, to_f64, to_wire};

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..50).prop_map(|(n, d)| rational(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !num_traits::Zero::is_zero(&b) {
                prop_assert_eq!((&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn canonical_form(n in -1000i64..1000, d in 1i64..1000, f in 1i64..50) {
            let q = BigRational::new(BigInt::from(n * f), BigInt::from(d * f));
            prop_assert!(num_traits::Signed::is_positive(q.denom()));
            prop_assert!(num_integer::Integer::gcd(q.numer(), q.denom()) == BigInt::from(1)
                || num_traits::Zero::is_zero(q.numer()));
            prop_assert_eq!(q, rational(n, d));
        }
    }
}
