//! Exact arithmetic over ℚ and the cyclotomic fields ℚ(ζ_m).

mod cyclotomic;
mod matrix;
mod unipoly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, zeta_pow, CycloField, CycloNumber};
pub use matrix::CycloMatrix;
pub use unipoly::UniPoly;

use num_bigint::BigInt;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational n/d. Panics when d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer n as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_element(order: u32) -> impl Strategy<Value = CycloNumber> {
        let deg = euler_phi(order);
        proptest::collection::vec((-50i64..50, 1i64..20), deg)
            .prop_map(move |v| CycloNumber::from_coeffs(order, v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    #[test]
    fn rationals_are_normalized() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn geometric_sum_of_fourth_roots() {
        let s = zeta_pow(4, 0) + zeta_pow(4, 1) + zeta_pow(4, 2) + zeta_pow(4, 3);
        assert!(s.is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn inverse_times_self_is_one(order in prop::sample::select(vec![3u32, 4, 5, 8, 9, 12]), seed in any::<u64>()) {
            // pick the element deterministically from the seed so one strategy covers all orders
            let deg = euler_phi(order);
            let mut s = seed;
            let coeffs: Vec<Rational> = (0..deg).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rat(((s >> 33) % 41) as i64 - 20, ((s >> 20) % 7) as i64 + 1)
            }).collect();
            let x = CycloNumber::from_coeffs(order, coeffs);
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }

        #[test]
        fn multiplication_is_associative_and_distributive(a in arb_element(12), b in arb_element(12), c in arb_element(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn equality_matches_difference_zero(a in arb_element(9), b in arb_element(9)) {
            prop_assert_eq!(a == b, (&a - &b).is_zero());
            let reduced = CycloNumber::from_coeffs(9, a.coeffs().to_vec());
            prop_assert_eq!(reduced, a);
        }
    }
}
