use lgenus::exact::{char_series_ahat, char_series_l, char_series_l_from_exp, char_series_l_closed_form, rational, PowerSeries, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rational(n, d))
}

fn series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(|c| PowerSeries::from_coeffs(c).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_rational(), order).prop_map(|mut c| {
        c.insert(0, Rational::one());
        PowerSeries::from_coeffs(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_commutes(a in series(6), b in series(6)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn product_associates(a in series(5), b in series(5), c in series(5)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_distributes(a in series(5), b in series(5), c in series(5)) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_is_an_involution(a in unit_series(7)) {
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(inv.reciprocal().unwrap(), a.clone());
        prop_assert_eq!(a.mul(&inv).unwrap(), PowerSeries::one(7));
    }

    #[test]
    fn rationals_are_canonical(n in -10_000i64..10_000, d in 1i64..10_000, m in 1i64..50) {
        let r = rational(n * m, d * m);
        prop_assert!(r.denom().is_positive());
        prop_assert!(r.numer().gcd(r.denom()).is_one() || r.numer().is_zero());
        prop_assert_eq!(r, rational(n, d));
        let neg = Rational::new(BigInt::from(n), BigInt::from(-d));
        prop_assert!(neg.denom().is_positive());
    }
}

#[test]
fn characteristic_series_routes_agree() {
    for order in [0, 1, 5, 12, 20] {
        assert_eq!(char_series_l_from_exp(order), char_series_l_closed_form(order));
        assert_eq!(char_series_l(order), char_series_l_closed_form(order));
    }
}

/// `sqrt(z)/tanh(sqrt(z))` and `(sqrt(z)/2)/sinh(sqrt(z)/2)` from their
/// Taylor series, by direct series division.
#[test]
fn characteristic_series_from_division() {
    let order = 10;
    let fact = |n: usize| -> BigInt { (1..=n).map(BigInt::from).product() };
    let cosh = PowerSeries::from_fn(order, |k| Rational::new(BigInt::one(), fact(2 * k)));
    let sinh_over = PowerSeries::from_fn(order, |k| Rational::new(BigInt::one(), fact(2 * k + 1)));
    let l = cosh.mul(&sinh_over.reciprocal().unwrap()).unwrap();
    assert_eq!(l, char_series_l(order));
    let half = PowerSeries::from_fn(order, |k| Rational::new(BigInt::one(), fact(2 * k + 1) * (BigInt::one() << (2 * k))));
    assert_eq!(half.reciprocal().unwrap(), char_series_ahat(order));
}
