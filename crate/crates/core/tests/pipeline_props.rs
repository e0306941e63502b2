use legint::oracles::exact_double_integral;
use legint::pipeline::integrate_against_legendre;
use legint::{
    closed_form, derive, gauss_form, inner_integral, inner_integral_oracle, legendre_poly,
    moment_sum, IntegralSpec, Rational,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

#[test]
fn inner_integral_routes_agree() {
    for b in 0..=10 {
        for l in 0..=2 * b + 3 {
            let spec = IntegralSpec::new(b, l);
            assert_eq!(
                inner_integral(&spec),
                inner_integral_oracle(&spec),
                "{spec}"
            );
        }
    }
}

#[test]
fn inner_integral_degree_and_parity() {
    for b in 0..=10u32 {
        for l in 0..=2 * b {
            let inner = inner_integral(&IntegralSpec::new(b, l));
            assert_eq!(inner.degree(), Some((2 * b - l) as usize));
            for (i, c) in inner.coeffs().iter().enumerate() {
                if (i as u32 + l) % 2 == 1 {
                    assert!(c.is_zero());
                }
            }
        }
    }
}

#[test]
fn sign_alternates_with_order() {
    for b in 0..=12 {
        for l in 0..=b {
            let v = closed_form(&IntegralSpec::new(b, l));
            assert!(!v.is_zero());
            assert_eq!(v.is_negative(), l % 2 == 1, "b={b} l={l}");
        }
    }
}

#[test]
fn sum_rule_against_oracle() {
    for b in 0..=6u32 {
        let total: Rational = (0..=b)
            .map(|l| {
                exact_double_integral(&IntegralSpec::new(b, l))
                    * Rational::from_integer((2 * l + 1).into())
            })
            .sum();
        let expected = Rational::from_integer(if b == 0 { 4 } else { 0 }.into());
        assert_eq!(total, expected, "b={b}");
    }
}

#[test]
fn large_inputs_still_consistent() {
    for (b, l) in [(40, 17), (64, 64), (64, 3), (30, 45)] {
        let trace = derive(&IntegralSpec::new(b, l)).unwrap();
        assert!(trace.is_consistent(), "b={b} l={l}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn every_route_agrees(b in 0u32..16, l in 0u32..36) {
        let spec = IntegralSpec::new(b, l);
        let closed = closed_form(&spec);
        prop_assert_eq!(moment_sum(&spec).unwrap(), closed.clone());
        prop_assert_eq!(gauss_form(&spec).unwrap(), closed.clone());
        let stage_a = integrate_against_legendre(&inner_integral(&spec), &legendre_poly(l as usize));
        prop_assert_eq!(stage_a, closed);
    }
}
