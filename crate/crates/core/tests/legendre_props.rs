use legint::poly::Poly;
use legint::{eval_poly, full_moment, legendre_poly, moment_bruteforce, moment_closed, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `∫_{-1}^1 p(x) dx` through monomial moments against `P_0`.
fn integrate(p: &Poly<Rational>) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * full_moment(i as u32, 0))
        .sum()
}

#[test]
fn orthogonality() {
    let polys: Vec<_> = (0..=15)
        .map(|l| legendre_poly::<Rational>(l).to_poly())
        .collect();
    for (m, pm) in polys.iter().enumerate() {
        for (l, pl) in polys.iter().enumerate() {
            let inner = integrate(&(pm * pl));
            let expected = if m == l {
                q(2, 2 * l as i64 + 1)
            } else {
                Rational::zero()
            };
            assert_eq!(inner, expected, "m={m} l={l}");
        }
    }
}

#[test]
fn normalization() {
    for l in 0..=30 {
        assert_eq!(
            eval_poly(&legendre_poly(l), &Rational::one()),
            Rational::one(),
            "l={l}"
        );
    }
}

#[test]
fn parity() {
    let points = [
        q(1, 2),
        q(1, 3),
        q(2, 3),
        q(1, 7),
        q(5, 9),
        q(3, 4),
        q(9, 10),
        q(1, 1),
        q(7, 5),
        q(-3, 11),
    ];
    for l in 0..=15 {
        let p = legendre_poly::<Rational>(l);
        let sign = if l % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        for x in &points {
            assert_eq!(
                eval_poly(&p, &-x.clone()),
                sign.clone() * eval_poly(&p, x),
                "l={l} x={x}"
            );
        }
    }
}

#[test]
fn moment_routes_agree_on_full_grid() {
    for sigma in 0..=30 {
        for nu in 0..=30 {
            let closed = moment_closed(sigma, nu);
            assert_eq!(closed.pi_half_power(), Some(0));
            assert_eq!(
                closed.to_rational().unwrap(),
                moment_bruteforce(sigma, nu),
                "sigma={sigma} nu={nu}"
            );
        }
    }
}

proptest! {
    #[test]
    fn float_and_exact_coefficients_agree(l in 0usize..20, xn in -100i64..=100) {
        let x = xn as f64 / 100.0;
        let exact = eval_poly(&legendre_poly::<Rational>(l), &q(xn, 100));
        let exact_f = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        let recurrence = legint::legendre::legendre_value_and_derivative(l, &x).0;
        prop_assert!((exact_f - recurrence).abs() < 1e-13);
        // power-basis evaluation loses digits to cancellation as l grows
        let p = legendre_poly::<f64>(l);
        let bound = 4.0 * f64::EPSILON * p.coeffs().iter().map(|c| c.abs()).sum::<f64>() * (l as f64 + 1.0);
        prop_assert!((exact_f - eval_poly(&p, &x)).abs() <= bound);
    }

    #[test]
    fn odd_full_moments_vanish(j in 0u32..40, l in 0u32..30) {
        prop_assume!((j + l) % 2 == 1);
        prop_assert!(full_moment(j, l).is_zero());
    }
}
