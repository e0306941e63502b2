//! Legendre polynomials with exact coefficients, and their power moments on
//! `[0, 1]` and `[-1, 1]`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact_arith::{gamma_quotient, pow2, GammaFactor, HalfInteger};
use crate::poly::{eval_coeffs, Coefficients, Poly};
use crate::{Rational, Scalar};

/// `P_l` in the power basis, dense, `degree + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrePoly<T> {
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> LegendrePoly<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, x: &T) -> T {
        eval_coeffs(&self.coeffs, x)
    }

    pub fn to_poly(&self) -> Poly<T> {
        Poly::new(self.coeffs.clone())
    }
}

impl<T> Coefficients<T> for LegendrePoly<T> {
    fn coefficients(&self) -> &[T] {
        &self.coeffs
    }
}

/// Builds `P_l` from `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`.
pub fn legendre_poly<T: Scalar>(l: usize) -> LegendrePoly<T> {
    let c = |n: usize| T::from_usize(n).expect("degree fits scalar");
    let mut prev = vec![T::one()];
    if l == 0 {
        return LegendrePoly {
            degree: 0,
            coeffs: prev,
        };
    }
    let mut cur = vec![T::zero(), T::one()];
    for n in 1..l {
        let mut next = vec![T::zero(); n + 2];
        let up = c(2 * n + 1) / c(n + 1);
        let down = c(n) / c(n + 1);
        for (i, a) in cur.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + up.clone() * a.clone();
        }
        for (i, a) in prev.iter().enumerate() {
            next[i] = next[i].clone() - down.clone() * a.clone();
        }
        prev = std::mem::replace(&mut cur, next);
    }
    LegendrePoly {
        degree: l,
        coeffs: cur,
    }
}

pub fn eval_poly<T: Scalar, P: Coefficients<T>>(p: &P, x: &T) -> T {
    eval_coeffs(p.coefficients(), x)
}

/// `(P_n(x), P_n'(x))` by the recurrence, without building coefficients.
///
/// The derivative uses `(x² - 1) P_n' = n (x P_n - P_{n-1})`, so `x` must
/// not be `±1` when `n ≥ 1`.
pub fn legendre_value_and_derivative<T: Scalar>(n: usize, x: &T) -> (T, T) {
    let c = |k: usize| T::from_usize(k).expect("degree fits scalar");
    if n == 0 {
        return (T::one(), T::zero());
    }
    let mut prev = T::one();
    let mut cur = x.clone();
    for k in 1..n {
        let next = (c(2 * k + 1) * x.clone() * cur.clone() - c(k) * prev.clone()) / c(k + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    let deriv = c(n) * (x.clone() * cur.clone() - prev) / (x.clone() * x.clone() - T::one());
    (cur, deriv)
}

/// `∫_0^1 x^σ P_ν(x) dx` in Gamma form:
/// `√π 2^{-σ-1} Γ(1+σ) / (Γ(1+(σ-ν)/2) Γ((σ+ν+3)/2))`.
///
/// A pole of `Γ(1+(σ-ν)/2)` (σ < ν, same parity) gives exact zero. The
/// `√π` always cancels, so the result has `pi_half_power == 0`.
pub fn moment_closed(sigma: u32, nu: u32) -> GammaFactor {
    let (s, n) = (i64::from(sigma), i64::from(nu));
    let quotient = gamma_quotient(
        &[HalfInteger::from_twice(2 + 2 * s)],
        &[
            HalfInteger::from_twice(2 + s - n),
            HalfInteger::from_twice(s + n + 3),
        ],
    )
    .expect("numerator Gamma(1 + sigma) is finite");
    quotient
        .checked_mul(&GammaFactor::sqrt_pi())
        .expect("finite product")
        .scale(&pow2(-s - 1))
}

/// `∫_0^1 x^σ P_ν(x) dx` by term-wise integration of the coefficients.
pub fn moment_bruteforce(sigma: u32, nu: u32) -> Rational {
    half_moment_of(&legendre_poly(nu as usize), sigma)
}

pub(crate) fn half_moment_of(p: &LegendrePoly<Rational>, sigma: u32) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c / Rational::from_integer(BigInt::from(sigma as usize + i + 1)))
        .sum()
}

/// `∫_{-1}^1 x^j P_l(x) dx`.
pub fn full_moment(j: u32, l: u32) -> Rational {
    full_moment_of(&legendre_poly(l as usize), j)
}

pub(crate) fn full_moment_of(p: &LegendrePoly<Rational>, j: u32) -> Rational {
    if (j as usize + p.degree()) % 2 == 1 {
        return Rational::zero();
    }
    half_moment_of(p, j) * Rational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::factorial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn low_degree_coefficients() {
        assert_eq!(legendre_poly::<Rational>(0).coeffs(), &[q(1, 1)]);
        assert_eq!(legendre_poly::<Rational>(1).coeffs(), &[q(0, 1), q(1, 1)]);
        assert_eq!(
            legendre_poly::<Rational>(2).coeffs(),
            &[q(-1, 2), q(0, 1), q(3, 2)]
        );
        assert_eq!(
            legendre_poly::<Rational>(3).coeffs(),
            &[q(0, 1), q(-3, 2), q(0, 1), q(5, 2)]
        );
    }

    #[test]
    fn structural_invariants() {
        for l in 0..=30usize {
            let p = legendre_poly::<Rational>(l);
            assert_eq!(p.coeffs().len(), l + 1);
            let lead = factorial(2 * l as i64).unwrap()
                / (pow2(l as i64) * factorial(l as i64).unwrap().pow(2));
            assert_eq!(p.coeffs()[l], lead);
            for (i, c) in p.coeffs().iter().enumerate() {
                if (i + l) % 2 == 1 {
                    assert!(c.is_zero(), "P_{l} coefficient {i}");
                }
            }
            assert_eq!(eval_poly(&p, &q(1, 1)), q(1, 1));
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_poly(&legendre_poly(3), &q(1, 1)), q(1, 1));
        assert_eq!(eval_poly(&legendre_poly(2), &q(0, 1)), q(-1, 2));
        assert_eq!(eval_poly(&legendre_poly(4), &q(-1, 1)), q(1, 1));
    }

    #[test]
    fn recurrence_value_matches_coefficients() {
        let x = q(2, 7);
        for n in 0..12 {
            let (v, d) = legendre_value_and_derivative(n, &x);
            let p = legendre_poly::<Rational>(n);
            assert_eq!(v, p.eval(&x));
            let dcoeffs: Vec<Rational> = p
                .coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect();
            assert_eq!(d, eval_coeffs(&dcoeffs, &x));
        }
        let (v, _) = legendre_value_and_derivative(5, &0.3f64);
        assert!((v - legendre_poly::<f64>(5).eval(&0.3)).abs() < 1e-15);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment_closed(1, 1), GammaFactor::rational(q(1, 3)));
        assert_eq!(moment_closed(0, 0), GammaFactor::rational(q(1, 1)));
        assert_eq!(moment_closed(0, 2), GammaFactor::zero());
        assert_eq!(moment_bruteforce(1, 1), q(1, 3));
        assert_eq!(moment_bruteforce(2, 0), q(1, 3));
        assert_eq!(
            moment_closed(3, 3).to_rational().unwrap(),
            moment_bruteforce(3, 3)
        );
    }

    #[test]
    fn full_moment_examples() {
        assert_eq!(full_moment(1, 0), q(0, 1));
        assert_eq!(full_moment(0, 0), q(2, 1));
        assert_eq!(full_moment(2, 2), q(4, 15));
    }
}
