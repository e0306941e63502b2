//! Independent checks on `I(b, l)`: an exact binomial expansion of the
//! double integral, and tensor-product Gauss–Legendre quadrature in either
//! the `(x, y)` variables or the original angular variables.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Float, Zero};
use thiserror::Error;

use crate::legendre::{full_moment_of, legendre_poly, legendre_value_and_derivative};
use crate::pipeline::IntegralSpec;
use crate::{Rational, Scalar};

/// `Σ_j C(2b, j) (-1)^{2b-j} M_j M_{2b-j}` with `M_j = ∫_{-1}^1 x^j P_l(x) dx`.
pub fn exact_double_integral(spec: &IntegralSpec) -> Rational {
    exact_double_integral_terms(spec).into_iter().sum()
}

/// The binomial terms of [`exact_double_integral`], indexed by `j`.
pub fn exact_double_integral_terms(spec: &IntegralSpec) -> Vec<Rational> {
    let p = legendre_poly::<Rational>(spec.l as usize);
    let n = 2 * spec.b;
    let moments: Vec<Rational> = (0..=n).map(|j| full_moment_of(&p, j)).collect();
    (0..=n as usize)
        .map(|j| {
            let (mj, mk) = (&moments[j], &moments[n as usize - j]);
            if mj.is_zero() || mk.is_zero() {
                return Rational::zero();
            }
            let c = Rational::from_integer(binomial(BigInt::from(n), BigInt::from(j)));
            let c = if (n as usize - j) % 2 == 1 { -c } else { c };
            c * mj * mk
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadratureError {
    #[error("quadrature needs at least one node")]
    NoNodes,
    #[error("quadrature construction failure: root {index} of P_{n} did not converge")]
    NoConvergence { n: usize, index: usize },
}

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<F> {
    nodes: Vec<F>,
    weights: Vec<F>,
}

impl<F: Float> QuadratureRule<F> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[F] {
        &self.nodes
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(F) -> F) -> F {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(F::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

const MAX_NEWTON_ITERATIONS: usize = 100;

/// `n`-point rule; roots of `P_n` by Newton iteration from
/// `cos(π (i - 1/4) / (n + 1/2))`, weights `2 / ((1 - x²) P_n'(x)²)`.
pub fn gauss_legendre_rule<F: Float + Scalar>(
    n: usize,
) -> Result<QuadratureRule<F>, QuadratureError> {
    if n == 0 {
        return Err(QuadratureError::NoNodes);
    }
    let c = |v: f64| F::from(v).expect("float constant");
    let tol = c(1e-15).max(F::epsilon() * c(4.0));
    let half = n.div_ceil(2);
    let mut upper = Vec::with_capacity(half);
    for i in 1..=half {
        let mut x = c((std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos());
        let mut converged = false;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let (p, dp) = legendre_value_and_derivative(n, &x);
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(QuadratureError::NoConvergence { n, index: i });
        }
        if n % 2 == 1 && i == half {
            x = F::zero();
        }
        let (_, dp) = legendre_value_and_derivative(n, &x);
        let w = c(2.0) / ((F::one() - x * x) * dp * dp);
        upper.push((x, w));
    }
    // `upper` runs from the largest root down to the middle.
    let mut pairs: Vec<(F, F)> = upper.iter().map(|&(x, w)| (-x, w)).collect();
    let mirror = if n % 2 == 1 { half - 1 } else { half };
    pairs.extend(upper[..mirror].iter().rev().copied());
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadForm {
    /// Integrand `(x-y)^{2b} P_l(x) P_l(y)` on `[-1, 1]²`.
    Xy,
    /// Integrand `sinθ sinθ' (cosθ - cosθ')^{2b} P_l(cosθ) P_l(cosθ')` on
    /// `[0, π]²`, sampled at `θ = arccos(x_i)` with weights `w_i / sinθ_i`.
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<F> {
    pub value: F,
    /// Fewer nodes than needed to integrate the polynomial integrand exactly.
    pub insufficient_nodes: bool,
    /// Largest `|(x-y)^{2b} P_l(x) P_l(y)|` over the sample grid.
    pub max_abs_sample: F,
}

impl<F: Float> QuadResult<F> {
    /// Relative error against `exact`, or, when `exact` is zero, absolute
    /// error scaled by the largest sampled integrand magnitude.
    pub fn scaled_error(&self, exact: F) -> F {
        let err = (self.value - exact).abs();
        if exact.is_zero() {
            err / self.max_abs_sample.max(F::min_positive_value())
        } else {
            err / exact.abs()
        }
    }
}

/// Whether an `n`-point rule integrates a degree-`(2b + l)` polynomial exactly.
pub fn rule_is_exact_for(spec: &IntegralSpec, n: usize) -> bool {
    2 * n > (2 * spec.b + spec.l) as usize
}

pub fn quad_double_integral<F: Float + Scalar>(
    spec: &IntegralSpec,
    rule: &QuadratureRule<F>,
    form: QuadForm,
) -> QuadResult<F> {
    let power = 2 * spec.b as i32;
    let l = spec.l as usize;
    // (abscissa, P_l at abscissa, effective weight × Jacobian factor)
    let samples: Vec<(F, F, F)> = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&x, &w)| match form {
            QuadForm::Xy => (x, legendre_value_and_derivative(l, &x).0, w),
            QuadForm::Theta => {
                let theta = x.acos();
                let (cos, sin) = (theta.cos(), theta.sin());
                (
                    cos,
                    legendre_value_and_derivative(l, &cos).0,
                    (w / sin) * sin,
                )
            }
        })
        .collect();
    let mut value = F::zero();
    let mut max_abs_sample = F::zero();
    for &(x, px, wx) in &samples {
        for &(y, py, wy) in &samples {
            let f = (x - y).powi(power) * px * py;
            max_abs_sample = max_abs_sample.max(f.abs());
            value = value + wx * wy * f;
        }
    }
    QuadResult {
        value,
        insufficient_nodes: !rule_is_exact_for(spec, rule.node_count()),
        max_abs_sample,
    }
}
