//! Exact evaluation of
//!
//! ```text
//! I(b, l) = ∫_{-1}^{1} ∫_{-1}^{1} (x - y)^{2b} P_l(x) P_l(y) dx dy
//! ```
//!
//! by a closed form, by a staged reduction through terminating
//! hypergeometric series and Gamma quotients, and by independent oracles
//! (binomial expansion in exact arithmetic, Gauss–Legendre quadrature in
//! floating point).
//!
//! Polynomial and series machinery is generic over a [`Scalar`] field type;
//! quadrature is generic over [`num_traits::Float`]. The concrete types used
//! throughout the exact routes are re-exported below as aliases.

pub mod cli;
pub mod exact_arith;
pub mod hypergeom;
pub mod legendre;
pub mod oracles;
pub mod pipeline;
pub mod poly;

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

/// Field-like scalar the polynomial and Pochhammer code is written against.
///
/// Implemented for every `Clone + Num + FromPrimitive` type, so `f32`, `f64`
/// and [`Rational`] all qualify.
pub trait Scalar: Clone + Num + FromPrimitive + Debug {}

impl<T: Clone + Num + FromPrimitive + Debug> Scalar for T {}

/// Arbitrary-precision exact fraction.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Exact univariate polynomial.
pub type RationalPoly = poly::Poly<Rational>;
/// Legendre polynomial with exact coefficients.
pub type ExactLegendre = legendre::LegendrePoly<Rational>;
/// Double-precision Gauss–Legendre rule.
pub type QuadratureRule64 = oracles::QuadratureRule<f64>;

pub use exact_arith::{
    factorial, gamma_half, gamma_quotient, pochhammer, ArithError, GammaFactor, HalfInteger,
};
pub use hypergeom::{
    gauss_unit, hyp2f1_terminating, quadratic_transform_check, Hyp2F1Spec, HypergeomError,
};
pub use legendre::{
    eval_poly, full_moment, legendre_poly, moment_bruteforce, moment_closed, LegendrePoly,
};
pub use oracles::{
    exact_double_integral, gauss_legendre_rule, quad_double_integral, QuadForm, QuadResult,
    QuadratureError, QuadratureRule,
};
pub use pipeline::{
    closed_form, derive, gauss_form, inner_integral, inner_integral_oracle, moment_sum,
    moment_sum_terms, DerivationTrace, IntegralSpec, PipelineError, Stage,
};
