//! Staged evaluation of `I(b, l) = ∫∫ (x-y)^{2b} P_l(x) P_l(y) dx dy`.
//!
//! Each stage reaches `I(b, l)` by a different algebraic route:
//!
//! 1. [`inner_integral`]: the `x`-integral as a polynomial in `y`, built from
//!    the terminating series `₂F₁(l/2-b, (l+1)/2-b; l+3/2; 1/y²)`, then
//!    integrated against `P_l(y)` term by term.
//! 2. [`moment_sum`]: the same series folded onto `[0, 1]` with each power
//!    moment taken from the Gamma-form moment formula.
//! 3. [`gauss_form`]: the k-sum collapsed to `₂F₁(-b-1/2, l-b; l+3/2; 1)` and
//!    evaluated by Gauss summation, leaving a pure Gamma quotient.
//! 4. [`closed_form`]: `(-1)^l 2^{2b+2} (b!)² / ((2b+1) (b-l)! (b+l+1)!)`,
//!    zero for `b < l`.
//!
//! Odd and even `l` share one code path; the k-sum runs to
//! `⌊(2b-l)/2⌋` in both cases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_arith::{
    factorial, gamma_quotient, pochhammer, pow2, ArithError, GammaFactor, HalfInteger,
};
use crate::hypergeom::{gauss_unit, Hyp2F1Spec, HypergeomError};
use crate::legendre::{full_moment_of, legendre_poly, moment_closed};
use crate::{ExactLegendre, Rational, RationalPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Hypergeom(#[from] HypergeomError),
    #[error("stage mismatch: {0}")]
    StageMismatch(Box<StageMismatch>),
}

/// Two stages that produced different values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageMismatch {
    pub first: Stage,
    pub first_value: Rational,
    pub second: Stage,
    pub second_value: Rational,
}

impl fmt::Display for StageMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}, {} = {}",
            self.first, self.first_value, self.second, self.second_value
        )
    }
}

/// Power `2b` and Legendre order `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralSpec {
    pub b: u32,
    pub l: u32,
}

impl IntegralSpec {
    pub fn new(b: u32, l: u32) -> Self {
        Self { b, l }
    }

    /// Highest k in the reduced series, or `None` when `l > 2b`.
    fn series_len(&self) -> Option<usize> {
        (self.l <= 2 * self.b).then(|| ((2 * self.b - self.l) / 2) as usize)
    }
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={} l={}", self.b, self.l)
    }
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `(-2b)_l 2^{l+1} / (l+1)_{l+1}`.
fn inner_prefactor(spec: &IntegralSpec) -> Rational {
    let (b, l) = (i64::from(spec.b), i64::from(spec.l));
    pochhammer(&int(-2 * b), l as usize) * pow2(l + 1) / pochhammer(&int(l + 1), (l + 1) as usize)
}

/// `₂F₁(l/2 - b, (l+1)/2 - b; l + 3/2; ·)`; terminates whenever `l ≤ 2b`.
fn reduced_series(spec: &IntegralSpec) -> Result<Hyp2F1Spec, HypergeomError> {
    let (b, l) = (i64::from(spec.b), i64::from(spec.l));
    Hyp2F1Spec::new(
        Rational::new((l - 2 * b).into(), 2.into()),
        Rational::new((l + 1 - 2 * b).into(), 2.into()),
        Rational::new((2 * l + 3).into(), 2.into()),
    )
}

/// `∫_{-1}^1 (x-y)^{2b} P_l(x) dx` as a polynomial in `y`, via
/// `(-2b)_l 2^{l+1} / (l+1)_{l+1} · y^{2b-l} ₂F₁(…; 1/y²)`.
pub fn inner_integral(spec: &IntegralSpec) -> RationalPoly {
    let Some(last) = spec.series_len() else {
        return RationalPoly::zero();
    };
    let series = reduced_series(spec).expect("series terminates for l <= 2b");
    debug_assert_eq!(series.termination_index(), last);
    let prefactor = inner_prefactor(spec);
    let top = (2 * spec.b - spec.l) as usize;
    let mut coeffs = vec![Rational::zero(); top + 1];
    for (k, c) in series.coefficients().into_iter().enumerate() {
        coeffs[top - 2 * k] = &prefactor * c;
    }
    RationalPoly::new(coeffs)
}

/// The same inner integral by expanding `(x-y)^{2b}` binomially.
pub fn inner_integral_oracle(spec: &IntegralSpec) -> RationalPoly {
    let p = legendre_poly::<Rational>(spec.l as usize);
    let n = 2 * spec.b;
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for j in 0..=n {
        let power = n - j;
        let sign = if power.is_multiple_of(2) {
            int(1)
        } else {
            int(-1)
        };
        coeffs[power as usize] =
            sign * int(binomial(BigInt::from(n), BigInt::from(j))) * full_moment_of(&p, j);
    }
    RationalPoly::new(coeffs)
}

/// `∫_{-1}^1 q(y) P_l(y) dy` by monomial moments.
pub fn integrate_against_legendre(q: &RationalPoly, p: &ExactLegendre) -> Rational {
    q.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c * full_moment_of(p, i as u32))
        .sum()
}

/// The individual k-terms of the folded series,
/// `2 · (-2b)_l 2^{l+1} / (l+1)_{l+1} · c_k · ∫_0^1 y^{2b-2k-l} P_l(y) dy`.
pub fn moment_sum_terms(spec: &IntegralSpec) -> Result<Vec<Rational>, PipelineError> {
    let Some(_) = spec.series_len() else {
        return Ok(Vec::new());
    };
    let series = reduced_series(spec)?;
    let scale = inner_prefactor(spec) * int(2);
    series
        .coefficients()
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let sigma = 2 * spec.b - spec.l - 2 * k as u32;
            let moment = moment_closed(sigma, spec.l).to_rational()?;
            Ok(&scale * c * moment)
        })
        .collect()
}

pub fn moment_sum(spec: &IntegralSpec) -> Result<Rational, PipelineError> {
    Ok(moment_sum_terms(spec)?.into_iter().sum())
}

/// Gauss-summation route:
/// `√π (-2b)_l 2^{2l-2b+1} Γ(2b-l+1) / ((l+1)_{l+1} Γ(b-l+1) Γ(b+3/2))`
/// times `₂F₁(-b-1/2, l-b; l+3/2; 1)`.
pub fn gauss_form(spec: &IntegralSpec) -> Result<Rational, PipelineError> {
    if spec.series_len().is_none() {
        return Ok(Rational::zero());
    }
    let (b, l) = (i64::from(spec.b), i64::from(spec.l));
    let rational_part = pochhammer(&int(-2 * b), l as usize) * pow2(2 * l - 2 * b + 1)
        / pochhammer(&int(l + 1), (l + 1) as usize);
    let gammas = gamma_quotient(
        &[HalfInteger::integer(2 * b - l + 1)],
        &[
            HalfInteger::integer(b - l + 1),
            HalfInteger::half_odd(b + 1),
        ],
    )?;
    let unit_sum = gauss_unit(
        &HalfInteger::half_odd(-b - 1),
        &HalfInteger::integer(l - b),
        &HalfInteger::half_odd(l + 1),
    )?;
    let value = GammaFactor::sqrt_pi()
        .checked_mul(&gammas)?
        .checked_mul(&unit_sum)?
        .scale(&rational_part);
    Ok(value.to_rational()?)
}

/// `(-1)^l 2^{2b+2} (b!)² / ((2b+1) (b-l)! (b+l+1)!)` for `b ≥ l`, else 0.
pub fn closed_form(spec: &IntegralSpec) -> Rational {
    let (b, l) = (i64::from(spec.b), i64::from(spec.l));
    if b < l {
        return Rational::zero();
    }
    let fact = |n: i64| factorial(n).expect("non-negative");
    let sign = if l % 2 == 0 { int(1) } else { int(-1) };
    sign * pow2(2 * b + 2) * fact(b).pow(2) / (int(2 * b + 1) * fact(b - l) * fact(b + l + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    InnerIntegral,
    MomentSum,
    GaussSummation,
    ClosedForm,
}

impl Stage {
    pub const ALL: [Stage; 4] = [
        Stage::InnerIntegral,
        Stage::MomentSum,
        Stage::GaussSummation,
        Stage::ClosedForm,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Stage::InnerIntegral => "inner integral",
            Stage::MomentSum => "moment sum",
            Stage::GaussSummation => "gauss summation",
            Stage::ClosedForm => "closed form",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Values of `I(b, l)` from every stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub spec: IntegralSpec,
    /// The inner integral as a polynomial in `y`.
    pub inner: RationalPoly,
    pub stage_values: Vec<(Stage, Rational)>,
    pub final_value: Rational,
}

impl DerivationTrace {
    pub fn is_consistent(&self) -> bool {
        self.check().is_ok()
    }

    /// First stage that disagrees with the closed form.
    pub fn check(&self) -> Result<(), PipelineError> {
        match self
            .stage_values
            .iter()
            .find(|(_, v)| *v != self.final_value)
        {
            None => Ok(()),
            Some((stage, value)) => Err(PipelineError::StageMismatch(Box::new(StageMismatch {
                first: *stage,
                first_value: value.clone(),
                second: Stage::ClosedForm,
                second_value: self.final_value.clone(),
            }))),
        }
    }
}

/// Runs every stage. Stage disagreement is recorded in the trace (see
/// [`DerivationTrace::check`]); `Err` means a stage could not be evaluated.
pub fn derive(spec: &IntegralSpec) -> Result<DerivationTrace, PipelineError> {
    let inner = inner_integral(spec);
    let legendre = legendre_poly::<Rational>(spec.l as usize);
    let final_value = closed_form(spec);
    let stage_values = vec![
        (
            Stage::InnerIntegral,
            integrate_against_legendre(&inner, &legendre),
        ),
        (Stage::MomentSum, moment_sum(spec)?),
        (Stage::GaussSummation, gauss_form(spec)?),
        (Stage::ClosedForm, final_value.clone()),
    ];
    Ok(DerivationTrace {
        spec: *spec,
        inner,
        stage_values,
        final_value,
    })
}
