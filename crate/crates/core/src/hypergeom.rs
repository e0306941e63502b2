//! Terminating Gauss hypergeometric series `₂F₁(a, b; c; z)`, Gauss
//! summation at `z = 1`, and the quadratic transformation
//! `₂F₁(a, b; 2b; z) = (1 - z/2)^{-a} ₂F₁(a/2, (1+a)/2; b + 1/2; (z/(2-z))²)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exact_arith::{gamma_quotient, ArithError, GammaFactor, HalfInteger};
use crate::poly::eval_coeffs;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergeomError {
    #[error("series does not terminate: neither {a} nor {b} is a non-positive integer")]
    NotTerminating { a: String, b: String },
    #[error("parameter pole: (c)_k vanishes for c = {c} within {terms} terms")]
    ParameterPole { c: Rational, terms: usize },
    #[error("transformation singularity at z = 2")]
    TransformationSingularity,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Parameters of a terminating `₂F₁`.
///
/// `termination_index` is the last `k` with a possibly nonzero term: the
/// smallest `n` such that `-n` is an upper parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyp2F1Spec {
    a: Rational,
    b: Rational,
    c: Rational,
    termination_index: usize,
}

fn nonpositive_integer(q: &Rational) -> Option<usize> {
    (q.is_integer() && !q.is_positive()).then(|| (-q.to_integer()).to_usize())?
}

impl Hyp2F1Spec {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, HypergeomError> {
        let termination_index = [&a, &b]
            .into_iter()
            .filter_map(nonpositive_integer)
            .min()
            .ok_or_else(|| HypergeomError::NotTerminating {
                a: a.to_string(),
                b: b.to_string(),
            })?;
        // (c)_k appears for k ≤ termination_index, and (c)_k = 0 once c + k - 1 = 0.
        if let Some(n) = nonpositive_integer(&c) {
            if n < termination_index {
                return Err(HypergeomError::ParameterPole {
                    c,
                    terms: termination_index,
                });
            }
        }
        Ok(Self {
            a,
            b,
            c,
            termination_index,
        })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn termination_index(&self) -> usize {
        self.termination_index
    }

    /// `(a)_k (b)_k / (k! (c)_k)` for `k = 0..=termination_index`, by the
    /// running ratio `t_{k+1} = t_k (a+k)(b+k) / ((k+1)(c+k))`.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.termination_index + 1);
        let mut term = Rational::one();
        out.push(term.clone());
        for k in 0..self.termination_index {
            let kq = Rational::from_integer(BigInt::from(k));
            term = term * (&self.a + &kq) * (&self.b + &kq)
                / ((&kq + Rational::one()) * (&self.c + &kq));
            out.push(term.clone());
        }
        out
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        eval_coeffs(&self.coefficients(), z)
    }
}

pub fn hyp2f1_terminating(spec: &Hyp2F1Spec, z: &Rational) -> Rational {
    spec.eval(z)
}

/// `Γ(c) Γ(c-a-b) / (Γ(c-a) Γ(c-b))`.
pub fn gauss_unit(
    a: &HalfInteger,
    b: &HalfInteger,
    c: &HalfInteger,
) -> Result<GammaFactor, ArithError> {
    gamma_quotient(
        &[c.clone(), c.clone() - a.clone() - b.clone()],
        &[c.clone() - a.clone(), c.clone() - b.clone()],
    )
}

/// Evaluates both sides of the quadratic transformation exactly and
/// compares them. `a` must be a non-positive even integer so that both
/// sides are rational.
pub fn quadratic_transform_check(
    a: &Rational,
    b_param: &HalfInteger,
    z: &Rational,
) -> Result<bool, HypergeomError> {
    let two = Rational::from_integer(BigInt::from(2));
    let power = match nonpositive_integer(a) {
        Some(n) if n % 2 == 0 => n,
        _ => {
            return Err(HypergeomError::InvalidParameter(format!(
                "a = {a} is not a non-positive even integer"
            )))
        }
    };
    if *z == two {
        return Err(HypergeomError::TransformationSingularity);
    }
    let b = b_param.to_rational();
    let lhs = Hyp2F1Spec::new(a.clone(), b.clone(), &b * &two)?.eval(z);

    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rhs_spec = Hyp2F1Spec::new(a / &two, (a + Rational::one()) / &two, &b + &half)?;
    let w = z / (&two - z);
    let prefactor = (Rational::one() - z / &two).pow(power as i32);
    let rhs = prefactor * rhs_spec.eval(&(&w * &w));
    Ok(lhs == rhs)
}
