//! Exact factorials, Pochhammer symbols and Gamma values at integer and
//! half-integer points.
//!
//! Gamma at a half-integer carries a factor of `√π`, so values are kept as
//! [`GammaFactor`]s: a rational coefficient times `π^{p/2}`. Gamma at a
//! non-positive integer is the [`GammaFactor::Pole`] value rather than an
//! error, which lets quotients such as `1/Γ(0)` resolve to an exact zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("indeterminate Gamma ratio: {0}")]
    IndeterminateGammaRatio(String),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("Gamma pole has no rational value")]
    PoleValue,
    #[error("residual factor pi^({0}/2) prevents conversion to a rational")]
    ResidualPi(i64),
}

/// `n!` for `n ≥ 0`.
pub fn factorial(n: i64) -> Result<Rational, ArithError> {
    if n < 0 {
        return Err(ArithError::NegativeFactorial(n));
    }
    Ok(Rational::from_integer(factorial_int(n as u64)))
}

pub(crate) fn factorial_int(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Rising factorial `(a)_k = a (a+1) … (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Scalar>(a: &T, k: usize) -> T {
    let mut acc = T::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// `2^e` as an exact rational, for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// `n` or `n + 1/2` for integer `n`, stored as twice its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfInteger {
    twice: BigInt,
}

impl HalfInteger {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        Self {
            twice: twice.into(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            twice: n.into() * 2,
        }
    }

    /// `n + 1/2`.
    pub fn half_odd(n: impl Into<BigInt>) -> Self {
        Self {
            twice: n.into() * 2 + 1,
        }
    }

    /// Exact conversion; `None` unless the denominator divides 2.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let doubled = q * Rational::from_integer(BigInt::from(2));
        doubled.is_integer().then(|| Self {
            twice: doubled.to_integer(),
        })
    }

    pub fn twice_value(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && !self.twice.is_positive()
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| &self.twice / 2)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.twice.clone(), BigInt::from(2))
    }

    pub fn add_int(&self, n: i64) -> Self {
        Self {
            twice: &self.twice + BigInt::from(n) * 2,
        }
    }
}

impl From<i64> for HalfInteger {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<&HalfInteger> for Rational {
    fn from(h: &HalfInteger) -> Self {
        h.to_rational()
    }
}

impl PartialOrd for HalfInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInteger {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        Self {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        Self {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        Self { twice: -self.twice }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// `coeff · π^{pi_half_power/2}`, or a Gamma pole.
///
/// Zero is always stored with `pi_half_power == 0` so structural equality
/// is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaFactor {
    Finite { coeff: Rational, pi_half_power: i64 },
    Pole,
}

impl GammaFactor {
    pub fn new(coeff: Rational, pi_half_power: i64) -> Self {
        let pi_half_power = if coeff.is_zero() { 0 } else { pi_half_power };
        GammaFactor::Finite {
            coeff,
            pi_half_power,
        }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn sqrt_pi() -> Self {
        Self::new(Rational::one(), 1)
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, GammaFactor::Pole)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GammaFactor::Finite { coeff, .. } if coeff.is_zero())
    }

    pub fn coeff(&self) -> Option<&Rational> {
        match self {
            GammaFactor::Finite { coeff, .. } => Some(coeff),
            GammaFactor::Pole => None,
        }
    }

    pub fn pi_half_power(&self) -> Option<i64> {
        match self {
            GammaFactor::Finite { pi_half_power, .. } => Some(*pi_half_power),
            GammaFactor::Pole => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        match self {
            GammaFactor::Finite {
                coeff,
                pi_half_power,
            } => Self::new(coeff * q, *pi_half_power),
            GammaFactor::Pole if q.is_zero() => Self::zero(),
            GammaFactor::Pole => GammaFactor::Pole,
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        use GammaFactor::*;
        match (self, rhs) {
            (
                Finite {
                    coeff: a,
                    pi_half_power: p,
                },
                Finite {
                    coeff: b,
                    pi_half_power: q,
                },
            ) => Ok(Self::new(a * b, p + q)),
            (Pole, Pole) => Ok(Pole),
            (Pole, f) | (f, Pole) if f.is_zero() => Err(ArithError::IndeterminateGammaRatio(
                "pole times zero".to_string(),
            )),
            _ => Ok(Pole),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        use GammaFactor::*;
        match (self, rhs) {
            (_, f) if f.is_zero() => Err(ArithError::DivisionByZero),
            (
                Finite {
                    coeff: a,
                    pi_half_power: p,
                },
                Finite {
                    coeff: b,
                    pi_half_power: q,
                },
            ) => Ok(Self::new(a / b, p - q)),
            (Finite { .. }, Pole) => Ok(Self::zero()),
            (Pole, Finite { .. }) => Ok(Pole),
            (Pole, Pole) => Err(ArithError::IndeterminateGammaRatio(
                "pole divided by pole".to_string(),
            )),
        }
    }

    /// The rational value; fails on a pole or on an uncancelled `√π`.
    pub fn to_rational(&self) -> Result<Rational, ArithError> {
        match self {
            GammaFactor::Pole => Err(ArithError::PoleValue),
            GammaFactor::Finite {
                coeff,
                pi_half_power: 0,
            } => Ok(coeff.clone()),
            GammaFactor::Finite { pi_half_power, .. } => {
                Err(ArithError::ResidualPi(*pi_half_power))
            }
        }
    }

    /// Floating-point value, poles mapping to infinity.
    pub fn to_f64(&self) -> f64 {
        match self {
            GammaFactor::Pole => f64::INFINITY,
            GammaFactor::Finite {
                coeff,
                pi_half_power,
            } => {
                coeff.to_f64().unwrap_or(f64::NAN)
                    * std::f64::consts::PI.sqrt().powi(*pi_half_power as i32)
            }
        }
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaFactor::Pole => write!(f, "pole"),
            GammaFactor::Finite {
                coeff,
                pi_half_power: 0,
            } => write!(f, "{coeff}"),
            GammaFactor::Finite {
                coeff,
                pi_half_power,
            } => {
                write!(f, "{coeff}·pi^({pi_half_power}/2)")
            }
        }
    }
}

/// Γ(z) for integer or half-integer `z`.
pub fn gamma_half(z: &HalfInteger) -> GammaFactor {
    if let Some(n) = z.to_integer() {
        if !n.is_positive() {
            return GammaFactor::Pole;
        }
        let n = n.to_u64().expect("Gamma argument out of range");
        return GammaFactor::rational(Rational::from_integer(factorial_int(n - 1)));
    }
    // Walk from Γ(1/2) = √π using Γ(z+1) = z Γ(z).
    let mut coeff = Rational::one();
    let mut cur = HalfInteger::half_odd(0);
    while cur < *z {
        coeff *= cur.to_rational();
        cur = cur.add_int(1);
    }
    while cur > *z {
        cur = cur.add_int(-1);
        coeff /= cur.to_rational();
    }
    GammaFactor::new(coeff, 1)
}

/// `∏ Γ(numerators) / ∏ Γ(denominators)`.
///
/// Surplus poles in the denominator give an exact zero. A numerator pole
/// that is not outnumbered by denominator poles is reported as an
/// indeterminate ratio; no pole/pole limits are taken.
pub fn gamma_quotient(
    numerators: &[HalfInteger],
    denominators: &[HalfInteger],
) -> Result<GammaFactor, ArithError> {
    let num_poles = numerators
        .iter()
        .filter(|z| z.is_nonpositive_integer())
        .count();
    let den_poles = denominators
        .iter()
        .filter(|z| z.is_nonpositive_integer())
        .count();
    if den_poles > num_poles {
        return Ok(GammaFactor::zero());
    }
    if num_poles > 0 {
        let listed = |zs: &[HalfInteger]| {
            zs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Err(ArithError::IndeterminateGammaRatio(format!(
            "Gamma[{}] / Gamma[{}] has {num_poles} numerator pole(s)",
            listed(numerators),
            listed(denominators),
        )));
    }
    let mut acc = GammaFactor::one();
    for z in numerators {
        acc = acc.checked_mul(&gamma_half(z))?;
    }
    for z in denominators {
        acc = acc.checked_div(&gamma_half(z))?;
    }
    Ok(acc)
}
