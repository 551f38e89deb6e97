//! Coefficient rings used by the noncommutative engine.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::fraction::ParamFraction;
use super::poly::{ParamPoly, Sym};
use super::Rational;
use crate::error::{Error, Result};

/// Commutative coefficient ring.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A field together with an embedding of the parameter polynomials.
pub trait Field: Coeff {
    fn inv_ref(&self) -> Self;

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv_ref())
    }

    /// Image of a parameter polynomial under `spec`.
    fn embed(p: &ParamPoly, spec: &Specialization) -> Result<Self>;

    /// Image of a fraction under `spec`.
    fn embed_fraction(f: &ParamFraction, spec: &Specialization) -> Result<Self> {
        let num = Self::embed(f.num(), spec)?;
        let den = Self::embed(f.den(), spec)?;
        if den.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes", f.den())));
        }
        Ok(num.div_ref(&den))
    }

    /// Serialized form used in reports.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Rational values assigned to some parameters; the rest stay symbolic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    pub values: BTreeMap<Sym, Rational>,
}

impl Specialization {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Sym, value: Rational) -> Self {
        self.values.insert(sym, value);
        self
    }

    pub fn with_int(self, sym: Sym, value: i64) -> Self {
        self.with(sym, Rational::from_integer(value.into()))
    }

    pub fn get(&self, sym: Sym) -> Option<&Rational> {
        self.values.get(&sym)
    }

    pub fn apply(&self, p: &ParamPoly) -> ParamPoly {
        if self.values.is_empty() {
            p.clone()
        } else {
            p.specialize(&self.values)
        }
    }

    pub fn describe(&self) -> String {
        if self.values.is_empty() {
            return "symbolic".into();
        }
        self.values
            .iter()
            .map(|(s, v)| format!("{s}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Field for Rational {
    fn inv_ref(&self) -> Self {
        self.recip()
    }

    fn embed(p: &ParamPoly, spec: &Specialization) -> Result<Self> {
        let v = spec.apply(p);
        v.as_constant().ok_or_else(|| {
            Error::Unbound(format!(
                "rational coefficients require values for {:?} in {}",
                v.symbols(),
                p
            ))
        })
    }
}

impl Coeff for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        ParamPoly::is_one(self)
    }
}

/// The field of fractions with every value kept fully reduced.
///
/// Canonical representatives keep sizes bounded during elimination, at the
/// cost of a gcd per operation.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn(ParamFraction);

impl RatFn {
    pub fn new(f: ParamFraction) -> Self {
        RatFn(f.reduced())
    }

    pub fn as_fraction(&self) -> &ParamFraction {
        &self.0
    }

    pub fn into_fraction(self) -> ParamFraction {
        self.0
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self.0)
    }
}

impl Coeff for RatFn {
    fn zero() -> Self {
        RatFn(ParamFraction::zero())
    }
    fn one() -> Self {
        RatFn(ParamFraction::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.0.is_zero() {
            return rhs.clone();
        }
        if rhs.0.is_zero() {
            return self.clone();
        }
        RatFn::new(&self.0 + &rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        if rhs.0.is_zero() {
            return self.clone();
        }
        RatFn::new(&self.0 - &rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        RatFn::new(&self.0 * &rhs.0)
    }
    fn neg_ref(&self) -> Self {
        RatFn(-&self.0)
    }
    fn is_one(&self) -> bool {
        self.0.is_polynomial() && self.0.num().is_one()
    }
}

impl Field for RatFn {
    fn inv_ref(&self) -> Self {
        RatFn(self.0.inv().expect("inverse of zero"))
    }

    fn embed(p: &ParamPoly, spec: &Specialization) -> Result<Self> {
        Ok(RatFn(ParamFraction::from_poly(spec.apply(p))))
    }
}
