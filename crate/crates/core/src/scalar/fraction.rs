//! Quotients of parameter polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::gcd;
use super::poly::{forward_owned, ParamPoly, Sym};
use super::Rational;
use crate::error::{Error, Result};

/// `num / den` with `den != 0`.
///
/// Arithmetic reduces only cheaply (constant denominators, equal
/// denominators, exact division of the numerator); [`ParamFraction::reduced`]
/// removes the full gcd. Equality is decided by cross-multiplication, so it
/// never depends on how far a value was reduced.
#[derive(Clone)]
pub struct ParamFraction {
    num: ParamPoly,
    den: ParamPoly,
}

impl ParamFraction {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        ParamFraction {
            num: p,
            den: ParamPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(ParamPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Cheap normal form: constant denominators are folded into the
    /// numerator, the denominator is made monic and free of `q` powers.
    fn normalize(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let (den, shift) = den.q_normalized();
        let num = num.mul_monomial(&super::poly::Monomial::var(Sym::Q, -shift));
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        ParamFraction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Fully reduced representative: numerator and denominator coprime.
    pub fn reduced(&self) -> Self {
        if self.den.is_one() || self.num.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.num, &self.den);
        if g.is_one() {
            return self.clone();
        }
        let num = self.num.div_exact(&g).unwrap().expect("gcd divides numerator");
        let den = self.den.div_exact(&g).unwrap().expect("gcd divides denominator");
        Self::normalize(num, den)
    }

    /// The polynomial value if the denominator divides the numerator exactly.
    pub fn to_poly(&self) -> Result<ParamPoly> {
        self.num.div_exact(&self.den)?.ok_or_else(|| {
            Error::NotDivisible(format!("({}) / ({})", self.num, self.den))
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    /// Substitute rational values; fails if the denominator vanishes.
    pub fn specialize(&self, values: &BTreeMap<Sym, Rational>) -> Result<Self> {
        let r = self.reduced();
        let den = r.den.specialize(values);
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "denominator {} vanishes at the requested point",
                r.den
            )));
        }
        Ok(Self::normalize(r.num.specialize(values), den))
    }

    /// Exact value at `q = 1`.
    pub fn at_q1(&self) -> Result<ParamPoly> {
        let mut values = BTreeMap::new();
        values.insert(Sym::Q, num_traits::One::one());
        self.specialize(&values)?.reduced().to_poly()
    }

    /// Simultaneous substitution of symbols by fractions.
    pub fn substitute(&self, bindings: &BTreeMap<Sym, ParamFraction>) -> Result<Self> {
        let n = substitute_poly(&self.num, bindings)?;
        let d = substitute_poly(&self.den, bindings)?;
        n.checked_div(&d)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

/// Substitute fractions into a polynomial, returning a fraction.
pub fn substitute_poly(
    p: &ParamPoly,
    bindings: &BTreeMap<Sym, ParamFraction>,
) -> Result<ParamFraction> {
    let mut out = ParamFraction::zero();
    let mut powers: BTreeMap<(Sym, i32), ParamFraction> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut acc = ParamFraction::from_poly(ParamPoly::constant(c.clone()));
        let mut rest = super::poly::Monomial::one();
        for &(s, e) in m.pairs() {
            match bindings.get(&s) {
                None => rest = rest.mul(&super::poly::Monomial::var(s, e)),
                Some(v) => {
                    if !powers.contains_key(&(s, e)) {
                        let base = if e < 0 { v.inv()? } else { v.clone() };
                        let mut pw = ParamFraction::one();
                        for _ in 0..e.unsigned_abs() {
                            pw = &pw * &base;
                        }
                        powers.insert((s, e), pw);
                    }
                    acc = &acc * &powers[&(s, e)];
                }
            }
        }
        let term = &acc * &ParamFraction::from_poly(ParamPoly::term(num_traits::One::one(), rest));
        out = &out + &term;
    }
    Ok(out)
}

impl PartialEq for ParamFraction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ParamFraction {}

impl<'a> Add<&'a ParamFraction> for &ParamFraction {
    type Output = ParamFraction;
    fn add(self, rhs: &'a ParamFraction) -> ParamFraction {
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return lightly_reduce(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        lightly_reduce(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a ParamFraction> for &ParamFraction {
    type Output = ParamFraction;
    fn sub(self, rhs: &'a ParamFraction) -> ParamFraction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamFraction> for &ParamFraction {
    type Output = ParamFraction;
    fn mul(self, rhs: &'a ParamFraction) -> ParamFraction {
        if self.is_zero() || rhs.is_zero() {
            return ParamFraction::zero();
        }
        lightly_reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a ParamFraction> for &ParamFraction {
    type Output = ParamFraction;
    /// Panics on division by zero; see [`ParamFraction::checked_div`].
    fn div(self, rhs: &'a ParamFraction) -> ParamFraction {
        self.checked_div(rhs).expect("division by zero fraction")
    }
}

impl Neg for &ParamFraction {
    type Output = ParamFraction;
    fn neg(self) -> ParamFraction {
        ParamFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(ParamFraction, Add add, Sub sub, Mul mul, Div div);

impl Neg for ParamFraction {
    type Output = ParamFraction;
    fn neg(self) -> ParamFraction {
        -&self
    }
}

fn lightly_reduce(num: ParamPoly, den: ParamPoly) -> ParamFraction {
    if num.is_zero() {
        return ParamFraction::zero();
    }
    if !den.is_constant() {
        if let Ok(Some(p)) = num.div_exact(&den) {
            return ParamFraction::from_poly(p);
        }
    }
    ParamFraction::normalize(num, den)
}

impl From<ParamPoly> for ParamFraction {
    fn from(p: ParamPoly) -> Self {
        ParamFraction::from_poly(p)
    }
}

impl From<i64> for ParamFraction {
    fn from(v: i64) -> Self {
        ParamFraction::from_poly(ParamPoly::int(v))
    }
}

impl fmt::Display for ParamFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ParamFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamFraction({self})")
    }
}
