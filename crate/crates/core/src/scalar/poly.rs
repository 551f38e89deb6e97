//! Sparse multivariate polynomials over Q, Laurent in `q`.
//!
//! A [`ParamPoly`] is a finite sum of rational multiples of monomials in the
//! global symbol set. Only `q` may carry negative exponents; every other
//! symbol is an ordinary polynomial variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Rational;
use crate::error::{Error, Result};

/// A symbol of the coefficient ring.
///
/// The derived order is the global variable order used for monomials:
/// `q < t < mu1 < ... < lambda1 < ... < a0 < ... < nhat1 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Q,
    T,
    /// Eigenvalue parameter, 1-based.
    Mu(u8),
    /// Auxiliary eigenvalue symbol, 1-based.
    Lambda(u8),
    /// Coefficient of a general matrix polynomial, 0-based.
    A(u8),
    /// Opaque quantum multiplicity, 1-based.
    NHat(u8),
}

impl Sym {
    pub fn name(&self) -> String {
        match self {
            Sym::Q => "q".into(),
            Sym::T => "t".into(),
            Sym::Mu(i) => format!("mu{i}"),
            Sym::Lambda(i) => format!("lambda{i}"),
            Sym::A(i) => format!("a{i}"),
            Sym::NHat(i) => format!("nhat{i}"),
        }
    }

    pub fn parse(s: &str) -> Option<Sym> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, tail) = s.split_at(split);
        let idx = || tail.parse::<u8>().ok();
        match head {
            "q" if tail.is_empty() => Some(Sym::Q),
            "t" if tail.is_empty() => Some(Sym::T),
            "mu" => idx().map(Sym::Mu),
            "lambda" => idx().map(Sym::Lambda),
            "a" => idx().map(Sym::A),
            "nhat" => idx().map(Sym::NHat),
            _ => None,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Power product of symbols, stored sorted by symbol with no zero exponents.
///
/// Ordered by degree in the non-`q` symbols, then lexicographically with the
/// largest symbol most significant; `q` is the least significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Sym, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(sym: Sym, exp: i32) -> Self {
        let mut m = Monomial::one();
        if exp != 0 {
            m.0.push((sym, exp));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Sym, i32)>) -> Self {
        let mut m = Monomial::one();
        for (s, e) in pairs {
            m = m.mul(&Monomial::var(s, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, sym: Sym) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| *s == sym)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Sym, i32)] {
        &self.0
    }

    /// Total degree ignoring `q`.
    pub fn param_degree(&self) -> i32 {
        self.0
            .iter()
            .filter(|(s, _)| *s != Sym::Q)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    /// `self / other` if every exponent stays non-negative (q excepted).
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let inv = Monomial(other.0.iter().map(|&(s, e)| (s, -e)).collect());
        let m = self.mul(&inv);
        if m.0.iter().any(|&(s, e)| e < 0 && s != Sym::Q) {
            None
        } else {
            Some(m)
        }
    }

    /// Divisibility treating `q` as an ordinary (non-negative) variable.
    fn divides_strict(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(s, e)| other.exp(s) >= e)
    }

    pub fn without(&self, sym: Sym) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(s, _)| *s != sym).collect())
    }

    pub fn max_sym(&self) -> Option<Sym> {
        self.0.last().map(|&(s, _)| s)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.param_degree().cmp(&other.param_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 || j > 0 {
            let sa = if i > 0 { Some(a[i - 1]) } else { None };
            let sb = if j > 0 { Some(b[j - 1]) } else { None };
            match (sa, sb) {
                (Some((s1, e1)), Some((s2, e2))) if s1 == s2 => {
                    match e1.cmp(&e2) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                    i -= 1;
                    j -= 1;
                }
                (Some((s1, e1)), Some((s2, _))) if s1 > s2 => return e1.cmp(&0),
                (Some(_), Some((_, e2))) => return 0.cmp(&e2),
                (Some((_, e1)), None) => return e1.cmp(&0),
                (None, Some((_, e2))) => return 0.cmp(&e2),
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the parameters with Laurent dependence on `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn var(sym: Sym) -> Self {
        Self::term(Rational::one(), Monomial::var(sym, 1))
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::term(Rational::one(), Monomial::var(Sym::Q, e))
    }

    pub fn t() -> Self {
        Self::var(Sym::T)
    }

    pub fn mu(i: usize) -> Self {
        Self::var(Sym::Mu(i as u8))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value, if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Symbols occurring with nonzero exponent.
    pub fn symbols(&self) -> Vec<Sym> {
        let mut out: Vec<Sym> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(s, _)| s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, sym: Sym) -> bool {
        self.terms.keys().any(|m| m.exp(sym) != 0)
    }

    pub fn degree_in(&self, sym: Sym) -> i32 {
        self.terms.keys().map(|m| m.exp(sym)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, sym: Sym) -> i32 {
        self.terms.keys().map(|m| m.exp(sym)).min().unwrap_or(0)
    }

    /// Degree in the non-`q` symbols.
    pub fn param_degree(&self) -> i32 {
        self.terms.keys().map(Monomial::param_degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution of symbols by polynomials.
    ///
    /// Negative exponents are only allowed on `q`, and a negative power of `q`
    /// may only be bound to a monomial.
    pub fn substitute(&self, bindings: &BTreeMap<Sym, ParamPoly>) -> Result<ParamPoly> {
        let mut cache: BTreeMap<(Sym, i32), ParamPoly> = BTreeMap::new();
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = ParamPoly::constant(c.clone());
            let mut rest = Monomial::one();
            for &(s, e) in m.pairs() {
                match bindings.get(&s) {
                    None => rest = rest.mul(&Monomial::var(s, e)),
                    Some(val) => {
                        let key = (s, e);
                        if !cache.contains_key(&key) {
                            let p = if e >= 0 {
                                val.pow(e as u32)
                            } else {
                                val.monomial_inverse()
                                    .ok_or_else(|| {
                                        Error::NotDivisible(format!(
                                            "negative power of {s} bound to non-monomial {val}"
                                        ))
                                    })?
                                    .pow((-e) as u32)
                            };
                            cache.insert(key, p);
                        }
                        acc = &acc * &cache[&key];
                    }
                }
            }
            out = &out + &acc.mul_monomial(&rest);
        }
        Ok(out)
    }

    /// Substitute rational values for symbols.
    pub fn specialize(&self, values: &BTreeMap<Sym, Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Monomial::one();
            for &(s, e) in m.pairs() {
                match values.get(&s) {
                    Some(v) => coef *= rational_pow(v, e),
                    None => rest = rest.mul(&Monomial::var(s, e)),
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    pub fn specialize_one(&self, sym: Sym, value: Rational) -> ParamPoly {
        let mut values = BTreeMap::new();
        values.insert(sym, value);
        self.specialize(&values)
    }

    /// `q ↦ 1`.
    pub fn at_q1(&self) -> ParamPoly {
        self.specialize_one(Sym::Q, Rational::one())
    }

    /// Inverse of a single-term polynomial whose non-`q` exponents are zero.
    pub fn monomial_inverse(&self) -> Option<ParamPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if m.pairs().iter().any(|&(s, _)| s != Sym::Q) {
            return None;
        }
        Some(ParamPoly::term(c.recip(), Monomial::var(Sym::Q, -m.exp(Sym::Q))))
    }

    /// Multiply by the power of `q` that makes the smallest `q`-exponent zero.
    /// Returns the shifted polynomial and the exponent that was removed.
    pub fn q_normalized(&self) -> (ParamPoly, i32) {
        let lo = self.min_degree_in(Sym::Q);
        if lo == 0 {
            (self.clone(), 0)
        } else {
            (self.mul_monomial(&Monomial::var(Sym::Q, -lo)), lo)
        }
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Rational content normalization: integer coefficients, coprime, positive
    /// leading coefficient.
    pub fn integer_primitive(&self) -> ParamPoly {
        if self.is_zero() {
            return ParamPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = (c * Rational::from_integer(lcm.clone())).to_integer();
            g = g.gcd(&v);
        }
        let mut factor = Rational::new(lcm, g);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Coefficients with respect to `sym` (exponent → coefficient).
    pub fn coefficients_in(&self, sym: Sym) -> BTreeMap<i32, ParamPoly> {
        let mut out: BTreeMap<i32, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(sym))
                .or_default()
                .add_term(m.without(sym), c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ParamPoly) -> Result<Option<ParamPoly>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(ParamPoly::zero()));
        }
        if let Some(c) = d.as_constant() {
            return Ok(Some(self.scale(&c.recip())));
        }
        let (num, shift_n) = self.q_normalized();
        let (den, shift_d) = d.q_normalized();
        let (lm_d, lc_d) = den.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv_lc = lc_d.recip();
        let mut rem = num;
        let mut quot = ParamPoly::zero();
        while let Some((lm, lc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_d.divides_strict(&lm) {
                return Ok(None);
            }
            let mono = lm.div(&lm_d).expect("divisibility checked");
            let coef = &lc * &inv_lc;
            rem = &rem - &den.mul_monomial(&mono).scale(&coef);
            quot.add_term(mono, coef);
        }
        Ok(Some(quot.mul_monomial(&Monomial::var(Sym::Q, shift_n - shift_d))))
    }

    /// Rebuild from coefficients in `sym`.
    pub fn from_coefficients(sym: Sym, coeffs: &BTreeMap<i32, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (&e, c) in coeffs {
            out = &out + &c.mul_monomial(&Monomial::var(sym, e));
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Rational) -> Rational) -> ParamPoly {
        ParamPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

pub(crate) fn rational_pow(v: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(v.clone(), e as usize)
    } else {
        num_traits::pow(v.recip(), (-e) as usize)
    }
}

impl<'a> Add<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $f:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: &'a $ty) -> $ty { (&self).$f(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(ParamPoly, Add add, Sub sub, Mul mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl From<i64> for ParamPoly {
    fn from(v: i64) -> Self {
        ParamPoly::int(v)
    }
}

impl From<Rational> for ParamPoly {
    fn from(v: Rational) -> Self {
        ParamPoly::constant(v)
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}
