//! Exact scalars: rationals, Laurent polynomials in `q`, parameter
//! polynomials and their fractions.

mod field;
mod fraction;
pub mod gcd;
mod poly;
mod qlaurent;
pub mod text;

use std::collections::BTreeMap;

pub use field::{Coeff, Field, RatFn, Specialization};
pub use fraction::{substitute_poly, ParamFraction};
pub use poly::{Monomial, ParamPoly, Sym};
pub use qlaurent::{quantum_integer, QLaurent};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Value bound to a symbol during substitution.
#[derive(Clone, Debug)]
pub enum Binding {
    Poly(ParamPoly),
    Fraction(ParamFraction),
}

impl From<ParamPoly> for Binding {
    fn from(p: ParamPoly) -> Self {
        Binding::Poly(p)
    }
}

impl From<ParamFraction> for Binding {
    fn from(f: ParamFraction) -> Self {
        Binding::Fraction(f)
    }
}

/// Simultaneous substitution.
///
/// `eliminate` lists symbols that must not survive; each of them has to be
/// bound. The result is a fraction whenever any binding is one.
pub fn substitute(
    p: &ParamPoly,
    bindings: &BTreeMap<Sym, Binding>,
    eliminate: &[Sym],
) -> Result<ParamFraction> {
    if let Some(s) = eliminate.iter().find(|s| !bindings.contains_key(s)) {
        return Err(Error::Unbound(s.name()));
    }
    if bindings.values().all(|b| matches!(b, Binding::Poly(_))) {
        let polys = bindings
            .iter()
            .map(|(s, b)| match b {
                Binding::Poly(p) => (*s, p.clone()),
                Binding::Fraction(_) => unreachable!(),
            })
            .collect();
        return Ok(ParamFraction::from_poly(p.substitute(&polys)?));
    }
    let fracs = bindings
        .iter()
        .map(|(s, b)| {
            let f = match b {
                Binding::Poly(p) => ParamFraction::from_poly(p.clone()),
                Binding::Fraction(f) => f.clone(),
            };
            (*s, f)
        })
        .collect();
    substitute_poly(p, &fracs)
}

/// Exact substitution `q ↦ 1`; fails on a pole at `q = 1`.
pub fn evaluate_at_q1(f: &ParamFraction) -> Result<ParamPoly> {
    f.at_q1()
}

/// `p / d` when the division is exact over the parameter polynomials.
pub fn divide_exact(p: &ParamPoly, d: &ParamPoly) -> Result<ParamPoly> {
    p.div_exact(d)?
        .ok_or_else(|| Error::NotDivisible(format!("({p}) / ({d})")))
}

/// `1 - q^{-2}`, the factor that recurs in every deformed identity.
pub fn one_minus_q2inv() -> ParamPoly {
    &ParamPoly::one() - &ParamPoly::q_pow(-2)
}

pub fn qint(m: i64) -> ParamPoly {
    quantum_integer(m).to_poly()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("{s:?} is not a rational: {e}")))
}
