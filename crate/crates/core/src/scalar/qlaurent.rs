//! Univariate Laurent polynomials in `q` and quantum integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{forward_owned, Monomial, ParamPoly, Sym};
use super::Rational;

/// `Σ c_e q^e` with finitely many nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    coeffs: BTreeMap<i32, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c);
        out
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::one(), e)
    }

    fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Value at `q = 1`.
    pub fn at_q1(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn to_poly(&self) -> ParamPoly {
        ParamPoly::from_terms(
            self.coeffs
                .iter()
                .map(|(&e, c)| (Monomial::var(Sym::Q, e), c.clone())),
        )
    }

    /// Inverse of [`QLaurent::to_poly`]; `None` if `p` involves other symbols.
    pub fn from_poly(p: &ParamPoly) -> Option<QLaurent> {
        let mut out = QLaurent::zero();
        for (m, c) in p.terms() {
            if m.pairs().iter().any(|&(s, _)| s != Sym::Q) {
                return None;
            }
            out.add_term(m.exp(Sym::Q), c.clone());
        }
        Some(out)
    }
}

/// The quantum integer `(1 - q^{-2m}) / (1 - q^{-2})`.
///
/// For `m > 0` this is `1 + q^{-2} + ... + q^{-2(m-1)}`; for negative `m`
/// it equals `-q^{-2m} · (-m)^`.
pub fn quantum_integer(m: i64) -> QLaurent {
    let mut out = QLaurent::zero();
    if m > 0 {
        for i in 0..m {
            out.add_term(-2 * i as i32, Rational::one());
        }
    } else if m < 0 {
        for i in 0..(-m) {
            out.add_term(2 * (-m - i) as i32, -Rational::one());
        }
    }
    out
}

impl<'a> Add<&'a QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &'a QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &'a QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &'a QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

forward_owned!(QLaurent, Add add, Sub sub, Mul mul);

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn small_quantum_integers() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), QLaurent::one());
        assert_eq!(quantum_integer(2), &QLaurent::one() + &QLaurent::q_pow(-2));
        assert_eq!(quantum_integer(-1), QLaurent::monomial(r(-1), 2));
    }

    #[test]
    fn negative_one_multiplied_back() {
        // (1 - q^{-2}) * (-1)^ = 1 - q^2
        let lhs = &(&QLaurent::one() - &QLaurent::q_pow(-2)) * &quantum_integer(-1);
        assert_eq!(lhs, &QLaurent::one() - &QLaurent::q_pow(2));
    }

    #[test]
    fn defining_identity_for_small_m() {
        let base = &QLaurent::one() - &QLaurent::q_pow(-2);
        for m in -12..=12i64 {
            let lhs = &quantum_integer(m) * &base;
            let rhs = &QLaurent::one() - &QLaurent::q_pow(-2 * m as i32);
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn classical_limit() {
        assert_eq!(quantum_integer(5).at_q1(), r(5));
        assert_eq!(quantum_integer(-3).at_q1(), r(-3));
    }

    #[test]
    fn difference_of_squares() {
        let a = &QLaurent::one() + &QLaurent::q_pow(-2);
        let b = &QLaurent::one() - &QLaurent::q_pow(-2);
        assert_eq!(&a * &b, &QLaurent::one() - &QLaurent::q_pow(-4));
    }
}
