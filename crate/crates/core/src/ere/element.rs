use std::collections::BTreeMap;
use std::fmt;

use super::word::{Generator, Word};
use crate::scalar::{Coeff, Field, ParamPoly, Specialization};
use crate::error::Result;

/// Element of the free algebra on the `L^i_j`, as a map from words to
/// nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement<C> {
    n: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> AlgebraElement<C> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: C) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Word::empty(), c);
        e
    }

    pub fn unit(n: usize) -> Self {
        Self::scalar(n, C::one())
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Word::single(g.code(n)), C::one());
        e
    }

    pub fn monomial(n: usize, w: Word, c: C) -> Self {
        let mut e = Self::zero(n);
        e.add_term(w, c);
        e
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Length of the longest word, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul_ref(s));
        }
        out
    }

    /// Product in the free algebra (concatenation of words).
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> AlgebraElement<D> {
        let mut out = AlgebraElement::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<AlgebraElement<D>> {
        let mut out = AlgebraElement::zero(self.n);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Terms of exactly the given word length.
    pub fn homogeneous_part(&self, len: usize) -> Self {
        Self::from_terms(
            self.n,
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Substitutes `L^i_j ↦ L^i_j − c·δ^i_j` in every word.
    pub fn shift_generators(&self, c: &C) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let n = self.n;
        let mut images: Vec<Self> = Vec::with_capacity(n * n);
        for code in 0..(n * n) as u8 {
            let g = Generator::from_code(n, code);
            let mut img = Self::generator(n, g);
            if g.i == g.j {
                img.add_term(Word::empty(), c.neg_ref());
            }
            images.push(img);
        }
        let mut out = Self::zero(n);
        for (w, coef) in &self.terms {
            let mut acc = Self::scalar(n, coef.clone());
            for &code in w.codes() {
                acc = acc.mul(&images[code as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| format!("({c})*{}", w.format(self.n)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl AlgebraElement<ParamPoly> {
    pub fn embed<F: Field>(&self, spec: &Specialization) -> Result<AlgebraElement<F>> {
        self.try_map(|c| F::embed(c, spec))
    }
}

impl<C: Coeff> fmt::Debug for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl<C: Coeff> fmt::Display for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// Square matrix with free-algebra entries; products keep factor order.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix<C: Coeff> {
    dim: usize,
    n: usize,
    entries: Vec<AlgebraElement<C>>,
}

impl<C: Coeff> AlgMatrix<C> {
    pub fn zeros(dim: usize, n: usize) -> Self {
        AlgMatrix {
            dim,
            n,
            entries: vec![AlgebraElement::zero(n); dim * dim],
        }
    }

    pub fn identity(dim: usize, n: usize) -> Self {
        let mut m = Self::zeros(dim, n);
        for i in 0..dim {
            m.set(i, i, AlgebraElement::unit(n));
        }
        m
    }

    /// The generator matrix `L`, entry `(a, b)` equal to `L^b_a`.
    pub fn generators(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m.set(a, b, AlgebraElement::generator(n, Generator::at_matrix(a, b)));
            }
        }
        m
    }

    /// A scalar matrix given entrywise.
    pub fn from_scalars(dim: usize, n: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut m = Self::zeros(dim, n);
        for a in 0..dim {
            for b in 0..dim {
                m.set(a, b, AlgebraElement::scalar(n, f(a, b)));
            }
        }
        m
    }

    /// `1 ⊗ self`.
    pub fn one_tensor(&self) -> Self {
        let d = self.dim;
        let mut m = Self::zeros(d * d, self.n);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    m.set(a * d + b, a * d + c, self.get(b, c).clone());
                }
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &AlgebraElement<C> {
        &self.entries[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: AlgebraElement<C>) {
        self.entries[a * self.dim + b] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d, self.n);
        for a in 0..d {
            for k in 0..d {
                let x = self.get(a, k);
                if x.is_zero() {
                    continue;
                }
                for b in 0..d {
                    let y = rhs.get(k, b);
                    if y.is_zero() {
                        continue;
                    }
                    let idx = a * d + b;
                    out.entries[idx] = out.entries[idx].add(&x.mul(y));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |x, y| x.add(y))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |x, y| x.sub(y))
    }

    pub fn scale(&self, s: &C) -> Self {
        AlgMatrix {
            dim: self.dim,
            n: self.n,
            entries: self.entries.iter().map(|e| e.scale(s)).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&AlgebraElement<C>) -> AlgebraElement<C>) -> Self {
        AlgMatrix {
            dim: self.dim,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map_entries(
        &self,
        f: impl Fn(&AlgebraElement<C>) -> Result<AlgebraElement<C>>,
    ) -> Result<Self> {
        Ok(AlgMatrix {
            dim: self.dim,
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn entries(&self) -> &[AlgebraElement<C>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<AlgebraElement<C>> {
        self.entries
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&AlgebraElement<C>, &AlgebraElement<C>) -> AlgebraElement<C>) -> Self {
        AlgMatrix {
            dim: self.dim,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn g(n: usize, i: usize, j: usize) -> AlgebraElement<Rational> {
        AlgebraElement::generator(n, Generator { i, j })
    }

    #[test]
    fn free_product_is_noncommutative() {
        let a = g(2, 0, 1);
        let b = g(2, 1, 0);
        assert_ne!(a.mul(&b), b.mul(&a));
        assert!(a.commutator(&a).is_zero());
        assert_eq!(a.mul(&b).degree(), Some(2));
    }

    #[test]
    fn shift_of_diagonal_generator() {
        let c = Rational::from_integer(3.into());
        let x = g(2, 0, 0);
        let s = x.shift_generators(&c);
        assert_eq!(s, x.sub(&AlgebraElement::scalar(2, c.clone())));
        assert_eq!(g(2, 0, 1).shift_generators(&c), g(2, 0, 1));
        assert_eq!(x.shift_generators(&Rational::from_integer(0.into())), x);
    }

    #[test]
    fn generator_matrix_layout() {
        let l = AlgMatrix::<Rational>::generators(2);
        // row 0, column 1 holds L^2_1
        assert_eq!(l.get(0, 1), &g(2, 1, 0));
        let one_l = l.one_tensor();
        assert_eq!(one_l.get(2, 3), &g(2, 1, 0));
        assert!(one_l.get(0, 2).is_zero());
    }
}
