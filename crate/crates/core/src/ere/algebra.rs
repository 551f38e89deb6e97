use serde::Serialize;

use super::element::AlgebraElement;
use super::ideal::TruncatedIdeal;
use super::relations::extract_relations;
use super::word::Generator;
use crate::error::{Error, Result};
use crate::qla::{hecke_symmetry, weight_matrix};
use crate::scalar::{Field, Specialization};

/// A finitely presented quotient of the free algebra on the `L^i_j`,
/// truncated at word length `d`, together with the weight matrix used for
/// quantum traces.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    n: usize,
    spec: Specialization,
    weights: Vec<F>,
    ideal: TruncatedIdeal<F>,
}

/// Result of a centrality test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Centrality {
    pub central: bool,
    /// First generator with a nonzero commutator, and that commutator.
    pub witness: Option<String>,
}

impl<F: Field> Presentation<F> {
    /// The reflection-equation algebra with the `t`-deformed relations.
    pub fn ere(n: usize, d: usize, spec: &Specialization) -> Result<Self> {
        Self::with_relations(n, d, spec, Vec::new())
    }

    /// The reflection-equation relations plus `extra`.
    pub fn with_relations(
        n: usize,
        d: usize,
        spec: &Specialization,
        extra: Vec<AlgebraElement<F>>,
    ) -> Result<Self> {
        let rels = extract_relations(&hecke_symmetry(n));
        let mut all = rels.embed::<F>(spec)?;
        all.extend(extra.into_iter().filter(|x| !x.is_zero()));
        Self::from_relations(n, d, spec, &all)
    }

    pub fn from_relations(
        n: usize,
        d: usize,
        spec: &Specialization,
        relations: &[AlgebraElement<F>],
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        let weights = weight_matrix(n)?.embed::<F>(spec)?;
        let ideal = TruncatedIdeal::build(n, d, relations)?;
        Ok(Presentation {
            n,
            spec: spec.clone(),
            weights,
            ideal,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.ideal.degree()
    }

    pub fn spec(&self) -> &Specialization {
        &self.spec
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    pub fn ideal(&self) -> &TruncatedIdeal<F> {
        &self.ideal
    }

    pub fn coranks(&self) -> Vec<usize> {
        self.ideal.coranks()
    }

    pub fn generator(&self, i: usize, j: usize) -> Result<AlgebraElement<F>> {
        Ok(AlgebraElement::generator(self.n, Generator::new(self.n, i, j)?))
    }

    pub fn scalar(&self, c: F) -> AlgebraElement<F> {
        AlgebraElement::scalar(self.n, c)
    }

    pub fn normal_form(&self, x: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        self.ideal.normal_form(x)
    }

    /// Normal form of `a · b`.
    pub fn mul(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        if da + db > self.degree() {
            return Err(Error::TruncationExceeded {
                needed: da + db,
                bound: self.degree(),
            });
        }
        self.normal_form(&a.mul(b))
    }

    /// Entries of `L^m` in normal form, as rows of the matrix.
    pub fn matrix_power(&self, m: usize) -> Result<Vec<Vec<AlgebraElement<F>>>> {
        if m > self.degree() {
            return Err(Error::TruncationExceeded {
                needed: m,
                bound: self.degree(),
            });
        }
        let n = self.n;
        let l = |a: usize, b: usize| AlgebraElement::<F>::generator(n, Generator::at_matrix(a, b));
        let mut p: Vec<Vec<AlgebraElement<F>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if a == b {
                            AlgebraElement::unit(n)
                        } else {
                            AlgebraElement::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        for _ in 0..m {
            let mut next = vec![vec![AlgebraElement::zero(n); n]; n];
            for (a, row) in next.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    let mut acc = AlgebraElement::zero(n);
                    for k in 0..n {
                        acc = acc.add(&p[a][k].mul(&l(k, b)));
                    }
                    *cell = self.normal_form(&acc)?;
                }
            }
            p = next;
        }
        Ok(p)
    }

    /// `s_m = Tr(D L^m)` in normal form.
    pub fn s_element(&self, m: usize) -> Result<AlgebraElement<F>> {
        let p = self.matrix_power(m)?;
        let mut acc = AlgebraElement::zero(self.n);
        for a in 0..self.n {
            acc = acc.add(&p[a][a].scale(&self.weights[a]));
        }
        self.normal_form(&acc)
    }

    /// Tests `[x, L^i_j] = 0` for every generator.
    pub fn is_central(&self, x: &AlgebraElement<F>) -> Result<Centrality> {
        let d = x.degree().unwrap_or(0);
        if d + 1 > self.degree() {
            return Err(Error::TruncationExceeded {
                needed: d + 1,
                bound: self.degree(),
            });
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let g = self.generator(i, j)?;
                let c = self.normal_form(&x.commutator(&g))?;
                if !c.is_zero() {
                    return Ok(Centrality {
                        central: false,
                        witness: Some(format!("[x, L{}_{}] = {}", i + 1, j + 1, c)),
                    });
                }
            }
        }
        Ok(Centrality {
            central: true,
            witness: None,
        })
    }
}

/// Classical PBW count `Σ_{e ≤ d} C(n² + e − 1, e)` for each `d`.
pub fn classical_coranks(n: usize, d: usize) -> Vec<usize> {
    let vars = n * n;
    let mut acc = 0usize;
    (0..=d)
        .map(|e| {
            acc += binomial(vars + e - 1, e);
            acc
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ere::extract_relations;
    use crate::scalar::{one_minus_q2inv, Coeff, ParamFraction, ParamPoly, RatFn, Sym};

    fn sym() -> Specialization {
        Specialization::symbolic()
    }

    fn ere(n: usize, d: usize) -> Presentation<RatFn> {
        Presentation::ere(n, d, &sym()).unwrap()
    }

    fn poly(p: ParamPoly) -> RatFn {
        RatFn::new(ParamFraction::from_poly(p))
    }

    #[test]
    fn pbw_counts_small() {
        let p = ere(2, 3);
        assert_eq!(p.coranks(), classical_coranks(2, 3));
        assert_eq!(classical_coranks(2, 2), vec![1, 5, 15]);
        assert_eq!(classical_coranks(3, 1), vec![1, 10]);
    }

    #[test]
    fn normal_form_basics() {
        let p = ere(2, 3);
        let rels = extract_relations(&hecke_symmetry(2)).embed::<RatFn>(&sym()).unwrap();
        for r in &rels {
            assert!(p.normal_form(r).unwrap().is_zero());
        }
        let l11 = p.generator(0, 0).unwrap();
        assert_eq!(p.normal_form(&l11).unwrap(), l11);
        let x = p.generator(1, 0).unwrap().mul(&p.generator(0, 1).unwrap());
        let nf = p.normal_form(&x).unwrap();
        assert_eq!(p.normal_form(&nf).unwrap(), nf);
        let big = x.mul(&x);
        assert!(matches!(
            p.normal_form(&big),
            Err(Error::TruncationExceeded { needed: 4, bound: 3 })
        ));
    }

    #[test]
    fn powers_and_traces() {
        let p = ere(2, 3);
        let l0 = p.matrix_power(0).unwrap();
        assert!(l0[0][0] == AlgebraElement::unit(2) && l0[0][1].is_zero());
        let l1 = p.matrix_power(1).unwrap();
        assert_eq!(l1[0][1], p.generator(1, 0).unwrap());
        // L·(L·L) = (L·L)·L
        let l2 = p.matrix_power(2).unwrap();
        let l3 = p.matrix_power(3).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = AlgebraElement::zero(2);
                for k in 0..2 {
                    acc = acc.add(&l1[a][k].mul(&l2[k][b]));
                }
                assert_eq!(p.normal_form(&acc).unwrap(), l3[a][b]);
            }
        }
        let s0 = p.s_element(0).unwrap();
        assert_eq!(s0, p.scalar(poly(crate::scalar::qint(2))));
        let s1 = p.s_element(1).unwrap();
        let expect = p
            .generator(0, 0)
            .unwrap()
            .scale(&p.weights()[0])
            .add(&p.generator(1, 1).unwrap().scale(&p.weights()[1]));
        assert_eq!(s1, expect);
    }

    #[test]
    fn rank_one_traces_are_powers() {
        let p = ere(1, 3);
        let l = p.generator(0, 0).unwrap();
        assert_eq!(p.s_element(3).unwrap(), l.mul(&l).mul(&l));
        assert_eq!(p.coranks(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn centrality_n2() {
        let p = ere(2, 3);
        assert!(p.is_central(&AlgebraElement::unit(2)).unwrap().central);
        assert!(p.is_central(&p.s_element(1).unwrap()).unwrap().central);
        assert!(p.is_central(&p.s_element(2).unwrap()).unwrap().central);
        let c = p.is_central(&p.generator(0, 1).unwrap()).unwrap();
        assert!(!c.central);
        assert!(c.witness.is_some());
    }

    #[test]
    fn shift_maps_t_relations_into_t0_ideal() {
        let rels = extract_relations(&hecke_symmetry(2));
        let t0 = rels.embed::<RatFn>(&sym().with_int(Sym::T, 0)).unwrap();
        let p0 = Presentation::from_relations(2, 3, &sym(), &t0).unwrap();
        let c = RatFn::new(ParamFraction::new(ParamPoly::t(), one_minus_q2inv()).unwrap());
        for r in rels.embed::<RatFn>(&sym()).unwrap() {
            assert!(p0.normal_form(&r.shift_generators(&c)).unwrap().is_zero());
        }
        let any_fails = rels
            .embed::<RatFn>(&sym())
            .unwrap()
            .iter()
            .any(|r| !p0.normal_form(&r.shift_generators(&c.neg_ref())).unwrap().is_zero());
        assert!(any_fails);
    }
}
