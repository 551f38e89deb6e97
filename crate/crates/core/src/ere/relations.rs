use super::element::{AlgMatrix, AlgebraElement};
use crate::qla::TensorMatrix;
use crate::scalar::{Field, ParamPoly, Specialization};
use crate::error::Result;

/// The `n⁴` entries of `S L₂ S L₂ − L₂ S L₂ S − q t (L₂ S − S L₂)`.
///
/// Entry `(a, b, c, d)` is the coefficient of the matrix unit at row
/// `a n + b`, column `c n + d`.
#[derive(Clone, Debug)]
pub struct RelationSet {
    n: usize,
    relations: Vec<AlgebraElement<ParamPoly>>,
}

impl RelationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &[AlgebraElement<ParamPoly>] {
        &self.relations
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &AlgebraElement<ParamPoly> {
        let n = self.n;
        &self.relations[(a * n + b) * n * n + c * n + d]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &AlgebraElement<ParamPoly>> {
        self.relations.iter().filter(|r| !r.is_zero())
    }

    pub fn quadratic_part(&self, idx: usize) -> AlgebraElement<ParamPoly> {
        self.relations[idx].homogeneous_part(2)
    }

    pub fn linear_part(&self, idx: usize) -> AlgebraElement<ParamPoly> {
        self.relations[idx].homogeneous_part(1)
    }

    /// Nonzero relations mapped into a coefficient field.
    pub fn embed<F: Field>(&self, spec: &Specialization) -> Result<Vec<AlgebraElement<F>>> {
        let mut out = Vec::new();
        for r in &self.relations {
            let e = r.embed::<F>(spec)?;
            if !e.is_zero() {
                out.push(e);
            }
        }
        Ok(out)
    }
}

pub fn extract_relations(s: &TensorMatrix) -> RelationSet {
    let n = s.n();
    let dim = n * n;
    let sm = AlgMatrix::from_scalars(dim, n, |a, b| s.matrix().get(a, b).clone());
    let l2 = AlgMatrix::generators(n).one_tensor();
    let sl = sm.mul(&l2);
    let ls = l2.mul(&sm);
    let lhs = sl.mul(&sl);
    let rhs = ls.mul(&ls);
    let qt = &ParamPoly::q_pow(1) * &ParamPoly::t();
    let inhom = ls.sub(&sl).scale(&qt);
    let rel = lhs.sub(&rhs).sub(&inhom);
    RelationSet {
        n,
        relations: rel.into_entries(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ere::word::Word;
    use crate::qla::hecke_symmetry;

    #[test]
    fn n1_relations_vanish() {
        let r = extract_relations(&hecke_symmetry(1));
        assert_eq!(r.len(), 1);
        assert!(r.relations()[0].is_zero());
    }

    #[test]
    fn n2_relation_shape() {
        let r = extract_relations(&hecke_symmetry(2));
        assert_eq!(r.len(), 16);
        assert!(r.nonzero().count() > 0);
        for (idx, rel) in r.relations().iter().enumerate() {
            let q = r.quadratic_part(idx);
            let l = r.linear_part(idx);
            assert_eq!(rel, &q.add(&l));
            assert!(rel.terms().all(|(w, _)| w.len() == 1 || w.len() == 2));
            for (_, c) in l.terms() {
                assert!(c.contains(crate::scalar::Sym::T));
            }
        }
    }

    #[test]
    fn classical_limit_t0_is_commutativity() {
        // q=1, t=0: every relation is a combination of commutators
        let r = extract_relations(&hecke_symmetry(2));
        let spec = Specialization::symbolic()
            .with_int(crate::scalar::Sym::Q, 1)
            .with_int(crate::scalar::Sym::T, 0);
        for rel in r.embed::<crate::scalar::Rational>(&spec).unwrap() {
            for (w, c) in rel.terms() {
                assert_eq!(w.len(), 2);
                let rev = Word(w.0.iter().rev().copied().collect());
                assert_eq!(rel.coeff(&rev), -c.clone());
            }
        }
    }
}
