//! Quantized semisimple orbits: quotients of the reflection-equation algebra
//! by a matrix polynomial and trace relations.

mod checks;
mod classical;

pub use checks::*;
pub use classical::{classical_orbit_profile, classical_profile_at, CommutativeIdeal};

use serde::{Deserialize, Serialize};

use crate::ere::{AlgMatrix, AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::qla::weight_matrix;
use crate::scalar::{Field, ParamPoly, Rational, Specialization, Sym};
use crate::theta::{theta_t, Composition};

/// A semisimple orbit: distinct eigenvalues `μ_i` with multiplicities `n_i`,
/// and optional rational values for `q` and `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub composition: Composition,
    pub mu: Vec<Rational>,
    pub q: Option<Rational>,
    pub t: Option<Rational>,
}

impl OrbitSpec {
    pub fn new(composition: Composition, mu: Vec<Rational>) -> Result<Self> {
        if composition.k() != mu.len() {
            return Err(Error::Dimension(format!(
                "{} multiplicities for {} eigenvalues",
                composition.k(),
                mu.len()
            )));
        }
        if composition.n() == 0 {
            return Err(Error::Invalid("multiplicities sum to zero".into()));
        }
        for i in 0..mu.len() {
            for j in 0..i {
                if mu[i] == mu[j] {
                    return Err(Error::Invalid(format!(
                        "coincident eigenvalues μ{} = μ{}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(OrbitSpec {
            composition,
            mu,
            q: None,
            t: None,
        })
    }

    pub fn with_q(mut self, q: Option<Rational>) -> Self {
        self.q = q;
        self
    }

    pub fn with_t(mut self, t: Option<Rational>) -> Self {
        self.t = t;
        self
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    /// Some multiplicity is zero, so the minimal polynomial is not minimal.
    pub fn has_zero_parts(&self) -> bool {
        !self.composition.is_positive()
    }

    pub fn specialization(&self) -> Specialization {
        let mut s = Specialization::symbolic();
        if let Some(q) = &self.q {
            s = s.with(Sym::Q, q.clone());
        }
        if let Some(t) = &self.t {
            s = s.with(Sym::T, t.clone());
        }
        s
    }

    fn mu_polys(&self) -> Vec<ParamPoly> {
        self.mu.iter().cloned().map(ParamPoly::constant).collect()
    }

    /// `ϑ_m(n, q^{-2}, μ, t)` with `q`, `t` specialized if given.
    pub fn trace_value(&self, m: usize) -> Result<ParamPoly> {
        let v = theta_t(&self.composition.nhats(), &self.mu_polys(), m)?;
        Ok(self.specialization().apply(&v))
    }

    pub fn describe(&self) -> String {
        let mu: Vec<String> = self.mu.iter().map(|x| x.to_string()).collect();
        let show = |x: &Option<Rational>| x.as_ref().map_or("symbolic".to_string(), |v| v.to_string());
        format!(
            "n={} comp={} mu=({}) q={} t={}",
            self.n(),
            self.composition,
            mu.join(","),
            show(&self.q),
            show(&self.t)
        )
    }
}

/// Dimensions of the filtration components `F_{≤0}, …, F_{≤d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile(pub Vec<usize>);

impl HilbertProfile {
    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// First degree where the two profiles differ.
    pub fn first_difference(&self, other: &HilbertProfile) -> Option<usize> {
        let len = self.0.len().max(other.0.len());
        (0..len).find(|&e| self.0.get(e) != other.0.get(e))
    }

    pub fn truncate(&self, d: usize) -> HilbertProfile {
        HilbertProfile(self.0.iter().take(d + 1).copied().collect())
    }
}

/// Powers `L^0, …, L^m` of the generator matrix in the free algebra.
fn free_powers<F: Field>(n: usize, m: usize) -> Vec<AlgMatrix<F>> {
    let l = AlgMatrix::<F>::generators(n);
    let mut out = vec![AlgMatrix::identity(n, n)];
    for i in 0..m {
        let next = out[i].mul(&l);
        out.push(next);
    }
    out
}

/// Entries of `Π (L − μ_i)` in the free algebra.
pub fn minimal_poly_relations<F: Field>(spec: &OrbitSpec) -> Result<Vec<AlgebraElement<F>>> {
    let n = spec.n();
    let l = AlgMatrix::<F>::generators(n);
    let mut acc = AlgMatrix::identity(n, n);
    for mu in &spec.mu {
        let c = F::embed(&ParamPoly::constant(mu.clone()), &spec.specialization())?;
        let factor = l.sub(&AlgMatrix::identity(n, n).scale(&c));
        acc = acc.mul(&factor);
    }
    Ok(acc.into_entries())
}

/// Entries of `f(L) = L^m + a_{m−1} L^{m−1} + … + a_0`.
pub fn general_poly_relations<F: Field>(n: usize, a: &[F]) -> Vec<AlgebraElement<F>> {
    let m = a.len();
    let powers = free_powers::<F>(n, m);
    let mut acc = powers[m].clone();
    for (i, ai) in a.iter().enumerate() {
        acc = acc.add(&powers[i].scale(ai));
    }
    acc.into_entries()
}

/// `s_m = Tr(D L^m)` in the free algebra.
pub fn free_trace<F: Field>(n: usize, m: usize, spec: &Specialization) -> Result<AlgebraElement<F>> {
    let w = weight_matrix(n)?.embed::<F>(spec)?;
    let p = free_powers::<F>(n, m).pop().unwrap();
    let mut acc = AlgebraElement::zero(n);
    for (a, wa) in w.iter().enumerate() {
        acc = acc.add(&p.get(a, a).scale(wa));
    }
    Ok(acc)
}

/// `s_m − ϑ_m · 1` for `m = 1..k−1`.
pub fn trace_relations<F: Field>(spec: &OrbitSpec) -> Result<Vec<AlgebraElement<F>>> {
    let n = spec.n();
    let s = spec.specialization();
    (1..spec.k())
        .map(|m| {
            let v = F::embed(&spec.trace_value(m)?, &s)?;
            Ok(free_trace::<F>(n, m, &s)?.sub(&AlgebraElement::scalar(n, v)))
        })
        .collect()
}

/// A truncated quotient of the reflection-equation algebra.
///
/// The ideal is built at `build_degree ≥ degree` so that relations whose
/// leading words cancel above `degree` still contribute to the profile.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<F: Field> {
    pub degree: usize,
    pub relations: Vec<AlgebraElement<F>>,
    pub presentation: Presentation<F>,
}

impl<F: Field> QuotientPresentation<F> {
    pub fn build(
        n: usize,
        degree: usize,
        slack: usize,
        spec: &Specialization,
        relations: Vec<AlgebraElement<F>>,
    ) -> Result<Self> {
        let presentation = Presentation::with_relations(n, degree + slack, spec, relations.clone())?;
        Ok(QuotientPresentation {
            degree,
            relations,
            presentation,
        })
    }

    pub fn build_degree(&self) -> usize {
        self.presentation.degree()
    }

    pub fn profile(&self) -> HilbertProfile {
        HilbertProfile(self.presentation.coranks()).truncate(self.degree)
    }

    pub fn normal_form(&self, x: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        self.presentation.normal_form(x)
    }
}

/// Default extra degree used when building orbit quotients.
pub const DEFAULT_SLACK: usize = 1;

/// Reflection-equation relations plus `(PR)` and `(TrR)` for `spec`.
pub fn quotient_basis<F: Field>(spec: &OrbitSpec, d: usize, slack: usize) -> Result<QuotientPresentation<F>> {
    let mut rels = minimal_poly_relations::<F>(spec)?;
    rels.extend(trace_relations::<F>(spec)?);
    QuotientPresentation::build(spec.n(), d, slack, &spec.specialization(), rels)
}

/// Reflection-equation relations plus the entries of `f(L)`.
pub fn general_quotient<F: Field>(
    n: usize,
    a: &[F],
    d: usize,
    slack: usize,
    spec: &Specialization,
) -> Result<QuotientPresentation<F>> {
    QuotientPresentation::build(n, d, slack, spec, general_poly_relations(n, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::elementary_symmetric;
    use crate::scalar::{rat, Coeff, RatFn};

    fn orbit(parts: &[usize], mu: &[i64]) -> OrbitSpec {
        OrbitSpec::new(
            Composition::new(parts.to_vec()).unwrap(),
            mu.iter().map(|&m| rat(m, 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn spec_validation() {
        let c = Composition::new(vec![1, 1]).unwrap();
        assert!(OrbitSpec::new(c.clone(), vec![rat(1, 1), rat(1, 1)]).is_err());
        assert!(OrbitSpec::new(c, vec![rat(1, 1)]).is_err());
        assert!(orbit(&[2, 0], &[0, 1]).has_zero_parts());
        assert!(!orbit(&[1, 1], &[0, 1]).has_zero_parts());
    }

    #[test]
    fn point_orbit_relations() {
        let s = orbit(&[2], &[3]);
        let rels = minimal_poly_relations::<RatFn>(&s).unwrap();
        assert_eq!(rels.len(), 4);
        let three = RatFn::embed(&ParamPoly::int(3), &s.specialization()).unwrap();
        let l11 = AlgebraElement::generator(2, crate::ere::Generator { i: 0, j: 0 });
        assert_eq!(rels[0], l11.sub(&AlgebraElement::scalar(2, three)));
        assert!(trace_relations::<RatFn>(&s).unwrap().is_empty());
        let q = quotient_basis::<RatFn>(&s, 3, 1).unwrap();
        assert_eq!(q.profile().dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn minimal_poly_matches_expansion() {
        let s = orbit(&[1, 1, 1], &[0, 1, 2]);
        let sp = s.specialization();
        let mu: Vec<RatFn> = s
            .mu
            .iter()
            .map(|m| RatFn::embed(&ParamPoly::constant(m.clone()), &sp).unwrap())
            .collect();
        // ξ_i = (−1)^{k−i} e_{k−i}(μ)
        let a: Vec<RatFn> = (0..3)
            .map(|i| {
                let e = elementary_symmetric(&mu, 3 - i).unwrap();
                if (3 - i) % 2 == 1 { e.neg_ref() } else { e }
            })
            .collect();
        assert_eq!(minimal_poly_relations::<RatFn>(&s).unwrap(), general_poly_relations(3, &a));
        // n=2, μ=(0,1): entries of L² − L
        let s2 = orbit(&[1, 1], &[0, 1]);
        let a2 = vec![RatFn::zero(), RatFn::one().neg_ref()];
        assert_eq!(minimal_poly_relations::<RatFn>(&s2).unwrap(), general_poly_relations(2, &a2));
    }

    #[test]
    fn trace_relation_for_symmetric_orbit() {
        let s = orbit(&[1, 1], &[0, 1]);
        let rels = trace_relations::<RatFn>(&s).unwrap();
        assert_eq!(rels.len(), 1);
        // ϑ_1 = n̂_2 + t n̂_1 n̂_2 = 1 + t
        assert_eq!(s.trace_value(1).unwrap(), &ParamPoly::one() + &ParamPoly::t());
        assert_eq!(orbit(&[1, 1, 1], &[0, 1, 2]).k() - 1, trace_relations::<RatFn>(&orbit(&[1, 1, 1], &[0, 1, 2])).unwrap().len());
    }

    #[test]
    fn zero_polynomial_kills_everything() {
        let q = general_quotient::<RatFn>(2, &[RatFn::zero()], 3, 0, &Specialization::symbolic()).unwrap();
        assert_eq!(q.profile().dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn symbolic_quadratic_has_n2_relations() {
        let spec = Specialization::symbolic();
        let a: Vec<RatFn> = (0..2)
            .map(|i| RatFn::embed(&ParamPoly::var(Sym::A(i)), &spec).unwrap())
            .collect();
        let rels = general_poly_relations(2, &a);
        assert_eq!(rels.len(), 4);
        assert!(rels.iter().all(|r| r.degree() == Some(2)));
    }

    #[test]
    fn trace_relation_enlarges_the_ideal() {
        let s = orbit(&[1, 1], &[0, 1]);
        let pr = QuotientPresentation::build(2, 3, 0, &s.specialization(), minimal_poly_relations::<RatFn>(&s).unwrap()).unwrap();
        let full = quotient_basis::<RatFn>(&s, 3, 0).unwrap();
        assert!(full.profile().dims()[1] < pr.profile().dims()[1]);
    }
}
