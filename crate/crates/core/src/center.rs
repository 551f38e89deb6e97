//! Newton identities, Cayley–Hamilton, and the recurrence generators `r_m`.

use serde::Serialize;

use crate::ere::{AlgebraElement, Presentation};
use crate::error::{Error, Result};
use crate::scalar::{qint, Coeff, Field, Specialization};

/// Arithmetic needed by the Newton recursions: a commutative ring in which
/// quantum integers act and can be inverted.
pub trait NewtonRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// `m̂ · a`
    fn qint_mul(&self, a: &Self::Elem, m: i64) -> Result<Self::Elem>;
    /// `m̂⁻¹ · a`
    fn qint_div(&self, a: &Self::Elem, m: i64) -> Result<Self::Elem>;
}

/// Scalars in a field, with quantum integers embedded through `spec`.
pub struct ScalarRing<F> {
    spec: Specialization,
    _f: std::marker::PhantomData<F>,
}

impl<F: Field> ScalarRing<F> {
    pub fn new(spec: &Specialization) -> Self {
        ScalarRing {
            spec: spec.clone(),
            _f: std::marker::PhantomData,
        }
    }

    fn qint(&self, m: i64) -> Result<F> {
        F::embed(&qint(m), &self.spec)
    }
}

impl<F: Field> NewtonRing for ScalarRing<F> {
    type Elem = F;
    fn zero(&self) -> F {
        F::zero()
    }
    fn one(&self) -> F {
        F::one()
    }
    fn add(&self, a: &F, b: &F) -> F {
        a.add_ref(b)
    }
    fn sub(&self, a: &F, b: &F) -> F {
        a.sub_ref(b)
    }
    fn mul(&self, a: &F, b: &F) -> Result<F> {
        Ok(a.mul_ref(b))
    }
    fn qint_mul(&self, a: &F, m: i64) -> Result<F> {
        Ok(a.mul_ref(&self.qint(m)?))
    }
    fn qint_div(&self, a: &F, m: i64) -> Result<F> {
        let d = self.qint(m)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.div_ref(&d))
    }
}

/// Elements of a truncated presentation, multiplied in normal form.
pub struct AlgebraRing<'a, F> {
    pub presentation: &'a Presentation<F>,
}

impl<F: Field> NewtonRing for AlgebraRing<'_, F> {
    type Elem = AlgebraElement<F>;
    fn zero(&self) -> Self::Elem {
        AlgebraElement::zero(self.presentation.n())
    }
    fn one(&self) -> Self::Elem {
        AlgebraElement::unit(self.presentation.n())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.presentation.mul(a, b)
    }
    fn qint_mul(&self, a: &Self::Elem, m: i64) -> Result<Self::Elem> {
        Ok(a.scale(&F::embed(&qint(m), self.presentation.spec())?))
    }
    fn qint_div(&self, a: &Self::Elem, m: i64) -> Result<Self::Elem> {
        let d = F::embed(&qint(m), self.presentation.spec())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.scale(&d.inv_ref()))
    }
}

/// `σ_0, …, σ_M` from `s_1, …, s_M` (`s[0]` is not used):
/// `σ_m = m̂⁻¹ Σ_{i=1}^m (−1)^{i−1} s_i σ_{m−i}`.
pub fn sigma_from_s<R: NewtonRing>(ring: &R, s: &[R::Elem], m_max: usize) -> Result<Vec<R::Elem>> {
    if s.len() <= m_max {
        return Err(Error::Dimension(format!(
            "need s_0..s_{m_max}, got {} terms",
            s.len()
        )));
    }
    let mut sigma = vec![ring.one()];
    for m in 1..=m_max {
        let mut acc = ring.zero();
        for i in 1..=m {
            let term = ring.mul(&s[i], &sigma[m - i])?;
            acc = if i % 2 == 1 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        sigma.push(ring.qint_div(&acc, m as i64)?);
    }
    Ok(sigma)
}

/// `s_0, …, s_M` from `σ_0, …, σ_M` and the given `s_0`:
/// `s_m = (−1)^{m+1} (m̂ σ_m + Σ_{i=1}^{m−1} (−1)^i s_i σ_{m−i})`.
pub fn s_from_sigma<R: NewtonRing>(
    ring: &R,
    sigma: &[R::Elem],
    s0: R::Elem,
    m_max: usize,
) -> Result<Vec<R::Elem>> {
    if sigma.len() <= m_max {
        return Err(Error::Dimension(format!(
            "need σ_0..σ_{m_max}, got {} terms",
            sigma.len()
        )));
    }
    let mut s = vec![s0];
    for m in 1..=m_max {
        let mut acc = ring.qint_mul(&sigma[m], m as i64)?;
        for i in 1..m {
            let term = ring.mul(&s[i], &sigma[m - i])?;
            acc = if i % 2 == 1 {
                ring.sub(&acc, &term)
            } else {
                ring.add(&acc, &term)
            };
        }
        s.push(if m % 2 == 1 { acc } else { ring.sub(&ring.zero(), &acc) });
    }
    Ok(s)
}

/// `σ_i(μ_1, …, μ_k)`, with `σ_0 = 1`.
pub fn elementary_symmetric<T: Coeff>(mu: &[T], i: usize) -> Result<T> {
    if i > mu.len() {
        return Err(Error::Invalid(format!(
            "σ_{i} of {} variables",
            mu.len()
        )));
    }
    // e[j] = σ_j of the prefix processed so far
    let mut e = vec![T::zero(); i + 1];
    e[0] = T::one();
    for x in mu {
        for j in (1..=i).rev() {
            e[j] = e[j].add_ref(&e[j - 1].mul_ref(x));
        }
    }
    Ok(e.swap_remove(i))
}

/// `r_m(x) = Σ_{i=0}^k (−1)^i σ_i(μ) x_{m−i}`.
pub fn r_sequence<T: Coeff>(x: &[T], mu: &[T], m: usize) -> Result<T> {
    let k = mu.len();
    if m < k || m >= x.len() {
        return Err(Error::Dimension(format!(
            "r_{m} needs x_{}..x_{m}, have x_0..x_{}",
            m.saturating_sub(k),
            x.len().saturating_sub(1)
        )));
    }
    let mut acc = T::zero();
    for i in 0..=k {
        let term = elementary_symmetric(mu, i)?.mul_ref(&x[m - i]);
        acc = if i % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    Ok(acc)
}

/// The Newton-derived `σ_0..σ_n` of a presentation, as algebra elements.
pub fn algebra_sigmas<F: Field>(p: &Presentation<F>) -> Result<Vec<AlgebraElement<F>>> {
    let n = p.n();
    let s = (0..=n).map(|m| p.s_element(m)).collect::<Result<Vec<_>>>()?;
    sigma_from_s(&AlgebraRing { presentation: p }, &s, n)
}

/// Outcome of the Cayley–Hamilton test `Σ_i (−1)^i σ_i L^{n−i} = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyHamilton {
    /// Every entry of the residual reduces to zero.
    pub zero: bool,
    /// The component of top word length `n` vanishes in every entry.
    pub top_degree_zero: bool,
    pub nonzero_entries: usize,
    /// Total number of words over all residual entries.
    pub residual_words: usize,
    /// First nonzero entry, `(row, col): value`.
    pub witness: Option<String>,
}

pub fn cayley_hamilton_check<F: Field>(p: &Presentation<F>) -> Result<CayleyHamilton> {
    let n = p.n();
    let sigma = algebra_sigmas(p)?;
    let powers = (0..=n).map(|m| p.matrix_power(m)).collect::<Result<Vec<_>>>()?;
    let mut zero = true;
    let mut top_zero = true;
    let mut nonzero_entries = 0;
    let mut residual_words = 0;
    let mut witness = None;
    for a in 0..n {
        for b in 0..n {
            let mut acc = AlgebraElement::zero(n);
            for (i, sig) in sigma.iter().enumerate() {
                let term = p.mul(sig, &powers[n - i][a][b])?;
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            let r = p.normal_form(&acc)?;
            if !r.is_zero() {
                zero = false;
                nonzero_entries += 1;
                residual_words += r.len();
                if !r.homogeneous_part(n).is_zero() {
                    top_zero = false;
                }
                if witness.is_none() {
                    witness = Some(format!("({}, {}): {}", a + 1, b + 1, r));
                }
            }
        }
    }
    Ok(CayleyHamilton {
        zero,
        top_degree_zero: top_zero,
        nonzero_entries,
        residual_words,
        witness,
    })
}

/// Cayley–Hamilton transported from the `t = 0` algebra `p0` to `pt` along
/// `L ↦ L + c`, the inverse of the shift `L ↦ L − c` that maps the
/// `t`-relations into the `t = 0` ideal. The coefficients are the images of
/// the Newton-derived `σ_i` of `p0`.
pub fn cayley_hamilton_shifted<F: Field>(
    pt: &Presentation<F>,
    p0: &Presentation<F>,
    c: &F,
) -> Result<CayleyHamilton> {
    let n = pt.n();
    let sigma = algebra_sigmas(p0)?;
    let powers = (0..=n).map(|m| p0.matrix_power(m)).collect::<Result<Vec<_>>>()?;
    let back = c.neg_ref();
    let mut out = CayleyHamilton {
        zero: true,
        top_degree_zero: true,
        nonzero_entries: 0,
        residual_words: 0,
        witness: None,
    };
    for a in 0..n {
        for b in 0..n {
            let mut acc = AlgebraElement::zero(n);
            for (i, sig) in sigma.iter().enumerate() {
                let term = p0.mul(sig, &powers[n - i][a][b])?;
                acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            let r = pt.normal_form(&acc.shift_generators(&back))?;
            if !r.is_zero() {
                out.zero = false;
                out.nonzero_entries += 1;
                out.residual_words += r.len();
                if !r.homogeneous_part(n).is_zero() {
                    out.top_degree_zero = false;
                }
                if out.witness.is_none() {
                    out.witness = Some(format!("({}, {}): {}", a + 1, b + 1, r));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{one_minus_q2inv, rat, ParamFraction, ParamPoly, RatFn, Rational, Sym};

    fn f(p: ParamPoly) -> RatFn {
        RatFn::new(ParamFraction::from_poly(p))
    }

    fn sym() -> Specialization {
        Specialization::symbolic()
    }

    #[test]
    fn sigma_two_closed_form() {
        let ring = ScalarRing::<RatFn>::new(&sym());
        let s: Vec<RatFn> = (0..=2).map(|i| f(ParamPoly::var(Sym::A(i)))).collect();
        let sigma = sigma_from_s(&ring, &s, 2).unwrap();
        assert_eq!(sigma[1], s[1]);
        let expect = RatFn::new(
            ParamFraction::new(
                &(ParamPoly::var(Sym::A(1)).pow(2)) - &ParamPoly::var(Sym::A(2)),
                crate::scalar::qint(2),
            )
            .unwrap(),
        );
        assert_eq!(sigma[2], expect);
    }

    #[test]
    fn newton_round_trip_symbolic() {
        let ring = ScalarRing::<RatFn>::new(&sym());
        let m = 5;
        let sigma: Vec<RatFn> = (0..=m)
            .map(|i| if i == 0 { RatFn::one() } else { f(ParamPoly::var(Sym::A(i as u8))) })
            .collect();
        let s0 = f(ParamPoly::var(Sym::NHat(0)));
        let s = s_from_sigma(&ring, &sigma, s0.clone(), m).unwrap();
        assert_eq!(s[0], s0);
        let back = sigma_from_s(&ring, &s, m).unwrap();
        assert_eq!(back, sigma);
    }

    #[test]
    fn classical_newton_at_q1() {
        // one eigenvalue λ: σ = (1, λ, 0, …) gives s_m = λ^m
        let ring = ScalarRing::<Rational>::new(&sym().with_int(Sym::Q, 1));
        let lam = rat(3, 2);
        let sigma = vec![rat(1, 1), lam.clone(), rat(0, 1), rat(0, 1), rat(0, 1)];
        let s = s_from_sigma(&ring, &sigma, rat(1, 1), 4).unwrap();
        for (m, v) in s.iter().enumerate().skip(1) {
            assert_eq!(v, &num_traits::Pow::pow(&lam, m as u32));
        }
    }

    #[test]
    fn elementary_symmetric_examples() {
        let mu: Vec<ParamPoly> = (1..=3).map(|i| ParamPoly::mu(i)).collect();
        assert_eq!(elementary_symmetric(&mu, 0).unwrap(), ParamPoly::one());
        assert_eq!(elementary_symmetric(&mu[..2], 1).unwrap(), &mu[0] + &mu[1]);
        assert_eq!(elementary_symmetric(&mu[..2], 2).unwrap(), &mu[0] * &mu[1]);
        let e2 = &(&(&mu[0] * &mu[1]) + &(&mu[0] * &mu[2])) + &(&mu[1] * &mu[2]);
        assert_eq!(elementary_symmetric(&mu, 2).unwrap(), e2);
        assert!(elementary_symmetric(&mu, 4).is_err());
    }

    #[test]
    fn r_sequence_kills_geometric_sequences() {
        let mu = vec![rat(2, 1), rat(-1, 3), rat(5, 1)];
        for j in 0..3 {
            let x: Vec<Rational> = (0..8).map(|m| rat(7, 1) * num_traits::Pow::pow(&mu[j], m as u32)).collect();
            for m in 3..8 {
                assert_eq!(r_sequence(&x, &mu, m).unwrap(), rat(0, 1));
            }
        }
        assert!(r_sequence(&[rat(1, 1)], &mu, 2).is_err());
    }

    #[test]
    fn cayley_hamilton_rank_one_and_two() {
        let p1 = Presentation::<RatFn>::ere(1, 2, &sym()).unwrap();
        assert!(cayley_hamilton_check(&p1).unwrap().zero);
        let p2 = Presentation::<RatFn>::ere(2, 3, &sym().with_int(Sym::T, 0)).unwrap();
        assert!(cayley_hamilton_check(&p2).unwrap().zero);
        let pq1 = Presentation::<RatFn>::ere(2, 3, &sym().with_int(Sym::Q, 1)).unwrap();
        let ch = cayley_hamilton_check(&pq1).unwrap();
        assert!(ch.top_degree_zero);
        assert!(!ch.zero);
    }

    #[test]
    fn shifted_cayley_hamilton_n2() {
        let n = 2;
        let pt = Presentation::<RatFn>::ere(n, 3, &sym()).unwrap();
        let rels = crate::ere::extract_relations(&crate::qla::hecke_symmetry(n))
            .embed::<RatFn>(&sym().with_int(Sym::T, 0))
            .unwrap();
        let p0 = Presentation::from_relations(n, 3, &sym(), &rels).unwrap();
        let c = RatFn::new(ParamFraction::new(ParamPoly::t(), one_minus_q2inv()).unwrap());
        assert!(cayley_hamilton_shifted(&pt, &p0, &c).unwrap().zero);
    }
}
