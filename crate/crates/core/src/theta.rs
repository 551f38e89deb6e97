//! The special polynomials `ϑ_m(n, q^{-2}, μ)`, their shifted versions and
//! the characters of the center.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::center::{elementary_symmetric, r_sequence};
use crate::error::{Error, Result};
use crate::scalar::{one_minus_q2inv, qint, ParamFraction, ParamPoly, Sym};

/// `(n_1, …, n_k)` with non-negative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("a composition needs at least one part".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Membership in `{n:k}₊`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&p| p > 0)
    }

    /// `n̂_i` for each part.
    pub fn nhats(&self) -> Vec<ParamPoly> {
        self.0.iter().map(|&p| qint(p as i64)).collect()
    }

    /// All of `{n:k}`, in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<Composition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if slots == 1 {
                cur.push(rest);
                out.push(Composition(cur.clone()));
                cur.pop();
                return;
            }
            for p in 0..=rest {
                cur.push(p);
                rec(rest - p, slots - 1, cur, out);
                cur.pop();
            }
        }
        if k > 0 {
            rec(n, k, &mut cur, &mut out);
        }
        out
    }

    /// All of `{m:ℓ}₊`.
    pub fn positive(m: usize, l: usize) -> Vec<Composition> {
        if l == 0 || m < l {
            return Vec::new();
        }
        Composition::all(m - l, l)
            .into_iter()
            .map(|c| Composition(c.0.into_iter().map(|p| p + 1).collect()))
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `μ_1, …, μ_k` as symbols.
pub fn mu_symbols(k: usize) -> Vec<ParamPoly> {
    (1..=k).map(ParamPoly::mu).collect()
}

/// `λ_1, …, λ_n` as symbols.
pub fn lambda_symbols(n: usize) -> Vec<ParamPoly> {
    (1..=n).map(|i| ParamPoly::var(Sym::Lambda(i as u8))).collect()
}

/// Opaque `n̂_1, …, n̂_k`.
pub fn nhat_symbols(k: usize) -> Vec<ParamPoly> {
    (1..=k).map(|i| ParamPoly::var(Sym::NHat(i as u8))).collect()
}

/// `n̂ = Σ_j n̂_j Π_{i<j} q^{-2 n_i}`, with `q^{-2 n_i} = 1 − (1 − q^{-2}) n̂_i`.
///
/// For concrete multiplicities this is the quantum integer of `Σ n_i`.
pub fn total_nhat(nhat: &[ParamPoly]) -> ParamPoly {
    let w = one_minus_q2inv();
    let mut acc = ParamPoly::zero();
    let mut prefix = ParamPoly::one();
    for x in nhat {
        acc = &acc + &(&prefix * x);
        prefix = &prefix * &(&ParamPoly::one() - &(&w * x));
    }
    acc
}

fn check_lengths(nhat: &[ParamPoly], mu: &[ParamPoly]) -> Result<()> {
    if nhat.len() != mu.len() || mu.is_empty() {
        return Err(Error::Dimension(format!(
            "{} multiplicities for {} eigenvalues",
            nhat.len(),
            mu.len()
        )));
    }
    Ok(())
}

/// Index subsets `i_1 < … < i_ℓ` of `0..k`.
fn subsets(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(start: usize, k: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, l, cur, out);
            cur.pop();
        }
    }
    rec(0, k, l, &mut cur, &mut out);
    out
}

/// Direct expansion of `ϑ_m(n, q^{-2}, μ)`; `ϑ_0 = n̂`.
pub fn theta(nhat: &[ParamPoly], mu: &[ParamPoly], m: usize) -> Result<ParamPoly> {
    check_lengths(nhat, mu)?;
    if m == 0 {
        return Ok(total_nhat(nhat));
    }
    let k = mu.len();
    let w = one_minus_q2inv();
    let mut acc = ParamPoly::zero();
    let mut wpow = ParamPoly::one();
    for l in 1..=k.min(m) {
        let mut inner = ParamPoly::zero();
        for d in Composition::positive(m, l) {
            for idx in subsets(k, l) {
                let mut term = ParamPoly::one();
                for (&i, &e) in idx.iter().zip(d.parts()) {
                    term = &term * &(&nhat[i] * &mu[i].pow(e as u32));
                }
                inner = &inner + &term;
            }
        }
        acc = &acc + &(&wpow * &inner);
        wpow = &wpow * &w;
    }
    Ok(acc)
}

fn coeff_c_frac(nhat: &[ParamFraction], mu: &[ParamFraction], j: usize) -> Result<ParamFraction> {
    let w = ParamFraction::from_poly(one_minus_q2inv());
    let mut acc = ParamFraction::from(1);
    for i in 0..mu.len() {
        if i == j {
            continue;
        }
        let diff = &mu[j] - &mu[i];
        if diff.is_zero() {
            return Err(Error::Invalid(format!(
                "coincident eigenvalues μ{} = μ{}",
                j + 1,
                i + 1
            )));
        }
        let factor = &(&w * &nhat[i]) * &mu[i];
        acc = &acc * &(&ParamFraction::from(1) + &factor.checked_div(&diff)?);
    }
    Ok(&nhat[j] * &acc)
}

/// `C_j(n, q^{-2}, μ) = n̂_j Π_{i≠j} (1 + (1 − q^{-2}) n̂_i μ_i / (μ_j − μ_i))`
/// (`j` is 0-based).
pub fn coeff_c(nhat: &[ParamPoly], mu: &[ParamPoly], j: usize) -> Result<ParamFraction> {
    check_lengths(nhat, mu)?;
    let nh: Vec<ParamFraction> = nhat.iter().cloned().map(ParamFraction::from).collect();
    let mf: Vec<ParamFraction> = mu.iter().cloned().map(ParamFraction::from).collect();
    Ok(coeff_c_frac(&nh, &mf, j)?.reduced())
}

/// `Σ_j C_j μ_j^m` with denominators cleared.
pub fn theta_via_c(nhat: &[ParamPoly], mu: &[ParamPoly], m: usize) -> Result<ParamPoly> {
    check_lengths(nhat, mu)?;
    let mut acc = ParamFraction::zero();
    for j in 0..mu.len() {
        let c = coeff_c(nhat, mu, j)?;
        acc = &acc + &(&c * &ParamFraction::from(mu[j].pow(m as u32)));
    }
    acc.reduced().to_poly()
}

/// `ϑ_m(n, q^{-2}, μ, t) = Σ_j C_j(n, q^{-2}, μ + t/(1 − q^{-2})) μ_j^m`,
/// certified to be a polynomial.
pub fn theta_t(nhat: &[ParamPoly], mu: &[ParamPoly], m: usize) -> Result<ParamPoly> {
    check_lengths(nhat, mu)?;
    let shift = ParamFraction::new(ParamPoly::t(), one_minus_q2inv())?;
    let nh: Vec<ParamFraction> = nhat.iter().cloned().map(ParamFraction::from).collect();
    let shifted: Vec<ParamFraction> = mu
        .iter()
        .map(|x| &ParamFraction::from(x.clone()) + &shift)
        .collect();
    let mut acc = ParamFraction::zero();
    for j in 0..mu.len() {
        let c = coeff_c_frac(&nh, &shifted, j)?;
        acc = &acc + &(&c * &ParamFraction::from(mu[j].pow(m as u32)));
    }
    acc.reduced().to_poly().map_err(|e| match e {
        Error::NotDivisible(s) => Error::NotDivisible(format!("theta_t left a denominator: {s}")),
        other => other,
    })
}

/// Checks the identity relating `ϑ_m(n)` to `ϑ(n')` with the last part removed.
pub fn theta_recurrence_check(nhat: &[ParamPoly], mu: &[ParamPoly], m: usize) -> Result<bool> {
    check_lengths(nhat, mu)?;
    let k = mu.len();
    if k < 2 || m == 0 {
        return Err(Error::Invalid("the recurrence needs k ≥ 2 and m ≥ 1".into()));
    }
    let (np, mp) = (&nhat[..k - 1], &mu[..k - 1]);
    let (nk, muk) = (&nhat[k - 1], &mu[k - 1]);
    let mut rhs = theta(np, mp, m)?;
    let mut mid = ParamPoly::zero();
    for i in 1..m {
        mid = &mid + &(&theta(np, mp, m - i)? * &muk.pow(i as u32));
    }
    rhs = &rhs + &(&(&one_minus_q2inv() * nk) * &mid);
    rhs = &rhs + &(nk * &muk.pow(m as u32));
    Ok(theta(nhat, mu, m)? == rhs)
}

/// `ϑ_m(q^{-2}, λ)`: the case of `n` simple eigenvalues `λ`.
pub fn theta_lambda(lambda: &[ParamPoly], m: usize) -> Result<ParamPoly> {
    let ones = vec![ParamPoly::one(); lambda.len()];
    theta(&ones, lambda, m)
}

/// `ϑ_m(q^{-2}, λ)` at `λ_i = q^{-2(i−1)}`; equals `n̂`.
pub fn lemma_k1_check(n: usize, m: usize) -> Result<ParamPoly> {
    let lambda: Vec<ParamPoly> = (0..n).map(|i| ParamPoly::q_pow(-2 * i as i32)).collect();
    theta_lambda(&lambda, m)
}

/// Substitutes `λ_{j,i} = μ_j q^{-2(i−1)}` into `ϑ_m(q^{-2}, λ)` and
/// compares with `ϑ_m(n, q^{-2}, μ)`.
pub fn q_substitution_check(comp: &Composition, m: usize) -> Result<bool> {
    let mu = mu_symbols(comp.k());
    let mut lambda = Vec::with_capacity(comp.n());
    for (j, &nj) in comp.parts().iter().enumerate() {
        for i in 0..nj {
            lambda.push(&mu[j] * &ParamPoly::q_pow(-2 * i as i32));
        }
    }
    if lambda.is_empty() {
        return Err(Error::Invalid("composition of 0".into()));
    }
    Ok(theta_lambda(&lambda, m)? == theta(&comp.nhats(), &mu, m)?)
}

/// Newton identities with `s_m ↦ ϑ_m(q^{-2}, λ)` and `σ_m ↦ σ_m(λ)`.
pub fn newton_compatibility(n: usize, m_max: usize) -> Result<bool> {
    let lambda = lambda_symbols(n);
    let s = (0..=m_max)
        .map(|m| theta_lambda(&lambda, m))
        .collect::<Result<Vec<_>>>()?;
    let sigma: Vec<ParamPoly> = (0..=m_max)
        .map(|i| {
            if i <= n {
                elementary_symmetric(&lambda, i)
            } else {
                Ok(ParamPoly::zero())
            }
        })
        .collect::<Result<_>>()?;
    for m in 1..=m_max {
        let mut acc = &qint(m as i64) * &sigma[m];
        for i in 1..=m {
            let term = &s[i] * &sigma[m - i];
            acc = if i % 2 == 1 { &acc - &term } else { &acc + &term };
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The character `s_m ↦ ϑ_m(n, q^{-2}, μ, t)` of the center.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub composition: Composition,
    pub mu: Vec<ParamPoly>,
}

impl Character {
    /// `χ(s_m)`.
    pub fn value(&self, m: usize) -> Result<ParamPoly> {
        theta_t(&self.composition.nhats(), &self.mu, m)
    }

    pub fn values(&self, m_max: usize) -> Result<Vec<ParamPoly>> {
        (0..=m_max).map(|m| self.value(m)).collect()
    }

    /// `r_m(χ(s⃗))` for `m = k..=m_max`, which must all vanish.
    pub fn recurrence_residuals(&self, m_max: usize) -> Result<Vec<ParamPoly>> {
        let x = self.values(m_max)?;
        (self.mu.len()..=m_max)
            .map(|m| r_sequence(&x, &self.mu, m))
            .collect()
    }
}

pub fn character(comp: &Composition, mu: &[ParamPoly]) -> Result<Character> {
    if comp.k() != mu.len() {
        return Err(Error::Dimension(format!(
            "{} parts for {} eigenvalues",
            comp.k(),
            mu.len()
        )));
    }
    for i in 0..mu.len() {
        for j in 0..i {
            if mu[i] == mu[j] {
                return Err(Error::Invalid(format!("coincident eigenvalues μ{} = μ{}", j + 1, i + 1)));
            }
        }
    }
    Ok(Character {
        composition: comp.clone(),
        mu: mu.to_vec(),
    })
}

/// One character per composition in `{n:k}`, with symbolic `μ`.
pub fn enumerate_characters(n: usize, k: usize) -> Result<Vec<Character>> {
    let mu = mu_symbols(k);
    Composition::all(n, k)
        .iter()
        .map(|c| character(c, &mu))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ere::binomial;
    use crate::scalar::Rational;

    fn w() -> ParamPoly {
        one_minus_q2inv()
    }

    #[test]
    fn compositions() {
        assert_eq!(Composition::all(4, 2).len(), 5);
        assert_eq!(Composition::all(5, 3).len(), binomial(7, 2));
        assert_eq!(Composition::positive(3, 2).len(), 2);
        assert!(Composition::positive(1, 2).is_empty());
        assert_eq!(Composition::parse("2, 1").unwrap().parts(), &[2, 1]);
        assert!(Composition::parse("2,x").is_err());
    }

    #[test]
    fn theta_small_cases() {
        let mu = mu_symbols(2);
        let nh = nhat_symbols(2);
        let t1 = theta(&nh, &mu, 1).unwrap();
        assert_eq!(t1, &(&nh[0] * &mu[0]) + &(&nh[1] * &mu[1]));
        let t2 = theta(&nh, &mu, 2).unwrap();
        let expect = &(&(&nh[0] * &mu[0].pow(2)) + &(&nh[1] * &mu[1].pow(2)))
            + &(&(&w() * &(&nh[0] * &nh[1])) * &(&mu[0] * &mu[1]));
        assert_eq!(t2, expect);
        let c = Composition::new(vec![2, 3]).unwrap();
        assert_eq!(theta(&c.nhats(), &mu, 0).unwrap(), qint(5));
    }

    #[test]
    fn coefficient_examples() {
        let mu = mu_symbols(2);
        let nh = nhat_symbols(2);
        let c1 = coeff_c(&nh, &mu, 0).unwrap();
        let expect = &ParamFraction::from(nh[0].clone())
            * &(&ParamFraction::from(1)
                + &ParamFraction::new(&(&w() * &nh[1]) * &mu[1], &mu[0] - &mu[1]).unwrap());
        assert_eq!(c1, expect);
        let single = coeff_c(&nh[..1], &mu[..1], 0).unwrap();
        assert_eq!(single, ParamFraction::from(nh[0].clone()));
        let same = vec![mu[0].clone(), mu[0].clone()];
        assert!(coeff_c(&nh, &same, 0).is_err());
    }

    #[test]
    fn symmetric_orbit_trace() {
        let mu = mu_symbols(2);
        for n in 2..=5 {
            for n1 in 1..n {
                let c = Composition::new(vec![n1, n - n1]).unwrap();
                let nh = c.nhats();
                let expect = &(&(&nh[0] * &mu[0]) + &(&nh[1] * &mu[1])) + &(&ParamPoly::t() * &(&nh[0] * &nh[1]));
                assert_eq!(theta_t(&nh, &mu, 1).unwrap(), expect);
            }
        }
    }

    #[test]
    fn lemma_k1_values() {
        assert_eq!(lemma_k1_check(1, 4).unwrap(), ParamPoly::one());
        assert_eq!(lemma_k1_check(3, 2).unwrap(), qint(3));
        assert_eq!(lemma_k1_check(5, 6).unwrap(), qint(5));
    }

    #[test]
    fn classical_limit() {
        let c = Composition::new(vec![2, 1, 1]).unwrap();
        let mu = mu_symbols(3);
        let tt = theta_t(&c.nhats(), &mu, 3).unwrap();
        let at = tt.specialize(&[(Sym::Q, Rational::from_integer(1.into())), (Sym::T, Rational::from_integer(0.into()))].into_iter().collect());
        let expect = &(&(&ParamPoly::int(2) * &mu[0].pow(3)) + &mu[1].pow(3)) + &mu[2].pow(3);
        assert_eq!(at, expect);
    }

    #[test]
    fn character_count_and_unit() {
        let chars = enumerate_characters(4, 2).unwrap();
        assert_eq!(chars.len(), 5);
        for ch in &chars {
            assert_eq!(ch.value(0).unwrap(), qint(4));
        }
        assert!(character(&Composition::new(vec![1, 1]).unwrap(), &[ParamPoly::one(), ParamPoly::one()]).is_err());
    }
}
