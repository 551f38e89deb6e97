//! Verification batteries for orbit quotients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    classical_orbit_profile, minimal_poly_relations, quotient_basis, HilbertProfile, OrbitSpec,
    QuotientPresentation,
};
use crate::center::elementary_symmetric;
use crate::ere::{AlgebraElement, Generator, Presentation};
use crate::error::Result;
use crate::scalar::{rat, Coeff, Field, ParamPoly, RatFn, Rational, Specialization, Sym};

/// Profile of the quotient at one rational `(q, t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecializedProfile {
    pub q: String,
    pub t: String,
    pub profile: HilbertProfile,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub spec: String,
    pub degree: usize,
    pub build_degree: usize,
    pub quantum_profile: HilbertProfile,
    pub classical_profile: HilbertProfile,
    pub specialized: Vec<SpecializedProfile>,
    pub flat: bool,
    pub first_difference: Option<usize>,
    pub trace_values: Vec<String>,
    pub zero_parts: bool,
    pub witnesses: Vec<String>,
}

/// `count` rational `(q, t)` points with `q > 0`, `q ≠ 1` (the only root of
/// unity a positive rational can be) and `t ≠ 0`.
pub fn random_points(seed: u64, count: usize) -> Vec<(Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut q = rat(1, 1);
            while q == rat(1, 1) {
                q = rat(rng.random_range(2..=11), rng.random_range(1..=7));
            }
            let mut t = rat(rng.random_range(-9..=9), rng.random_range(1..=5));
            if t == rat(0, 1) {
                t = rat(1, 1);
            }
            (q, t)
        })
        .collect()
}

/// Compares the quantum profile (symbolic `q`, `t` unless fixed by `spec`)
/// with the commutative oracle, then re-checks at seeded rational points.
pub fn flatness_check(spec: &OrbitSpec, d: usize, slack: usize, seed: u64, points: usize) -> Result<FlatnessReport> {
    let (quantum, classical) = rayon::join(
        || quotient_basis::<RatFn>(spec, d, slack),
        || classical_orbit_profile(spec, d),
    );
    let quantum = quantum?;
    let classical = classical?;
    let qp = quantum.profile();
    let mut witnesses = Vec::new();
    let diff = qp.first_difference(&classical);
    if let Some(e) = diff {
        witnesses.push(format!(
            "degree {e}: quantum dim {:?} vs classical dim {:?}",
            qp.dims().get(e),
            classical.dims().get(e)
        ));
    }
    let mut specialized = Vec::new();
    if spec.q.is_none() || spec.t.is_none() {
        for (q, t) in random_points(seed, points) {
            let s = spec
                .clone()
                .with_q(Some(spec.q.clone().unwrap_or(q)))
                .with_t(Some(spec.t.clone().unwrap_or(t)));
            let p = quotient_basis::<Rational>(&s, d, slack)?.profile();
            let agrees = p == classical;
            if !agrees {
                witnesses.push(format!("specialization {}: profile {:?}", s.describe(), p.dims()));
            }
            specialized.push(SpecializedProfile {
                q: s.q.as_ref().unwrap().to_string(),
                t: s.t.as_ref().unwrap().to_string(),
                profile: p,
                agrees,
            });
        }
    }
    let trace_values = (1..spec.k())
        .map(|m| spec.trace_value(m).map(|v| v.to_string()))
        .collect::<Result<_>>()?;
    Ok(FlatnessReport {
        spec: spec.describe(),
        degree: d,
        build_degree: quantum.build_degree(),
        flat: diff.is_none() && specialized.iter().all(|s| s.agrees),
        quantum_profile: qp,
        classical_profile: classical,
        specialized,
        first_difference: diff,
        trace_values,
        zero_parts: spec.has_zero_parts(),
        witnesses,
    })
}

/// `t (δ^k_j L^i_l − δ^i_l L^k_j)`.
fn kks_bracket<F: Field>(n: usize, t: &F, i: usize, j: usize, k: usize, l: usize) -> AlgebraElement<F> {
    let mut out = AlgebraElement::zero(n);
    if k == j {
        out = out.add(&AlgebraElement::generator(n, Generator { i, j: l }));
    }
    if i == l {
        out = out.sub(&AlgebraElement::generator(n, Generator { i: k, j }));
    }
    out.scale(t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KksReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub ok: bool,
    pub commutative_at_t0: bool,
    pub witnesses: Vec<String>,
}

/// Checks `[L^i_j, L^k_l] = t (δ^k_j L^i_l − δ^i_l L^k_j)` in `p`.
fn kks_commutators<F: Field>(p: &Presentation<F>, t: &F) -> Result<(usize, Vec<String>)> {
    let n = p.n();
    let mut count = 0;
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let a = p.generator(i, j)?;
                    let b = p.generator(k, l)?;
                    let lhs = p.normal_form(&a.commutator(&b))?;
                    let rhs = p.normal_form(&kks_bracket(n, t, i, j, k, l))?;
                    count += 1;
                    if lhs != rhs {
                        witnesses.push(format!(
                            "[L{}_{}, L{}_{}] = {} but expected {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1,
                            lhs,
                            rhs
                        ));
                    }
                }
            }
        }
    }
    Ok((count, witnesses))
}

/// At `q = 1` the commutators of generators reproduce `t` times the `gl(n)`
/// structure constants; at `t = 0` the algebra is commutative.
pub fn kks_structure_check(n: usize) -> Result<KksReport> {
    let spec = Specialization::symbolic().with_int(Sym::Q, 1);
    let p = Presentation::<RatFn>::ere(n, 2, &spec)?;
    let t = RatFn::embed(&ParamPoly::t(), &spec)?;
    let (pairs_checked, witnesses) = kks_commutators(&p, &t)?;
    let spec0 = spec.with_int(Sym::T, 0);
    let p0 = Presentation::<Rational>::ere(n, 2, &spec0)?;
    let (_, w0) = kks_commutators(&p0, &<Rational as Coeff>::zero())?;
    Ok(KksReport {
        n,
        pairs_checked,
        ok: witnesses.is_empty() && w0.is_empty(),
        commutative_at_t0: w0.is_empty(),
        witnesses,
    })
}

/// The `q = 1`, symbolic `t` quotient for `spec`, with the bracket checked
/// inside the quotient.
pub fn kks_specialization(
    spec: &OrbitSpec,
    d: usize,
    slack: usize,
) -> Result<(QuotientPresentation<RatFn>, KksReport)> {
    let s = spec.clone().with_q(Some(rat(1, 1)));
    let q = quotient_basis::<RatFn>(&s, d.max(2), slack)?;
    let t = RatFn::embed(&ParamPoly::t(), &s.specialization())?;
    let (pairs_checked, witnesses) = kks_commutators(&q.presentation, &t)?;
    let report = KksReport {
        n: spec.n(),
        pairs_checked,
        ok: witnesses.is_empty(),
        commutative_at_t0: s.t.as_ref().is_some_and(|t| *t == rat(0, 1)) && witnesses.is_empty(),
        witnesses,
    };
    Ok((q, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub spec: String,
    pub checked: Vec<usize>,
    pub ok: bool,
    pub witnesses: Vec<String>,
}

/// In the full quotient, `s_m` reduces to `ϑ_m · 1` for `m = k..=m_max`
/// (capped at the build degree).
pub fn character_consistency(
    spec: &OrbitSpec,
    q: &QuotientPresentation<RatFn>,
    m_max: usize,
) -> Result<ConsistencyReport> {
    let p = &q.presentation;
    let s = spec.specialization();
    let mut checked = Vec::new();
    let mut witnesses = Vec::new();
    for m in 1..=m_max.min(p.degree()) {
        let lhs = p.s_element(m)?;
        let rhs = p.scalar(RatFn::embed(&spec.trace_value(m)?, &s)?);
        checked.push(m);
        if lhs != rhs {
            witnesses.push(format!("s_{m} = {lhs}, expected {rhs}"));
        }
    }
    Ok(ConsistencyReport {
        spec: spec.describe(),
        checked,
        ok: witnesses.is_empty(),
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub spec: String,
    pub r_in_ideal: Vec<(usize, bool)>,
    pub central_dim: usize,
    pub expected_central_dim: usize,
    pub powers_of_s1_central: bool,
    pub ok: bool,
}

/// `Σ_{i=0}^k (−1)^i σ_i(μ) s_{m−i}` in `p`.
fn r_element<F: Field>(p: &Presentation<F>, mu: &[F], m: usize) -> Result<AlgebraElement<F>> {
    let mut acc = AlgebraElement::zero(p.n());
    for i in 0..=mu.len() {
        let term = p.s_element(m - i)?.scale(&elementary_symmetric(mu, i)?);
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Dimension of the central elements among quotient classes of degree `≤ e`.
pub fn central_dimension<F: Field>(p: &Presentation<F>, e: usize) -> Result<usize> {
    let ideal = p.ideal();
    let index = ideal.index();
    let n = p.n();
    // standard words: non-pivot columns of length ≤ e
    let basis: Vec<AlgebraElement<F>> = (0..index.count_upto(e))
        .map(|c| AlgebraElement::monomial(n, index.word(c as u32), F::one()))
        .filter(|w| ideal.normal_form(w).map(|x| x == *w).unwrap_or(false))
        .collect();
    // columns of the commutator map, one per basis element
    let mut images: Vec<Vec<(crate::ere::Word, F)>> = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut col = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = p.normal_form(&b.commutator(&p.generator(i, j)?))?;
                for (w, v) in c.terms() {
                    let mut tagged = w.clone();
                    tagged.0.insert(0, (i * n + j) as u8);
                    col.push((tagged, v.clone()));
                }
            }
        }
        images.push(col);
    }
    Ok(basis.len() - rank(&images))
}

/// Rank of a list of sparse vectors.
fn rank<K: Ord + Clone, F: Field>(vectors: &[Vec<(K, F)>]) -> usize {
    use std::collections::BTreeMap;
    let mut pivots: BTreeMap<K, BTreeMap<K, F>> = BTreeMap::new();
    for v in vectors {
        let mut row: BTreeMap<K, F> = BTreeMap::new();
        for (k, x) in v {
            let e = row.entry(k.clone()).or_insert_with(F::zero);
            *e = e.add_ref(x);
        }
        row.retain(|_, x| !x.is_zero());
        while let Some((lead, lc)) = row.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            match pivots.get(&lead) {
                Some(p) => {
                    for (k, x) in p {
                        let e = row.entry(k.clone()).or_insert_with(F::zero);
                        *e = e.sub_ref(&lc.mul_ref(x));
                    }
                    row.retain(|_, x| !x.is_zero());
                }
                None => {
                    let inv = lc.inv_ref();
                    let normed = row.into_iter().map(|(k, x)| (k, x.mul_ref(&inv))).collect();
                    pivots.insert(lead, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// For `k = 2`: the `r_m(s⃗)`, `m = 2..=m_max`, lie in the ideal of the
/// matrix polynomial relations alone, and the central elements of degree
/// `≤ 2` there are spanned by `1, s_1, s_1²`.
pub fn intersection_check(spec: &OrbitSpec, m_max: usize) -> Result<IntersectionReport> {
    let s = spec.specialization();
    let n = spec.n();
    let rels = minimal_poly_relations::<RatFn>(spec)?;
    let p = Presentation::with_relations(n, m_max.max(3), &s, rels)?;
    let mu: Vec<RatFn> = spec
        .mu
        .iter()
        .map(|m| RatFn::embed(&ParamPoly::constant(m.clone()), &s))
        .collect::<Result<_>>()?;
    let mut r_in_ideal = Vec::new();
    for m in spec.k()..=m_max {
        r_in_ideal.push((m, r_element(&p, &mu, m)?.is_zero()));
    }
    let central_dim = central_dimension(&p, 2)?;
    let s1 = p.s_element(1)?;
    let s1sq = p.mul(&s1, &s1)?;
    let powers_of_s1_central = p.is_central(&s1)?.central && p.is_central(&s1sq)?.central;
    let expected_central_dim = 3;
    Ok(IntersectionReport {
        spec: spec.describe(),
        ok: r_in_ideal.iter().all(|(_, b)| *b) && powers_of_s1_central && central_dim == expected_central_dim,
        r_in_ideal,
        central_dim,
        expected_central_dim,
        powers_of_s1_central,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub specs: Vec<String>,
    pub profiles: Vec<HilbertProfile>,
    pub s1_values: Vec<String>,
    pub separated: bool,
}

/// Two orbit data are told apart by their profiles or by `ϑ_1`.
pub fn separation_check(a: &OrbitSpec, b: &OrbitSpec, d: usize, slack: usize) -> Result<SeparationReport> {
    let pa = quotient_basis::<RatFn>(a, d, slack)?.profile();
    let pb = quotient_basis::<RatFn>(b, d, slack)?.profile();
    let va = a.trace_value(1)?;
    let vb = b.trace_value(1)?;
    Ok(SeparationReport {
        specs: vec![a.describe(), b.describe()],
        separated: pa != pb || va != vb,
        profiles: vec![pa, pb],
        s1_values: vec![va.to_string(), vb.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::Composition;

    fn orbit(parts: &[usize], mu: &[i64]) -> OrbitSpec {
        OrbitSpec::new(
            Composition::new(parts.to_vec()).unwrap(),
            mu.iter().map(|&m| rat(m, 1)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn seeded_points_are_reproducible() {
        assert_eq!(random_points(7, 3), random_points(7, 3));
        assert_ne!(random_points(7, 3), random_points(8, 3));
        assert!(random_points(1, 20).iter().all(|(q, _)| *q != rat(1, 1)));
    }

    #[test]
    fn flat_rank_two_projector_orbit() {
        let r = flatness_check(&orbit(&[1, 1], &[0, 1]), 3, 1, 11, 3).unwrap();
        assert!(r.flat, "{:?}", r.witnesses);
        assert_eq!(r.quantum_profile.dims(), &[1, 4, 9, 16]);
        assert_eq!(r.specialized.len(), 3);
        let k1 = flatness_check(&orbit(&[2], &[5]), 3, 1, 11, 1).unwrap();
        assert!(k1.flat);
    }

    #[test]
    fn kks_brackets() {
        let r = kks_structure_check(2).unwrap();
        assert!(r.ok, "{:?}", r.witnesses);
        assert_eq!(r.pairs_checked, 16);
        let (q, r) = kks_specialization(&orbit(&[1, 1], &[0, 1]), 2, 0).unwrap();
        assert!(r.ok, "{:?}", r.witnesses);
        // Tr L = n1 μ1 + n2 μ2 + t n1 n2 at q = 1
        let s = orbit(&[1, 1], &[0, 1]).with_q(Some(rat(1, 1)));
        assert_eq!(s.trace_value(1).unwrap(), &ParamPoly::one() + &ParamPoly::t());
        assert_eq!(q.profile().dims(), &[1, 4, 9]);
    }

    #[test]
    fn traces_reduce_to_characters() {
        let s = orbit(&[1, 1], &[0, 1]);
        let q = quotient_basis::<RatFn>(&s, 4, 0).unwrap();
        let r = character_consistency(&s, &q, 4).unwrap();
        assert!(r.ok, "{:?}", r.witnesses);
        assert_eq!(r.checked, vec![1, 2, 3, 4]);
    }

    #[test]
    fn intersection_with_recurrence() {
        let r = intersection_check(&orbit(&[1, 1], &[0, 1]), 4).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn compositions_are_separated() {
        let r = separation_check(&orbit(&[2, 0], &[0, 1]), &orbit(&[1, 1], &[0, 1]), 2, 0).unwrap();
        assert!(r.separated);
        assert_ne!(r.s1_values[0], r.s1_values[1]);
    }
}
