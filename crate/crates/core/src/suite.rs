//! The verification suite: configurable batteries producing [`CheckReport`]s.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::center::{
    cayley_hamilton_check, cayley_hamilton_shifted, s_from_sigma, sigma_from_s, AlgebraRing, ScalarRing,
};
use crate::ere::{binomial, classical_coranks, Presentation};
use crate::error::{Error, Result};
use crate::orbit::{DEFAULT_SLACK, 
    character_consistency, flatness_check, intersection_check, kks_specialization, kks_structure_check,
    quotient_basis, random_points, separation_check, OrbitSpec,
};
use crate::qla::{
    check_hecke, check_ybe, hecke_symmetry, partial_quantum_trace, weight_matrix, PolyMatrix, TraceFactor,
};
use crate::report::{CheckReport, ANCHORS};
use crate::scalar::{
    one_minus_q2inv, qint, Field, ParamFraction, ParamPoly, RatFn, Rational, Specialization, Sym,
};
use crate::theta::{
    enumerate_characters, lemma_k1_check, mu_symbols, newton_compatibility, nhat_symbols,
    q_substitution_check, theta, theta_recurrence_check, theta_t, theta_via_c, Composition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Battery {
    Ybe,
    Hecke,
    TraceNorm,
    Pbw,
    Centrality,
    Newton,
    CayleyHamilton,
    ThetaIdentities,
    SymmetricOrbit,
    Characters,
    OrbitFlatness,
    OrbitStructure,
    Kks,
}

impl Battery {
    pub const ALL: [Battery; 13] = [
        Battery::Ybe,
        Battery::Hecke,
        Battery::TraceNorm,
        Battery::Pbw,
        Battery::Centrality,
        Battery::Newton,
        Battery::CayleyHamilton,
        Battery::ThetaIdentities,
        Battery::SymmetricOrbit,
        Battery::Characters,
        Battery::OrbitFlatness,
        Battery::OrbitStructure,
        Battery::Kks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Battery::Ybe => "ybe",
            Battery::Hecke => "hecke",
            Battery::TraceNorm => "trace-norm",
            Battery::Pbw => "pbw",
            Battery::Centrality => "centrality",
            Battery::Newton => "newton",
            Battery::CayleyHamilton => "cayley-hamilton",
            Battery::ThetaIdentities => "theta-identities",
            Battery::SymmetricOrbit => "symmetric-orbit",
            Battery::Characters => "characters",
            Battery::OrbitFlatness => "orbit-flatness",
            Battery::OrbitStructure => "orbit-structure",
            Battery::Kks => "kks",
        }
    }
}

impl FromStr for Battery {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Battery::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown battery {s:?}")))
    }
}

/// Coefficient mode for the engine-heavy batteries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `q`, `t` stay symbols.
    #[default]
    Symbolic,
    /// `q`, `t` take the first seeded rational point.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitCase {
    pub comp: Vec<usize>,
    pub mu: Vec<String>,
    pub degree: usize,
}

impl OrbitCase {
    pub fn new(comp: &[usize], mu: &[i64], degree: usize) -> Self {
        OrbitCase {
            comp: comp.to_vec(),
            mu: mu.iter().map(i64::to_string).collect(),
            degree,
        }
    }

    pub fn spec(&self) -> Result<OrbitSpec> {
        let mu = self
            .mu
            .iter()
            .map(|s| crate::scalar::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        OrbitSpec::new(Composition::new(self.comp.clone())?, mu)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub batteries: Vec<Battery>,
    /// R-matrix and trace-normalization sizes.
    pub n_range: (usize, usize),
    /// `(n, d)` pairs for the PBW count.
    pub pbw: Vec<(usize, usize)>,
    pub centrality_n: Vec<usize>,
    pub cayley_hamilton_n: Vec<usize>,
    pub theta_n_max: usize,
    pub theta_k_max: usize,
    pub theta_m_max: usize,
    /// The recurrence is checked for `k ≤ m ≤ k + recurrence_span`.
    pub recurrence_span: usize,
    pub orbits: Vec<OrbitCase>,
    /// Extra truncation degree for quotient ideals.
    pub slack: usize,
    pub kks_n: Vec<usize>,
    pub mode: Mode,
    pub random_points: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            batteries: Battery::ALL.to_vec(),
            n_range: (2, 4),
            pbw: vec![(2, 4), (3, 3)],
            centrality_n: vec![2, 3],
            cayley_hamilton_n: vec![2],
            theta_n_max: 5,
            theta_k_max: 3,
            theta_m_max: 6,
            recurrence_span: 4,
            orbits: vec![
                OrbitCase::new(&[1, 1], &[0, 1], 4),
                OrbitCase::new(&[2], &[0], 4),
                OrbitCase::new(&[2, 1], &[0, 1], 2),
                OrbitCase::new(&[1, 1, 1], &[0, 1, 2], 2),
            ],
            slack: DEFAULT_SLACK,
            kks_n: vec![2, 3],
            mode: Mode::Symbolic,
            random_points: 3,
            seed: 20240607,
            out_dir: None,
        }
    }
}

/// Free-algebra words needed for a truncation; used to bound the work.
fn word_count(n: usize, d: usize) -> f64 {
    (0..=d).map(|e| ((n * n) as f64).powi(e as i32)).sum()
}

const MAX_WORDS: f64 = 10_000.0;

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Invalid(s));
        let (lo, hi) = self.n_range;
        if lo == 0 || lo > hi || hi > 6 {
            return bad(format!("n_range {lo}..={hi} must satisfy 1 ≤ lo ≤ hi ≤ 6"));
        }
        for &(n, d) in &self.pbw {
            if n == 0 || word_count(n, d) > MAX_WORDS {
                return bad(format!("pbw case n={n} d={d} exceeds the engine limit"));
            }
        }
        for &n in self.centrality_n.iter().chain(&self.cayley_hamilton_n).chain(&self.kks_n) {
            if n == 0 || word_count(n, 3) > MAX_WORDS {
                return bad(format!("n={n} exceeds the engine limit"));
            }
        }
        if self.theta_n_max > 8 || self.theta_k_max > 4 || self.theta_m_max > 10 || self.recurrence_span > 8 {
            return bad("theta bounds exceed n ≤ 8, k ≤ 4, m ≤ 10, span ≤ 8".into());
        }
        for o in &self.orbits {
            let spec = o.spec()?;
            if word_count(spec.n(), o.degree + self.slack) > MAX_WORDS {
                return bad(format!("orbit {} at degree {} exceeds the engine limit", spec.describe(), o.degree));
            }
        }
        if self.random_points > 16 {
            return bad("at most 16 random points".into());
        }
        Ok(())
    }

    /// Symbolic specialization, or the first seeded `(q, t)` in rational mode.
    fn specialization(&self) -> Specialization {
        match self.mode {
            Mode::Symbolic => Specialization::symbolic(),
            Mode::Rational => {
                let (q, t) = random_points(self.seed, 1).remove(0);
                Specialization::symbolic().with(Sym::Q, q).with(Sym::T, t)
            }
        }
    }
}

fn anchor(i: usize) -> &'static str {
    ANCHORS[i]
}

const A_YBE: usize = 0;
const A_HECKE: usize = 1;
const A_ERE: usize = 2;
const A_TRACE: usize = 3;
const A_CH: usize = 5;
const A_NEWTON: usize = 6;
const A_RECURRENCE: usize = 7;
const A_THETA: usize = 9;
const A_SHIFT: usize = 16;
const A_CHAR: usize = 15;
const A_FLAT: usize = 18;
const A_ORBIT: usize = 19;
const A_KKS: usize = 20;
const A_SYMMETRIC: usize = 21;

/// Runs `f`, recording the time and turning errors into a failing report.
fn timed(mut report: CheckReport, f: impl FnOnce(&mut CheckReport) -> Result<()>) -> CheckReport {
    let start = Instant::now();
    if let Err(e) = f(&mut report) {
        report.ok = false;
        report.witnesses.push(format!("error: {e}"));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs the selected batteries; reports come back in declaration order.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    config.validate()?;
    let nested: Vec<Vec<CheckReport>> = config
        .batteries
        .par_iter()
        .map(|b| run_battery(*b, config))
        .collect();
    Ok(nested.into_iter().flatten().collect())
}

pub fn run_battery(b: Battery, c: &SuiteConfig) -> Vec<CheckReport> {
    match b {
        Battery::Ybe => r_matrix(c, "ybe", A_YBE, |s| check_ybe(s)),
        Battery::Hecke => r_matrix(c, "hecke", A_HECKE, |s| check_hecke(s)),
        Battery::TraceNorm => trace_norm(c),
        Battery::Pbw => pbw(c),
        Battery::Centrality => centrality(c),
        Battery::Newton => newton(c),
        Battery::CayleyHamilton => cayley_hamilton(c),
        Battery::ThetaIdentities => theta_identities(c),
        Battery::SymmetricOrbit => vec![symmetric_orbit(c)],
        Battery::Characters => characters(c),
        Battery::OrbitFlatness => orbit_flatness(c),
        Battery::OrbitStructure => orbit_structure(c),
        Battery::Kks => kks(c),
    }
}

fn r_matrix(
    c: &SuiteConfig,
    name: &str,
    a: usize,
    check: impl Fn(&crate::qla::TensorMatrix) -> crate::qla::IdentityCheck,
) -> Vec<CheckReport> {
    (c.n_range.0..=c.n_range.1)
        .map(|n| {
            timed(CheckReport::new(name, json!({ "n": n }), anchor(a), c.seed), |r| {
                let res = check(&hecke_symmetry(n));
                r.ok = res.ok;
                r.witnesses.extend(res.witness);
                Ok(())
            })
        })
        .collect()
}

pub fn trace_norm_report(n: usize, seed: u64) -> CheckReport {
    timed(CheckReport::new("trace-norm", json!({ "n": n }), anchor(A_TRACE), seed), |r| {
        let s = hecke_symmetry(n);
        let d = weight_matrix(n)?;
        let q1 = PolyMatrix::identity(n).scale(&ParamPoly::q_pow(1));
        let first = partial_quantum_trace(&s, &d, TraceFactor::First) == q1;
        let second = partial_quantum_trace(&s, &d, TraceFactor::Second) == q1;
        let unit = d.trace() == qint(n as i64);
        r.ok = first && unit;
        if !first {
            r.witnesses.push("(Tr_q ⊗ id)(S) ≠ q·1".into());
        }
        if !unit {
            r.witnesses.push(format!("Tr(D) = {}", d.trace()));
        }
        r.data = json!({
            "diagonal": d.diagonal().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "first_factor_is_q": first,
            "second_factor_is_q": second,
            "trace_of_unit": d.trace().to_string(),
        });
        Ok(())
    })
}

fn trace_norm(c: &SuiteConfig) -> Vec<CheckReport> {
    (c.n_range.0..=c.n_range.1).map(|n| trace_norm_report(n, c.seed)).collect()
}

pub fn pbw_report(n: usize, d: usize, spec: &Specialization, seed: u64) -> CheckReport {
    let params = json!({ "n": n, "d": d, "spec": spec.describe() });
    timed(CheckReport::new("pbw", params, anchor(A_ERE), seed), |r| {
        let got = if spec.get(Sym::Q).is_some() && spec.get(Sym::T).is_some() {
            Presentation::<Rational>::ere(n, d, spec)?.coranks()
        } else {
            Presentation::<RatFn>::ere(n, d, spec)?.coranks()
        };
        let want = classical_coranks(n, d);
        r.ok = got == want;
        if !r.ok {
            r.witnesses.push(format!("{got:?} != {want:?}"));
        }
        r.data = json!({ "quantum_profile": got, "classical_profile": want });
        Ok(())
    })
}

fn pbw(c: &SuiteConfig) -> Vec<CheckReport> {
    let spec = c.specialization();
    c.pbw.iter().map(|&(n, d)| pbw_report(n, d, &spec, c.seed)).collect()
}

pub fn centrality_report(n: usize, spec: &Specialization, seed: u64) -> CheckReport {
    let params = json!({ "n": n, "spec": spec.describe() });
    timed(CheckReport::new("centrality", params, anchor(A_TRACE), seed), |r| {
        let p = Presentation::<RatFn>::ere(n, 3, spec)?;
        let mut central = Vec::new();
        for m in 1..=2 {
            let c = p.is_central(&p.s_element(m)?)?;
            r.witnesses.extend(c.witness.clone());
            central.push(c.central);
        }
        // a generator off the diagonal must fail
        let control = p.is_central(&p.generator(0, n - 1)?)?.central;
        r.ok = central.iter().all(|&b| b) && (n == 1 || !control);
        r.data = json!({ "s1_central": central[0], "s2_central": central[1], "generator_central": control });
        Ok(())
    })
}

fn centrality(c: &SuiteConfig) -> Vec<CheckReport> {
    let spec = c.specialization();
    c.centrality_n.iter().map(|&n| centrality_report(n, &spec, c.seed)).collect()
}

fn newton(c: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    // generic power sums: σ(s) then s(σ) is the identity
    out.push(timed(
        CheckReport::new("newton", json!({ "kind": "symbolic", "m_max": 5 }), anchor(A_NEWTON), c.seed),
        |r| {
            let spec = Specialization::symbolic();
            let ring = ScalarRing::<RatFn>::new(&spec);
            let mut s = vec![RatFn::embed(&qint(4), &spec)?];
            for m in 1..=5u8 {
                s.push(RatFn::embed(&ParamPoly::var(Sym::Lambda(m)), &spec)?);
            }
            let sigma = sigma_from_s(&ring, &s, 5)?;
            let back = s_from_sigma(&ring, &sigma, s[0].clone(), 5)?;
            r.ok = back == s;
            Ok(())
        },
    ));
    for &n in &c.centrality_n {
        out.push(timed(
            CheckReport::new("newton", json!({ "kind": "algebra", "n": n }), anchor(A_NEWTON), c.seed),
            |r| {
                let p = Presentation::<RatFn>::ere(n, 3, &c.specialization())?;
                let s = (0..=3).map(|m| p.s_element(m)).collect::<Result<Vec<_>>>()?;
                let ring = AlgebraRing { presentation: &p };
                let sigma = sigma_from_s(&ring, &s, 3)?;
                let back = s_from_sigma(&ring, &sigma, s[0].clone(), 3)?;
                r.ok = back == s;
                Ok(())
            },
        ));
    }
    for n in 1..=c.theta_n_max {
        out.push(timed(
            CheckReport::new(
                "newton",
                json!({ "kind": "theta", "n": n, "m_max": c.theta_m_max }),
                anchor(A_NEWTON),
                c.seed,
            ),
            |r| {
                r.ok = newton_compatibility(n, c.theta_m_max)?;
                Ok(())
            },
        ));
    }
    out
}

fn ch_report(name: &str, params: Value, a: usize, seed: u64, top_only: bool, f: impl FnOnce() -> Result<crate::center::CayleyHamilton>) -> CheckReport {
    timed(CheckReport::new(name, params, anchor(a), seed), |r| {
        let ch = f()?;
        r.ok = if top_only { ch.top_degree_zero } else { ch.zero };
        if !r.ok {
            r.witnesses.extend(ch.witness.clone());
        }
        r.data = serde_json::to_value(&ch).expect("serializable");
        Ok(())
    })
}

fn cayley_hamilton(c: &SuiteConfig) -> Vec<CheckReport> {
    let sym = Specialization::symbolic();
    let mut out = Vec::new();
    for &n in &c.cayley_hamilton_n {
        let d = n + 1;
        out.push(ch_report(
            "cayley-hamilton",
            json!({ "n": n, "q": "symbolic", "t": "0", "component": "full" }),
            A_CH,
            c.seed,
            false,
            || cayley_hamilton_check(&Presentation::<RatFn>::ere(n, d, &sym.clone().with_int(Sym::T, 0))?),
        ));
        out.push(ch_report(
            "cayley-hamilton",
            json!({ "n": n, "q": "1", "t": "symbolic", "component": "top" }),
            A_CH,
            c.seed,
            true,
            || cayley_hamilton_check(&Presentation::<RatFn>::ere(n, d, &sym.clone().with_int(Sym::Q, 1))?),
        ));
        out.push(ch_report(
            "cayley-hamilton-shifted",
            json!({ "n": n, "q": "symbolic", "t": "symbolic" }),
            A_SHIFT,
            c.seed,
            false,
            || {
                let pt = Presentation::<RatFn>::ere(n, d, &sym)?;
                let p0 = Presentation::<RatFn>::ere(n, d, &sym.clone().with_int(Sym::T, 0))?;
                let shift = RatFn::new(ParamFraction::new(ParamPoly::t(), one_minus_q2inv())?);
                cayley_hamilton_shifted(&pt, &p0, &shift)
            },
        ));
    }
    out
}

fn classical_power_sum(comp: &Composition, mu: &[ParamPoly], m: usize) -> ParamPoly {
    comp.parts()
        .iter()
        .zip(mu)
        .fold(ParamPoly::zero(), |acc, (&n, x)| &acc + &(&ParamPoly::int(n as i64) * &x.pow(m as u32)))
}

/// All ϑ identities for compositions of `n` into at most `k_max` parts.
pub fn theta_identity_report(n: usize, k_max: usize, m_max: usize, seed: u64) -> CheckReport {
    let params = json!({ "n": n, "k_max": k_max, "m_max": m_max });
    timed(CheckReport::new("theta-identities", params, anchor(A_THETA), seed), |r| {
        let at_classical: std::collections::BTreeMap<Sym, Rational> =
            [(Sym::Q, Rational::from_integer(1.into())), (Sym::T, Rational::from_integer(0.into()))].into();
        let mut counts: std::collections::BTreeMap<&str, usize> = Default::default();
        let fail = |r: &mut CheckReport, what: &str, comp: &Composition, m: usize| {
            r.witnesses.push(format!("{what} fails for {comp}, m={m}"));
        };
        for k in 1..=k_max {
            let mu = mu_symbols(k);
            for comp in Composition::all(n, k) {
                let nh = comp.nhats();
                for m in 0..=m_max {
                    let th = theta(&nh, &mu, m)?;
                    let mut check = |name: &'static str, ok: bool, r: &mut CheckReport| {
                        *counts.entry(name).or_default() += 1;
                        if !ok {
                            fail(r, name, &comp, m);
                        }
                    };
                    check("rational", theta_via_c(&nh, &mu, m)? == th, r);
                    let tt = theta_t(&nh, &mu, m)?;
                    check("t-shift", tt.specialize_one(Sym::T, Rational::from_integer(0.into())) == th, r);
                    check("classical", th.specialize(&at_classical) == classical_power_sum(&comp, &mu, m), r);
                    check("q-substitution", q_substitution_check(&comp, m)?, r);
                    if k >= 2 && m >= 1 {
                        check("recurrence", theta_recurrence_check(&nh, &mu, m)?, r);
                    }
                }
            }
        }
        for m in 0..=m_max {
            *counts.entry("lemma-k1").or_default() += 1;
            if lemma_k1_check(n, m)? != qint(n as i64) {
                r.witnesses.push(format!("lemma K=1 fails for m={m}"));
            }
        }
        *counts.entry("newton").or_default() += 1;
        if !newton_compatibility(n, m_max)? {
            r.witnesses.push("Newton compatibility fails".into());
        }
        r.ok = r.witnesses.is_empty();
        r.data = json!({ "checked": counts });
        Ok(())
    })
}

/// ϑ via direct expansion equals the `C_j` form with opaque `n̂_i`.
pub fn theta_uniform_report(k_max: usize, m_max: usize, seed: u64) -> CheckReport {
    let params = json!({ "k_max": k_max, "m_max": m_max, "nhat": "symbolic" });
    timed(CheckReport::new("theta-identities", params, anchor(A_THETA + 1), seed), |r| {
        for k in 1..=k_max {
            let (nh, mu) = (nhat_symbols(k), mu_symbols(k));
            for m in 0..=m_max {
                if theta(&nh, &mu, m)? != theta_via_c(&nh, &mu, m)? {
                    r.witnesses.push(format!("k={k} m={m}"));
                }
            }
        }
        r.ok = r.witnesses.is_empty();
        Ok(())
    })
}

fn theta_identities(c: &SuiteConfig) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = (1..=c.theta_n_max)
        .into_par_iter()
        .map(|n| theta_identity_report(n, c.theta_k_max, c.theta_m_max, c.seed))
        .collect();
    out.push(theta_uniform_report(c.theta_k_max, c.theta_m_max, c.seed));
    out
}

/// Table of `ϑ_m(n, q^{-2}, μ)` (or the `t`-shifted values) for `m ≤ m_max`.
pub fn theta_table_report(comp: &Composition, m_max: usize, shifted: bool, seed: u64) -> CheckReport {
    let params = json!({ "comp": comp.to_string(), "m_max": m_max, "t": shifted });
    let a = if shifted { A_THETA + 2 } else { A_THETA };
    timed(CheckReport::new("theta", params, anchor(a), seed), |r| {
        let (nh, mu) = (comp.nhats(), mu_symbols(comp.k()));
        let mut rows = Vec::new();
        for m in 0..=m_max {
            let v = if shifted { theta_t(&nh, &mu, m)? } else { theta(&nh, &mu, m)? };
            rows.push(json!({ "m": m, "value": v.to_string() }));
        }
        r.ok = true;
        r.data = json!({ "table": rows });
        Ok(())
    })
}

/// `ϑ_1((n_1, n_2), μ, t) = n̂_1 μ_1 + n̂_2 μ_2 + t n̂_1 n̂_2`.
pub fn symmetric_orbit_report(n_max: usize, seed: u64) -> CheckReport {
    timed(
        CheckReport::new("symmetric-orbit", json!({ "n_max": n_max }), anchor(A_SYMMETRIC), seed),
        |r| {
            let mu = mu_symbols(2);
            let mut checked = 0;
            for n in 1..=n_max {
                for n1 in 0..=n {
                    let comp = Composition::new(vec![n1, n - n1])?;
                    let nh = comp.nhats();
                    let expect = &(&(&nh[0] * &mu[0]) + &(&nh[1] * &mu[1])) + &(&ParamPoly::t() * &(&nh[0] * &nh[1]));
                    let got = theta_t(&nh, &mu, 1)?;
                    checked += 1;
                    if got != expect {
                        r.witnesses.push(format!("{comp}: {got}"));
                    }
                }
            }
            r.ok = r.witnesses.is_empty();
            r.data = json!({ "compositions": checked });
            Ok(())
        },
    )
}

fn symmetric_orbit(c: &SuiteConfig) -> CheckReport {
    symmetric_orbit_report(c.theta_n_max, c.seed)
}

/// Character count and the recurrence `r_m(ϑ) = 0`, `k ≤ m ≤ k + span`.
pub fn characters_report(n: usize, k: usize, span: usize, seed: u64) -> CheckReport {
    let params = json!({ "n": n, "k": k, "m_max": k + span });
    timed(CheckReport::new("characters", params, anchor(A_CHAR), seed), |r| {
        let chars = enumerate_characters(n, k)?;
        let expect = binomial(n + k - 1, k - 1);
        if chars.len() != expect {
            r.witnesses.push(format!("{} characters, expected {expect}", chars.len()));
        }
        for ch in &chars {
            for (i, res) in ch.recurrence_residuals(k + span)?.iter().enumerate() {
                if !res.is_zero() {
                    r.witnesses.push(format!("{}: r_{} = {res}", ch.composition, k + i));
                }
            }
        }
        r.ok = r.witnesses.is_empty();
        r.data = json!({ "count": chars.len(), "expected": expect });
        Ok(())
    })
}

fn characters(c: &SuiteConfig) -> Vec<CheckReport> {
    let pairs: Vec<(usize, usize)> = (1..=c.theta_n_max)
        .flat_map(|n| (1..=c.theta_k_max).map(move |k| (n, k)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(n, k)| characters_report(n, k, c.recurrence_span, c.seed))
        .collect()
}

pub fn orbit_flatness_report(case: &OrbitCase, c: &SuiteConfig) -> CheckReport {
    let params = json!({ "comp": case.comp, "mu": case.mu, "d": case.degree, "mode": c.mode });
    timed(CheckReport::new("orbit-flatness", params, anchor(A_FLAT), c.seed), |r| {
        let mut spec = case.spec()?;
        if c.mode == Mode::Rational {
            let (q, t) = random_points(c.seed, 1).remove(0);
            spec = spec.with_q(Some(q)).with_t(Some(t));
        }
        let f = flatness_check(&spec, case.degree, c.slack, c.seed, c.random_points)?;
        r.ok = f.flat;
        r.witnesses.extend(f.witnesses.clone());
        if f.zero_parts {
            r.witnesses.push("composition has a zero part".into());
        }
        r.data = serde_json::to_value(&f).expect("serializable");
        Ok(())
    })
}

fn orbit_flatness(c: &SuiteConfig) -> Vec<CheckReport> {
    c.orbits.iter().map(|o| orbit_flatness_report(o, c)).collect()
}

fn orbit_structure(c: &SuiteConfig) -> Vec<CheckReport> {
    let base = OrbitCase::new(&[1, 1], &[0, 1], 4);
    let mut out = Vec::new();
    out.push(timed(
        CheckReport::new("character-consistency", json!({ "comp": [1, 1], "mu": ["0", "1"], "m_max": 4 }), anchor(A_ORBIT), c.seed),
        |r| {
            let spec = base.spec()?;
            let q = quotient_basis::<RatFn>(&spec, 4, 0)?;
            let rep = character_consistency(&spec, &q, 4)?;
            r.ok = rep.ok;
            r.witnesses.extend(rep.witnesses.clone());
            r.data = serde_json::to_value(&rep).expect("serializable");
            Ok(())
        },
    ));
    out.push(timed(
        CheckReport::new("intersection", json!({ "comp": [1, 1], "mu": ["0", "1"], "m_max": 4 }), anchor(A_RECURRENCE + 1), c.seed),
        |r| {
            let rep = intersection_check(&base.spec()?, 4)?;
            r.ok = rep.ok;
            r.data = serde_json::to_value(&rep).expect("serializable");
            Ok(())
        },
    ));
    out.push(timed(
        CheckReport::new("separation", json!({ "a": [2, 0], "b": [1, 1], "mu": ["0", "1"], "d": 2 }), anchor(A_CHAR), c.seed),
        |r| {
            let a = OrbitCase::new(&[2, 0], &[0, 1], 2).spec()?;
            let rep = separation_check(&a, &base.spec()?, 2, 0)?;
            r.ok = rep.separated;
            r.data = serde_json::to_value(&rep).expect("serializable");
            Ok(())
        },
    ));
    out
}

fn kks(c: &SuiteConfig) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = c
        .kks_n
        .iter()
        .map(|&n| {
            timed(CheckReport::new("kks", json!({ "n": n }), anchor(A_KKS), c.seed), |r| {
                let rep = kks_structure_check(n)?;
                r.ok = rep.ok;
                r.witnesses.extend(rep.witnesses.clone());
                r.data = serde_json::to_value(&rep).expect("serializable");
                Ok(())
            })
        })
        .collect();
    out.push(timed(
        CheckReport::new("kks-orbit", json!({ "comp": [1, 1], "mu": ["0", "1"], "d": 2 }), anchor(A_KKS), c.seed),
        |r| {
            let spec = OrbitCase::new(&[1, 1], &[0, 1], 2).spec()?;
            let (q, rep) = kks_specialization(&spec, 2, 0)?;
            let trace = spec.clone().with_q(Some(Rational::from_integer(1.into()))).trace_value(1)?;
            let expect = &ParamPoly::one() + &ParamPoly::t();
            r.ok = rep.ok && trace == expect;
            r.witnesses.extend(rep.witnesses.clone());
            r.data = json!({ "profile": q.profile(), "trace_value": trace.to_string() });
            Ok(())
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_selection() {
        let c = SuiteConfig {
            batteries: vec![],
            ..Default::default()
        };
        assert!(run_suite(&c).unwrap().is_empty());
    }

    #[test]
    fn battery_names_round_trip() {
        for b in Battery::ALL {
            assert_eq!(b.name().parse::<Battery>().unwrap(), b);
            assert_eq!(serde_json::to_value(b).unwrap(), json!(b.name()));
        }
        assert!("nope".parse::<Battery>().is_err());
    }

    #[test]
    fn config_json_defaults() {
        let c: SuiteConfig = serde_json::from_str(r#"{"batteries": ["ybe"], "seed": 3}"#).unwrap();
        assert_eq!(c.seed, 3);
        assert_eq!(c.n_range, (2, 4));
        assert!(serde_json::from_str::<SuiteConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn limits_are_enforced() {
        let c = SuiteConfig {
            pbw: vec![(4, 4)],
            ..Default::default()
        };
        assert!(c.validate().is_err());
        assert!(SuiteConfig::default().validate().is_ok());
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let c = SuiteConfig {
            batteries: vec![Battery::Ybe, Battery::Hecke, Battery::TraceNorm, Battery::SymmetricOrbit],
            n_range: (2, 3),
            theta_n_max: 3,
            ..Default::default()
        };
        let a = run_suite(&c).unwrap();
        let b = run_suite(&c).unwrap();
        assert_eq!(a.len(), 7);
        assert!(a.iter().all(|r| r.ok), "{a:?}");
        assert!(a.iter().all(|r| ANCHORS.contains(&r.anchor.as_str())));
        let strip = |v: &[CheckReport]| v.iter().map(CheckReport::without_timing).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn errors_become_failing_reports() {
        let r = timed(CheckReport::new("x", json!({}), ANCHORS[0], 0), |_| Err(Error::Invalid("boom".into())));
        assert!(!r.ok);
        assert!(r.witnesses[0].contains("boom"));
    }
}
