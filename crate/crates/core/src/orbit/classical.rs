//! Commutative oracle: truncated ideals in `Q[X^i_j]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{HilbertProfile, OrbitSpec};
use crate::error::Result;
use crate::scalar::Rational;

type Exps = Vec<u8>;
type Poly = BTreeMap<Exps, Rational>;

fn var(vars: usize, i: usize) -> Poly {
    let mut e = vec![0u8; vars];
    e[i] = 1;
    Poly::from([(e, Rational::one())])
}

fn constant(vars: usize, c: Rational) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(vec![0u8; vars], c);
    }
    p
}

fn add_into(acc: &mut Poly, p: &Poly, scale: &Rational) {
    for (e, c) in p {
        let v = acc.entry(e.clone()).or_insert_with(Rational::zero);
        *v += c * scale;
        if v.is_zero() {
            acc.remove(e);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert_with(Rational::zero);
            *v += ca * cb;
            if v.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn total_degree(e: &Exps) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

fn poly_degree(p: &Poly) -> usize {
    p.keys().map(total_degree).max().unwrap_or(0)
}

/// All exponent vectors of total degree exactly `d`.
fn monomials_of_degree(vars: usize, d: usize) -> Vec<Exps> {
    fn rec(i: usize, left: usize, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i + 1 == cur.len() {
            cur[i] = left as u8;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x as u8;
            rec(i + 1, left - x, cur, out);
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        return out;
    }
    rec(0, d, &mut vec![0; vars], &mut out);
    out
}

/// Span of `{m · g : deg m + deg g ≤ D}` in echelon form, with pivots on the
/// largest monomial in a degree-compatible order.
pub struct CommutativeIdeal {
    vars: usize,
    bound: usize,
    /// column of each monomial; columns grow with degree
    columns: HashMap<Exps, usize>,
    degree_of_column: Vec<usize>,
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl CommutativeIdeal {
    pub fn build(vars: usize, bound: usize, generators: &[Poly]) -> Self {
        let mut columns = HashMap::new();
        let mut degree_of_column = Vec::new();
        let mut by_degree = Vec::new();
        for e in 0..=bound {
            let ms = monomials_of_degree(vars, e);
            for m in &ms {
                columns.insert(m.clone(), degree_of_column.len());
                degree_of_column.push(e);
            }
            by_degree.push(ms);
        }
        let mut ideal = CommutativeIdeal {
            vars,
            bound,
            columns,
            degree_of_column,
            pivots: BTreeMap::new(),
        };
        for g in generators {
            let dg = poly_degree(g);
            if dg > bound {
                continue;
            }
            for ms in by_degree.iter().take(bound - dg + 1) {
                for m in ms {
                    let mono = Poly::from([(m.clone(), Rational::one())]);
                    let row = ideal.row(&mul(&mono, g));
                    ideal.insert(row);
                }
            }
        }
        ideal
    }

    fn row(&self, p: &Poly) -> BTreeMap<usize, Rational> {
        p.iter().map(|(e, c)| (self.columns[e], c.clone())).collect()
    }

    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        while let Some((&lead, _)) = row.iter().next_back() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = row[&lead].clone();
                    for (c, v) in p {
                        let x = row.entry(*c).or_insert_with(Rational::zero);
                        *x -= &f * v;
                        if x.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = row[&lead].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Quotient dimensions of the degree-`≤ e` parts, `e = 0..=D`.
    pub fn profile(&self) -> HilbertProfile {
        let mut monos = vec![0usize; self.bound + 1];
        for &d in &self.degree_of_column {
            monos[d] += 1;
        }
        let mut lead = vec![0usize; self.bound + 1];
        for &c in self.pivots.keys() {
            lead[self.degree_of_column[c]] += 1;
        }
        let mut acc = 0;
        HilbertProfile(
            (0..=self.bound)
                .map(|e| {
                    acc += monos[e] - lead[e];
                    acc
                })
                .collect(),
        )
    }
}

/// Entries of `Π (X − μ_i)` and `Tr(X^m) − Σ n_i μ_i^m`, `m = 1..k−1`.
pub fn classical_generators(spec: &OrbitSpec) -> Vec<Poly> {
    let n = spec.n();
    let vars = n * n;
    let x = |a: usize, b: usize| var(vars, a * n + b);
    let matmul = |p: &[Poly], r: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let prod = mul(&p[a * n + c], &r[c * n + b]);
                    add_into(&mut out[a * n + b], &prod, &Rational::one());
                }
            }
        }
        out
    };
    let xm: Vec<Poly> = (0..n * n).map(|i| x(i / n, i % n)).collect();
    let mut acc: Vec<Poly> = (0..n * n)
        .map(|i| constant(vars, if i / n == i % n { Rational::one() } else { Rational::zero() }))
        .collect();
    for mu in &spec.mu {
        let mut f = xm.clone();
        for a in 0..n {
            add_into(&mut f[a * n + a], &constant(vars, mu.clone()), &-Rational::one());
        }
        acc = matmul(&acc, &f);
    }
    let mut gens = acc;
    let mut power = xm.clone();
    for m in 1..spec.k() {
        let mut tr = Poly::new();
        for a in 0..n {
            add_into(&mut tr, &power[a * n + a], &Rational::one());
        }
        let mut value = Rational::zero();
        for (ni, mu) in spec.composition.parts().iter().zip(&spec.mu) {
            value += Rational::from_integer((*ni as i64).into()) * num_traits::pow(mu.clone(), m);
        }
        add_into(&mut tr, &constant(vars, value), &-Rational::one());
        gens.push(tr);
        power = matmul(&power, &xm);
    }
    gens.retain(|g| !g.is_empty());
    gens
}

/// Profile up to `d` with the ideal truncated at `bound`.
pub fn classical_profile_at(spec: &OrbitSpec, d: usize, bound: usize) -> HilbertProfile {
    let n = spec.n();
    CommutativeIdeal::build(n * n, bound, &classical_generators(spec))
        .profile()
        .truncate(d)
}

/// Hilbert profile of the classical orbit ideal up to degree `d`.
///
/// The truncation bound is raised until the profile up to `d` is unchanged
/// by one more degree.
pub fn classical_orbit_profile(spec: &OrbitSpec, d: usize) -> Result<HilbertProfile> {
    let mut bound = d + 1;
    let mut prev = classical_profile_at(spec, d, d);
    loop {
        let next = classical_profile_at(spec, d, bound);
        if next == prev || bound >= d + 2 * spec.k() + 2 {
            return Ok(next);
        }
        prev = next;
        bound += 1;
    }
}
