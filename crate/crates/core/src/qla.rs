//! The standard Hecke symmetry of gl(n) and its quantum trace.
//!
//! Basis vectors of `C^n ⊗ C^n` are pairs `(i, j)` flattened row-major to
//! `i * n + j` (0-based).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{qint, Coeff, Field, ParamFraction, ParamPoly, RatFn, Specialization, Sym};

/// Dense square matrix of parameter polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    data: Vec<ParamPoly>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize) -> Self {
        PolyMatrix {
            dim,
            data: vec![ParamPoly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ParamPoly::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &ParamPoly {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ParamPoly) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let (a, b) = (self.dim, rhs.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        let y = rhs.get(k, l);
                        if !y.is_zero() {
                            out.set(i * b + k, j * b + l, x * y);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|p| !p.is_zero()).count()
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, rhs: &PolyMatrix) -> Option<(usize, usize)> {
        (0..self.data.len())
            .find(|&i| self.data[i] != rhs.data[i])
            .map(|i| (i / self.dim, i % self.dim))
    }

    pub fn specialize(&self, sym: Sym, value: crate::scalar::Rational) -> PolyMatrix {
        PolyMatrix {
            dim: self.dim,
            data: self.data.iter().map(|p| p.specialize_one(sym, value.clone())).collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Operator on `C^n ⊗ C^n`, stored as an `n² × n²` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorMatrix {
    n: usize,
    matrix: PolyMatrix,
}

impl TensorMatrix {
    pub fn from_matrix(n: usize, matrix: PolyMatrix) -> Result<Self> {
        if matrix.dim() != n * n {
            return Err(Error::Dimension(format!(
                "expected {}x{} matrix, got {}",
                n * n,
                n * n,
                matrix.dim()
            )));
        }
        Ok(TensorMatrix { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Entry `⟨(i,j)| A |(k,l)⟩`.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &ParamPoly {
        self.matrix.get(i * self.n + j, k * self.n + l)
    }

    pub fn mul(&self, rhs: &TensorMatrix) -> TensorMatrix {
        TensorMatrix {
            n: self.n,
            matrix: self.matrix.mul(&rhs.matrix),
        }
    }
}

/// Standard gl(n) R-matrix: `q` on `e_ii ⊗ e_ii`, `1` on `e_ii ⊗ e_jj`
/// (`i ≠ j`), and `q - q^{-1}` on `e_ij ⊗ e_ji` for `i < j`.
pub fn standard_r(n: usize) -> TensorMatrix {
    let mut m = PolyMatrix::zeros(n * n);
    let q = ParamPoly::q_pow(1);
    let qq = &q - &ParamPoly::q_pow(-1);
    for i in 0..n {
        for j in 0..n {
            let idx = i * n + j;
            m.set(idx, idx, if i == j { q.clone() } else { ParamPoly::one() });
            if i < j {
                // e_ij ⊗ e_ji maps |j,i⟩ to |i,j⟩
                m.set(i * n + j, j * n + i, qq.clone());
            }
        }
    }
    TensorMatrix { n, matrix: m }
}

/// The flip `P(v ⊗ w) = w ⊗ v`.
pub fn flip(n: usize) -> TensorMatrix {
    let mut m = PolyMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i * n + j, j * n + i, ParamPoly::one());
        }
    }
    TensorMatrix { n, matrix: m }
}

/// `S = P·R`.
pub fn hecke_symmetry(n: usize) -> TensorMatrix {
    flip(n).mul(&standard_r(n))
}

/// Outcome of an exact matrix identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub ok: bool,
    /// First differing entry: `row, col: lhs != rhs`.
    pub witness: Option<String>,
}

impl IdentityCheck {
    fn compare(lhs: &PolyMatrix, rhs: &PolyMatrix) -> Self {
        match lhs.first_difference(rhs) {
            None => IdentityCheck { ok: true, witness: None },
            Some((r, c)) => IdentityCheck {
                ok: false,
                witness: Some(format!(
                    "entry ({r},{c}): {} != {}",
                    lhs.get(r, c),
                    rhs.get(r, c)
                )),
            },
        }
    }
}

/// `S₁₂ S₂₃ S₁₂ = S₂₃ S₁₂ S₂₃` on `C^n ⊗ C^n ⊗ C^n`.
pub fn check_ybe(s: &TensorMatrix) -> IdentityCheck {
    let id = PolyMatrix::identity(s.n);
    let s12 = s.matrix.kron(&id);
    let s23 = id.kron(&s.matrix);
    let lhs = s12.mul(&s23).mul(&s12);
    let rhs = s23.mul(&s12).mul(&s23);
    IdentityCheck::compare(&lhs, &rhs)
}

/// `S² - (q - q^{-1}) S = 1 ⊗ 1`.
pub fn check_hecke(s: &TensorMatrix) -> IdentityCheck {
    let qq = &ParamPoly::q_pow(1) - &ParamPoly::q_pow(-1);
    let lhs = s.matrix.mul(&s.matrix).sub(&s.matrix.scale(&qq));
    IdentityCheck::compare(&lhs, &PolyMatrix::identity(s.n * s.n))
}

/// Diagonal weight matrix of the quantum trace `Tr_q(A) = Tr(D A)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightMatrix {
    diagonal: Vec<ParamPoly>,
}

impl WeightMatrix {
    pub fn n(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[ParamPoly] {
        &self.diagonal
    }

    pub fn trace(&self) -> ParamPoly {
        self.diagonal.iter().fold(ParamPoly::zero(), |acc, d| &acc + d)
    }

    /// Diagonal embedded into a coefficient field.
    pub fn embed<F: Field>(&self, spec: &Specialization) -> Result<Vec<F>> {
        self.diagonal.iter().map(|d| F::embed(d, spec)).collect()
    }
}

/// Tensor factor of `C^n ⊗ C^n` over which a partial quantum trace is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceFactor {
    /// `(Tr_q ⊗ id)`
    First,
    /// `(id ⊗ Tr_q)`
    Second,
}

/// The weight matrix of the quantum trace on the algebra with `L₂ = 1 ⊗ L`.
///
/// `D` is normalized over the factor that does not carry `L`, that is
/// `(Tr_q ⊗ id)(S) = q·1`. This is the normalization for which `Tr(D L^m)`
/// is central; the same condition on the second factor yields the reversed
/// diagonal. The result is `diag(q^{-2(n-1)}, …, q^{-2}, 1)`.
pub fn weight_matrix(n: usize) -> Result<WeightMatrix> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    weight_matrix_for(&hecke_symmetry(n), TraceFactor::First)
}

/// Solves the partial-trace normalization `= q·1` for the diagonal of `D`.
///
/// The system has `n²` equations in `n` unknowns; it is solved by exact
/// elimination over the fraction field and rejected if inconsistent or
/// underdetermined. The solution must also satisfy `Tr(D) = n̂`.
pub fn weight_matrix_for(s: &TensorMatrix, factor: TraceFactor) -> Result<WeightMatrix> {
    let n = s.n;
    let spec = Specialization::symbolic();
    let q = RatFn::embed(&ParamPoly::q_pow(1), &spec)?;
    let mut rows: Vec<Vec<RatFn>> = Vec::new();
    for a in 0..n {
        for c in 0..n {
            let mut row = Vec::with_capacity(n + 1);
            for b in 0..n {
                let e = match factor {
                    TraceFactor::First => s.entry(b, a, b, c),
                    TraceFactor::Second => s.entry(a, b, c, b),
                };
                row.push(RatFn::embed(e, &spec)?);
            }
            row.push(if a == c { q.clone() } else { RatFn::zero() });
            rows.push(row);
        }
    }
    let solution = solve_linear(rows, n)?;
    let diagonal = solution
        .into_iter()
        .map(|x| x.into_fraction().to_poly())
        .collect::<Result<Vec<_>>>()?;
    let w = WeightMatrix { diagonal };
    if w.trace() != qint(n as i64) {
        return Err(Error::Inconsistent(format!(
            "Tr(D) = {} differs from the quantum integer {}",
            w.trace(),
            qint(n as i64)
        )));
    }
    Ok(w)
}

/// Gauss–Jordan on an augmented system with `unknowns` columns plus the
/// right-hand side. Requires a unique solution.
pub fn solve_linear<F: Field>(mut rows: Vec<Vec<F>>, unknowns: usize) -> Result<Vec<F>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv_ref();
        let pr: Vec<F> = rows[pivot_row].iter().map(|x| x.mul_ref(&inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(y));
                }
            }
        }
        rows[pivot_row] = pr;
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return Err(Error::Inconsistent(
            "normalization system has no solution".into(),
        ));
    }
    if pivots.len() < unknowns {
        return Err(Error::Inconsistent(
            "normalization system is underdetermined".into(),
        ));
    }
    Ok(rows.into_iter().take(unknowns).map(|mut r| r.swap_remove(unknowns)).collect())
}

/// Partial quantum trace of `S` over `factor`, as an `n × n` matrix.
pub fn partial_quantum_trace(s: &TensorMatrix, d: &WeightMatrix, factor: TraceFactor) -> PolyMatrix {
    let n = s.n;
    let mut out = PolyMatrix::zeros(n);
    for a in 0..n {
        for c in 0..n {
            let mut acc = ParamPoly::zero();
            for b in 0..n {
                let e = match factor {
                    TraceFactor::First => s.entry(b, a, b, c),
                    TraceFactor::Second => s.entry(a, b, c, b),
                };
                acc = &acc + &(&d.diagonal[b] * e);
            }
            out.set(a, c, acc);
        }
    }
    out
}

/// `Tr(D·M)` for a square matrix over any coefficient ring.
pub fn quantum_trace<T: Coeff>(diagonal: &[T], m: &[Vec<T>]) -> Result<T> {
    if m.len() != diagonal.len() || m.iter().any(|r| r.len() != diagonal.len()) {
        return Err(Error::Dimension(format!(
            "weight matrix has size {}, argument is {}x{}",
            diagonal.len(),
            m.len(),
            m.first().map(Vec::len).unwrap_or(0)
        )));
    }
    Ok(diagonal
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, d)| acc.add_ref(&d.mul_ref(&m[i][i]))))
}

/// `Tr_q` of a scalar matrix whose entries are fractions.
pub fn quantum_trace_fractions(d: &WeightMatrix, m: &[Vec<ParamFraction>]) -> Result<ParamFraction> {
    let diag: Vec<ParamFraction> = d.diagonal.iter().cloned().map(ParamFraction::from).collect();
    if m.len() != diag.len() {
        return Err(Error::Dimension("matrix size".into()));
    }
    Ok(diag
        .iter()
        .enumerate()
        .fold(ParamFraction::zero(), |acc, (i, w)| &acc + &(w * &m[i][i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(e: i32) -> ParamPoly {
        ParamPoly::q_pow(e)
    }

    #[test]
    fn n1_is_scalar_q() {
        let r = standard_r(1);
        assert_eq!(r.matrix().get(0, 0), &q(1));
        assert_eq!(hecke_symmetry(1).matrix().get(0, 0), &q(1));
    }

    #[test]
    fn n2_shape() {
        let r = standard_r(2);
        let diag: Vec<_> = (0..4).map(|i| r.matrix().get(i, i).clone()).collect();
        assert_eq!(diag, vec![q(1), ParamPoly::one(), ParamPoly::one(), q(1)]);
        assert_eq!(r.matrix().nonzero_count(), 5);
        assert_eq!(r.matrix().get(1, 2), &(&q(1) - &q(-1)));
    }

    #[test]
    fn nonzero_count_formula() {
        for n in 1..=5 {
            assert_eq!(standard_r(n).matrix().nonzero_count(), n * n + n * (n - 1) / 2);
        }
    }

    #[test]
    fn flip_squares_to_identity_and_braids() {
        for n in 1..=3 {
            let p = flip(n);
            assert_eq!(p.mul(&p).matrix(), &PolyMatrix::identity(n * n));
        }
        assert!(check_ybe(&flip(2)).ok);
    }

    #[test]
    fn braid_and_hecke_relations() {
        for n in 2..=3 {
            let s = hecke_symmetry(n);
            assert!(check_ybe(&s).ok, "YBE n={n}");
            assert!(check_hecke(&s).ok, "Hecke n={n}");
        }
    }

    #[test]
    fn r_alone_is_not_a_hecke_symmetry() {
        let c = check_hecke(&standard_r(2));
        assert!(!c.ok);
        assert!(c.witness.is_some());
    }

    #[test]
    fn weight_matrices() {
        assert_eq!(weight_matrix(1).unwrap().diagonal(), &[ParamPoly::one()]);
        let d2 = weight_matrix(2).unwrap();
        assert_eq!(d2.trace(), &ParamPoly::one() + &q(-2));
        let d3 = weight_matrix(3).unwrap();
        assert_eq!(d3.diagonal(), &[q(-4), q(-2), ParamPoly::one()]);
        let lit = weight_matrix_for(&hecke_symmetry(3), TraceFactor::Second).unwrap();
        assert_eq!(lit.diagonal(), &[ParamPoly::one(), q(-2), q(-4)]);
    }

    #[test]
    fn partial_trace_normalization() {
        for n in 2..=4 {
            let s = hecke_symmetry(n);
            let d = weight_matrix(n).unwrap();
            let lhs = partial_quantum_trace(&s, &d, TraceFactor::First);
            assert_eq!(lhs, PolyMatrix::identity(n).scale(&q(1)));
            let other = partial_quantum_trace(&s, &d, TraceFactor::Second);
            assert_ne!(other, PolyMatrix::identity(n).scale(&q(1)));
        }
    }

    #[test]
    fn quantum_trace_basics() {
        let d = weight_matrix(3).unwrap();
        let diag = d.diagonal().to_vec();
        let id: Vec<Vec<ParamPoly>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { ParamPoly::one() } else { ParamPoly::zero() }).collect())
            .collect();
        assert_eq!(quantum_trace(&diag, &id).unwrap(), qint(3));
        let zero = vec![vec![ParamPoly::zero(); 3]; 3];
        assert!(quantum_trace(&diag, &zero).unwrap().is_zero());
        let mut unit = zero.clone();
        unit[0][0] = ParamPoly::one();
        assert_eq!(quantum_trace(&diag, &unit).unwrap(), diag[0]);
        assert!(quantum_trace(&diag, &vec![vec![ParamPoly::zero(); 2]; 2]).is_err());
    }

    #[test]
    fn classical_limit_is_flip() {
        for n in 1..=3 {
            let s = hecke_symmetry(n).matrix().specialize(Sym::Q, Rational::from_integer(1.into()));
            assert_eq!(&s, flip(n).matrix());
        }
    }
}
