use std::collections::BTreeMap;

use rayon::prelude::*;

use super::element::AlgebraElement;
use super::word::WordIndex;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse row sorted by ascending column; a pivot row ends in coefficient 1.
type Row<F> = Vec<(u32, F)>;

const BATCH: usize = 192;

/// Echelon basis of the span of `{a·r·b : deg(a·r·b) ≤ d}` inside the free
/// algebra truncated at word length `d`.
///
/// Pivots sit on the largest word of each row.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal<F> {
    n: usize,
    index: WordIndex,
    pivots: Vec<Option<Row<F>>>,
    generators: usize,
}

impl<F: Field> TruncatedIdeal<F> {
    pub fn build(n: usize, d: usize, relations: &[AlgebraElement<F>]) -> Result<Self> {
        let index = WordIndex::new(n, d);
        let mut ideal = TruncatedIdeal {
            n,
            pivots: vec![None; index.len()],
            index,
            generators: 0,
        };
        // generators kept after reduction, with their formal degree
        let mut kept: Vec<(usize, Vec<(usize, u64, F)>)> = Vec::new();
        for e in 0..=d {
            for (k, parts) in &kept {
                if *k >= e {
                    continue;
                }
                let gap = e - k;
                let mut batch: Vec<(usize, u64, usize, u64)> = Vec::new();
                let base = (n * n) as u64;
                for la in 0..=gap {
                    let lb = gap - la;
                    for va in 0..base.pow(la as u32) {
                        for vb in 0..base.pow(lb as u32) {
                            batch.push((la, va, lb, vb));
                        }
                    }
                }
                for chunk in batch.chunks(BATCH) {
                    let reduced: Vec<Row<F>> = chunk
                        .par_iter()
                        .map(|&(la, va, lb, vb)| {
                            let row = ideal.product_row(la, va, parts, lb, vb);
                            ideal.top_reduce(row)
                        })
                        .collect();
                    for row in reduced {
                        ideal.insert(row);
                    }
                }
            }
            for r in relations.iter().filter(|r| r.degree() == Some(e)) {
                let row = ideal.row_of(r);
                if let Some(reduced) = ideal.insert(row) {
                    kept.push((e, ideal.parts_of(&reduced)));
                    ideal.generators += 1;
                }
            }
        }
        Ok(ideal)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.index.degree()
    }

    pub fn index(&self) -> &WordIndex {
        &self.index
    }

    /// Number of relations that survived reduction at their own degree.
    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// `dim` of the quotient of words of length `≤ e`, for `e = 0..=d`.
    pub fn coranks(&self) -> Vec<usize> {
        (0..=self.degree())
            .map(|e| {
                let cols = self.index.count_upto(e);
                cols - self.pivots[..cols].iter().filter(|p| p.is_some()).count()
            })
            .collect()
    }

    /// Canonical representative modulo the ideal; zero iff `x` is in the span.
    pub fn normal_form(&self, x: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        self.check_degree(x)?;
        let mut work: BTreeMap<u32, F> = BTreeMap::new();
        for (w, c) in x.terms() {
            work.insert(self.index.index(w), c.clone());
        }
        let mut cursor = u32::MAX;
        loop {
            let Some((&col, _)) = work.range(..=cursor).next_back() else {
                break;
            };
            if let Some(p) = &self.pivots[col as usize] {
                let f = work.remove(&col).unwrap();
                subtract_scaled(&mut work, p, &f);
            }
            if col == 0 {
                break;
            }
            cursor = col - 1;
        }
        Ok(AlgebraElement::from_terms(
            self.n,
            work.into_iter().map(|(c, v)| (self.index.word(c), v)),
        ))
    }

    pub fn contains(&self, x: &AlgebraElement<F>) -> Result<bool> {
        Ok(self.normal_form(x)?.is_zero())
    }

    pub fn check_degree(&self, x: &AlgebraElement<F>) -> Result<()> {
        match x.degree() {
            Some(k) if k > self.degree() => Err(Error::TruncationExceeded {
                needed: k,
                bound: self.degree(),
            }),
            _ => Ok(()),
        }
    }

    fn row_of(&self, x: &AlgebraElement<F>) -> Row<F> {
        x.terms()
            .map(|(w, c)| (self.index.index(w), c.clone()))
            .collect()
    }

    fn parts_of(&self, row: &Row<F>) -> Vec<(usize, u64, F)> {
        row.iter()
            .map(|(c, v)| {
                let w = self.index.word(*c);
                (w.len(), self.index.value(w.codes()), v.clone())
            })
            .collect()
    }

    fn product_row(&self, la: usize, va: u64, parts: &[(usize, u64, F)], lb: usize, vb: u64) -> Row<F> {
        let mut row: Row<F> = parts
            .iter()
            .map(|(lw, vw, c)| {
                let col = self.index.index_parts(&[(la, va), (*lw, *vw), (lb, vb)]);
                (col, c.clone())
            })
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// Removes pivot columns from the top until the leading column is free.
    fn top_reduce(&self, row: Row<F>) -> Row<F> {
        let Some(&(lead, _)) = row.last() else {
            return row;
        };
        if self.pivots[lead as usize].is_none() {
            return row;
        }
        let mut work: BTreeMap<u32, F> = row.into_iter().collect();
        while let Some((&col, _)) = work.iter().next_back() {
            match &self.pivots[col as usize] {
                Some(p) => {
                    let f = work.remove(&col).unwrap();
                    subtract_scaled(&mut work, p, &f);
                }
                None => break,
            }
        }
        work.into_iter().collect()
    }

    /// Adds a row; returns the normalized pivot row if it was independent.
    fn insert(&mut self, row: Row<F>) -> Option<Row<F>> {
        let row = self.top_reduce(row);
        let (lead, lc) = row.last()?.clone();
        let inv = lc.inv_ref();
        let row: Row<F> = row
            .into_iter()
            .map(|(c, v)| {
                if c == lead {
                    (c, F::one())
                } else {
                    (c, v.mul_ref(&inv))
                }
            })
            .collect();
        self.pivots[lead as usize] = Some(row.clone());
        Some(row)
    }
}

/// `work -= f · row`, where `row`'s leading entry has already been removed
/// from `work`.
fn subtract_scaled<F: Field>(work: &mut BTreeMap<u32, F>, row: &Row<F>, f: &F) {
    for (c, v) in &row[..row.len() - 1] {
        let prod = f.mul_ref(v);
        match work.get_mut(c) {
            Some(x) => {
                let s = x.sub_ref(&prod);
                if s.is_zero() {
                    work.remove(c);
                } else {
                    *x = s;
                }
            }
            None => {
                work.insert(*c, prod.neg_ref());
            }
        }
    }
}
