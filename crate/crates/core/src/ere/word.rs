use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// The generator `L^i_j` (0-based indices).
///
/// As a matrix, `L = Σ L^i_j e^j_i`, so `L^i_j` sits in row `j`, column `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub i: usize,
    pub j: usize,
}

impl Generator {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::Invalid(format!("generator L^{}_{} out of range for n={n}", i + 1, j + 1)));
        }
        Ok(Generator { i, j })
    }

    /// Row-major code `i * n + j`.
    pub fn code(&self, n: usize) -> u8 {
        (self.i * n + self.j) as u8
    }

    pub fn from_code(n: usize, code: u8) -> Self {
        Generator {
            i: code as usize / n,
            j: code as usize % n,
        }
    }

    /// Generator at matrix position `(row, col)` of `L`.
    pub fn at_matrix(row: usize, col: usize) -> Self {
        Generator { i: col, j: row }
    }
}

/// Monomial of the free algebra: a sequence of generator codes.
///
/// Ordered by length, then lexicographically on codes.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn single(code: u8) -> Self {
        let mut w = Word::empty();
        w.0.push(code);
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.0.extend_from_slice(&other.0);
        w
    }

    pub fn codes(&self) -> &[u8] {
        &self.0
    }

    pub fn format(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&c| {
                let g = Generator::from_code(n, c);
                format!("L{}_{}", g.i + 1, g.j + 1)
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.as_slice())
    }
}

/// Bijection between words of length `≤ d` and column indices that respects
/// the word order.
#[derive(Clone, Debug)]
pub struct WordIndex {
    base: u64,
    offsets: Vec<u64>,
}

impl WordIndex {
    pub fn new(n: usize, d: usize) -> Self {
        let base = (n * n) as u64;
        let mut offsets = Vec::with_capacity(d + 2);
        let mut acc = 0u64;
        let mut pw = 1u64;
        for _ in 0..=d + 1 {
            offsets.push(acc);
            acc += pw;
            pw *= base;
        }
        WordIndex { base, offsets }
    }

    pub fn degree(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Number of words of length `≤ e`.
    pub fn count_upto(&self, e: usize) -> usize {
        self.offsets[e + 1] as usize
    }

    pub fn len(&self) -> usize {
        self.count_upto(self.degree())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, codes: &[u8]) -> u64 {
        codes.iter().fold(0u64, |acc, &c| acc * self.base + c as u64)
    }

    pub fn index(&self, w: &Word) -> u32 {
        (self.offsets[w.len()] + self.value(w.codes())) as u32
    }

    /// Index of `a · w · b` from the parts' lengths and values.
    #[inline]
    pub fn index_parts(&self, parts: &[(usize, u64)]) -> u32 {
        let mut len = 0;
        let mut val = 0u64;
        for &(l, v) in parts {
            val = val * self.base.pow(l as u32) + v;
            len += l;
        }
        (self.offsets[len] + val) as u32
    }

    pub fn word(&self, idx: u32) -> Word {
        let idx = idx as u64;
        let len = self.offsets.iter().rposition(|&o| o <= idx).unwrap();
        let mut v = idx - self.offsets[len];
        let mut codes: SmallVec<[u8; 8]> = SmallVec::from_elem(0, len);
        for k in (0..len).rev() {
            codes[k] = (v % self.base) as u8;
            v /= self.base;
        }
        Word(codes)
    }

    pub fn word_len(&self, idx: u32) -> usize {
        let idx = idx as u64;
        self.offsets.iter().rposition(|&o| o <= idx).unwrap()
    }

    /// All words of exactly length `len`, in order.
    pub fn words_of_len(&self, len: usize) -> impl Iterator<Item = (u64, Word)> + '_ {
        let count = self.base.pow(len as u32);
        (0..count).map(move |v| {
            let w = self.word((self.offsets[len] + v) as u32);
            (v, w)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_order_preserving_bijection() {
        let idx = WordIndex::new(2, 3);
        assert_eq!(idx.len(), 1 + 4 + 16 + 64);
        let mut prev: Option<Word> = None;
        for i in 0..idx.len() as u32 {
            let w = idx.word(i);
            assert_eq!(idx.index(&w), i);
            if let Some(p) = &prev {
                assert!(p < &w);
            }
            prev = Some(w);
        }
    }

    #[test]
    fn parts_match_concatenation() {
        let idx = WordIndex::new(3, 4);
        let a = Word(SmallVec::from_slice(&[3, 8]));
        let w = Word(SmallVec::from_slice(&[1]));
        let b = Word(SmallVec::from_slice(&[0]));
        let parts = [
            (a.len(), idx.value(a.codes())),
            (w.len(), idx.value(w.codes())),
            (b.len(), idx.value(b.codes())),
        ];
        assert_eq!(idx.index_parts(&parts), idx.index(&a.concat(&w).concat(&b)));
    }

    #[test]
    fn generator_codes() {
        let g = Generator::new(3, 1, 2).unwrap();
        assert_eq!(g.code(3), 5);
        assert_eq!(Generator::from_code(3, 5), g);
        assert!(Generator::new(2, 2, 0).is_err());
        assert_eq!(Word::single(5).format(3), "L2_3");
    }
}
