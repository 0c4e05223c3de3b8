//! Dense square boolean matrices packed into `u64` words.
//!
//! Every relation in this crate (lattice orders, transfer systems, left
//! classes, derived orders on sets of transfer systems) is one of these.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    size: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    /// An all-false `size × size` matrix.
    pub fn new(size: usize) -> Self {
        let words_per_row = size.div_ceil(WORD).max(1);
        BitMatrix {
            size,
            words_per_row,
            words: vec![0; words_per_row * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = BitMatrix::new(size);
        for i in 0..size {
            m.set(i, i);
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::new(size);
        for i in 0..size {
            for j in 0..size {
                if f(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Option<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return None;
        }
        Some(BitMatrix::from_fn(size, |i, j| rows[i][j]))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn offset(&self, i: usize) -> usize {
        i * self.words_per_row
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.size && j < self.size);
        self.words[self.offset(i) + j / WORD] >> (j % WORD) & 1 == 1
    }

    /// Sets `(i, j)`; returns true if it was previously unset.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.size && j < self.size);
        let idx = self.offset(i) + j / WORD;
        let mask = 1u64 << (j % WORD);
        let fresh = self.words[idx] & mask == 0;
        self.words[idx] |= mask;
        fresh
    }

    #[inline]
    pub fn unset(&mut self, i: usize, j: usize) {
        let idx = self.offset(i) + j / WORD;
        self.words[idx] &= !(1u64 << (j % WORD));
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        let o = self.offset(i);
        &self.words[o..o + self.words_per_row]
    }

    /// Row `dst` |= row `src`; returns true if `dst` changed.
    pub fn union_row_into(&mut self, src: usize, dst: usize) -> bool {
        if src == dst {
            return false;
        }
        let (s, d) = (self.offset(src), self.offset(dst));
        let mut changed = false;
        for k in 0..self.words_per_row {
            let before = self.words[d + k];
            let after = before | self.words[s + k];
            if after != before {
                self.words[d + k] = after;
                changed = true;
            }
        }
        changed
    }

    /// Columns `j` with `(i, j)` set, ascending.
    pub fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let size = self.size;
        self.row(i).iter().enumerate().flat_map(move |(w, &word)| {
            BitIter { word }.map(move |b| w * WORD + b).filter(move |&j| j < size)
        })
    }

    /// All set `(i, j)` in row-major order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |i| self.iter_row(i).map(move |j| (i, j)))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitMatrix) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersect_with(&mut self, other: &BitMatrix) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitMatrix) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.size, |i, j| self.get(j, i))
    }

    /// Relational composition "first `self`, then `then`": `(x, y)` is set
    /// iff some `z` has `self(x, z)` and `then(z, y)`.
    pub fn compose(&self, then: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.size, then.size);
        let mut out = BitMatrix::new(self.size);
        for x in 0..self.size {
            let o = out.offset(x);
            for z in self.iter_row(x) {
                let t = then.offset(z);
                for k in 0..self.words_per_row {
                    out.words[o + k] |= then.words[t + k];
                }
            }
        }
        out
    }

    /// In-place reflexive-agnostic transitive closure (Warshall over rows).
    /// Returns true if anything was added.
    pub fn close_transitively(&mut self) -> bool {
        let mut changed = false;
        for k in 0..self.size {
            for i in 0..self.size {
                if i != k && self.get(i, k) {
                    changed |= self.union_row_into(k, i);
                }
            }
        }
        changed
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|i| self.get(i, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.iter_pairs().all(|(i, j)| i == j || !self.get(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset(self)
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_antisymmetric() && self.is_transitive()
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}

/// Lexicographic order on the row-major flattened bit string, `false < true`.
impl Ord for BitMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| {
            for i in 0..self.size {
                for (a, b) in self.row(i).iter().zip(other.row(i)) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let first = diff & diff.wrapping_neg();
                        return if a & first != 0 {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.size)?;
        for i in 0..self.size {
            let line: String = (0..self.size)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn flat(m: &BitMatrix) -> Vec<bool> {
        m.to_rows().concat()
    }

    #[test]
    fn set_get_across_word_boundary() {
        let mut m = BitMatrix::new(130);
        assert!(m.set(3, 127));
        assert!(!m.set(3, 127));
        assert!(m.get(3, 127));
        assert!(!m.get(3, 126));
        assert_eq!(m.iter_row(3).collect::<Vec<_>>(), vec![127]);
        m.unset(3, 127);
        assert_eq!(m.count_ones(), 0);
    }

    #[test]
    fn closure_of_path() {
        let mut m = BitMatrix::identity(4);
        m.set(0, 1);
        m.set(1, 2);
        m.set(2, 3);
        assert!(m.close_transitively());
        assert!(m.get(0, 3));
        assert!(m.is_partial_order());
    }

    proptest! {
        #[test]
        fn ordering_is_flattened_lexicographic(
            a in proptest::collection::vec(any::<bool>(), 25),
            b in proptest::collection::vec(any::<bool>(), 25),
        ) {
            let ma = BitMatrix::from_fn(5, |i, j| a[i * 5 + j]);
            let mb = BitMatrix::from_fn(5, |i, j| b[i * 5 + j]);
            prop_assert_eq!(ma.cmp(&mb), flat(&ma).cmp(&flat(&mb)));
        }

        #[test]
        fn compose_matches_definition(
            a in proptest::collection::vec(any::<bool>(), 36),
            b in proptest::collection::vec(any::<bool>(), 36),
        ) {
            let ma = BitMatrix::from_fn(6, |i, j| a[i * 6 + j]);
            let mb = BitMatrix::from_fn(6, |i, j| b[i * 6 + j]);
            let c = ma.compose(&mb);
            for x in 0..6 {
                for y in 0..6 {
                    let expect = (0..6).any(|z| ma.get(x, z) && mb.get(z, y));
                    prop_assert_eq!(c.get(x, y), expect);
                }
            }
        }
    }
}
