//! Finite lattices, finite posets and their intervals.
//!
//! Elements are dense indices `0..size`. A lattice viewed as a category has
//! exactly one morphism `x -> y` for each comparable pair `x <= y`.

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    leq: BitMatrix,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// `n + 1` totally ordered elements `0 < 1 < ... < n`.
pub fn chain(n: usize) -> FiniteLattice {
    let size = n + 1;
    FiniteLattice {
        leq: BitMatrix::from_fn(size, |x, y| x <= y),
        meet: (0..size * size).map(|k| (k / size).min(k % size)).collect(),
        join: (0..size * size).map(|k| (k / size).max(k % size)).collect(),
        bottom: 0,
        top: n,
    }
}

/// Builds a lattice from its order relation, computing the meet and join
/// tables. Rejects posets that are not lattices.
pub fn build_lattice(leq: BitMatrix) -> Result<FiniteLattice> {
    let size = leq.size();
    if size == 0 || !leq.is_partial_order() {
        return Err(Error::NotAPartialOrder);
    }
    let up = leq.clone();
    let down = leq.transpose();
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for x in 0..size {
        for y in x..size {
            let glb = greatest_of(&leq, &down, x, y).ok_or(Error::NotALattice(x, y))?;
            let lub = greatest_of(&down, &up, x, y).ok_or(Error::NotALattice(x, y))?;
            meet[x * size + y] = glb;
            meet[y * size + x] = glb;
            join[x * size + y] = lub;
            join[y * size + x] = lub;
        }
    }
    // A lattice with finitely many elements has both bounds.
    let bottom = (0..size).fold(0, |acc, x| meet[acc * size + x]);
    let top = (0..size).fold(0, |acc, x| join[acc * size + x]);
    Ok(FiniteLattice { leq, meet, join, bottom, top })
}

/// Among the common `below`-bounds of `x` and `y`, the one above all the
/// others with respect to `order`, if it exists.
fn greatest_of(order: &BitMatrix, below: &BitMatrix, x: usize, y: usize) -> Option<usize> {
    let size = order.size();
    let bounds: Vec<usize> = (0..size)
        .filter(|&z| below.get(x, z) && below.get(y, z))
        .collect();
    bounds
        .iter()
        .copied()
        .find(|&z| bounds.iter().all(|&w| order.get(w, z)))
}

/// The Boolean lattice of subsets of a `k`-set, elements are bitmasks.
pub fn boolean_lattice(k: u32) -> FiniteLattice {
    let size = 1usize << k;
    build_lattice(BitMatrix::from_fn(size, |x, y| x & !y == 0)).expect("Boolean lattice")
}

/// The divisors of `n` ordered by divisibility; element `i` is the `i`-th
/// smallest divisor.
pub fn divisor_lattice(n: u64) -> (FiniteLattice, Vec<u64>) {
    assert!(n > 0, "divisor lattice of 0");
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let size = divisors.len();
    let leq = BitMatrix::from_fn(size, |i, j| divisors[j] % divisors[i] == 0);
    (build_lattice(leq).expect("divisor lattice"), divisors)
}

impl FiniteLattice {
    #[inline]
    pub fn size(&self) -> usize {
        self.leq.size()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    pub fn order(&self) -> &BitMatrix {
        &self.leq
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    pub fn checked_meet(&self, x: usize, y: usize) -> Result<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.meet(x, y))
    }

    pub fn checked_join(&self, x: usize, y: usize) -> Result<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.join(x, y))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size() })
        }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// True iff this is `chain(n)` exactly: `x <= y` as integers.
    pub fn is_chain(&self) -> bool {
        let size = self.size();
        (0..size).all(|x| (0..size).all(|y| self.leq(x, y) == (x <= y)))
    }

    /// `Some(n)` when the lattice is `chain(n)`.
    pub fn chain_length(&self) -> Option<usize> {
        self.is_chain().then(|| self.size() - 1)
    }

    /// Non-identity morphisms `x < y`, lexicographic.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.leq.iter_pairs().filter(|(x, y)| x != y).collect()
    }

    pub fn as_poset(&self) -> PosetRelation {
        PosetRelation { leq: self.leq.clone() }
    }
}

/// A finite partial order on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetRelation {
    leq: BitMatrix,
}

impl PosetRelation {
    pub fn new(leq: BitMatrix) -> Result<Self> {
        if leq.is_partial_order() {
            Ok(PosetRelation { leq })
        } else {
            Err(Error::NotAPartialOrder)
        }
    }

    pub fn size(&self) -> usize {
        self.leq.size()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.leq
    }

    /// Number of pairs `x <= y`, identities included.
    pub fn relation_count(&self) -> usize {
        self.leq.count_ones()
    }

    /// Covering pairs `x < y` with nothing strictly between (Hasse edges).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.leq.iter_row(x) {
                if x == y {
                    continue;
                }
                let between = (0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// An interval `lo <= hi` of some poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

/// All intervals of `poset`, lexicographic in `(lo, hi)`.
pub fn intervals(poset: &PosetRelation) -> Vec<Interval> {
    poset
        .leq
        .iter_pairs()
        .map(|(lo, hi)| Interval { lo, hi })
        .collect()
}

/// True iff every pair of elements has both a least upper bound and a
/// greatest lower bound.
///
/// Elements are first re-indexed along a linear extension, so the only
/// candidate for a meet is the last common lower bound and the only
/// candidate for a join is the first common upper bound.
pub fn is_lattice_poset(poset: &PosetRelation) -> bool {
    let n = poset.size();
    if n == 0 {
        return false;
    }
    let down_count: Vec<usize> = (0..n)
        .map(|y| (0..n).filter(|&x| poset.leq(x, y)).count())
        .collect();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&x| (down_count[x], x));
    let up = BitMatrix::from_fn(n, |i, j| poset.leq(rank[i], rank[j]));
    let down = up.transpose();

    let words = up.row(0).len();
    let mut common = vec![0u64; words];
    for x in 0..n {
        for y in x + 1..n {
            // meet
            for (k, c) in common.iter_mut().enumerate() {
                *c = down.row(x)[k] & down.row(y)[k];
            }
            let Some(glb) = highest_bit(&common) else {
                return false;
            };
            if !is_row_subset(&common, down.row(glb)) {
                return false;
            }
            // join
            for (k, c) in common.iter_mut().enumerate() {
                *c = up.row(x)[k] & up.row(y)[k];
            }
            let Some(lub) = lowest_bit(&common) else {
                return false;
            };
            if !is_row_subset(&common, up.row(lub)) {
                return false;
            }
        }
    }
    true
}

fn highest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

fn is_row_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// bottom = 0, a = 1, b = 2, top = 3
    fn diamond() -> BitMatrix {
        BitMatrix::from_fn(4, |x, y| x == y || x == 0 || y == 3)
    }

    /// bottom = 0 below three pairwise incomparable atoms a = 1, b = 2, c = 3
    fn fork() -> BitMatrix {
        BitMatrix::from_fn(4, |x, y| x == y || x == 0)
    }

    #[test]
    fn chain_zero_is_a_point() {
        let l = chain(0);
        assert_eq!(l.size(), 1);
        assert_eq!((l.bottom(), l.top()), (0, 0));
    }

    #[test]
    fn chain_two_order() {
        let l = chain(2);
        let strict = l.strict_pairs();
        assert_eq!(strict, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn chain_meet_join() {
        assert_eq!(chain(6).join(3, 5), 5);
        assert_eq!(chain(4).meet(1, 3), 1);
    }

    #[test]
    fn diamond_is_a_lattice() {
        let l = build_lattice(diamond()).unwrap();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!((l.bottom(), l.top()), (0, 3));
        assert_eq!(l, boolean_lattice(2));
    }

    #[test]
    fn fork_is_rejected() {
        assert_eq!(build_lattice(fork()), Err(Error::NotALattice(1, 2)));
        let p = PosetRelation::new(fork()).unwrap();
        assert!(!is_lattice_poset(&p));
    }

    #[test]
    fn rejects_non_orders() {
        let cyclic = BitMatrix::from_fn(2, |_, _| true);
        assert_eq!(build_lattice(cyclic), Err(Error::NotAPartialOrder));
    }

    #[test]
    fn chain_relation_builds_chain() {
        let built = build_lattice(BitMatrix::from_fn(3, |x, y| x <= y)).unwrap();
        assert_eq!(built, chain(2));
        assert!(built.is_chain());
        assert!(!boolean_lattice(2).is_chain());
    }

    #[test]
    fn meet_is_idempotent_and_checked() {
        let l = divisor_lattice(12).0;
        for x in 0..l.size() {
            assert_eq!(l.meet(x, x), x);
        }
        assert_eq!(
            l.checked_meet(0, 9),
            Err(Error::IndexOutOfRange { index: 9, size: 6 })
        );
    }

    #[test]
    fn lattice_tables_are_glb_and_lub() {
        let lattices = [chain(5), boolean_lattice(3), divisor_lattice(12).0, boolean_lattice(2)];
        for l in &lattices {
            let n = l.size();
            for x in 0..n {
                for y in 0..n {
                    let m = l.meet(x, y);
                    let j = l.join(x, y);
                    assert!(l.leq(m, x) && l.leq(m, y));
                    assert!(l.leq(x, j) && l.leq(y, j));
                    for z in 0..n {
                        if l.leq(z, x) && l.leq(z, y) {
                            assert!(l.leq(z, m));
                        }
                        if l.leq(x, z) && l.leq(y, z) {
                            assert!(l.leq(j, z));
                        }
                    }
                }
                assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
            }
        }
    }

    #[test]
    fn chains_are_lattice_posets() {
        for n in 0..=8 {
            assert!(is_lattice_poset(&chain(n).as_poset()));
            assert_eq!(intervals(&chain(n).as_poset()).len(), (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn interval_count_matches_double_loop() {
        let p = boolean_lattice(3).as_poset();
        let iv = intervals(&p);
        let mut expect = 0;
        for a in 0..p.size() {
            for b in 0..p.size() {
                if p.leq(a, b) {
                    expect += 1;
                }
            }
        }
        assert_eq!(iv.len(), expect);
        assert_eq!(intervals(&chain(1).as_poset()), vec![
            Interval { lo: 0, hi: 0 },
            Interval { lo: 0, hi: 1 },
            Interval { lo: 1, hi: 1 },
        ]);
        assert!(iv.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn covers_of_diamond() {
        let p = PosetRelation::new(diamond()).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
