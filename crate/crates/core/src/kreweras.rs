//! Noncrossing partitions of `{0..n}` and their correspondence with transfer
//! systems on `[n]`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::chain;
use crate::transfer::{pi_map, TransferSystem};

/// Blocks sorted internally and by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoncrossingPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Puts `blocks` in normal form after checking they partition `{0..n}`.
fn normalize(n: usize, blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; n + 1];
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        if block.is_empty() {
            return Err(Error::NotAPartition);
        }
        let mut b = block.clone();
        b.sort_unstable();
        for &x in &b {
            if x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPartition);
            }
        }
        out.push(b);
    }
    if seen.contains(&false) {
        return Err(Error::NotAPartition);
    }
    out.sort_unstable_by_key(|b| b[0]);
    Ok(out)
}

fn block_labels(n: usize, blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut label = vec![0; n + 1];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            label[x] = i;
        }
    }
    label
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(n: usize, blocks: &[Vec<usize>]) -> Result<bool> {
    let blocks = normalize(n, blocks)?;
    let label = block_labels(n, &blocks);
    // Crossing iff two blocks interleave: some element of B lies strictly
    // between consecutive elements of A while another lies outside them.
    for a in &blocks {
        for w in a.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            for inside in lo + 1..hi {
                let other = label[inside];
                if other == label[lo] {
                    continue;
                }
                if blocks[other].iter().any(|&x| x < lo || x > hi) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl NoncrossingPartition {
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if !is_noncrossing(n, blocks)? {
            return Err(Error::CrossingPartition);
        }
        Ok(NoncrossingPartition { n, blocks: normalize(n, blocks)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn singletons(n: usize) -> Self {
        NoncrossingPartition { n, blocks: (0..=n).map(|x| vec![x]).collect() }
    }

    /// Block index of every element.
    pub fn labels(&self) -> Vec<usize> {
        block_labels(self.n, &self.blocks)
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &NoncrossingPartition) -> bool {
        let theirs = other.labels();
        self.n == other.n && self.blocks.iter().all(|b| b.iter().all(|&x| theirs[x] == theirs[b[0]]))
    }
}

/// The nonempty fibers of `π_R`.
pub fn partition_of(r: &TransferSystem) -> Result<NoncrossingPartition> {
    let pi = pi_map(r)?;
    let n = pi.len() - 1;
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, &p) in pi.iter().enumerate() {
        blocks[p].push(i);
    }
    blocks.retain(|b| !b.is_empty());
    NoncrossingPartition::new(n, &blocks)
        .map_err(|e| Error::Invariant(format!("fibers of pi do not form a noncrossing partition: {e}")))
}

/// The transfer system on `[n]` whose `π` has the given fibers:
/// `i R j` iff `i <= j <= max(block(i))`.
pub fn transfer_of(p: &NoncrossingPartition) -> Result<TransferSystem> {
    if !is_noncrossing(p.n, &p.blocks)? {
        return Err(Error::CrossingPartition);
    }
    let mut pi = vec![0; p.n + 1];
    for b in &p.blocks {
        let top = *b.last().expect("blocks are nonempty");
        for &x in b {
            pi[x] = top;
        }
    }
    let r = TransferSystem::from_pi(Arc::new(chain(p.n)), &pi)?;
    if partition_of(&r)? != *p {
        return Err(Error::Invariant("partition does not round trip".into()));
    }
    Ok(r)
}

/// `π_{R'} ∘ π_R = π_{R'}`.
pub fn kreweras_leq(r: &TransferSystem, r_prime: &TransferSystem) -> Result<bool> {
    if r.lattice() != r_prime.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let (pi, pi_prime) = (pi_map(r)?, pi_map(r_prime)?);
    Ok(pi.iter().zip(&pi_prime).all(|(&p, &pp)| pi_prime[p] == pp))
}

/// Every noncrossing partition of `{0..n}`, in the order of their transfer
/// systems.
pub fn enumerate_partitions(n: usize) -> Vec<NoncrossingPartition> {
    crate::transfer::enumerate_transfer_systems(&Arc::new(chain(n)))
        .iter()
        .map(|r| partition_of(r).expect("chain systems have partitions"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::catalan;
    use crate::orders::{is_cc_pair, StructurePair};
    use crate::transfer::enumerate_transfer_systems;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn brute_noncrossing(n: usize, blocks: &[Vec<usize>]) -> bool {
        let label = block_labels(n, blocks);
        for a in 0..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        if label[a] == label[c] && label[b] == label[d] && label[a] != label[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Fiber form: `π_R(i) = π_R(j)` forces `π_{R'}(i) = π_{R'}(j)`.
    fn kreweras_by_fibers(r: &TransferSystem, rp: &TransferSystem) -> bool {
        let (pi, pip) = (pi_map(r).unwrap(), pi_map(rp).unwrap());
        (0..pi.len()).all(|i| (0..pi.len()).all(|j| pi[i] != pi[j] || pip[i] == pip[j]))
    }

    fn ts(n: usize, pairs: &[(usize, usize)]) -> TransferSystem {
        TransferSystem::from_pairs(Arc::new(chain(n)), pairs).unwrap()
    }

    #[test]
    fn noncrossing_examples() {
        assert!(is_noncrossing(2, &[vec![0], vec![1], vec![2]]).unwrap());
        assert!(!is_noncrossing(3, &[vec![0, 2], vec![1, 3]]).unwrap());
        assert!(is_noncrossing(3, &[vec![0, 3], vec![1, 2]]).unwrap());
        assert_eq!(is_noncrossing(2, &[vec![0, 1]]).unwrap_err(), Error::NotAPartition);
        assert_eq!(is_noncrossing(1, &[vec![0, 1], vec![1]]).unwrap_err(), Error::NotAPartition);
        assert_eq!(is_noncrossing(1, &[vec![0, 1], vec![]]).unwrap_err(), Error::NotAPartition);
    }

    #[test]
    fn partition_examples() {
        let l = Arc::new(chain(2));
        assert_eq!(partition_of(&TransferSystem::trivial(l.clone())).unwrap(), NoncrossingPartition::singletons(2));
        assert_eq!(partition_of(&TransferSystem::maximal(l)).unwrap().blocks(), &[vec![0, 1, 2]]);
        assert_eq!(partition_of(&ts(2, &[(0, 1)])).unwrap().blocks(), &[vec![0, 1], vec![2]]);
        let all = NoncrossingPartition::new(2, &[vec![2, 0, 1]]).unwrap();
        assert_eq!(transfer_of(&all).unwrap(), TransferSystem::maximal(Arc::new(chain(2))));
        assert_eq!(
            NoncrossingPartition::new(3, &[vec![0, 2], vec![1, 3]]).unwrap_err(),
            Error::CrossingPartition
        );
    }

    #[test]
    fn kreweras_examples() {
        let r = ts(2, &[(0, 1)]);
        assert!(kreweras_leq(&r, &r).unwrap());
        assert!(!kreweras_leq(&r, &ts(2, &[(0, 1), (0, 2)])).unwrap());
        assert!(kreweras_leq(&r, &TransferSystem::maximal(Arc::new(chain(2)))).unwrap());
    }

    #[test]
    fn round_trip_and_catalan() {
        for n in 0..=5 {
            let systems = enumerate_transfer_systems(&Arc::new(chain(n)));
            let mut parts = Vec::new();
            for r in &systems {
                let p = partition_of(r).unwrap();
                assert!(brute_noncrossing(n, p.blocks()));
                assert_eq!(&transfer_of(&p).unwrap(), r);
                parts.push(p);
            }
            parts.sort();
            parts.dedup();
            assert_eq!(parts.len() as u64, catalan(n as u64 + 1).to_u64().unwrap());
        }
    }

    #[test]
    fn all_noncrossing_partitions_are_reached() {
        // Set partitions of {0..n} by restricted growth strings.
        fn rgs(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
            if prefix.len() == n + 1 {
                let k = prefix.iter().max().unwrap() + 1;
                let mut blocks = vec![Vec::new(); k];
                for (x, &b) in prefix.iter().enumerate() {
                    blocks[b].push(x);
                }
                out.push(blocks);
                return;
            }
            let top = prefix.iter().max().map_or(0, |m| m + 1);
            for b in 0..=top {
                prefix.push(b);
                rgs(n, prefix, out);
                prefix.pop();
            }
        }
        for n in 0..=5 {
            let mut all = Vec::new();
            rgs(n, &mut vec![0], &mut all);
            let nc: Vec<_> = all.into_iter().filter(|b| brute_noncrossing(n, b)).collect();
            for b in &nc {
                assert!(is_noncrossing(n, b).unwrap());
            }
            assert_eq!(nc.len(), enumerate_partitions(n).len());
        }
    }

    #[test]
    fn kreweras_is_composition_closure() {
        for n in 0..=5 {
            let systems = enumerate_transfer_systems(&Arc::new(chain(n)));
            for r in &systems {
                for rp in systems.iter().filter(|rp| r.is_subset(rp)) {
                    let k = kreweras_leq(r, rp).unwrap();
                    assert_eq!(k, kreweras_by_fibers(r, rp));
                    let refines = partition_of(r).unwrap().refines(&partition_of(rp).unwrap());
                    assert_eq!(k, refines);
                    let p = StructurePair::new(r.clone(), rp.clone()).unwrap();
                    assert_eq!(k, is_cc_pair(&p), "{r:?} {rp:?}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn quadruple_scan_matches(labels in proptest::collection::vec(0usize..4, 1..9)) {
            let n = labels.len() - 1;
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 4];
            for (x, &b) in labels.iter().enumerate() {
                blocks[b].push(x);
            }
            blocks.retain(|b| !b.is_empty());
            prop_assert_eq!(is_noncrossing(n, &blocks).unwrap(), brute_noncrossing(n, &blocks));
        }
    }
}
