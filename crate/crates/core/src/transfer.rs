//! Transfer systems on a finite lattice.
//!
//! A transfer system `R` is a partial order refining `<=` that is closed
//! under restriction: `x R y` and `z <= y` give `(x ∧ z) R z`. On a finite
//! lattice each transfer system is the right class of exactly one weak
//! factorization system, whose left class is computed by [`left_class`].

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// A transfer system together with its ambient lattice.
#[derive(Clone, Debug)]
pub struct TransferSystem {
    lattice: Arc<FiniteLattice>,
    rel: BitMatrix,
}

/// An arbitrary class of morphisms of the lattice: a relation refining `<=`
/// and containing every identity.
#[derive(Clone, Debug)]
pub struct MorphismClass {
    lattice: Arc<FiniteLattice>,
    rel: BitMatrix,
}

macro_rules! relation_accessors {
    ($ty:ty) => {
        impl $ty {
            pub fn lattice(&self) -> &Arc<FiniteLattice> {
                &self.lattice
            }

            pub fn matrix(&self) -> &BitMatrix {
                &self.rel
            }

            #[inline]
            pub fn contains(&self, x: usize, y: usize) -> bool {
                self.rel.get(x, y)
            }

            /// Non-identity pairs, lexicographic.
            pub fn pairs(&self) -> Vec<(usize, usize)> {
                self.rel.iter_pairs().filter(|(x, y)| x != y).collect()
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.rel.is_subset(&other.rel)
            }
        }

        impl PartialEq for $ty {
            fn eq(&self, other: &Self) -> bool {
                self.rel == other.rel
                    && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
            }
        }

        impl Eq for $ty {}
    };
}

relation_accessors!(TransferSystem);
relation_accessors!(MorphismClass);

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the row-major bit string of the relation.
impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rel.cmp(&other.rel)
    }
}

impl std::hash::Hash for TransferSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rel.hash(state);
    }
}

fn check_dimension(lattice: &FiniteLattice, rel: &BitMatrix) -> Result<()> {
    if rel.size() == lattice.size() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: lattice.size(), found: rel.size() })
    }
}

/// True iff `rel` refines `<=`, is reflexive and transitive, and is closed
/// under restriction.
pub fn is_transfer_system(lattice: &FiniteLattice, rel: &BitMatrix) -> Result<bool> {
    check_dimension(lattice, rel)?;
    Ok(violation(lattice, rel).is_none())
}

fn violation(lattice: &FiniteLattice, rel: &BitMatrix) -> Option<String> {
    if !rel.is_subset(lattice.order()) {
        return Some("relation does not refine the lattice order".into());
    }
    if !rel.is_reflexive() {
        return Some("relation is not reflexive".into());
    }
    if !rel.is_transitive() {
        return Some("relation is not transitive".into());
    }
    let n = lattice.size();
    for (x, y) in rel.iter_pairs() {
        for z in 0..n {
            if lattice.leq(z, y) && !rel.get(lattice.meet(x, z), z) {
                return Some(format!("restriction of ({x}, {y}) along {z} is missing"));
            }
        }
    }
    None
}

/// Smallest transfer system containing `rel`.
pub fn transfer_closure(lattice: &Arc<FiniteLattice>, rel: &BitMatrix) -> Result<TransferSystem> {
    check_dimension(lattice, rel)?;
    if !rel.is_subset(lattice.order()) {
        return Err(Error::NotATransferSystem(
            "relation does not refine the lattice order".into(),
        ));
    }
    let mut out = rel.clone();
    out.union_with(&BitMatrix::identity(lattice.size()));
    close_in_place(lattice, &mut out);
    Ok(TransferSystem { lattice: Arc::clone(lattice), rel: out })
}

/// Alternates transitive closure and restriction closure to a fixpoint.
/// Terminates because the relation only grows inside `<=`.
fn close_in_place(lattice: &FiniteLattice, rel: &mut BitMatrix) {
    let n = lattice.size();
    let down = lattice.order().transpose();
    loop {
        rel.close_transitively();
        let mut added = false;
        let pairs: Vec<(usize, usize)> = rel.iter_pairs().filter(|(x, y)| x != y).collect();
        for (x, y) in pairs {
            for z in down.iter_row(y) {
                let m = lattice.meet(x, z);
                if m != z {
                    added |= rel.set(m, z);
                }
            }
        }
        if !added {
            break;
        }
    }
    debug_assert!(n == 0 || violation(lattice, rel).is_none());
}

impl TransferSystem {
    /// Validates `rel` as a transfer system on `lattice`.
    pub fn new(lattice: Arc<FiniteLattice>, rel: BitMatrix) -> Result<Self> {
        check_dimension(&lattice, &rel)?;
        if let Some(why) = violation(&lattice, &rel) {
            return Err(Error::NotATransferSystem(why));
        }
        Ok(TransferSystem { lattice, rel })
    }

    /// Builds from non-identity pairs (identities are implied) and validates.
    pub fn from_pairs(lattice: Arc<FiniteLattice>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rel = BitMatrix::identity(lattice.size());
        for &(x, y) in pairs {
            lattice.check_index(x)?;
            lattice.check_index(y)?;
            rel.set(x, y);
        }
        TransferSystem::new(lattice, rel)
    }

    /// Identities only.
    pub fn trivial(lattice: Arc<FiniteLattice>) -> Self {
        let rel = BitMatrix::identity(lattice.size());
        TransferSystem { lattice, rel }
    }

    /// Every comparable pair.
    pub fn maximal(lattice: Arc<FiniteLattice>) -> Self {
        let rel = lattice.order().clone();
        TransferSystem { lattice, rel }
    }

    /// Rebuilds a transfer system on `chain(n)` from its `π` map:
    /// `i R j` iff `i <= j <= π(i)`.
    pub fn from_pi(lattice: Arc<FiniteLattice>, pi: &[usize]) -> Result<Self> {
        if !lattice.is_chain() {
            return Err(Error::NotAChain);
        }
        let size = lattice.size();
        if pi.len() != size {
            return Err(Error::DimensionMismatch { expected: size, found: pi.len() });
        }
        let rel = BitMatrix::from_fn(size, |i, j| i <= j && j <= pi[i]);
        TransferSystem::new(lattice, rel)
    }

    pub fn intersection(&self, other: &TransferSystem) -> Result<TransferSystem> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        let mut rel = self.rel.clone();
        rel.intersect_with(&other.rel);
        Ok(TransferSystem { lattice: Arc::clone(&self.lattice), rel })
    }

    pub fn into_class(self) -> MorphismClass {
        MorphismClass { lattice: self.lattice, rel: self.rel }
    }

    pub fn as_class(&self) -> MorphismClass {
        self.clone().into_class()
    }

    /// Checks the retained invariants again.
    pub fn validate(&self) -> Result<()> {
        match violation(&self.lattice, &self.rel) {
            None => Ok(()),
            Some(why) => Err(Error::NotATransferSystem(why)),
        }
    }
}

impl MorphismClass {
    /// Any relation refining `<=`; identities are added.
    pub fn new(lattice: Arc<FiniteLattice>, mut rel: BitMatrix) -> Result<Self> {
        check_dimension(&lattice, &rel)?;
        if !rel.is_subset(lattice.order()) {
            return Err(Error::Malformed("class does not refine the lattice order".into()));
        }
        rel.union_with(&BitMatrix::identity(lattice.size()));
        Ok(MorphismClass { lattice, rel })
    }

    pub fn identities(lattice: Arc<FiniteLattice>) -> Self {
        let rel = BitMatrix::identity(lattice.size());
        MorphismClass { lattice, rel }
    }

    pub fn all(lattice: Arc<FiniteLattice>) -> Self {
        let rel = lattice.order().clone();
        MorphismClass { lattice, rel }
    }

    /// `then ∘ self`: first a morphism of `self`, then one of `then`.
    pub fn followed_by(&self, then: &MorphismClass) -> MorphismClass {
        MorphismClass { lattice: Arc::clone(&self.lattice), rel: self.rel.compose(&then.rel) }
    }

    pub fn is_composition_closed(&self) -> bool {
        self.rel.is_transitive()
    }
}

/// `(x, y) ⊠ (a, b)` in a poset: the only square from `x -> y` to `a -> b`
/// exists when `x <= a` and `y <= b`, and has a lift iff `y <= a`.
#[inline]
fn lifts(lattice: &FiniteLattice, (x, y): (usize, usize), (a, b): (usize, usize)) -> bool {
    !(lattice.leq(x, a) && lattice.leq(y, b)) || lattice.leq(y, a)
}

/// `⊠S`: morphisms with the left lifting property against all of `s`.
pub fn left_lifting_class(s: &MorphismClass) -> MorphismClass {
    let lattice = &s.lattice;
    let s_pairs: Vec<_> = s.rel.iter_pairs().collect();
    let rel = BitMatrix::from_fn(lattice.size(), |x, y| {
        lattice.leq(x, y) && s_pairs.iter().all(|&g| lifts(lattice, (x, y), g))
    });
    MorphismClass { lattice: Arc::clone(lattice), rel }
}

/// `S⊠`: morphisms with the right lifting property against all of `s`.
pub fn right_lifting_class(s: &MorphismClass) -> MorphismClass {
    let lattice = &s.lattice;
    let s_pairs: Vec<_> = s.rel.iter_pairs().collect();
    let rel = BitMatrix::from_fn(lattice.size(), |a, b| {
        lattice.leq(a, b) && s_pairs.iter().all(|&f| lifts(lattice, f, (a, b)))
    });
    MorphismClass { lattice: Arc::clone(lattice), rel }
}

/// The left class `ℒ = ⊠R` of the weak factorization system with right class `r`.
pub fn left_class(r: &TransferSystem) -> MorphismClass {
    let lattice = &r.lattice;
    let n = lattice.size();
    let mut rel = BitMatrix::new(n);
    let r_pairs: Vec<_> = r.rel.iter_pairs().filter(|(a, b)| a != b).collect();
    for x in 0..n {
        for y in lattice.order().iter_row(x) {
            if r_pairs.iter().all(|&g| lifts(lattice, (x, y), g)) {
                rel.set(x, y);
            }
        }
    }
    MorphismClass { lattice: Arc::clone(lattice), rel }
}

/// The unique `z` with `x ℒ z R y`, found as the least such element in index
/// order.
pub fn factorize(r: &TransferSystem, left: &MorphismClass, x: usize, y: usize) -> Result<usize> {
    let lattice = &r.lattice;
    lattice.check_index(x)?;
    lattice.check_index(y)?;
    if !lattice.leq(x, y) {
        return Err(Error::NoFactorization { x, y });
    }
    (0..lattice.size())
        .find(|&z| left.contains(x, z) && r.contains(z, y))
        .ok_or(Error::NoFactorization { x, y })
}

/// Weak equivalences `𝒲 = R ∘ ℒ'` of the premodel structure `(r, r_prime)`.
pub fn weak_equivalences(r: &TransferSystem, r_prime: &TransferSystem) -> Result<MorphismClass> {
    if r.lattice != r_prime.lattice {
        return Err(Error::LatticeMismatch);
    }
    if !r.is_subset(r_prime) {
        return Err(Error::NotAPremodelPair);
    }
    Ok(left_class(r_prime).followed_by(&r.as_class()))
}

/// `π_R(i) = max { j : i R j }` on a chain.
pub fn pi_map(r: &TransferSystem) -> Result<Vec<usize>> {
    if !r.lattice.is_chain() {
        return Err(Error::NotAChain);
    }
    Ok((0..r.lattice.size())
        .map(|i| r.rel.iter_row(i).last().unwrap_or(i))
        .collect())
}

/// `θ_R(i)`: the least `y` with `y ℒ i`, on a chain.
pub fn theta_map(r: &TransferSystem) -> Result<Vec<usize>> {
    if !r.lattice.is_chain() {
        return Err(Error::NotAChain);
    }
    let left = left_class(r);
    Ok((0..r.lattice.size())
        .map(|i| (0..=i).find(|&y| left.contains(y, i)).unwrap_or(i))
        .collect())
}

/// `θ_R(i) = max { j < i : j R i } + 1`, with `max ∅ = -1`.
pub fn theta_by_formula(r: &TransferSystem) -> Result<Vec<usize>> {
    if !r.lattice.is_chain() {
        return Err(Error::NotAChain);
    }
    Ok((0..r.lattice.size())
        .map(|i| (0..i).rev().find(|&j| r.contains(j, i)).map_or(0, |j| j + 1))
        .collect())
}

/// All transfer systems on `lattice`, in canonical order.
///
/// Depth-first search over the strict comparable pairs: each pair not yet
/// forced is either excluded or included (followed by closure). A branch is
/// cut as soon as a closure hits an excluded pair, so every leaf is a distinct
/// transfer system.
pub fn enumerate_transfer_systems(lattice: &Arc<FiniteLattice>) -> Vec<TransferSystem> {
    let pairs = lattice.strict_pairs();
    let start = BitMatrix::identity(lattice.size());
    let excluded = BitMatrix::new(lattice.size());
    let found = search(lattice, &pairs, 0, start, excluded);
    let mut seen = HashSet::with_capacity(found.len());
    let mut out: Vec<TransferSystem> = found
        .into_iter()
        .filter(|rel| seen.insert(rel.clone()))
        .map(|rel| TransferSystem { lattice: Arc::clone(lattice), rel })
        .collect();
    out.par_sort();
    out
}

/// Branches above this many undecided pairs are explored in parallel.
const PARALLEL_SPLIT: usize = 12;

fn search(
    lattice: &FiniteLattice,
    pairs: &[(usize, usize)],
    mut k: usize,
    current: BitMatrix,
    excluded: BitMatrix,
) -> Vec<BitMatrix> {
    while k < pairs.len() && current.get(pairs[k].0, pairs[k].1) {
        k += 1;
    }
    let Some(&(x, y)) = pairs.get(k) else {
        return vec![current];
    };
    let mut included = current.clone();
    included.set(x, y);
    close_in_place(lattice, &mut included);
    let mut excluding = excluded.clone();
    excluding.set(x, y);

    if included.intersects(&excluded) {
        return search(lattice, pairs, k + 1, current, excluding);
    }
    let (mut out, rest) = if pairs.len() - k > PARALLEL_SPLIT {
        rayon::join(
            || search(lattice, pairs, k + 1, current, excluding),
            || search(lattice, pairs, k + 1, included, excluded),
        )
    } else {
        (
            search(lattice, pairs, k + 1, current, excluding),
            search(lattice, pairs, k + 1, included, excluded),
        )
    };
    out.extend(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean_lattice, chain};
    use proptest::prelude::*;

    fn chain_arc(n: usize) -> Arc<FiniteLattice> {
        Arc::new(chain(n))
    }

    fn ts(n: usize, pairs: &[(usize, usize)]) -> TransferSystem {
        TransferSystem::from_pairs(chain_arc(n), pairs).unwrap()
    }

    /// Catalan numbers by the convolution recurrence.
    fn catalan(k: usize) -> usize {
        let mut c = vec![1usize];
        for m in 1..=k {
            c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
        }
        c[k]
    }

    #[test]
    fn trivial_and_maximal_are_transfer_systems() {
        for l in [chain(3), boolean_lattice(2), boolean_lattice(3)] {
            assert!(is_transfer_system(&l, &BitMatrix::identity(l.size())).unwrap());
            assert!(is_transfer_system(&l, l.order()).unwrap());
        }
    }

    #[test]
    fn restriction_is_enforced() {
        let l = chain(2);
        let mut rel = BitMatrix::identity(3);
        rel.set(0, 2);
        assert!(!is_transfer_system(&l, &rel).unwrap());
        assert!(matches!(
            TransferSystem::new(Arc::new(l), rel),
            Err(Error::NotATransferSystem(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            is_transfer_system(&chain(2), &BitMatrix::identity(4)),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        );
    }

    #[test]
    fn closure_examples() {
        let l = chain_arc(2);
        let id = BitMatrix::identity(3);
        assert_eq!(transfer_closure(&l, &id).unwrap(), TransferSystem::trivial(l.clone()));
        let mut rel = id.clone();
        rel.set(0, 2);
        assert_eq!(transfer_closure(&l, &rel).unwrap(), ts(2, &[(0, 1), (0, 2)]));
        assert_eq!(
            transfer_closure(&l, l.order()).unwrap(),
            TransferSystem::maximal(l.clone())
        );
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_transfer_systems(&chain_arc(0)).len(), 1);
        let five = enumerate_transfer_systems(&chain_arc(2));
        assert_eq!(five.len(), 5);
        assert_eq!(five[0], TransferSystem::trivial(chain_arc(2)));
        assert!(five.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_transfer_systems(&chain_arc(5)).len(), catalan(6));
    }

    #[test]
    fn enumeration_is_closed_and_counted() {
        for n in 0..=6 {
            let all = enumerate_transfer_systems(&chain_arc(n));
            assert_eq!(all.len(), catalan(n + 1), "n = {n}");
            for r in &all {
                r.validate().unwrap();
                assert_eq!(&transfer_closure(r.lattice(), r.matrix()).unwrap(), r);
            }
        }
    }

    /// Brute force over all subsets of strict pairs of a small lattice.
    #[test]
    fn enumeration_matches_subset_brute_force() {
        for l in [chain(3), boolean_lattice(2)] {
            let strict = l.strict_pairs();
            let mut expect = Vec::new();
            for mask in 0u32..(1 << strict.len()) {
                let mut rel = BitMatrix::identity(l.size());
                for (k, &(x, y)) in strict.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        rel.set(x, y);
                    }
                }
                if is_transfer_system(&l, &rel).unwrap() {
                    expect.push(rel);
                }
            }
            expect.sort();
            let l = Arc::new(l);
            let got: Vec<_> = enumerate_transfer_systems(&l)
                .into_iter()
                .map(|r| r.matrix().clone())
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn left_class_examples() {
        let l = chain_arc(3);
        assert_eq!(
            left_class(&TransferSystem::maximal(l.clone())),
            MorphismClass::identities(l.clone())
        );
        assert_eq!(
            left_class(&TransferSystem::trivial(l.clone())),
            MorphismClass::all(l.clone())
        );
        let r = ts(2, &[(0, 1), (0, 2)]);
        assert_eq!(left_class(&r).pairs(), vec![(1, 2)]);
    }

    #[test]
    fn factorize_examples() {
        let l = chain_arc(3);
        let triv = TransferSystem::trivial(l.clone());
        let max = TransferSystem::maximal(l.clone());
        for (x, y) in l.order().iter_pairs() {
            assert_eq!(factorize(&triv, &left_class(&triv), x, y).unwrap(), y);
            assert_eq!(factorize(&max, &left_class(&max), x, y).unwrap(), x);
        }
        let r = ts(2, &[(0, 1), (0, 2)]);
        assert_eq!(factorize(&r, &left_class(&r), 0, 2).unwrap(), 0);
        assert_eq!(
            factorize(&r, &left_class(&r), 2, 0),
            Err(Error::NoFactorization { x: 2, y: 0 })
        );
    }

    #[test]
    fn factorization_exists_and_is_unique() {
        for n in 0..=5 {
            for r in enumerate_transfer_systems(&chain_arc(n)) {
                let left = left_class(&r);
                for (x, y) in r.lattice().order().iter_pairs() {
                    let z = factorize(&r, &left, x, y).unwrap();
                    assert!(left.contains(x, z) && r.contains(z, y));
                    let all: Vec<_> = (0..=n).filter(|&w| left.contains(x, w) && r.contains(w, y)).collect();
                    assert_eq!(all, vec![z]);
                }
            }
        }
    }

    #[test]
    fn weak_equivalence_examples() {
        let l = chain_arc(3);
        for r in enumerate_transfer_systems(&l) {
            assert_eq!(weak_equivalences(&r, &r).unwrap(), MorphismClass::all(l.clone()));
        }
        let r = ts(2, &[(0, 1)]);
        let rp = ts(2, &[(0, 1), (0, 2)]);
        let w = weak_equivalences(&r, &rp).unwrap();
        assert_eq!(w.pairs(), vec![(0, 1), (1, 2)]);
        let l2 = chain_arc(2);
        let w = weak_equivalences(
            &TransferSystem::trivial(l2.clone()),
            &TransferSystem::maximal(l2.clone()),
        )
        .unwrap();
        assert_eq!(w, MorphismClass::identities(l2));
        assert_eq!(weak_equivalences(&rp, &r), Err(Error::NotAPremodelPair));
    }

    #[test]
    fn pi_examples() {
        let l = chain_arc(3);
        assert_eq!(pi_map(&TransferSystem::trivial(l.clone())).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(pi_map(&TransferSystem::maximal(l)).unwrap(), vec![3, 3, 3, 3]);
        let b2 = Arc::new(boolean_lattice(2));
        assert_eq!(pi_map(&TransferSystem::trivial(b2)), Err(Error::NotAChain));
    }

    #[test]
    fn theta_examples() {
        let l = chain_arc(4);
        assert_eq!(theta_map(&TransferSystem::trivial(l.clone())).unwrap(), vec![0; 5]);
        assert_eq!(theta_map(&TransferSystem::maximal(l)).unwrap(), vec![0, 1, 2, 3, 4]);
        let r = ts(2, &[(0, 1), (0, 2)]);
        assert_eq!(theta_map(&r).unwrap(), vec![0, 1, 1]);
        assert_eq!(theta_by_formula(&r).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn pi_and_theta_properties() {
        for n in 0..=6 {
            for r in enumerate_transfer_systems(&chain_arc(n)) {
                let pi = pi_map(&r).unwrap();
                // extensive, not monotone: {(0,1),(0,2)} on [2] has π = (2, 1, 2)
                assert!((0..=n).all(|i| pi[i] >= i && pi[pi[i]] == pi[i]));
                for i in 0..=n {
                    for j in 0..=n {
                        assert_eq!(r.contains(i, j), i <= j && j <= pi[i]);
                    }
                }
                assert_eq!(TransferSystem::from_pi(r.lattice().clone(), &pi).unwrap(), r);

                let theta = theta_map(&r).unwrap();
                assert_eq!(theta, theta_by_formula(&r).unwrap());
                let left = left_class(&r);
                for x in 0..=n {
                    for y in 0..=n {
                        assert_eq!(left.contains(x, y), theta[y] <= x && x <= y);
                    }
                }
                assert!((0..=n).all(|i| theta[theta[i]] == theta[i] && theta[i] <= i));
            }
        }
    }

    fn arb_class(n: usize) -> impl Strategy<Value = MorphismClass> {
        let l = chain_arc(n);
        let strict = l.strict_pairs();
        proptest::collection::vec(any::<bool>(), strict.len()).prop_map(move |bits| {
            let mut rel = BitMatrix::identity(l.size());
            for (&(x, y), b) in strict.iter().zip(bits) {
                if b {
                    rel.set(x, y);
                }
            }
            MorphismClass::new(l.clone(), rel).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lifting_is_a_galois_connection(
            (s, t) in (0usize..=4).prop_flat_map(|n| (arb_class(n), arb_class(n)))
        ) {
            let s_in_left_of_t = s.is_subset(&left_lifting_class(&t));
            let t_in_right_of_s = t.is_subset(&right_lifting_class(&s));
            prop_assert_eq!(s_in_left_of_t, t_in_right_of_s);
        }

        #[test]
        fn left_class_is_left_lifting_class(n in 0usize..=4, pick in any::<proptest::sample::Index>()) {
            let all = enumerate_transfer_systems(&chain_arc(n));
            let r = pick.get(&all);
            prop_assert_eq!(left_class(r), left_lifting_class(&r.as_class()));
            prop_assert_eq!(right_lifting_class(&left_class(r)), r.as_class());
        }
    }
}
