//! Pairs of transfer systems and the three orders they induce on `Tr(L)`:
//! inclusion `<=`, composition closure `≼`, and model structure `⊑`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, PosetRelation};
use crate::transfer::{enumerate_transfer_systems, left_class, MorphismClass, TransferSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    Premodel,
    CompositionClosed,
    Model,
    Compatible,
}

impl PairKind {
    pub const ALL: [PairKind; 4] = [
        PairKind::Premodel,
        PairKind::CompositionClosed,
        PairKind::Model,
        PairKind::Compatible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PairKind::Premodel => "premodel",
            PairKind::CompositionClosed => "cc",
            PairKind::Model => "model",
            PairKind::Compatible => "compatible",
        }
    }
}

impl std::str::FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "premodel" => Ok(PairKind::Premodel),
            "cc" => Ok(PairKind::CompositionClosed),
            "model" => Ok(PairKind::Model),
            "compatible" => Ok(PairKind::Compatible),
            other => Err(Error::Malformed(format!("unknown pair kind {other:?}"))),
        }
    }
}

/// Which refinement of inclusion to build on `Tr(L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Inclusion,
    CompositionClosed,
    Model,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct KindFlags {
    pub cc: bool,
    pub model: bool,
    pub compatible: bool,
}

impl KindFlags {
    pub fn has(&self, kind: PairKind) -> bool {
        match kind {
            PairKind::Premodel => true,
            PairKind::CompositionClosed => self.cc,
            PairKind::Model => self.model,
            PairKind::Compatible => self.compatible,
        }
    }
}

/// A premodel structure `R ⊆ R'`, with the left class `ℒ'` of `R'` and the
/// weak equivalences `𝒲 = R ∘ ℒ'` precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructurePair {
    r: TransferSystem,
    r_prime: TransferSystem,
    left_prime: MorphismClass,
    weak: MorphismClass,
}

impl StructurePair {
    pub fn new(r: TransferSystem, r_prime: TransferSystem) -> Result<Self> {
        let left_prime = left_class(&r_prime);
        StructurePair::with_left_prime(r, r_prime, left_prime)
    }

    /// As [`StructurePair::new`] with `ℒ'` supplied by the caller, which must
    /// equal `left_class(&r_prime)`.
    pub fn with_left_prime(
        r: TransferSystem,
        r_prime: TransferSystem,
        left_prime: MorphismClass,
    ) -> Result<Self> {
        if r.lattice() != r_prime.lattice() {
            return Err(Error::LatticeMismatch);
        }
        if !r.is_subset(&r_prime) {
            return Err(Error::NotAPremodelPair);
        }
        let weak = left_prime.followed_by(&r.as_class());
        Ok(StructurePair { r, r_prime, left_prime, weak })
    }

    pub fn r(&self) -> &TransferSystem {
        &self.r
    }

    pub fn r_prime(&self) -> &TransferSystem {
        &self.r_prime
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        self.r.lattice()
    }

    pub fn left_prime(&self) -> &MorphismClass {
        &self.left_prime
    }

    pub fn weak_equivalences(&self) -> &MorphismClass {
        &self.weak
    }

    pub fn kind_flags(&self) -> KindFlags {
        KindFlags {
            cc: is_cc_pair(self),
            model: is_model_pair(self),
            compatible: is_compatible_pair(self),
        }
    }

    pub fn is(&self, kind: PairKind) -> bool {
        match kind {
            PairKind::Premodel => true,
            PairKind::CompositionClosed => is_cc_pair(self),
            PairKind::Model => is_model_pair(self),
            PairKind::Compatible => is_compatible_pair(self),
        }
    }
}

/// `𝒲` is closed under composition iff `ℒ' ∘ R ⊆ R ∘ ℒ'`, i.e. every
/// `x R y ℒ' w` refactors as `x ℒ' z R w`.
pub fn is_cc_pair(p: &StructurePair) -> bool {
    let swapped = p.r.matrix().compose(p.left_prime.matrix());
    swapped.is_subset(p.weak.matrix())
}

/// Composition closure by direct check: `𝒲 ∘ 𝒲 ⊆ 𝒲`.
pub fn cc_by_weak_closure(p: &StructurePair) -> bool {
    p.weak.is_composition_closed()
}

/// Composition closure by the splitting criterion, with no reference to
/// cofibrations: every square `x R y`, `z R' w`, `x <= z`, `y <= w` splits
/// through some `z' R w'` with `x <= z' <= z`, `y <= w' <= w` and `w' R' w`.
pub fn cc_by_splitting(p: &StructurePair) -> bool {
    let lattice = p.lattice();
    let n = lattice.size();
    let r = p.r.matrix();
    let rp = p.r_prime.matrix();
    let order = lattice.order();
    let down = order.transpose();
    // into_rp[w] = { w' : w' R' w }
    let into_rp = rp.transpose();
    let words = r.row(0).len();
    let mut target = vec![0u64; words];

    for (x, y) in r.iter_pairs() {
        for (z, w) in rp.iter_pairs() {
            if !(lattice.leq(x, z) && lattice.leq(y, w)) {
                continue;
            }
            // Candidates w' with y <= w' <= w and w' R' w.
            for (k, t) in target.iter_mut().enumerate() {
                *t = order.row(y)[k] & down.row(w)[k] & into_rp.row(w)[k];
            }
            let split = (0..n)
                .filter(|&zp| lattice.leq(x, zp) && lattice.leq(zp, z))
                .any(|zp| r.row(zp).iter().zip(&target).any(|(a, b)| a & b != 0));
            if !split {
                return false;
            }
        }
    }
    true
}

/// 2-out-of-3 for `𝒲` over every `x <= y <= z`.
pub fn is_model_pair(p: &StructurePair) -> bool {
    let lattice = p.lattice();
    let w = p.weak.matrix();
    let n = lattice.size();
    for x in 0..n {
        for y in lattice.order().iter_row(x) {
            for z in lattice.order().iter_row(y) {
                let members = w.get(x, y) as u8 + w.get(y, z) as u8 + w.get(x, z) as u8;
                if members == 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// For all `x` and `y, z <= x`: `y R x` and `(y ∧ z) R' y` force `z R' x`.
pub fn is_compatible_pair(p: &StructurePair) -> bool {
    let lattice = p.lattice();
    let n = lattice.size();
    let (r, rp) = (p.r.matrix(), p.r_prime.matrix());
    for x in 0..n {
        for y in 0..n {
            if y == x || !r.get(y, x) {
                continue;
            }
            for z in 0..n {
                if lattice.leq(z, x) && rp.get(lattice.meet(y, z), y) && !rp.get(z, x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Equivalence classes of the symmetric closure of `𝒲`, each sorted, listed
/// by minimum.
pub fn weak_equivalence_classes(p: &StructurePair) -> Vec<Vec<usize>> {
    let n = p.lattice().size();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], mut x: usize) -> usize {
        while label[x] != x {
            label[x] = label[label[x]];
            x = label[x];
        }
        x
    }
    for (x, y) in p.weak.matrix().iter_pairs() {
        let (a, b) = (find(&mut label, x), find(&mut label, y));
        if a != b {
            label[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let root = find(&mut label, x);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(x);
    }
    classes
}

/// All transfer systems on one lattice in canonical order, with cached left
/// classes, for whole-`Tr(L)` computations.
#[derive(Clone, Debug)]
pub struct SystemCatalog {
    lattice: Arc<FiniteLattice>,
    systems: Vec<TransferSystem>,
    left: Vec<MorphismClass>,
}

/// One premodel pair `(systems[lo], systems[hi])` and its classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairRecord {
    pub lo: usize,
    pub hi: usize,
    pub flags: KindFlags,
}

impl SystemCatalog {
    pub fn new(lattice: Arc<FiniteLattice>) -> Self {
        let systems = enumerate_transfer_systems(&lattice);
        let left = systems.par_iter().map(left_class).collect();
        SystemCatalog { lattice, systems, left }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn systems(&self) -> &[TransferSystem] {
        &self.systems
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn index_of(&self, r: &TransferSystem) -> Option<usize> {
        self.systems.binary_search(r).ok()
    }

    /// The premodel pair `(systems[lo], systems[hi])`, if `lo ⊆ hi`.
    pub fn pair(&self, lo: usize, hi: usize) -> Option<StructurePair> {
        StructurePair::with_left_prime(
            self.systems[lo].clone(),
            self.systems[hi].clone(),
            self.left[hi].clone(),
        )
        .ok()
    }

    /// Every premodel pair with its flags, ordered by `(lo, hi)`.
    pub fn classify_all(&self) -> Vec<PairRecord> {
        (0..self.len())
            .into_par_iter()
            .flat_map_iter(|lo| {
                (0..self.len()).filter_map(move |hi| {
                    self.pair(lo, hi).map(|p| PairRecord { lo, hi, flags: p.kind_flags() })
                })
            })
            .collect()
    }

    pub fn count(&self, records: &[PairRecord], kind: PairKind) -> usize {
        records.iter().filter(|r| r.flags.has(kind)).count()
    }

    /// The chosen order on `Tr(L)` as a relation indexed like `systems()`.
    pub fn order_poset(&self, kind: OrderKind) -> Result<PosetRelation> {
        let n = self.len();
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|lo| {
                (0..n)
                    .filter(|&hi| match self.pair(lo, hi) {
                        None => false,
                        Some(p) => match kind {
                            OrderKind::Inclusion => true,
                            OrderKind::CompositionClosed => is_cc_pair(&p),
                            OrderKind::Model => is_cc_pair(&p) && is_model_pair(&p),
                        },
                    })
                    .collect()
            })
            .collect();
        let mut m = BitMatrix::new(n);
        for (lo, row) in rows.iter().enumerate() {
            for &hi in row {
                m.set(lo, hi);
            }
        }
        PosetRelation::new(m)
            .map_err(|_| Error::Invariant(format!("{kind:?} relation on Tr(L) is not a partial order")))
    }

    /// Premodel pairs passing `kind`, ordered by canonical index pair.
    pub fn structures(&self, kind: PairKind) -> Vec<StructurePair> {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|lo| {
                (0..n).filter_map(move |hi| self.pair(lo, hi).filter(|p| p.is(kind)))
            })
            .collect()
    }

    /// Least upper bound of `systems[a]` and `systems[b]` under `≼`, as the
    /// intersection of all common `≼`-upper bounds. Chains always have one;
    /// some lattices, such as `B3`, have pairs without one.
    pub fn cc_join(&self, a: usize, b: usize) -> Result<TransferSystem> {
        let uppers: Vec<usize> = (0..self.len())
            .into_par_iter()
            .filter(|&c| {
                [a, b].iter().all(|&x| self.pair(x, c).is_some_and(|p| is_cc_pair(&p)))
            })
            .collect();
        let mut acc = TransferSystem::maximal(Arc::clone(&self.lattice));
        for &c in &uppers {
            acc = acc.intersection(&self.systems[c])?;
        }
        let j = self
            .index_of(&acc)
            .ok_or_else(|| Error::Invariant("cc join is not a transfer system".into()))?;
        for x in [a, b] {
            if !self.pair(x, j).is_some_and(|p| is_cc_pair(&p)) {
                return Err(Error::Invariant("cc join is not an upper bound".into()));
            }
        }
        // The intersection is contained in every upper bound but need not
        // lie below it in the refined order.
        if !uppers.iter().all(|&c| self.pair(j, c).is_some_and(|p| is_cc_pair(&p))) {
            return Err(Error::NoLeastUpperBound(a, b));
        }
        Ok(acc)
    }
}

/// `Tr(L)` under the chosen order, together with the systems it indexes.
pub fn order_poset(
    lattice: &Arc<FiniteLattice>,
    kind: OrderKind,
) -> Result<(Vec<TransferSystem>, PosetRelation)> {
    let catalog = SystemCatalog::new(Arc::clone(lattice));
    let poset = catalog.order_poset(kind)?;
    Ok((catalog.systems, poset))
}

pub fn enumerate_structures(lattice: &Arc<FiniteLattice>, kind: PairKind) -> Vec<StructurePair> {
    SystemCatalog::new(Arc::clone(lattice)).structures(kind)
}

pub fn cc_join(r1: &TransferSystem, r2: &TransferSystem) -> Result<TransferSystem> {
    if r1.lattice() != r2.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let catalog = SystemCatalog::new(Arc::clone(r1.lattice()));
    let (a, b) = (catalog.index_of(r1), catalog.index_of(r2));
    match (a, b) {
        (Some(a), Some(b)) => catalog.cc_join(a, b),
        _ => Err(Error::Invariant("transfer system missing from enumeration".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::closed_form_u64;
    use crate::lattice::{boolean_lattice, chain, divisor_lattice, intervals, is_lattice_poset};

    fn ts(n: usize, pairs: &[(usize, usize)]) -> TransferSystem {
        TransferSystem::from_pairs(Arc::new(chain(n)), pairs).unwrap()
    }

    fn pair_on(l: &Arc<FiniteLattice>, r: &[(usize, usize)], rp: &[(usize, usize)]) -> StructurePair {
        StructurePair::new(
            TransferSystem::from_pairs(l.clone(), r).unwrap(),
            TransferSystem::from_pairs(l.clone(), rp).unwrap(),
        )
        .unwrap()
    }

    /// Square `x R y`, top `x <= z`, `z R' w`, bottom `y ℒ' w`: must split
    /// through `x <= z' <= z` with `z' R w`.
    fn cc_by_cofibrant_splitting(p: &StructurePair) -> bool {
        let l = p.lattice();
        let n = l.size();
        for (x, y) in p.r().matrix().iter_pairs() {
            for (z, w) in p.r_prime().matrix().iter_pairs() {
                if !(l.leq(x, z) && p.left_prime().contains(y, w)) {
                    continue;
                }
                if !(0..n).any(|zp| l.leq(x, zp) && l.leq(zp, z) && p.r().contains(zp, w)) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn cc_examples() {
        let l = Arc::new(chain(2));
        for r in enumerate_transfer_systems(&l) {
            assert!(is_cc_pair(&StructurePair::new(r.clone(), r).unwrap()));
        }
        let bad = pair_on(&l, &[(0, 1)], &[(0, 1), (0, 2)]);
        assert!(!is_cc_pair(&bad));
        let w = bad.weak_equivalences();
        assert!(w.contains(0, 1) && w.contains(1, 2) && !w.contains(0, 2));
        let good = pair_on(&l, &[(0, 1)], &[(0, 1), (0, 2), (1, 2)]);
        assert!(is_cc_pair(&good));
    }

    #[test]
    fn model_examples() {
        let l = Arc::new(chain(2));
        let p = pair_on(&l, &[(0, 1)], &[(0, 1), (0, 2), (1, 2)]);
        assert!(is_model_pair(&p));
        assert_eq!(p.weak_equivalences().pairs(), vec![(0, 1)]);
    }

    #[test]
    fn compatible_examples() {
        let l = Arc::new(chain(2));
        assert!(is_compatible_pair(&pair_on(&l, &[], &[])));
        assert!(!is_compatible_pair(&pair_on(&l, &[(0, 1), (0, 2)], &[(0, 1), (0, 2)])));
    }

    #[test]
    fn chain_two_counts() {
        let cat = SystemCatalog::new(Arc::new(chain(2)));
        let rec = cat.classify_all();
        let counts: Vec<_> = PairKind::ALL.iter().map(|&k| cat.count(&rec, k)).collect();
        assert_eq!(counts, vec![13, 12, 10, 12]);
    }

    #[test]
    fn chain_two_orders() {
        let l = Arc::new(chain(2));
        let (_, tamari) = order_poset(&l, OrderKind::Inclusion).unwrap();
        assert_eq!(intervals(&tamari).len(), 13);
        let (_, kreweras) = order_poset(&l, OrderKind::CompositionClosed).unwrap();
        assert_eq!(intervals(&kreweras).len(), 12);
        let (_, model) = order_poset(&l, OrderKind::Model).unwrap();
        assert_eq!(model.relation_count(), 10);
        assert!(!is_lattice_poset(&model));
        assert!(is_lattice_poset(&kreweras));
    }

    #[test]
    fn counts_match_closed_forms() {
        for n in 0..=4 {
            let cat = SystemCatalog::new(Arc::new(chain(n)));
            let rec = cat.classify_all();
            for kind in PairKind::ALL {
                assert_eq!(
                    cat.count(&rec, kind) as u64,
                    closed_form_u64(n as u64, kind).unwrap(),
                    "{kind:?} on [{n}]"
                );
            }
        }
        assert_eq!(enumerate_structures(&Arc::new(chain(1)), PairKind::Premodel).len(), 3);
        assert_eq!(enumerate_structures(&Arc::new(chain(3)), PairKind::CompositionClosed).len(), 55);
    }

    fn small_lattices() -> Vec<FiniteLattice> {
        let mut v: Vec<_> = (0..=4).map(chain).collect();
        v.push(boolean_lattice(2));
        v.push(divisor_lattice(12).0);
        v
    }

    #[test]
    fn characterizations_agree_and_kinds_nest() {
        for l in small_lattices() {
            let cat = SystemCatalog::new(Arc::new(l));
            for lo in 0..cat.len() {
                for hi in 0..cat.len() {
                    let Some(p) = cat.pair(lo, hi) else { continue };
                    let cc = is_cc_pair(&p);
                    assert_eq!(cc, cc_by_weak_closure(&p));
                    assert_eq!(cc, cc_by_splitting(&p));
                    assert_eq!(cc, cc_by_cofibrant_splitting(&p));
                    if is_model_pair(&p) {
                        assert!(cc);
                    }
                }
            }
        }
    }

    #[test]
    fn cc_joins() {
        let l = Arc::new(chain(3));
        let cat = SystemCatalog::new(l.clone());
        for a in 0..cat.len() {
            assert_eq!(cat.cc_join(a, a).unwrap(), cat.systems()[a]);
            // index 0 is the trivial system
            assert_eq!(cat.cc_join(0, a).unwrap(), cat.systems()[a]);
        }
        let b2 = SystemCatalog::new(Arc::new(boolean_lattice(2)));
        for a in 0..b2.len() {
            for b in 0..b2.len() {
                let j = b2.cc_join(a, b).unwrap();
                assert!(b2.index_of(&j).is_some());
            }
        }
        let r = ts(2, &[(0, 1)]);
        assert_eq!(cc_join(&r, &r).unwrap(), r);
    }

    #[test]
    fn cc_order_lattice_property() {
        for n in 0..=5 {
            let (_, p) = order_poset(&Arc::new(chain(n)), OrderKind::CompositionClosed).unwrap();
            assert!(is_lattice_poset(&p));
        }
        let (_, p) = order_poset(&Arc::new(boolean_lattice(2)), OrderKind::CompositionClosed).unwrap();
        assert!(is_lattice_poset(&p));
    }

    /// `{0 < 4}` and `{0 < 4, 2 < 6}` on `B3` have seven minimal common
    /// `≼`-upper bounds, among them `S = {0<2, 0<4, 0<6, 2<6, 4<6}` and
    /// `S ∪ {1 < 3}`, and `S` is not `≼` the other.
    #[test]
    fn b3_has_pairs_without_cc_join() {
        let l = Arc::new(boolean_lattice(3));
        let cat = SystemCatalog::new(l.clone());
        let sys = |p: &[(usize, usize)]| TransferSystem::from_pairs(l.clone(), p).unwrap();
        let a = cat.index_of(&sys(&[(0, 4)])).unwrap();
        let b = cat.index_of(&sys(&[(0, 4), (2, 6)])).unwrap();
        assert_eq!(cat.cc_join(a, b).unwrap_err(), Error::NoLeastUpperBound(a, b));
        let s = [(0, 2), (0, 4), (0, 6), (2, 6), (4, 6)];
        let mut t = s.to_vec();
        t.push((1, 3));
        for upper in [sys(&s), sys(&t)] {
            for x in [a, b] {
                assert!(is_cc_pair(&StructurePair::new(cat.systems()[x].clone(), upper.clone()).unwrap()));
            }
        }
        assert!(!is_cc_pair(&StructurePair::new(sys(&s), sys(&t)).unwrap()));
        let (_, p) = order_poset(&l, OrderKind::CompositionClosed).unwrap();
        assert!(!is_lattice_poset(&p));
    }

    #[test]
    fn weak_classes_of_model_pair() {
        let l = Arc::new(chain(2));
        let p = pair_on(&l, &[(0, 1)], &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(weak_equivalence_classes(&p), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn rejects_non_premodel() {
        let l = Arc::new(chain(2));
        let r = TransferSystem::maximal(l.clone());
        let t = TransferSystem::trivial(l);
        assert_eq!(StructurePair::new(r, t).unwrap_err(), Error::NotAPremodelPair);
    }
}
