//! Tricolored trees and their correspondence with composition closed pairs on
//! a chain.
//!
//! Node ids of a tree are its labels. Trees produced by this module are always
//! admissibly labeled: blue subtree, then the node, then the green subtree,
//! then the red subtree.

mod triangulation;

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::chain;
use crate::orders::{is_cc_pair, is_model_pair, weak_equivalence_classes, StructurePair};
use crate::transfer::{pi_map, theta_map, TransferSystem};

pub use triangulation::{
    triangulation_to_tree, tree_to_triangulation, StackedTriangulation, Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Green,
    Red,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Blue, Color::Green, Color::Red];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Green => "green",
            Color::Red => "red",
        }
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "blue" => Ok(Color::Blue),
            "green" => Ok(Color::Green),
            "red" => Ok(Color::Red),
            other => Err(Error::Malformed(format!("unknown color {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TricoloredTree {
    root: usize,
    parent: Vec<Option<(usize, Color)>>,
    children: Vec<[Option<usize>; 3]>,
}

impl TricoloredTree {
    pub fn single() -> Self {
        TricoloredTree { root: 0, parent: vec![None], children: vec![[None; 3]] }
    }

    /// Builds a tree on nodes `0..m` from `(parent, child, color)` edges,
    /// keeping the given ids.
    pub fn from_edges(m: usize, edges: &[(usize, usize, Color)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node".into()));
        }
        let mut parent = vec![None; m];
        let mut children = vec![[None; 3]; m];
        for &(p, c, color) in edges {
            if p >= m || c >= m {
                return Err(Error::InvalidTree(format!("edge ({p}, {c}) leaves 0..{m}")));
            }
            if parent[c].replace((p, color)).is_some() {
                return Err(Error::InvalidTree(format!("node {c} has two parents")));
            }
            if children[p][color.index()].replace(c).is_some() {
                return Err(Error::InvalidTree(format!("node {p} has two {} children", color.name())));
            }
        }
        let roots: Vec<usize> = (0..m).filter(|&x| parent[x].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidTree(format!("expected one root, found {}", roots.len())));
        }
        let tree = TricoloredTree { root: roots[0], parent, children };
        if tree.preorder().len() != m {
            return Err(Error::InvalidTree("edges contain a cycle".into()));
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, x: usize) -> Option<(usize, Color)> {
        self.parent[x]
    }

    pub fn child(&self, x: usize, color: Color) -> Option<usize> {
        self.children[x][color.index()]
    }

    /// `(parent, child, color)` sorted by parent, then color.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for p in 0..self.len() {
            for color in Color::ALL {
                if let Some(c) = self.child(p, color) {
                    out.push((p, c, color));
                }
            }
        }
        out
    }

    /// Nodes reachable from the root, parents first, children blue to red.
    fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            out.push(x);
            for color in Color::ALL.iter().rev() {
                if let Some(c) = self.child(x, *color) {
                    stack.push(c);
                }
            }
        }
        out
    }

    pub(crate) fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for x in self.preorder() {
            if let Some((p, _)) = self.parent[x] {
                depth[x] = depth[p] + 1;
            }
        }
        depth
    }

    fn relabel(&self, label: &[usize]) -> TricoloredTree {
        let edges: Vec<_> = self.edges().into_iter().map(|(p, c, col)| (label[p], label[c], col)).collect();
        TricoloredTree::from_edges(self.len(), &edges).expect("relabeling preserves validity")
    }

    /// The same tree with node ids replaced by admissible labels.
    pub fn canonical(&self) -> TricoloredTree {
        self.relabel(&admissible_order(self))
    }

    pub fn is_canonical(&self) -> bool {
        admissible_order(self).iter().enumerate().all(|(i, &l)| i == l)
    }

    /// `(min, max)` label over each node's subtree.
    fn subtree_spans(&self) -> Vec<(usize, usize)> {
        let mut span: Vec<(usize, usize)> = (0..self.len()).map(|x| (x, x)).collect();
        for x in self.preorder().into_iter().rev() {
            if let Some((p, _)) = self.parent[x] {
                span[p] = (span[p].0.min(span[x].0), span[p].1.max(span[x].1));
            }
        }
        span
    }

    /// Components under the edges of the given colors, as a representative
    /// per node.
    fn components(&self, colors: &[Color]) -> Vec<usize> {
        let mut rep: Vec<usize> = (0..self.len()).collect();
        for x in self.preorder() {
            if let Some((p, col)) = self.parent[x] {
                if colors.contains(&col) {
                    rep[x] = rep[p];
                }
            }
        }
        rep
    }
}

/// Label of every node in the admissible order: blue subtree, node, green
/// subtree, red subtree.
pub fn admissible_order(t: &TricoloredTree) -> Vec<usize> {
    enum Step {
        Enter(usize),
        Emit(usize),
    }
    let mut label = vec![usize::MAX; t.len()];
    let mut next = 0;
    let mut stack = vec![Step::Enter(t.root)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(x) => {
                for color in [Color::Red, Color::Green] {
                    if let Some(c) = t.child(x, color) {
                        stack.push(Step::Enter(c));
                    }
                }
                stack.push(Step::Emit(x));
                if let Some(c) = t.child(x, Color::Blue) {
                    stack.push(Step::Enter(c));
                }
            }
            Step::Emit(x) => {
                label[x] = next;
                next += 1;
            }
        }
    }
    label
}

/// Checks a labeling directly against the three placement rules.
pub fn satisfies_admissible_rules(t: &TricoloredTree, label: &[usize]) -> bool {
    let m = t.len();
    let mut seen = vec![false; m];
    if label.len() != m || label.iter().any(|&l| l >= m || std::mem::replace(&mut seen[l], true)) {
        return false;
    }
    let relabeled = t.relabel(label);
    let span = relabeled.subtree_spans();
    relabeled.edges().into_iter().all(|(p, c, color)| match color {
        Color::Blue => span[c].1 < p,
        Color::Green => span[c].0 > p,
        Color::Red => {
            span[c].0 > p && relabeled.child(p, Color::Green).is_none_or(|g| span[c].0 > span[g].1)
        }
    })
}

/// `(π_R, π_{R'})` of a tree.
pub fn tree_maps(t: &TricoloredTree) -> (Vec<usize>, Vec<usize>) {
    let t = t.canonical();
    let m = t.len();
    let span = t.subtree_spans();
    let rep = t.components(&[Color::Green, Color::Red]);
    let mut top = vec![0; m];
    for x in 0..m {
        top[rep[x]] = top[rep[x]].max(x);
    }
    let pi_prime = (0..m).map(|x| top[rep[x]]).collect();
    let pi = (0..m).map(|x| t.child(x, Color::Green).map_or(x, |g| span[g].1)).collect();
    (pi, pi_prime)
}

/// The composition closed pair on `[m - 1]` encoded by a tree.
pub fn tree_to_pair(t: &TricoloredTree) -> Result<StructurePair> {
    let (pi, pi_prime) = tree_maps(t);
    let lattice = Arc::new(chain(t.len() - 1));
    let r = TransferSystem::from_pi(lattice.clone(), &pi)
        .map_err(|e| Error::Invariant(format!("tree gives no transfer system: {e}")))?;
    let r_prime = TransferSystem::from_pi(lattice, &pi_prime)
        .map_err(|e| Error::Invariant(format!("tree gives no transfer system: {e}")))?;
    let pair = StructurePair::new(r, r_prime)
        .map_err(|e| Error::Invariant(format!("tree gives no premodel pair: {e}")))?;
    if !is_cc_pair(&pair) {
        return Err(Error::Invariant("tree pair is not composition closed".into()));
    }
    Ok(pair)
}

/// The unique tree encoding a composition closed pair on a chain.
pub fn pair_to_tree(p: &StructurePair) -> Result<TricoloredTree> {
    let pi = pi_map(p.r())?;
    let pi_prime = pi_map(p.r_prime())?;
    if !is_cc_pair(p) {
        return Err(Error::NotCompositionClosed);
    }
    let m = pi.len();
    // Members of each red-green component in increasing order.
    let pi_prime = &pi_prime;
    let comp = |x: usize| (0..m).filter(move |&y| pi_prime[y] == pi_prime[x]);
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    let mut has_parent = vec![false; m];
    for x in 0..m {
        if let Some(g) = comp(x).find(|&y| y > x && y <= pi[x]) {
            edges.push((x, g, Color::Green));
            has_parent[g] = true;
        }
    }
    let mut red_taken = vec![false; m];
    for x in 0..m {
        if let Some(y) = comp(x).find(|&y| y > pi[x]) {
            if !red_taken[y] {
                red_taken[y] = true;
                if has_parent[y] {
                    return Err(Error::Invariant(format!("node {y} gets two parents")));
                }
                has_parent[y] = true;
                edges.push((x, y, Color::Red));
            }
        }
    }
    for x in 0..m {
        if !has_parent[x] && pi_prime[x] != m - 1 {
            edges.push((pi_prime[x] + 1, x, Color::Blue));
        }
    }
    let tree = TricoloredTree::from_edges(m, &edges)
        .map_err(|e| Error::Invariant(format!("reconstructed tree is invalid: {e}")))?;
    let back = tree_to_pair(&tree)?;
    if back.r() != p.r() || back.r_prime() != p.r_prime() || !tree.is_canonical() {
        return Err(Error::Invariant("reconstructed tree does not encode the pair".into()));
    }
    Ok(tree)
}

/// Per node: does the root path contain an edge of each color.
fn path_colors(t: &TricoloredTree) -> Vec<[bool; 3]> {
    let mut seen = vec![[false; 3]; t.len()];
    for x in t.preorder() {
        if let Some((p, col)) = t.parent[x] {
            seen[x] = seen[p];
            seen[x][col.index()] = true;
        }
    }
    seen
}

fn red_source_above(t: &TricoloredTree, color: Color) -> bool {
    let seen = path_colors(t);
    t.edges().into_iter().any(|(p, _, col)| col == Color::Red && seen[p][color.index()])
}

/// A red branch sits above a blue branch.
pub fn has_red_above_blue(t: &TricoloredTree) -> bool {
    red_source_above(t, Color::Blue)
}

/// A red branch sits above a green branch.
pub fn has_red_above_green(t: &TricoloredTree) -> bool {
    red_source_above(t, Color::Green)
}

/// Every red edge hangs from the root along red edges only.
pub fn is_model_tree(t: &TricoloredTree) -> bool {
    !has_red_above_blue(t) && !has_red_above_green(t)
}

/// Some `x` has `π_R(x) < π_{R'}(x) < n`.
pub fn pair_has_red_above_blue(p: &StructurePair) -> Result<bool> {
    let (pi, pi_prime) = (pi_map(p.r())?, pi_map(p.r_prime())?);
    let n = pi.len() - 1;
    Ok((0..=n).any(|x| pi[x] < pi_prime[x] && pi_prime[x] < n))
}

/// Some `z` has `0 < θ_R(z) < θ_{R'}(z)`.
pub fn pair_has_red_above_green(p: &StructurePair) -> Result<bool> {
    let (theta, theta_prime) = (theta_map(p.r())?, theta_map(p.r_prime())?);
    Ok((0..theta.len()).any(|z| 0 < theta[z] && theta[z] < theta_prime[z]))
}

/// Exchanges blue and green on every edge and relabels admissibly.
pub fn swap_colors(t: &TricoloredTree) -> TricoloredTree {
    let edges: Vec<_> = t
        .edges()
        .into_iter()
        .map(|(p, c, col)| {
            let col = match col {
                Color::Blue => Color::Green,
                Color::Green => Color::Blue,
                Color::Red => Color::Red,
            };
            (p, c, col)
        })
        .collect();
    TricoloredTree::from_edges(t.len(), &edges).expect("recoloring preserves validity").canonical()
}

/// [`swap_colors`], restricted to model trees.
pub fn blue_green_swap(t: &TricoloredTree) -> Result<TricoloredTree> {
    if !is_model_tree(t) {
        return Err(Error::NotAModelTree);
    }
    Ok(swap_colors(t))
}

/// Blue-green components of a model tree. These are intervals, and they are
/// the classes of weak equivalences of the encoded pair.
pub fn weak_classes(t: &TricoloredTree) -> Result<Vec<Vec<usize>>> {
    if !is_model_tree(t) {
        return Err(Error::NotAModelTree);
    }
    let t = t.canonical();
    let rep = t.components(&[Color::Blue, Color::Green]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; t.len()];
    for x in 0..t.len() {
        if slot[rep[x]] == usize::MAX {
            slot[rep[x]] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[rep[x]]].push(x);
    }
    let pair = tree_to_pair(&t)?;
    if weak_equivalence_classes(&pair) != classes {
        return Err(Error::Invariant("blue-green components differ from weak classes".into()));
    }
    if !is_model_pair(&pair) {
        return Err(Error::Invariant("model tree encodes a non-model pair".into()));
    }
    Ok(classes)
}

/// Joins three admissibly labeled trees under a new root.
fn graft(
    blue: Option<&TricoloredTree>,
    green: Option<&TricoloredTree>,
    red: Option<&TricoloredTree>,
) -> TricoloredTree {
    let size = |t: Option<&TricoloredTree>| t.map_or(0, |t| t.len());
    let root = size(blue);
    let m = root + 1 + size(green) + size(red);
    let mut parent = vec![None; m];
    let mut children = vec![[None; 3]; m];
    let offsets = [0, root + 1, root + 1 + size(green)];
    for (k, sub) in [blue, green, red].into_iter().enumerate() {
        let Some(sub) = sub else { continue };
        let off = offsets[k];
        for x in 0..sub.len() {
            parent[x + off] = sub.parent[x].map(|(p, c)| (p + off, c));
            children[x + off] = sub.children[x].map(|c| c.map(|c| c + off));
        }
        parent[sub.root + off] = Some((root, Color::ALL[k]));
        children[root][k] = Some(sub.root + off);
    }
    TricoloredTree { root, parent, children }
}

/// All tricolored trees on `m` nodes, admissibly labeled, ordered by the
/// sizes of the root's blue and green subtrees and then recursively.
pub fn enumerate_trees(m: usize) -> Vec<TricoloredTree> {
    let mut by_size: Vec<Vec<Option<TricoloredTree>>> = vec![vec![None]];
    for size in 1..=m {
        let splits: Vec<(usize, usize)> =
            (0..size).flat_map(|a| (0..size - a).map(move |b| (a, b))).collect();
        let level: Vec<Option<TricoloredTree>> = splits
            .par_iter()
            .flat_map_iter(|&(a, b)| {
                let c = size - 1 - a - b;
                let by_size = &by_size;
                by_size[a].iter().flat_map(move |bt| {
                    by_size[b].iter().flat_map(move |gt| {
                        by_size[c]
                            .iter()
                            .map(move |rt| Some(graft(bt.as_ref(), gt.as_ref(), rt.as_ref())))
                    })
                })
            })
            .collect();
        by_size.push(level);
    }
    if m == 0 {
        return Vec::new();
    }
    by_size.pop().unwrap().into_iter().map(|t| t.expect("nonempty")).collect()
}
