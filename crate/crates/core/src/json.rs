//! JSON wire formats. Pairs of elements are written as two-element arrays and
//! identity pairs are left implicit.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::kreweras::NoncrossingPartition;
use crate::lattice::{boolean_lattice, build_lattice, chain, divisor_lattice, FiniteLattice};
use crate::orders::{KindFlags, StructurePair};
use crate::transfer::TransferSystem;
use crate::trees::{Color, StackedTriangulation, TricoloredTree, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeJson {
    Chain { chain: usize },
    Boolean { boolean: u32 },
    Divisors { divisors: u64 },
    /// `leq` lists generating pairs; the order is their reflexive transitive
    /// closure.
    Explicit { size: usize, leq: Vec<(usize, usize)> },
}

impl LatticeJson {
    pub fn build(&self) -> Result<FiniteLattice> {
        match *self {
            LatticeJson::Chain { chain: n } => Ok(chain(n)),
            LatticeJson::Boolean { boolean: k } if k <= 10 => Ok(boolean_lattice(k)),
            LatticeJson::Boolean { boolean: k } => Err(Error::Malformed(format!("boolean lattice B{k} is too large"))),
            LatticeJson::Divisors { divisors: 0 } => Err(Error::Malformed("divisors of 0".into())),
            LatticeJson::Divisors { divisors: n } => Ok(divisor_lattice(n).0),
            LatticeJson::Explicit { size, ref leq } => {
                if size == 0 {
                    return Err(Error::Malformed("a lattice needs at least one element".into()));
                }
                let mut m = BitMatrix::identity(size);
                for &(x, y) in leq {
                    if x >= size || y >= size {
                        return Err(Error::IndexOutOfRange { index: x.max(y), size });
                    }
                    m.set(x, y);
                }
                m.close_transitively();
                build_lattice(m)
            }
        }
    }

    /// `{"chain": n}` when the indices already run up the chain.
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let n = l.size();
        if (0..n).all(|i| (0..n).all(|j| l.leq(i, j) == (i <= j))) {
            return LatticeJson::Chain { chain: n - 1 };
        }
        LatticeJson::Explicit { size: n, leq: l.strict_pairs() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferJson {
    pub lattice: LatticeJson,
    pub pairs: Vec<(usize, usize)>,
}

impl TransferJson {
    pub fn from_system(r: &TransferSystem) -> Self {
        TransferJson { lattice: LatticeJson::from_lattice(r.lattice()), pairs: r.pairs() }
    }

    pub fn build(&self) -> Result<TransferSystem> {
        TransferSystem::from_pairs(Arc::new(self.lattice.build()?), &self.pairs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindFlagsJson {
    pub cc: bool,
    pub model: bool,
    pub compatible: bool,
}

impl From<KindFlags> for KindFlagsJson {
    fn from(f: KindFlags) -> Self {
        KindFlagsJson { cc: f.cc, model: f.model, compatible: f.compatible }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeJson>,
    #[serde(rename = "R")]
    pub r: Vec<(usize, usize)>,
    #[serde(rename = "R_prime")]
    pub r_prime: Vec<(usize, usize)>,
    /// Ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind_flags: Option<KindFlagsJson>,
}

impl PairJson {
    pub fn from_pair(p: &StructurePair) -> Self {
        PairJson {
            lattice: Some(LatticeJson::from_lattice(p.lattice())),
            r: p.r().pairs(),
            r_prime: p.r_prime().pairs(),
            kind_flags: Some(p.kind_flags().into()),
        }
    }

    /// Uses the embedded lattice, else `fallback`.
    pub fn build(&self, fallback: Option<&Arc<FiniteLattice>>) -> Result<StructurePair> {
        let lattice = match (&self.lattice, fallback) {
            (Some(l), _) => Arc::new(l.build()?),
            (None, Some(l)) => Arc::clone(l),
            (None, None) => return Err(Error::Malformed("pair has no lattice".into())),
        };
        StructurePair::new(
            TransferSystem::from_pairs(lattice.clone(), &self.r)?,
            TransferSystem::from_pairs(lattice, &self.r_prime)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionJson {
    pub fn from_partition(p: &NoncrossingPartition) -> Self {
        PartitionJson { n: p.n(), blocks: p.blocks().to_vec() }
    }

    pub fn build(&self) -> Result<NoncrossingPartition> {
        NoncrossingPartition::new(self.n, &self.blocks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorJson {
    Blue,
    Green,
    Red,
}

impl From<Color> for ColorJson {
    fn from(c: Color) -> Self {
        match c {
            Color::Blue => ColorJson::Blue,
            Color::Green => ColorJson::Green,
            Color::Red => ColorJson::Red,
        }
    }
}

impl From<ColorJson> for Color {
    fn from(c: ColorJson) -> Self {
        match c {
            ColorJson::Blue => Color::Blue,
            ColorJson::Green => Color::Green,
            ColorJson::Red => Color::Red,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub m: usize,
    pub edges: Vec<(usize, usize, ColorJson)>,
}

impl TreeJson {
    pub fn from_tree(t: &TricoloredTree) -> Self {
        TreeJson { m: t.len(), edges: t.edges().into_iter().map(|(p, c, col)| (p, c, col.into())).collect() }
    }

    /// Node ids are kept as given; the tree is not relabeled.
    pub fn build(&self) -> Result<TricoloredTree> {
        let edges: Vec<_> = self.edges.iter().map(|&(p, c, col)| (p, c, col.into())).collect();
        TricoloredTree::from_edges(self.m, &edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexJson {
    Inner(usize),
    Outer(OuterJson),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OuterJson {
    #[serde(rename = "X_red")]
    Red,
    #[serde(rename = "X_blue")]
    Blue,
    #[serde(rename = "X_green")]
    Green,
}

impl From<Vertex> for VertexJson {
    fn from(v: Vertex) -> Self {
        match v {
            Vertex::Inner(i) => VertexJson::Inner(i),
            Vertex::Outer(Color::Red) => VertexJson::Outer(OuterJson::Red),
            Vertex::Outer(Color::Blue) => VertexJson::Outer(OuterJson::Blue),
            Vertex::Outer(Color::Green) => VertexJson::Outer(OuterJson::Green),
        }
    }
}

impl From<VertexJson> for Vertex {
    fn from(v: VertexJson) -> Self {
        match v {
            VertexJson::Inner(i) => Vertex::Inner(i),
            VertexJson::Outer(OuterJson::Red) => Vertex::Outer(Color::Red),
            VertexJson::Outer(OuterJson::Blue) => Vertex::Outer(Color::Blue),
            VertexJson::Outer(OuterJson::Green) => Vertex::Outer(Color::Green),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub insertions: Vec<[VertexJson; 3]>,
}

impl TriangulationJson {
    pub fn from_triangulation(s: &StackedTriangulation) -> Self {
        TriangulationJson { insertions: s.insertions().iter().map(|f| f.map(Into::into)).collect() }
    }

    pub fn build(&self) -> Result<StackedTriangulation> {
        let faces: Vec<[Vertex; 3]> = self.insertions.iter().map(|f| f.map(Into::into)).collect();
        StackedTriangulation::new(&faces)
    }
}

/// Any object of the wire formats, told apart by its keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireObject {
    Triangulation(TriangulationJson),
    Tree(TreeJson),
    Partition(PartitionJson),
    Pair(PairJson),
    Transfer(TransferJson),
    Lattice(LatticeJson),
}

impl WireObject {
    pub fn kind(&self) -> &'static str {
        match self {
            WireObject::Triangulation(_) => "triangulation",
            WireObject::Tree(_) => "tree",
            WireObject::Partition(_) => "partition",
            WireObject::Pair(_) => "pair",
            WireObject::Transfer(_) => "transfer",
            WireObject::Lattice(_) => "lattice",
        }
    }
}

pub fn parse(line: &str) -> Result<WireObject> {
    serde_json::from_str(line).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire types always serialize")
}
