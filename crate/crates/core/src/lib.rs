//! Weak factorization systems on finite lattices, through their right
//! classes (transfer systems), and the premodel, composition closed, model
//! and compatible structures built from pairs of them.
//!
//! On a chain `[n]` the crate also realizes the bijections with noncrossing
//! partitions, tricolored trees and stacked triangulations.

pub mod bitmat;
pub mod counts;
pub mod error;
pub mod json;
pub mod kreweras;
pub mod lattice;
pub mod orders;
pub mod transfer;
pub mod trees;

pub use bitmat::BitMatrix;
pub use error::{Error, Result};
pub use lattice::{
    boolean_lattice, build_lattice, chain, divisor_lattice, intervals, is_lattice_poset,
    FiniteLattice, Interval, PosetRelation,
};
pub use transfer::{
    enumerate_transfer_systems, factorize, is_transfer_system, left_class, pi_map, theta_map,
    transfer_closure, weak_equivalences, MorphismClass, TransferSystem,
};
pub use counts::{closed_form_count, closed_form_rational, density_ratios};
pub use orders::{
    cc_by_splitting, cc_by_weak_closure, cc_join, enumerate_structures, is_cc_pair,
    is_compatible_pair, is_model_pair, order_poset, weak_equivalence_classes, KindFlags,
    OrderKind, PairKind, PairRecord, StructurePair, SystemCatalog,
};
pub use kreweras::{
    enumerate_partitions, is_noncrossing, kreweras_leq, partition_of, transfer_of,
    NoncrossingPartition,
};
pub use trees::{
    admissible_order, blue_green_swap, enumerate_trees, is_model_tree, pair_to_tree, swap_colors,
    tree_to_pair, tree_to_triangulation, triangulation_to_tree, weak_classes, Color,
    StackedTriangulation, TricoloredTree, Vertex,
};
