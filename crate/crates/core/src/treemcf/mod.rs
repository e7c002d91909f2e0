//! Tree representation of minimum cuts and edge-disjoint path packing on
//! trees.

mod matching;
mod packing;
mod representation;
mod tree;

pub use matching::{max_weight_matching, Matching};
pub use packing::{solve_tree_mcf, DpTable, PackingSolution, PathPackingInstance, TreePath};
pub use representation::{build_tree_representation, TreeRepresentation};
pub use tree::Tree;
