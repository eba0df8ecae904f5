//! Spanning trees over point indices and exact EMST computation.

mod config;
mod mst;
mod prufer;
mod tree;

pub use config::PointConfig;
pub use mst::{emst, emst_length, tree_length};
pub(crate) use mst::edges_length;
pub use prufer::{enumerate_spanning_trees, prufer_decode, random_tree, MAX_ENUMERATION_N};
pub use tree::{fundamental_cycle, two_coloring, Color, Edge, SpanningTree};
