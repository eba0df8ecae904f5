//! Kinetic Euclidean minimum spanning trees: event, topological and
//! Lipschitz maintenance regimes and the constructions that stress them.

// `!(x > 0.0)` is used on purpose so NaN parameters are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod event_stability;
pub mod lipschitz;
pub mod morph;
pub mod random;
pub mod spanning;
pub mod trajectories;

pub use error::{Error, Result};
