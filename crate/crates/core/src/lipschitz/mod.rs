//! Budgeted slides: the integral completion rule, the split construction
//! run, and the any-tree approximation audit.

mod bound;
mod quadrature;
mod regime;
mod slide;

pub use bound::{any_tree_bound_audit, AnyTreeReport};
pub use quadrature::integrate;
pub use regime::{
    run_lipschitz_regime, split_no_completion, LipschitzRecord, LipschitzRun, SlideOutcome,
};
pub use slide::{
    budget_integral, completion_time, slide_cost, Carrier, SlideSchedule, QUADRATURE_TOL,
};
