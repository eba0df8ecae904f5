//! Maintaining a k-optimal EMST: displacement-triggered recomputation,
//! spread, the additive approximation audit and a sampled stability ratio.

mod audit;
mod regime;
mod spread;

pub use audit::{
    approximation_audit, approximation_audit_with, estimate_stability_ratio, solution_distance,
    AuditReport, StabilityEstimate, AUDIT_TOL, SLIDE_DISTANCE_MAX_N,
};
pub use regime::{
    run_event_regime, run_recompute_always, EventRecord, EventTrace, EventType, MaintenanceState,
    NORMALIZATION_TOL,
};
pub use spread::{greedy_thinning, spread, thinning_lower_bound, SpreadReport, ThinningReport};
