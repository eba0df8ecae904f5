//! Edge slides and rotations, swap morph planning, the exact flip oracle,
//! and the topological maintenance regime.

mod diamond;
mod flip;
mod oracle;
mod planner;
mod topo;

pub use diamond::{
    classify_connector, classify_edge, diamond_certificate, diamond_emst_length, diamond_threshold,
    Connector, DiamondCertificate,
};
pub use flip::{apply_rotation, apply_slide, flip_distance, slide_distance, FlipGraph};
pub use oracle::{minimax_flip_oracle, static_bottleneck, OracleResult, DEFAULT_N_LIMIT};
pub use planner::{
    plan_morph, plan_rotation_morph, plan_slide_morph, MorphPlan, MorphStep, SwapEvent,
};
pub use topo::{decompose_swaps, run_topo_regime, TopoRecord, TopoRecordKind, TopoTrace};
