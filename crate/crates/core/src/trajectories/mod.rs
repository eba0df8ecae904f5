//! Point motions, the input metric and displacement events, and the scenario
//! generators.

mod file;
mod generators;
mod poly;
mod scenario;
mod trajectory;

pub use file::{
    generator_to_toml, load_scenario, parse_scenario, scenario_to_toml, GeneratorSpec, ScenarioFile,
    FORMAT_VERSION,
};
pub use generators::{
    chebyshev_trajectory, gen_appendix_rational, gen_chebyshev, gen_circle, gen_diamond,
    gen_diamond_with, gen_split, gen_stationary, gen_unit_square_swap, rational_bump_center,
    recolor, DiamondGeometry, DIAMOND_DEFAULT_DENSITY,
};
pub use poly::{chebyshev_coeffs, Poly};
pub(crate) use poly::bisect;
pub use scenario::{Construction, KineticScenario, MorphMode, DISPLACEMENT_SLACK, EVENT_GRID};
pub use trajectory::{Motion, RationalSum, RationalTerm, Segment, Trajectory};
