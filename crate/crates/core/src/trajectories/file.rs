//! TOML scenario files.
//!
//! ```toml
//! format_version = 1
//! label = "cheb"
//! T = 1.0
//! k = 0.1
//! K = 1.0
//! morph_mode = "slide"
//!
//! [generator]
//! name = "chebyshev"
//! s = 3
//! n = 11
//! ```
//!
//! Instead of `[generator]` a file may list `[[points]]`, each a trajectory
//! table with a `motion` sub-table tagged by `kind`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::generators::{
    gen_appendix_rational, gen_chebyshev, gen_circle, gen_diamond_with, gen_split,
    gen_stationary, gen_unit_square_swap, DIAMOND_DEFAULT_DENSITY,
};
use super::scenario::{KineticScenario, MorphMode};
use super::trajectory::Motion;
use crate::error::{Error, Result};
use crate::random::{random_polynomial_scenario, seeded};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Chebyshev {
        s: usize,
        n: usize,
        #[serde(default = "unit_horizon", rename = "T")]
        horizon: f64,
    },
    AppendixRational { s: usize, n: usize },
    Circle {
        n: usize,
        #[serde(default = "default_chord")]
        e_len: f64,
    },
    Diamond {
        #[serde(default = "default_density")]
        points_per_side: usize,
    },
    Split { n: usize },
    UnitSquareSwap,
    Stationary {
        points: Vec<Vec<f64>>,
        #[serde(default = "unit_horizon", rename = "T")]
        horizon: f64,
    },
    /// Seeded unit-range polynomial motion.
    RandomPolynomial {
        n: usize,
        #[serde(default = "planar")]
        d: usize,
        s: usize,
        #[serde(default = "unit_horizon", rename = "T")]
        horizon: f64,
        seed: u64,
    },
}

fn planar() -> usize {
    2
}

fn unit_horizon() -> f64 {
    1.0
}

fn default_chord() -> f64 {
    0.1
}

fn default_density() -> usize {
    DIAMOND_DEFAULT_DENSITY
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<KineticScenario> {
        match *self {
            GeneratorSpec::Chebyshev { s, n, horizon } => gen_chebyshev(s, n, horizon),
            GeneratorSpec::AppendixRational { s, n } => gen_appendix_rational(s, n),
            GeneratorSpec::Circle { n, e_len } => gen_circle(n, e_len).map(|r| r.0),
            GeneratorSpec::Diamond { points_per_side } => gen_diamond_with(points_per_side).map(|r| r.0),
            GeneratorSpec::Split { n } => gen_split(n),
            GeneratorSpec::UnitSquareSwap => gen_unit_square_swap(),
            GeneratorSpec::Stationary { ref points, horizon } => gen_stationary(points, horizon),
            GeneratorSpec::RandomPolynomial { n, d, s, horizon, seed } => random_polynomial_scenario(
                &mut seeded(seed),
                format!("random_n{n}_s{s}_seed{seed}"),
                n,
                d,
                s,
                horizon,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub clamp_unit: bool,
    pub motion: Motion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, rename = "T", skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, rename = "K", skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morph_mode: Option<MorphMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointEntry>,
}

impl ScenarioFile {
    pub fn for_generator(spec: GeneratorSpec) -> Self {
        ScenarioFile {
            format_version: FORMAT_VERSION,
            label: None,
            n: None,
            d: None,
            horizon: None,
            k: None,
            lipschitz: None,
            morph_mode: None,
            generator: Some(spec),
            points: Vec::new(),
        }
    }

    pub fn into_scenario(self) -> Result<KineticScenario> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let mut sc = match (&self.generator, self.points.is_empty()) {
            (Some(g), true) => g.build()?,
            (None, false) => {
                let horizon = self
                    .horizon
                    .ok_or_else(|| Error::Format("explicit points need a horizon `T`".into()))?;
                let trajs = self
                    .points
                    .iter()
                    .map(|p| {
                        let mut t = super::trajectory::Trajectory::new(horizon, p.motion.clone())?;
                        t.clamp_unit = p.clamp_unit;
                        Ok(t)
                    })
                    .collect::<Result<Vec<_>>>()?;
                KineticScenario::new("scenario", trajs)?
            }
            (Some(_), false) => {
                return Err(Error::Format("give either `generator` or `points`, not both".into()))
            }
            (None, true) => return Err(Error::Format("no `generator` and no `points`".into())),
        };
        if let Some(n) = self.n {
            check_field("n", n as f64, sc.n() as f64)?;
        }
        if let Some(d) = self.d {
            check_field("d", d as f64, sc.dim() as f64)?;
        }
        if let Some(h) = self.horizon {
            check_field("T", h, sc.horizon())?;
        }
        if let Some(label) = self.label {
            sc.label = label;
        }
        if let Some(k) = self.k {
            sc.k = k;
        }
        if let Some(budget) = self.lipschitz {
            sc.lipschitz = budget;
        }
        if let Some(mode) = self.morph_mode {
            sc.morph_mode = mode;
        }
        Ok(sc)
    }
}

fn check_field(name: &str, declared: f64, actual: f64) -> Result<()> {
    if declared != actual {
        return Err(Error::Format(format!("`{name}` = {declared} but the scenario has {actual}")));
    }
    Ok(())
}

pub fn parse_scenario(text: &str) -> Result<KineticScenario> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_scenario()
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<KineticScenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

/// Serializes a generator call together with the regime parameters.
pub fn generator_to_toml(spec: &GeneratorSpec, sc: &KineticScenario) -> Result<String> {
    let mut file = ScenarioFile::for_generator(spec.clone());
    file.label = Some(sc.label.clone());
    file.k = Some(sc.k);
    file.lipschitz = Some(sc.lipschitz);
    file.morph_mode = Some(sc.morph_mode);
    toml::to_string(&file).map_err(|e| Error::Format(e.to_string()))
}

/// Serializes a scenario with its trajectories spelled out point by point.
pub fn scenario_to_toml(sc: &KineticScenario) -> Result<String> {
    let file = ScenarioFile {
        format_version: FORMAT_VERSION,
        label: Some(sc.label.clone()),
        n: Some(sc.n()),
        d: Some(sc.dim()),
        horizon: Some(sc.horizon()),
        k: Some(sc.k),
        lipschitz: Some(sc.lipschitz),
        morph_mode: Some(sc.morph_mode),
        generator: None,
        points: sc
            .points
            .iter()
            .map(|p| PointEntry { clamp_unit: p.clamp_unit, motion: p.motion.clone() })
            .collect(),
    };
    toml::to_string(&file).map_err(|e| Error::Format(e.to_string()))
}
