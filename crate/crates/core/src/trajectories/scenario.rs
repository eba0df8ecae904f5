use serde::{Deserialize, Serialize};

use super::poly::{bisect, Poly};
use super::trajectory::{Motion, Trajectory};
use crate::error::{param, Error, Result};
use crate::spanning::PointConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MorphMode {
    #[default]
    Slide,
    Rotation,
}

impl std::str::FromStr for MorphMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slide" => Ok(MorphMode::Slide),
            "rotation" | "rotate" => Ok(MorphMode::Rotation),
            other => Err(param(format!("unknown morph mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for MorphMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MorphMode::Slide => "slide",
            MorphMode::Rotation => "rotation",
        })
    }
}

/// Which lower-bound construction produced a scenario, with the data the
/// regimes need to interpret it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Construction {
    Chebyshev { s: usize },
    AppendixRational { s: usize },
    Circle { e_len: f64, t_mid: f64, radius: f64 },
    Diamond { points_per_side: usize, t_crit: f64 },
    /// `true` = red (moves left), `false` = blue (moves right).
    Split { red: Vec<bool> },
}

/// `n` trajectories over a common horizon plus the regime parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KineticScenario {
    pub label: String,
    pub points: Vec<Trajectory>,
    /// Displacement budget of the event regime.
    pub k: f64,
    /// Lipschitz budget of the slide regime.
    #[serde(rename = "K")]
    pub lipschitz: f64,
    #[serde(default)]
    pub morph_mode: MorphMode,
    #[serde(default)]
    pub construction: Option<Construction>,
}

/// Slack on the displacement test: a displacement that peaks at
/// `k - DISPLACEMENT_SLACK` or more counts as having reached `k`.
pub const DISPLACEMENT_SLACK: f64 = 1e-12;

/// Sample count of the bracketing grid used for non-polynomial motion.
pub const EVENT_GRID: usize = 2048;

impl KineticScenario {
    pub fn new(label: impl Into<String>, points: Vec<Trajectory>) -> Result<Self> {
        let sc = KineticScenario {
            label: label.into(),
            points,
            k: 0.1,
            lipschitz: 1.0,
            morph_mode: MorphMode::Slide,
            construction: None,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn with_lipschitz(mut self, budget: f64) -> Self {
        self.lipschitz = budget;
        self
    }

    pub fn with_construction(mut self, c: Construction) -> Self {
        self.construction = Some(c);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(param(format!("scenario needs n >= 2 points, got {}", self.points.len())));
        }
        let d = self.points[0].dim();
        let horizon = self.points[0].horizon;
        for (i, p) in self.points.iter().enumerate() {
            p.validate()?;
            if p.dim() != d {
                return Err(param(format!("point {i} has dimension {} != {d}", p.dim())));
            }
            if p.horizon != horizon {
                return Err(param(format!("point {i} has horizon {} != {horizon}", p.horizon)));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn horizon(&self) -> f64 {
        self.points[0].horizon
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.horizon()).contains(&t) {
            Ok(())
        } else {
            Err(Error::Domain { t, horizon: self.horizon() })
        }
    }

    /// Snapshot of all positions at time `t`.
    pub fn config_at(&self, t: f64) -> Result<PointConfig> {
        self.check_time(t)?;
        Ok(self.config_unchecked(t))
    }

    pub(crate) fn config_unchecked(&self, t: f64) -> PointConfig {
        let d = self.dim();
        let mut coords = vec![0.0; d * self.n()];
        for (chunk, p) in coords.chunks_mut(d).zip(&self.points) {
            p.position_into(t, chunk);
        }
        PointConfig::from_flat(d, coords)
    }

    /// `max_i ||x_i(t) - x_i(t')||`.
    pub fn input_distance(&self, t: f64, t2: f64) -> Result<f64> {
        self.check_time(t)?;
        self.check_time(t2)?;
        Ok(self.config_unchecked(t).max_displacement(&self.config_unchecked(t2)))
    }

    /// True when every coordinate stays in `[0, 1]` (within `tol`) on a dense grid.
    pub fn is_unit_normalized(&self, tol: f64) -> bool {
        let samples = 1024;
        let horizon = self.horizon();
        (0..=samples).all(|j| {
            let cfg = self.config_unchecked(horizon * j as f64 / samples as f64);
            cfg.coords().iter().all(|&c| (-tol..=1.0 + tol).contains(&c))
        })
    }

    /// Earliest `t > t_ref` at which some point has moved distance `k` away
    /// from its position at `t_ref`. An event exactly at the horizon counts.
    pub fn next_displacement_event(&self, t_ref: f64, k: f64) -> Result<Option<f64>> {
        if !(k > 0.0) {
            return Err(param(format!("displacement budget k must be positive, got {k}")));
        }
        self.check_time(t_ref)?;
        let horizon = self.horizon();
        if t_ref >= horizon {
            return Ok(None);
        }
        let mut best: Option<f64> = None;
        for p in &self.points {
            let limit = best.unwrap_or(horizon);
            let hit = match &p.motion {
                Motion::Polynomial { coords } if !p.clamp_unit => {
                    polynomial_event(coords, t_ref, limit, k)
                }
                _ => sampled_event(p, t_ref, limit, horizon, k),
            };
            if let Some(t) = hit {
                best = Some(best.map_or(t, |b: f64| b.min(t)));
            }
        }
        Ok(best)
    }
}

/// Squared displacements: `(exact, touch)`. Crossings are located at exactly
/// `k`, so reference positions do not drift from event to event; a local
/// maximum that only reaches `k - DISPLACEMENT_SLACK` still counts as a touch.
fn thresholds(k: f64) -> (f64, f64) {
    let kk = k - DISPLACEMENT_SLACK;
    (k * k, kk * kk)
}

/// Root isolation on the squared displacement `Σ_j (x_j(t) - x_j(t_ref))²`,
/// a polynomial of degree at most `2s`.
fn polynomial_event(coords: &[Poly], t_ref: f64, limit: f64, k: f64) -> Option<f64> {
    let mut sq = Poly::with_origin(vec![0.0], t_ref);
    for p in coords {
        let mut diff = p.shifted(t_ref);
        diff.coeffs[0] = 0.0;
        sq = sq.add(&diff.mul(&diff));
    }
    if sq.is_zero() {
        return None;
    }
    let (exact, touch) = thresholds(k);
    let mut knots = vec![t_ref];
    knots.extend(sq.critical_points_in(t_ref, limit));
    knots.push(limit);
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let top = sq.eval(hi);
        if top >= exact {
            // sq is monotone on [lo, hi] and below the touch level at lo.
            return Some(bisect(|t| sq.eval(t) >= exact, lo, hi));
        }
        if top >= touch {
            return Some(hi);
        }
    }
    None
}

/// Grid bracketing followed by bisection, for rational and scripted motion.
fn sampled_event(p: &Trajectory, t_ref: f64, limit: f64, horizon: f64, k: f64) -> Option<f64> {
    let d = p.dim();
    let mut origin = vec![0.0; d];
    p.position_into(t_ref, &mut origin);
    let (exact, touch) = thresholds(k);
    let mut buf = vec![0.0; d];
    let mut sq_at = |t: f64| {
        p.position_into(t, &mut buf);
        buf.iter().zip(&origin).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    };
    let step = (horizon - t_ref) / EVENT_GRID as f64;
    let mut prev = t_ref;
    for j in 1..=EVENT_GRID {
        let t = if j == EVENT_GRID { horizon } else { t_ref + step * j as f64 };
        let t = t.min(limit);
        let sq = sq_at(t);
        if sq >= touch {
            let level = if sq >= exact { exact } else { touch };
            return Some(bisect(|x| sq_at(x) >= level, prev, t));
        }
        if t >= limit {
            break;
        }
        prev = t;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn linear_pair() -> KineticScenario {
        KineticScenario::new(
            "pair",
            vec![
                Trajectory::polynomial(1.0, vec![Poly::new(vec![0.0, 1.0])]).unwrap(),
                Trajectory::stationary(1.0, &[0.5]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn input_distance_single_mover() {
        let sc = linear_pair();
        assert_abs_diff_eq!(sc.input_distance(0.0, 0.3).unwrap(), 0.3, epsilon = 1e-15);
        assert_eq!(sc.input_distance(0.4, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn unit_speed_event() {
        let sc = linear_pair();
        let t = sc.next_displacement_event(0.0, 0.25).unwrap().unwrap();
        assert_abs_diff_eq!(t, 0.25, epsilon = 1e-9);
        assert!(sc.next_displacement_event(0.0, 2.0).unwrap().is_none());
        assert!(matches!(sc.next_displacement_event(0.0, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(sc.next_displacement_event(0.0, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn boundary_event_counts() {
        let sc = linear_pair();
        let t = sc.next_displacement_event(0.75, 0.25).unwrap().unwrap();
        assert_abs_diff_eq!(t, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn scripted_event_matches_polynomial() {
        let sc = KineticScenario::new(
            "scripted",
            vec![
                Trajectory::linear(1.0, vec![0.0], vec![1.0]).unwrap(),
                Trajectory::stationary(1.0, &[0.5]).unwrap(),
            ],
        )
        .unwrap();
        let t = sc.next_displacement_event(0.1, 0.3).unwrap().unwrap();
        assert_abs_diff_eq!(t, 0.4, epsilon = 1e-9);
    }

    #[test]
    fn stationary_has_no_events() {
        let sc = KineticScenario::new(
            "still",
            vec![
                Trajectory::stationary(1.0, &[0.2, 0.2]).unwrap(),
                Trajectory::stationary(1.0, &[0.7, 0.1]).unwrap(),
            ],
        )
        .unwrap();
        assert!(sc.next_displacement_event(0.0, 0.01).unwrap().is_none());
        assert_eq!(sc.input_distance(0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_points_rejected() {
        let r = KineticScenario::new(
            "bad",
            vec![
                Trajectory::stationary(1.0, &[0.2, 0.2]).unwrap(),
                Trajectory::stationary(2.0, &[0.7, 0.1]).unwrap(),
            ],
        );
        assert!(r.is_err());
        assert!(KineticScenario::new("one", vec![Trajectory::stationary(1.0, &[0.0]).unwrap()]).is_err());
    }
}
