use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{param, Error, Result};

/// Sum of rational terms `Σ num_j(t) / den_j(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalSum {
    pub terms: Vec<RationalTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalTerm {
    pub num: Poly,
    pub den: Poly,
}

impl RationalSum {
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|r| r.num.eval(t) / r.den.eval(t)).sum()
    }
}

/// One piece of a scripted motion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Segment {
    Linear {
        t0: f64,
        t1: f64,
        from: Vec<f64>,
        to: Vec<f64>,
    },
    /// Constant angular speed along a circle in the plane.
    Arc {
        t0: f64,
        t1: f64,
        center: [f64; 2],
        radius: f64,
        angle0: f64,
        angle1: f64,
    },
}

impl Segment {
    pub fn span(&self) -> (f64, f64) {
        match *self {
            Segment::Linear { t0, t1, .. } | Segment::Arc { t0, t1, .. } => (t0, t1),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Segment::Linear { from, .. } => from.len(),
            Segment::Arc { .. } => 2,
        }
    }

    fn position_into(&self, t: f64, out: &mut [f64]) {
        let (t0, t1) = self.span();
        let u = if t1 > t0 { ((t - t0) / (t1 - t0)).clamp(0.0, 1.0) } else { 1.0 };
        match self {
            Segment::Linear { from, to, .. } => {
                for ((o, a), b) in out.iter_mut().zip(from).zip(to) {
                    *o = a + (b - a) * u;
                }
            }
            Segment::Arc { center, radius, angle0, angle1, .. } => {
                let phi = angle0 + (angle1 - angle0) * u;
                out[0] = center[0] + radius * phi.cos();
                out[1] = center[1] + radius * phi.sin();
            }
        }
    }

    fn endpoint(&self, at_start: bool) -> Vec<f64> {
        let mut p = vec![0.0; self.dim()];
        let (t0, t1) = self.span();
        self.position_into(if at_start { t0 } else { t1 }, &mut p);
        p
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Motion {
    Polynomial { coords: Vec<Poly> },
    Rational { coords: Vec<RationalSum> },
    Scripted { segments: Vec<Segment> },
}

/// The motion `x_i : [0, T] -> R^d` of a single point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub horizon: f64,
    /// Clamp every coordinate to `[0, 1]` after evaluation.
    #[serde(default)]
    pub clamp_unit: bool,
    pub motion: Motion,
}

const CONTINUITY_TOL: f64 = 1e-9;

impl Trajectory {
    pub fn new(horizon: f64, motion: Motion) -> Result<Self> {
        let traj = Trajectory { horizon, clamp_unit: false, motion };
        traj.validate()?;
        Ok(traj)
    }

    pub fn polynomial(horizon: f64, coords: Vec<Poly>) -> Result<Self> {
        Self::new(horizon, Motion::Polynomial { coords })
    }

    pub fn stationary(horizon: f64, at: &[f64]) -> Result<Self> {
        Self::polynomial(horizon, at.iter().map(|&c| Poly::constant(c)).collect())
    }

    /// Straight line from `from` to `to` over the whole horizon.
    pub fn linear(horizon: f64, from: Vec<f64>, to: Vec<f64>) -> Result<Self> {
        Self::scripted(horizon, vec![Segment::Linear { t0: 0.0, t1: horizon, from, to }])
    }

    pub fn scripted(horizon: f64, segments: Vec<Segment>) -> Result<Self> {
        Self::new(horizon, Motion::Scripted { segments })
    }

    pub fn with_unit_clamp(mut self) -> Self {
        self.clamp_unit = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let horizon = self.horizon;
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(param(format!("horizon must be positive, got {horizon}")));
        }
        match &self.motion {
            Motion::Polynomial { coords } => {
                if coords.is_empty() {
                    return Err(param("polynomial trajectory needs at least one coordinate"));
                }
                if coords.iter().flat_map(|p| &p.coeffs).any(|c| !c.is_finite()) {
                    return Err(param("non-finite polynomial coefficient"));
                }
            }
            Motion::Rational { coords } => {
                if coords.is_empty() {
                    return Err(param("rational trajectory needs at least one coordinate"));
                }
                for term in coords.iter().flat_map(|c| &c.terms) {
                    if term.den.is_zero()
                        || term.den.eval(0.0) == 0.0
                        || !term.den.real_roots_in(0.0, horizon).is_empty()
                    {
                        return Err(param("rational denominator vanishes on [0, T]"));
                    }
                }
            }
            Motion::Scripted { segments } => validate_segments(segments, horizon)?,
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match &self.motion {
            Motion::Polynomial { coords } => coords.len(),
            Motion::Rational { coords } => coords.len(),
            Motion::Scripted { segments } => segments[0].dim(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.motion, Motion::Polynomial { .. })
    }

    pub fn max_degree(&self) -> Option<usize> {
        match &self.motion {
            Motion::Polynomial { coords } => coords.iter().map(Poly::degree).max(),
            _ => None,
        }
    }

    /// Position at time `t`; errors outside `[0, T]`.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        if !(0.0..=self.horizon).contains(&t) {
            return Err(Error::Domain { t, horizon: self.horizon });
        }
        let mut out = vec![0.0; self.dim()];
        self.position_into(t, &mut out);
        Ok(out)
    }

    /// Unchecked evaluation; `t` is clamped into the horizon.
    pub(crate) fn position_into(&self, t: f64, out: &mut [f64]) {
        let t = t.clamp(0.0, self.horizon);
        match &self.motion {
            Motion::Polynomial { coords } => {
                for (o, p) in out.iter_mut().zip(coords) {
                    *o = p.eval(t);
                }
            }
            Motion::Rational { coords } => {
                for (o, r) in out.iter_mut().zip(coords) {
                    *o = r.eval(t);
                }
            }
            Motion::Scripted { segments } => {
                let idx = segments
                    .iter()
                    .position(|s| t <= s.span().1)
                    .unwrap_or(segments.len() - 1);
                segments[idx].position_into(t, out);
            }
        }
        if self.clamp_unit {
            for o in out.iter_mut() {
                *o = o.clamp(0.0, 1.0);
            }
        }
    }

    /// Largest `|h'(t)|` over `[0, T]` and over coordinates.
    ///
    /// The extremum of `|h'|` sits at an endpoint or at a critical point of
    /// `h'`, so the candidates are the endpoints plus the isolated roots of `h''`.
    pub fn max_speed(&self) -> Result<f64> {
        let Motion::Polynomial { coords } = &self.motion else {
            return Err(Error::Unsupported(
                "max_speed is defined for polynomial trajectories only".into(),
            ));
        };
        let mut best: f64 = 0.0;
        for p in coords {
            let d1 = p.derivative();
            let mut candidates = vec![0.0, self.horizon];
            candidates.extend(d1.critical_points_in(0.0, self.horizon));
            for t in candidates {
                best = best.max(d1.eval(t).abs());
            }
        }
        Ok(best)
    }

    /// Number of maximal monotone pieces of one polynomial coordinate on `[0, T]`,
    /// counted from sign changes of the derivative.
    pub fn monotone_sweeps(&self, coord: usize) -> Result<usize> {
        let Motion::Polynomial { coords } = &self.motion else {
            return Err(Error::Unsupported("sweep count needs a polynomial trajectory".into()));
        };
        let p = coords
            .get(coord)
            .ok_or_else(|| param(format!("coordinate {coord} out of range")))?;
        let d1 = p.derivative();
        if d1.is_zero() {
            return Ok(0);
        }
        let mut knots = vec![0.0];
        knots.extend(d1.real_roots_in(0.0, self.horizon));
        knots.push(self.horizon);
        knots.dedup();
        let signs: Vec<bool> = knots
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| d1.eval(0.5 * (w[0] + w[1])) > 0.0)
            .collect();
        Ok(1 + signs.windows(2).filter(|w| w[0] != w[1]).count())
    }
}

fn validate_segments(segments: &[Segment], horizon: f64) -> Result<()> {
    let first = segments
        .first()
        .ok_or_else(|| param("scripted trajectory has no segments"))?;
    let dim = first.dim();
    let tol = CONTINUITY_TOL * horizon.max(1.0);
    if first.span().0.abs() > tol {
        return Err(param("scripted segments must start at t = 0"));
    }
    if (segments.last().unwrap().span().1 - horizon).abs() > tol {
        return Err(param("scripted segments must end at the horizon"));
    }
    for s in segments {
        let (t0, t1) = s.span();
        if !(t1 > t0) {
            return Err(param(format!("empty or reversed segment [{t0}, {t1}]")));
        }
        if s.dim() != dim {
            return Err(param("scripted segments disagree on dimension"));
        }
        if let Segment::Linear { from, to, .. } = s {
            if from.len() != to.len() {
                return Err(param("linear segment endpoints disagree on dimension"));
            }
        }
    }
    for w in segments.windows(2) {
        if (w[0].span().1 - w[1].span().0).abs() > tol {
            return Err(param("scripted segments leave a gap or overlap"));
        }
        let a = w[0].endpoint(false);
        let b = w[1].endpoint(true);
        if a.iter().zip(&b).any(|(x, y)| (x - y).abs() > CONTINUITY_TOL) {
            return Err(param("scripted trajectory is discontinuous"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn stationary_and_linear() {
        let s = Trajectory::stationary(3.0, &[0.5]).unwrap();
        assert_eq!(s.evaluate(2.2).unwrap(), vec![0.5]);
        let l = Trajectory::linear(1.0, vec![0.0], vec![1.0]).unwrap();
        assert_abs_diff_eq!(l.evaluate(0.25).unwrap()[0], 0.25);
    }

    #[test]
    fn domain_error_outside_horizon() {
        let l = Trajectory::linear(1.0, vec![0.0], vec![1.0]).unwrap();
        assert!(matches!(l.evaluate(1.5), Err(Error::Domain { .. })));
        assert!(matches!(l.evaluate(-0.1), Err(Error::Domain { .. })));
    }

    #[test]
    fn segments_must_tile() {
        let gap = vec![
            Segment::Linear { t0: 0.0, t1: 0.4, from: vec![0.0], to: vec![0.4] },
            Segment::Linear { t0: 0.5, t1: 1.0, from: vec![0.4], to: vec![1.0] },
        ];
        assert!(Trajectory::scripted(1.0, gap).is_err());
        let jump = vec![
            Segment::Linear { t0: 0.0, t1: 0.5, from: vec![0.0], to: vec![0.4] },
            Segment::Linear { t0: 0.5, t1: 1.0, from: vec![0.6], to: vec![1.0] },
        ];
        assert!(Trajectory::scripted(1.0, jump).is_err());
    }

    #[test]
    fn arc_motion() {
        let arc = Segment::Arc {
            t0: 0.0,
            t1: 1.0,
            center: [0.0, 0.0],
            radius: 2.0,
            angle0: 0.0,
            angle1: std::f64::consts::PI,
        };
        let tr = Trajectory::scripted(1.0, vec![arc]).unwrap();
        let p = tr.evaluate(0.5).unwrap();
        assert_abs_diff_eq!(p[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn rational_denominator_roots_rejected() {
        let bad = RationalSum {
            terms: vec![RationalTerm { num: Poly::constant(1.0), den: Poly::new(vec![-0.5, 1.0]) }],
        };
        assert!(Trajectory::new(1.0, Motion::Rational { coords: vec![bad] }).is_err());
    }

    #[test]
    fn max_speed_rejects_scripted() {
        let l = Trajectory::linear(1.0, vec![0.0], vec![1.0]).unwrap();
        assert!(matches!(l.max_speed(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn max_speed_simple() {
        assert_eq!(Trajectory::stationary(1.0, &[0.3]).unwrap().max_speed().unwrap(), 0.0);
        let lin = Trajectory::polynomial(1.0, vec![Poly::new(vec![0.0, 1.0])]).unwrap();
        assert_abs_diff_eq!(lin.max_speed().unwrap(), 1.0);
    }
}
