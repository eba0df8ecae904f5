use super::quadrature::integrate;
use crate::error::{param, Result};

pub const QUADRATURE_TOL: f64 = 1e-10;

/// Length of a carrier edge over time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    /// Endpoints moving together.
    Constant(f64),
    /// Endpoints separating at unit relative speed: `sqrt(x² + t²)`.
    Hyperbolic { x: f64 },
}

impl Carrier {
    pub fn length(&self, t: f64) -> f64 {
        match *self {
            Carrier::Constant(len) => len,
            Carrier::Hyperbolic { x } => x.hypot(t),
        }
    }

    /// `∫_{t0}^{t1} dt / L(t)`.
    pub fn inverse_integral(&self, t0: f64, t1: f64) -> f64 {
        match *self {
            Carrier::Constant(len) => (t1 - t0) / len,
            Carrier::Hyperbolic { x } => (t1 / x).asinh() - (t0 / x).asinh(),
        }
    }

    /// Time at which `budget * ∫_{t0}^{t} dt / L = 1`.
    pub fn completion(&self, budget: f64, t0: f64) -> f64 {
        match *self {
            Carrier::Constant(len) => t0 + len / budget,
            Carrier::Hyperbolic { x } => x * ((t0 / x).asinh() + 1.0 / budget).sinh(),
        }
    }
}

/// Earliest `t*` with `K ∫_{t0}^{t*} dt / sqrt(x² + t²) = 1`, or `None` if
/// that lies beyond `horizon`.
pub fn completion_time(x: f64, budget: f64, t0: f64, horizon: f64) -> Result<Option<f64>> {
    if !(x > 0.0) {
        return Err(param(format!("carrier span must be positive, got {x}")));
    }
    if !(budget > 0.0) {
        return Err(param(format!("budget K must be positive, got {budget}")));
    }
    let t = Carrier::Hyperbolic { x }.completion(budget, t0);
    Ok((t <= horizon).then_some(t))
}

/// `K ∫_{t0}^{t1} dt / L(t)` for an arbitrary carrier, by quadrature.
pub fn budget_integral(budget: f64, length: impl Fn(f64) -> f64, t0: f64, t1: f64) -> f64 {
    budget * integrate(|t| 1.0 / length(t), t0, t1, QUADRATURE_TOL)
}

/// One slide of edge `(kept, from)` to `(kept, to)` along carrier `(from, to)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlideSchedule {
    pub kept: usize,
    pub from: usize,
    pub to: usize,
    pub start: f64,
    pub budget: f64,
    pub carrier: Carrier,
}

impl SlideSchedule {
    /// Relative position along the carrier, moving at full budget speed.
    pub fn progress(&self, t: f64) -> f64 {
        if t <= self.start {
            return 0.0;
        }
        (self.budget * self.carrier.inverse_integral(self.start, t)).min(1.0)
    }

    pub fn completion(&self) -> f64 {
        self.carrier.completion(self.budget, self.start)
    }
}

/// Slide-metric cost `∫ p'(t) L(t) dt` of a piecewise-linear progress
/// schedule given as `(time, position)` knots.
pub fn slide_cost(knots: &[(f64, f64)], length: impl Fn(f64) -> f64) -> f64 {
    knots
        .windows(2)
        .map(|w| {
            let ((t0, p0), (t1, p1)) = (w[0], w[1]);
            if t1 <= t0 {
                return (p1 - p0).abs() * length(t0);
            }
            let rate = (p1 - p0).abs() / (t1 - t0);
            rate * integrate(&length, t0, t1, QUADRATURE_TOL)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_examples() {
        let t = completion_time(1.0, 2.0, 0.0, 1.0).unwrap().unwrap();
        assert_abs_diff_eq!(t, 0.5f64.sinh(), epsilon = 1e-15);
        let n = 16.0;
        let k = 0.9 / (1.0f64 / (1.0 / n)).asinh();
        assert!(completion_time(1.0 / n, k, 0.0, 1.0).unwrap().is_none());
        assert!(completion_time(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(completion_time(1.0, -1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn schedule_progress() {
        let s = SlideSchedule {
            kept: 0,
            from: 1,
            to: 2,
            start: 0.2,
            budget: 3.0,
            carrier: Carrier::Hyperbolic { x: 0.5 },
        };
        assert_eq!(s.progress(0.1), 0.0);
        let tc = s.completion();
        assert_abs_diff_eq!(s.progress(tc), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(budget_integral(3.0, |t| 0.5f64.hypot(t), 0.2, tc), 1.0, epsilon = 1e-9);
    }
}
