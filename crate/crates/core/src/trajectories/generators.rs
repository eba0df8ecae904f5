//! Scenario families: Chebyshev sweeps, rational bumps, the circle and
//! diamond swap constructions, and the red/blue split.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use super::poly::{chebyshev_coeffs, Poly};
use super::scenario::{Construction, KineticScenario};
use super::trajectory::{Motion, RationalSum, RationalTerm, Segment, Trajectory};
use crate::error::{param, Result};
use crate::spanning::Color;

/// Degree-`s` Chebyshev polynomial mapped to range `[0, 1]` on `[0, horizon]`.
pub fn chebyshev_trajectory(s: usize, horizon: f64) -> Result<Trajectory> {
    // y = (t - T/2) * 2/T, h = (T_s(y) + 1) / 2
    let scale = 2.0 / horizon;
    let mut coeffs: Vec<f64> = chebyshev_coeffs(s)
        .iter()
        .enumerate()
        .map(|(k, c)| 0.5 * c * scale.powi(k as i32))
        .collect();
    coeffs[0] += 0.5;
    Trajectory::polynomial(horizon, vec![Poly::with_origin(coeffs, 0.5 * horizon)])
}

/// Point 0 sweeps a degree-`s` Chebyshev curve; the other `n - 1` points sit
/// at the midpoints of `n - 1` equal cells of `[0, 1]`.
pub fn gen_chebyshev(s: usize, n: usize, horizon: f64) -> Result<KineticScenario> {
    if s == 0 {
        return Err(param("chebyshev degree must be >= 1"));
    }
    if n < 2 {
        return Err(param(format!("chebyshev scenario needs n >= 2, got {n}")));
    }
    if !(horizon > 0.0) {
        return Err(param(format!("horizon must be positive, got {horizon}")));
    }
    let mut points = vec![chebyshev_trajectory(s, horizon)?];
    let m = (n - 1) as f64;
    for j in 0..n - 1 {
        points.push(Trajectory::stationary(horizon, &[(j as f64 + 0.5) / m])?);
    }
    Ok(KineticScenario::new(format!("chebyshev_s{s}_n{n}"), points)?
        .with_construction(Construction::Chebyshev { s }))
}

/// Centre of bump `j` of mover `i` in the rational family.
pub fn rational_bump_center(i: usize, j: usize, s: usize) -> f64 {
    10.0 * j as f64 + 10.0 * (i * s / 4) as f64
}

/// `n / 2` movers, each a sum of `s/4 + 1` bumps `1 / ((t - c)^4 + 1)`, plus
/// `n / 2` stationary points. Coordinates are clamped to `[0, 1]`.
pub fn gen_appendix_rational(s: usize, n: usize) -> Result<KineticScenario> {
    if s == 0 || !s.is_multiple_of(4) {
        return Err(param(format!("rational family needs s divisible by 4, got {s}")));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(param(format!("rational family needs an even n >= 2, got {n}")));
    }
    let movers = n / 2;
    let horizon = rational_bump_center(movers - 1, s / 4, s) + 10.0;
    let mut points = Vec::with_capacity(n);
    for i in 0..movers {
        let terms = (0..=s / 4)
            .map(|j| RationalTerm {
                num: Poly::constant(1.0),
                den: Poly::with_origin(vec![1.0, 0.0, 0.0, 0.0, 1.0], rational_bump_center(i, j, s)),
            })
            .collect();
        let motion = Motion::Rational { coords: vec![RationalSum { terms }] };
        points.push(Trajectory::new(horizon, motion)?.with_unit_clamp());
    }
    for j in 0..movers {
        points.push(Trajectory::stationary(horizon, &[(j as f64 + 0.5) / movers as f64])?);
    }
    Ok(KineticScenario::new(format!("rational_s{s}_n{n}"), points)?
        .with_construction(Construction::AppendixRational { s }))
}

/// Points start on the two endpoints of a short chord `e` at the top of the
/// unit circle, fan out in both directions until evenly spaced at `t = 1`,
/// then gather on the mirrored chord `e'` at the bottom by `t = 2`.
///
/// Returns the scenario and the time of even spacing.
pub fn gen_circle(n: usize, e_len: f64) -> Result<(KineticScenario, f64)> {
    if n < 5 {
        return Err(param(format!("circle construction needs n >= 5, got {n}")));
    }
    if !(e_len > 0.0 && e_len < 2.0) {
        return Err(param(format!("chord length must lie in (0, 2), got {e_len}")));
    }
    let (radius, t_mid, horizon) = (1.0, 1.0, 2.0);
    let half = asin_half(e_len);
    let ccw = n.div_ceil(2);
    let arc = |a0: f64, a1: f64, t0: f64, t1: f64| Segment::Arc {
        t0,
        t1,
        center: [0.0, 0.0],
        radius,
        angle0: a0,
        angle1: a1,
    };
    let mut points = Vec::with_capacity(n);
    for j in 0..n {
        let spread = FRAC_PI_2 + PI / n as f64 + j as f64 * 2.0 * PI / n as f64;
        let (start, mid, end) = if j < ccw {
            (FRAC_PI_2 + half, spread, 3.0 * FRAC_PI_2 - half)
        } else {
            (FRAC_PI_2 - half, spread - 2.0 * PI, -FRAC_PI_2 + half)
        };
        points.push(Trajectory::scripted(
            horizon,
            vec![arc(start, mid, 0.0, t_mid), arc(mid, end, t_mid, horizon)],
        )?);
    }
    let sc = KineticScenario::new(format!("circle_n{n}"), points)?
        .with_construction(Construction::Circle { e_len, t_mid, radius });
    Ok((sc, t_mid))
}

fn asin_half(chord: f64) -> f64 {
    (0.5 * chord).asin()
}

pub const DIAMOND_DEFAULT_DENSITY: usize = 6;

/// Geometry of the diamond construction: a square of side 2 standing on a
/// corner, centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiamondGeometry {
    pub points_per_side: usize,
}

impl DiamondGeometry {
    pub const HALF_DIAGONAL: f64 = SQRT_2;

    pub fn chain_len(&self) -> usize {
        2 * self.points_per_side - 1
    }

    pub fn n(&self) -> usize {
        2 * self.chain_len()
    }

    /// Arc length of one chain, from an endpoint of `e` to the matching
    /// endpoint of `e'`.
    pub fn chain_arc(&self) -> f64 {
        4.0 - SQRT_2
    }

    /// Arc length from an endpoint of `e` to the side corner.
    pub fn corner_arc(&self) -> f64 {
        2.0 - 0.5 * SQRT_2
    }

    /// Spacing of consecutive chain points at the critical time.
    pub fn spacing(&self) -> f64 {
        self.chain_arc() / (self.chain_len() - 1) as f64
    }

    /// Point at arc length `s` along the left chain.
    pub fn left_chain_point(&self, s: f64) -> [f64; 2] {
        let top = [-0.5, SQRT_2 - 0.5];
        let corner = [-SQRT_2, 0.0];
        let bottom = [-0.5, 0.5 - SQRT_2];
        let a = self.corner_arc();
        let lerp = |p: [f64; 2], q: [f64; 2], u: f64| [p[0] + (q[0] - p[0]) * u, p[1] + (q[1] - p[1]) * u];
        if s <= a {
            lerp(top, corner, s / a)
        } else {
            lerp(corner, bottom, (s - a) / a)
        }
    }

    /// Index of chain point `j` (0 at `e`, last at `e'`) on the given side.
    pub fn index(&self, left: bool, j: usize) -> usize {
        if left {
            j
        } else {
            self.chain_len() + j
        }
    }

    pub fn top_edge(&self) -> crate::spanning::Edge {
        crate::spanning::Edge(self.index(true, 0), self.index(false, 0))
    }

    pub fn bottom_edge(&self) -> crate::spanning::Edge {
        let last = self.chain_len() - 1;
        crate::spanning::Edge(self.index(true, last), self.index(false, last))
    }
}

/// [`gen_diamond_with`] at the default density.
pub fn gen_diamond() -> Result<(KineticScenario, f64)> {
    gen_diamond_with(DIAMOND_DEFAULT_DENSITY)
}

/// Two chains of points run down the left and right sides of the diamond.
/// On `[0, 1]` they spread from the endpoints of the top edge `e` until they
/// are evenly spaced along the sides; on `[1, 2]` they gather on the
/// endpoints of the bottom edge `e'`. Returns the scenario and the critical
/// time `1`.
pub fn gen_diamond_with(points_per_side: usize) -> Result<(KineticScenario, f64)> {
    if points_per_side < 2 {
        return Err(param(format!("diamond needs at least 2 points per side, got {points_per_side}")));
    }
    let g = DiamondGeometry { points_per_side };
    let (t_crit, horizon) = (1.0, 2.0);
    let total = g.chain_arc();
    let corner = g.corner_arc();
    let mut left = Vec::with_capacity(g.chain_len());
    for j in 0..g.chain_len() {
        let s_mid = j as f64 * g.spacing();
        let mut segs = Vec::new();
        push_chain_leg(&g, &mut segs, 0.0, t_crit, 0.0, s_mid, corner);
        push_chain_leg(&g, &mut segs, t_crit, horizon, s_mid, total, corner);
        left.push(segs);
    }
    let mirror = |segs: &Vec<Segment>| -> Vec<Segment> {
        segs.iter()
            .map(|s| match s {
                Segment::Linear { t0, t1, from, to } => Segment::Linear {
                    t0: *t0,
                    t1: *t1,
                    from: vec![-from[0], from[1]],
                    to: vec![-to[0], to[1]],
                },
                other => other.clone(),
            })
            .collect()
    };
    let mut points = Vec::with_capacity(g.n());
    for segs in &left {
        points.push(Trajectory::scripted(horizon, segs.clone())?);
    }
    for segs in &left {
        points.push(Trajectory::scripted(horizon, mirror(segs))?);
    }
    let sc = KineticScenario::new(format!("diamond_p{points_per_side}"), points)?
        .with_construction(Construction::Diamond { points_per_side, t_crit });
    Ok((sc, t_crit))
}

/// Constant-speed travel along the left chain from arc `s0` to `s1` during
/// `[t0, t1]`, split at the corner when it is passed strictly inside.
fn push_chain_leg(
    g: &DiamondGeometry,
    segs: &mut Vec<Segment>,
    t0: f64,
    t1: f64,
    s0: f64,
    s1: f64,
    corner: f64,
) {
    let seg = |ta: f64, tb: f64, sa: f64, sb: f64| Segment::Linear {
        t0: ta,
        t1: tb,
        from: g.left_chain_point(sa).to_vec(),
        to: g.left_chain_point(sb).to_vec(),
    };
    if s0 < corner && corner < s1 {
        let tc = t0 + (t1 - t0) * (corner - s0) / (s1 - s0);
        segs.push(seg(t0, tc, s0, corner));
        segs.push(seg(tc, t1, corner, s1));
    } else {
        segs.push(seg(t0, t1, s0, s1));
    }
}

/// Points stacked at `x = 1/2` with vertical gap `1/n`; over `[0, 1]` the red
/// ones drift to `x = 0` and the blue ones to `x = 1`. The default colouring
/// alternates, which is the 2-colouring of the initial path EMST.
pub fn gen_split(n: usize) -> Result<KineticScenario> {
    let red: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
    split_with_colors(n, red)
}

/// Rebuilds a split scenario from a per-point colouring.
pub fn recolor(sc: &KineticScenario, colors: &[Color]) -> Result<KineticScenario> {
    if colors.len() != sc.n() {
        return Err(param(format!("{} colours for {} points", colors.len(), sc.n())));
    }
    let mut out =
        split_with_colors(sc.n(), colors.iter().map(|&c| c == Color::Red).collect())?;
    out.k = sc.k;
    out.lipschitz = sc.lipschitz;
    out.morph_mode = sc.morph_mode;
    Ok(out)
}

fn split_with_colors(n: usize, red: Vec<bool>) -> Result<KineticScenario> {
    if n < 4 {
        return Err(param(format!("split construction needs n >= 4, got {n}")));
    }
    let horizon = 1.0;
    let points = red
        .iter()
        .enumerate()
        .map(|(i, &is_red)| {
            let y = (i as f64 + 0.5) / n as f64;
            let x_end = if is_red { 0.0 } else { 1.0 };
            Trajectory::linear(horizon, vec![0.5, y], vec![x_end, y])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KineticScenario::new(format!("split_n{n}"), points)?
        .with_construction(Construction::Split { red }))
}

/// Fixed points over the given horizon.
pub fn gen_stationary(points: &[Vec<f64>], horizon: f64) -> Result<KineticScenario> {
    let trajs = points
        .iter()
        .map(|p| Trajectory::stationary(horizon, p))
        .collect::<Result<Vec<_>>>()?;
    KineticScenario::new(format!("stationary_n{}", points.len()), trajs)
}

/// Four points that pass through the unit square at `t = 1/3`: the bottom
/// right corner drifts right while the top left corner drifts down, which
/// forces the EMST to trade its bottom side for its left side.
pub fn gen_unit_square_swap() -> Result<KineticScenario> {
    let horizon = 1.0;
    let points = vec![
        Trajectory::stationary(horizon, &[0.0, 0.0])?,
        Trajectory::linear(horizon, vec![0.9, 0.0], vec![1.2, 0.0])?,
        Trajectory::stationary(horizon, &[1.0, 1.0])?,
        Trajectory::linear(horizon, vec![0.0, 1.1], vec![0.0, 0.8])?,
    ];
    KineticScenario::new("unit_square_swap", points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning::{emst_length, tree_length, SpanningTree};
    use approx::assert_abs_diff_eq;

    #[test]
    fn chebyshev_values() {
        let h3 = chebyshev_trajectory(3, 1.0).unwrap();
        assert_abs_diff_eq!(h3.evaluate(0.0).unwrap()[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h3.evaluate(1.0).unwrap()[0], 1.0, epsilon = 1e-12);
        let h2 = chebyshev_trajectory(2, 4.0).unwrap();
        let mid = h2.evaluate(2.0).unwrap()[0];
        assert!(mid.abs() < 1e-12 || (mid - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_layout() {
        let sc = gen_chebyshev(1, 2, 1.0).unwrap();
        assert_eq!(sc.points[1].evaluate(0.0).unwrap(), vec![0.5]);
        assert_eq!(sc.points[0].monotone_sweeps(0).unwrap(), 1);
        let sc3 = gen_chebyshev(3, 11, 1.0).unwrap();
        assert_eq!(sc3.points[0].monotone_sweeps(0).unwrap(), 3);
        assert!(sc3.is_unit_normalized(1e-12));
    }

    #[test]
    fn chebyshev_speed_matches_markov() {
        let h = chebyshev_trajectory(4, 1.0).unwrap();
        assert_abs_diff_eq!(h.max_speed().unwrap(), 16.0, epsilon = 1e-6);
    }

    #[test]
    fn rational_bumps() {
        assert!(gen_appendix_rational(6, 4).is_err());
        assert!(gen_appendix_rational(8, 5).is_err());
        let sc = gen_appendix_rational(8, 4).unwrap();
        assert_eq!(rational_bump_center(1, 0, 8), 20.0);
        // mover 1 peaks at its first centre
        let v = sc.points[1].evaluate(20.0).unwrap()[0];
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-3);
        assert!(sc.is_unit_normalized(0.0));
    }

    #[test]
    fn circle_even_spacing_at_mid() {
        let (sc, t_mid) = gen_circle(16, 0.1).unwrap();
        let cfg = sc.config_at(t_mid).unwrap();
        let gap = 2.0 * (PI / 16.0).sin();
        let mut angles: Vec<f64> =
            (0..16).map(|i| cfg.point(i)[1].atan2(cfg.point(i)[0])).collect();
        angles.sort_by(f64::total_cmp);
        for w in angles.windows(2) {
            assert_abs_diff_eq!(w[1] - w[0], 2.0 * PI / 16.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(emst_length(&cfg), 15.0 * gap, epsilon = 1e-12);
        let start = sc.config_at(0.0).unwrap();
        assert_abs_diff_eq!(start.dist(0, 15), 0.1, epsilon = 1e-12);
    }

    #[test]
    fn diamond_critical_lengths() {
        let (sc, t) = gen_diamond().unwrap();
        let g = DiamondGeometry { points_per_side: DIAMOND_DEFAULT_DENSITY };
        let cfg = sc.config_at(t).unwrap();
        assert_eq!(sc.n(), 22);
        assert_abs_diff_eq!(emst_length(&cfg), 9.0 - 2.0 * SQRT_2, epsilon = 1e-12);
        let top = g.top_edge();
        let bottom = g.bottom_edge();
        assert_abs_diff_eq!(cfg.dist(top.0, top.1), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cfg.dist(bottom.0, bottom.1), 1.0, epsilon = 1e-12);
        // e endpoint to the side corner
        let corner = g.index(true, g.points_per_side - 1);
        assert_abs_diff_eq!(cfg.dist(0, corner), 2.0 - 0.5 * SQRT_2, epsilon = 1e-12);
        // chains + both connectors, minus one chain edge
        let m = g.chain_len();
        let mut edges = vec![top, bottom];
        for j in 0..m - 1 {
            if j != 0 {
                edges.push(crate::spanning::Edge(j, j + 1));
            }
            edges.push(crate::spanning::Edge(m + j, m + j + 1));
        }
        let both = SpanningTree::new(sc.n(), edges).unwrap();
        assert_abs_diff_eq!(
            tree_length(&cfg, &both).unwrap(),
            10.0 - 2.0 * SQRT_2 - g.spacing(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn split_geometry() {
        let sc = gen_split(8).unwrap();
        let c0 = sc.config_at(0.0).unwrap();
        assert_abs_diff_eq!(c0.dist(0, 1), 1.0 / 8.0, epsilon = 1e-15);
        let c1 = sc.config_at(1.0).unwrap();
        assert_abs_diff_eq!((c1.point(0)[0] - c1.point(1)[0]).abs(), 1.0);
        let ct = sc.config_at(0.3).unwrap();
        let x: f64 = 3.0 / 8.0;
        assert_abs_diff_eq!(ct.dist(0, 3), (x * x + 0.09).sqrt(), epsilon = 1e-12);
        assert!(gen_split(3).is_err());
    }

    #[test]
    fn square_swap_hits_square() {
        let sc = gen_unit_square_swap().unwrap();
        let cfg = sc.config_at(1.0 / 3.0).unwrap();
        assert_abs_diff_eq!(cfg.dist(0, 1), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cfg.dist(0, 3), 1.0, epsilon = 1e-12);
    }
}
