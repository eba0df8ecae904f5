//! Seeded random instances. ChaCha8 keeps streams stable across platforms
//! and `rand` releases, so a seed pins an instance.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};
use crate::morph::SwapEvent;
use crate::spanning::{fundamental_cycle, random_tree, Edge, PointConfig, SpanningTree};
use crate::trajectories::{KineticScenario, Poly, Trajectory};

pub type InstanceRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in the unit cube of dimension `dim`.
pub fn random_config<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> PointConfig {
    PointConfig::from_flat(dim, (0..n * dim).map(|_| rng.gen::<f64>()).collect())
}

/// Range of `p` over `[a, b]`, from the endpoints and interior critical points.
pub fn poly_range(p: &Poly, a: f64, b: f64) -> (f64, f64) {
    let mut lo = p.eval(a).min(p.eval(b));
    let mut hi = p.eval(a).max(p.eval(b));
    for x in p.critical_points_in(a, b) {
        let y = p.eval(x);
        lo = lo.min(y);
        hi = hi.max(y);
    }
    (lo, hi)
}

/// Degree-`s` polynomial with standard normal-ish coefficients, affinely
/// mapped so its range on `[0, horizon]` is exactly `[0, 1]`.
pub fn random_unit_poly<R: Rng + ?Sized>(rng: &mut R, s: usize, horizon: f64) -> Result<Poly> {
    if s == 0 {
        return Err(param("degree must be at least 1 to normalise a range"));
    }
    loop {
        let mut coeffs: Vec<f64> = (0..=s).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if coeffs[s].abs() < 0.05 {
            coeffs[s] = 0.05f64.copysign(coeffs[s]);
        }
        let p = Poly::with_origin(coeffs, horizon / 2.0);
        let (lo, hi) = poly_range(&p, 0.0, horizon);
        if hi - lo > 1e-6 {
            return Ok(p.add(&Poly::constant(-lo)).scale(1.0 / (hi - lo)));
        }
    }
}

/// `n` points in dimension `dim` whose coordinates are independent
/// unit-range polynomials of degree in `1..=max_degree` over `[0, horizon]`.
pub fn random_polynomial_scenario<R: Rng + ?Sized>(
    rng: &mut R,
    label: impl Into<String>,
    n: usize,
    dim: usize,
    max_degree: usize,
    horizon: f64,
) -> Result<KineticScenario> {
    let points = (0..n)
        .map(|_| {
            let coords = (0..dim)
                .map(|_| {
                    let s = rng.gen_range(1..=max_degree.max(1));
                    random_unit_poly(rng, s, horizon)
                })
                .collect::<Result<Vec<_>>>()?;
            Trajectory::polynomial(horizon, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    KineticScenario::new(label, points)
}

fn random_non_tree_edge<R: Rng + ?Sized>(rng: &mut R, tree: &SpanningTree) -> Edge {
    let n = tree.n();
    loop {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = Edge::new(a, b);
        if a != b && !tree.contains(e) {
            return e;
        }
    }
}

/// Random swap on a random tree over a random planar configuration.
///
/// With `longest` the removed edge is the longest edge of the fundamental
/// cycle, and instances whose inserted edge is longer are redrawn. Otherwise
/// the removed edge is any cycle edge at least as long as the inserted one.
pub fn random_swap_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    longest: bool,
) -> Result<(SwapEvent, PointConfig)> {
    if n < 3 {
        return Err(param(format!("a swap needs n >= 3, got {n}")));
    }
    loop {
        let cfg = random_config(rng, n, 2);
        let tree = random_tree(n, rng);
        let inserted = random_non_tree_edge(rng, &tree);
        let cycle = fundamental_cycle(&tree, inserted)?;
        let new_len = cfg.dist(inserted.0, inserted.1);
        let cycle_edges: Vec<Edge> = cycle.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        let removed = if longest {
            let e = *cycle_edges
                .iter()
                .max_by(|a, b| cfg.dist(a.0, a.1).total_cmp(&cfg.dist(b.0, b.1)))
                .expect("cycle has edges");
            (cfg.dist(e.0, e.1) >= new_len).then_some(e)
        } else {
            let eligible: Vec<Edge> =
                cycle_edges.into_iter().filter(|e| cfg.dist(e.0, e.1) >= new_len).collect();
            eligible.choose(rng).copied()
        };
        if let Some(removed) = removed {
            return Ok((SwapEvent::new(0.0, tree, removed, inserted)?, cfg));
        }
    }
}
