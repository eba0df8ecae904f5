//! Exact best-possible flip strategies on small instances.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::flip::{FlipGraph, Ord64};
use crate::error::{param, Error, Result};
use crate::spanning::{edges_length, emst_length, PointConfig, SpanningTree};
use crate::trajectories::{KineticScenario, MorphMode};

pub const DEFAULT_N_LIMIT: usize = 7;

/// Witness schedules are kept only below this many (step, tree) cells.
const WITNESS_CELLS: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Smallest achievable worst ratio over the sampled times.
    pub ratio: f64,
    pub times: Vec<f64>,
    /// Tree held at the end of each time step by an optimal strategy.
    pub schedule: Option<Vec<SpanningTree>>,
}

fn ratio(len: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        len / opt
    } else if len > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Dynamic program over (time step, labelled tree).
///
/// Between consecutive sample times a strategy may walk any flip path, paying
/// the ratio of every tree it visits at the current positions. Cost is
/// interpolated linearly along a flip, so the maximum of a path sits at its
/// vertices and charging vertex trees is exact. Within a step the reachable
/// labels are closed under minimax relaxation.
pub fn minimax_flip_oracle(
    sc: &KineticScenario,
    mode: MorphMode,
    time_steps: usize,
    n_limit: usize,
) -> Result<OracleResult> {
    let n = sc.n();
    if n > n_limit {
        return Err(Error::Size(format!("oracle limited to n <= {n_limit}, got {n}")));
    }
    if time_steps < 2 {
        return Err(param("oracle needs at least 2 time steps"));
    }
    let graph = FlipGraph::build(n, mode)?;
    let m = graph.len();
    let tree_edges: Vec<Vec<_>> = (0..m).map(|i| graph.edges_of(i).collect()).collect();
    let horizon = sc.horizon();
    let times: Vec<f64> = (0..time_steps)
        .map(|i| horizon * i as f64 / (time_steps - 1) as f64)
        .collect();
    let keep_witness = m * time_steps <= WITNESS_CELLS;
    let mut origins: Vec<Vec<u32>> = Vec::new();

    let mut label = vec![0.0; m];
    let mut cost = vec![0.0; m];
    for (step, &t) in times.iter().enumerate() {
        let cfg = sc.config_unchecked(t);
        let opt = emst_length(&cfg);
        for (c, edges) in cost.iter_mut().zip(&tree_edges) {
            *c = ratio(edges_length(&cfg, edges), opt);
        }
        let mut origin: Vec<u32> = (0..m as u32).collect();
        if step == 0 {
            label.copy_from_slice(&cost);
        } else {
            for (l, &c) in label.iter_mut().zip(&cost) {
                *l = l.max(c);
            }
            relax(&graph, &cost, &mut label, &mut origin);
        }
        if keep_witness {
            origins.push(origin);
        }
    }
    let (best, &value) = label
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("flip graph is non-empty");
    let schedule = keep_witness.then(|| {
        let mut idx = best;
        let mut out = Vec::with_capacity(time_steps);
        for origin in origins.iter().rev() {
            out.push(graph.tree(idx));
            idx = origin[idx] as usize;
        }
        out.reverse();
        out
    });
    Ok(OracleResult { ratio: value, times, schedule })
}

/// Multi-source minimax Dijkstra: `label[y] = min(label[y], max(label[x], cost[y]))`.
fn relax(graph: &FlipGraph, cost: &[f64], label: &mut [f64], origin: &mut [u32]) {
    let mut heap: BinaryHeap<_> =
        label.iter().enumerate().map(|(i, &l)| Reverse((Ord64(l), i))).collect();
    while let Some(Reverse((Ord64(l), x))) = heap.pop() {
        if l > label[x] {
            continue;
        }
        for &y in graph.neighbors(x) {
            let y = y as usize;
            let cand = l.max(cost[y]);
            if cand < label[y] {
                label[y] = cand;
                origin[y] = origin[x];
                heap.push(Reverse((Ord64(cand), y)));
            }
        }
    }
}

/// Smallest possible maximum tree length over flip paths from `from` to `to`
/// with the points frozen at `cfg`, and one optimal path.
pub fn static_bottleneck(
    cfg: &PointConfig,
    from: &SpanningTree,
    to: &SpanningTree,
    mode: MorphMode,
) -> Result<(f64, Vec<SpanningTree>)> {
    let graph = FlipGraph::build(cfg.n(), mode)?;
    let lengths: Vec<f64> = (0..graph.len())
        .map(|i| edges_length(cfg, &graph.edges_of(i).collect::<Vec<_>>()))
        .collect();
    let (s, t) = match (graph.index_of(from), graph.index_of(to)) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(param("trees do not match the configuration size")),
    };
    let (value, path) = graph
        .bottleneck_path(&lengths, &[s], |x| x == t)
        .expect("flip graphs are connected");
    Ok((value, path.into_iter().map(|i| graph.tree(i)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectories::{gen_stationary, gen_unit_square_swap};
    use approx::assert_abs_diff_eq;

    #[test]
    fn stationary_ratio_is_one() {
        let sc = gen_stationary(&[vec![0.1, 0.2], vec![0.5, 0.9], vec![0.8, 0.3], vec![0.4, 0.4]], 1.0)
            .unwrap();
        let r = minimax_flip_oracle(&sc, MorphMode::Slide, 5, DEFAULT_N_LIMIT).unwrap();
        assert_abs_diff_eq!(r.ratio, 1.0);
        assert_eq!(r.schedule.unwrap().len(), 5);
    }

    #[test]
    fn square_swap_costs_something() {
        let sc = gen_unit_square_swap().unwrap();
        let slide = minimax_flip_oracle(&sc, MorphMode::Slide, 31, DEFAULT_N_LIMIT).unwrap();
        let rot = minimax_flip_oracle(&sc, MorphMode::Rotation, 31, DEFAULT_N_LIMIT).unwrap();
        assert!(slide.ratio > 1.0);
        assert!(rot.ratio <= slide.ratio + 1e-12);
    }

    #[test]
    fn size_limit() {
        let pts: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64]).collect();
        let sc = gen_stationary(&pts, 1.0).unwrap();
        assert!(matches!(
            minimax_flip_oracle(&sc, MorphMode::Slide, 3, DEFAULT_N_LIMIT),
            Err(Error::Size(_))
        ));
    }
}
