use std::collections::HashMap;

use super::regime::{EventRecord, EventTrace};
use super::spread::spread;
use crate::error::{Error, Result};
use crate::morph::slide_distance;
use crate::spanning::{Edge, SpanningTree};
use crate::trajectories::KineticScenario;

pub const AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// Largest `tree_length - opt_length` over the records.
    pub max_slack: f64,
    pub max_ratio: f64,
    /// `4 k n`.
    pub slack_bound: f64,
    /// `(time, mindist_l, k * l * Delta_l)` at every sample record.
    pub spread_context: Vec<(f64, f64, f64)>,
}

/// Checks `tree_length <= opt_length + 4 k n` at every record of the trace.
pub fn approximation_audit(trace: &EventTrace, sc: &KineticScenario) -> Result<AuditReport> {
    approximation_audit_with(trace, sc, 1)
}

pub fn approximation_audit_with(
    trace: &EventTrace,
    sc: &KineticScenario,
    l: usize,
) -> Result<AuditReport> {
    let n = sc.n();
    let bound = 4.0 * trace.k * n as f64;
    let mut max_slack: f64 = 0.0;
    let mut max_ratio: f64 = 1.0;
    let mut spread_context = Vec::new();
    for r in &trace.records {
        let slack = r.tree_length - r.opt_length;
        if slack > bound + AUDIT_TOL {
            return Err(Error::Audit(describe(r, bound)));
        }
        max_slack = max_slack.max(slack);
        max_ratio = max_ratio.max(r.ratio);
        if r.event_type == super::EventType::Sample && l < n {
            let sp = spread(&sc.config_unchecked(r.time), l)?;
            spread_context.push((r.time, sp.mindist, trace.k * l as f64 * sp.delta));
        }
    }
    Ok(AuditReport { max_slack, max_ratio, slack_bound: bound, spread_context })
}

fn describe(r: &EventRecord, bound: f64) -> String {
    format!(
        "t={} {}: tree_length {} exceeds opt_length {} + {}",
        r.time,
        r.event_type.as_str(),
        r.tree_length,
        r.opt_length,
        bound
    )
}

/// Largest vertex count for which solution distance is the slide distance.
pub const SLIDE_DISTANCE_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityEstimate {
    /// Sampled lower estimate of the supremum of `d_S / d_I`.
    pub ratio: f64,
    pub witness: Option<(f64, f64)>,
    pub pairs: usize,
}

/// Solution distance: slide count for small `n`, else edge symmetric difference.
pub fn solution_distance(a: &SpanningTree, b: &SpanningTree) -> Result<f64> {
    if a.n() <= SLIDE_DISTANCE_MAX_N {
        Ok(slide_distance(a, b)? as f64)
    } else {
        let diff = a.edges().iter().filter(|e| !b.contains(**e)).count();
        Ok(2.0 * diff as f64)
    }
}

/// Max over pairs of `pair_samples` uniform times of
/// `d_S(A(t), A(t')) / d_I(t, t')`.
pub fn estimate_stability_ratio(
    trace: &EventTrace,
    sc: &KineticScenario,
    pair_samples: usize,
) -> Result<StabilityEstimate> {
    let horizon = sc.horizon();
    let m = pair_samples.max(2);
    let times: Vec<f64> = (0..m)
        .map(|i| if i == m - 1 { horizon } else { horizon * i as f64 / (m - 1) as f64 })
        .collect();
    let configs: Vec<_> = times.iter().map(|&t| sc.config_unchecked(t)).collect();
    let mut cache: HashMap<(Vec<Edge>, Vec<Edge>), f64> = HashMap::new();
    let mut best = StabilityEstimate { ratio: 0.0, witness: None, pairs: 0 };
    for i in 0..m {
        for j in i + 1..m {
            best.pairs += 1;
            let (a, b) = (trace.solution_at(times[i]), trace.solution_at(times[j]));
            if a == b {
                continue;
            }
            let key = (a.edges().to_vec(), b.edges().to_vec());
            let ds = match cache.get(&key) {
                Some(&d) => d,
                None => {
                    let d = solution_distance(a, b)?;
                    cache.insert(key, d);
                    d
                }
            };
            let di = configs[i].max_displacement(&configs[j]);
            let r = if di > 0.0 { ds / di } else { f64::INFINITY };
            if r > best.ratio {
                best.ratio = r;
                best.witness = Some((times[i], times[j]));
            }
        }
    }
    Ok(best)
}
