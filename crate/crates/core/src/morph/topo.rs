//! Following the EMST with continuous flip morphs.

use std::io::Write;

use super::planner::{plan_morph, SwapEvent};
use crate::error::{Error, Result};
use crate::spanning::{emst, emst_length, fundamental_cycle, tree_length, Edge, PointConfig, SpanningTree};
use crate::trajectories::{bisect, KineticScenario, MorphMode};

/// Upper bound on swaps handled in one run before giving up.
const MAX_SWAPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopoRecordKind {
    Sample,
    Morph,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopoRecord {
    pub time: f64,
    pub kind: TopoRecordKind,
    pub tree_length: f64,
    pub opt_length: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopoTrace {
    pub label: String,
    pub mode: MorphMode,
    pub records: Vec<TopoRecord>,
    pub swaps: Vec<SwapEvent>,
    /// Swaps where the rotation planner fell back to slides.
    pub fallbacks: usize,
    pub max_ratio: f64,
}

impl TopoTrace {
    pub const CSV_HEADER: [&'static str; 4] = ["time", "tree_length", "opt_length", "ratio"];

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.time.to_string(),
                r.tree_length.to_string(),
                r.opt_length.to_string(),
                r.ratio.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
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

/// Splits `current -> target` into single exchanges at fixed positions.
///
/// Inserted edges are taken in lexicographic order; each removes the longest
/// edge of its cycle that `target` does not contain, so `|e'| <= |e|` holds
/// whenever `target` is a minimum tree.
pub fn decompose_swaps(
    cfg: &PointConfig,
    current: &SpanningTree,
    target: &SpanningTree,
    time: f64,
) -> Result<Vec<SwapEvent>> {
    let mut tree = current.clone();
    let mut out = Vec::new();
    for &ins in target.edges() {
        if tree.contains(ins) {
            continue;
        }
        let cycle = fundamental_cycle(&tree, ins)?;
        let removed = cycle
            .windows(2)
            .map(|w| Edge::new(w[0], w[1]))
            .filter(|e| !target.contains(*e))
            .max_by(|a, b| cfg.dist(a.0, a.1).total_cmp(&cfg.dist(b.0, b.1)).then(b.cmp(a)))
            .ok_or_else(|| Error::Precondition("cycle lies entirely in the target tree".into()))?;
        let ev = SwapEvent::new(time, tree.clone(), removed, ins)?;
        tree = ev.new_tree();
        out.push(ev);
    }
    Ok(out)
}

/// Tracks the EMST on `samples` uniform intervals. Whenever the EMST changes,
/// the first instant of change is located by bisection, the change is split
/// into single exchanges, and every intermediate tree of each planned morph
/// is charged at that instant.
pub fn run_topo_regime(sc: &KineticScenario, mode: MorphMode, samples: usize) -> Result<TopoTrace> {
    let samples = samples.max(1);
    let horizon = sc.horizon();
    let mut current = emst(&sc.config_unchecked(0.0))?;
    let mut records = Vec::new();
    let mut swaps = Vec::new();
    let mut fallbacks = 0;
    let sample = |t: f64, tree: &SpanningTree| -> Result<TopoRecord> {
        let cfg = sc.config_unchecked(t);
        let (len, opt) = (tree_length(&cfg, tree)?, emst_length(&cfg));
        Ok(TopoRecord { time: t, kind: TopoRecordKind::Sample, tree_length: len, opt_length: opt, ratio: ratio(len, opt) })
    };
    records.push(sample(0.0, &current)?);
    let mut lo = 0.0;
    for j in 1..=samples {
        let t = if j == samples { horizon } else { horizon * j as f64 / samples as f64 };
        while emst(&sc.config_unchecked(t))? != current {
            let differs = |s: f64| emst(&sc.config_unchecked(s)).map_or(true, |m| m != current);
            let ts = if differs(lo) { lo } else { bisect(differs, lo, t) };
            let cfg = sc.config_unchecked(ts);
            let target = emst(&cfg)?;
            let opt = emst_length(&cfg);
            for ev in decompose_swaps(&cfg, &current, &target, ts)? {
                let plan = plan_morph(&ev, &cfg, mode)?;
                fallbacks += plan.fallback as usize;
                for &len in &plan.lengths[1..] {
                    records.push(TopoRecord {
                        time: ts,
                        kind: TopoRecordKind::Morph,
                        tree_length: len,
                        opt_length: opt,
                        ratio: ratio(len, opt),
                    });
                }
                swaps.push(ev);
                if swaps.len() > MAX_SWAPS {
                    return Err(Error::Precondition(format!(
                        "more than {MAX_SWAPS} EMST swaps; the scenario is too degenerate"
                    )));
                }
            }
            current = target;
            lo = ts;
        }
        records.push(sample(t, &current)?);
        lo = t;
    }
    let max_ratio = records.iter().map(|r| r.ratio).fold(1.0, f64::max);
    Ok(TopoTrace { label: sc.label.clone(), mode, records, swaps, fallbacks, max_ratio })
}
