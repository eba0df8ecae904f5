use std::io::Write;

use crate::error::{Error, Result};
use crate::spanning::{emst, emst_length, tree_length, SpanningTree};
use crate::trajectories::KineticScenario;

/// Coordinate tolerance of the `[0, 1]^d` precondition.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EventType {
    Recompute,
    Sample,
}

impl EventType {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventType::Recompute => "recompute",
            EventType::Sample => "sample",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventRecord {
    pub time: f64,
    pub event_type: EventType,
    pub tree_length: f64,
    pub opt_length: f64,
    pub ratio: f64,
    pub displacement_since_ref: f64,
}

/// Maintained tree between recomputations.
#[derive(Debug, Clone, PartialEq)]
pub struct MaintenanceState {
    pub tree: SpanningTree,
    pub t_ref: f64,
    pub k: f64,
    pub event_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EventTrace {
    pub label: String,
    pub k: f64,
    pub records: Vec<EventRecord>,
    /// Recomputations after `t = 0`.
    pub event_count: usize,
    /// `(t_ref, tree)` for every recomputation, the initial one included.
    pub solutions: Vec<(f64, SpanningTree)>,
}

impl EventTrace {
    pub const CSV_HEADER: [&'static str; 6] =
        ["time", "event_type", "tree_length", "opt_length", "ratio", "displacement_since_ref"];

    /// Tree held at time `t`: the latest recomputation at or before `t`.
    pub fn solution_at(&self, t: f64) -> &SpanningTree {
        let i = self.solutions.partition_point(|(s, _)| *s <= t);
        &self.solutions[i.saturating_sub(1)].1
    }

    fn reference_at(&self, t: f64) -> f64 {
        let i = self.solutions.partition_point(|(s, _)| *s <= t);
        self.solutions[i.saturating_sub(1)].0
    }

    pub fn max_ratio(&self) -> f64 {
        self.records.iter().map(|r| r.ratio).fold(1.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.time.to_string(),
                r.event_type.as_str().to_string(),
                r.tree_length.to_string(),
                r.opt_length.to_string(),
                r.ratio.to_string(),
                r.displacement_since_ref.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn ratio(len: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        len / opt
    } else if len > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

fn sample_times(horizon: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        s => (0..s)
            .map(|j| if j == s - 1 { horizon } else { horizon * j as f64 / (s - 1) as f64 })
            .collect(),
    }
}

fn record(
    sc: &KineticScenario,
    t: f64,
    t_ref: f64,
    tree: &SpanningTree,
    event_type: EventType,
) -> Result<EventRecord> {
    let cfg = sc.config_unchecked(t);
    let len = tree_length(&cfg, tree)?;
    let opt = emst_length(&cfg);
    Ok(EventRecord {
        time: t,
        event_type,
        tree_length: len,
        opt_length: opt,
        ratio: ratio(len, opt),
        displacement_since_ref: cfg.max_displacement(&sc.config_unchecked(t_ref)),
    })
}

fn merge(mut records: Vec<EventRecord>) -> Vec<EventRecord> {
    records.sort_by(|a, b| a.time.total_cmp(&b.time).then(a.event_type.cmp(&b.event_type)));
    records
}

/// Keeps the EMST computed at `t_ref` until some point has moved `k` away
/// from where it was at `t_ref`, then recomputes. `samples` uniform
/// observations are merged into the trace.
pub fn run_event_regime(sc: &KineticScenario, samples: usize) -> Result<EventTrace> {
    if !(sc.k > 0.0) {
        return Err(Error::Parameter(format!("k must be positive, got {}", sc.k)));
    }
    if !sc.is_unit_normalized(NORMALIZATION_TOL) {
        return Err(Error::Precondition(format!(
            "scenario `{}` leaves the unit cube",
            sc.label
        )));
    }
    let mut state = MaintenanceState {
        tree: emst(&sc.config_unchecked(0.0))?,
        t_ref: 0.0,
        k: sc.k,
        event_count: 0,
    };
    let mut solutions = vec![(0.0, state.tree.clone())];
    let mut records = vec![record(sc, 0.0, 0.0, &state.tree, EventType::Recompute)?];
    while let Some(t) = sc.next_displacement_event(state.t_ref, state.k)? {
        state.t_ref = t;
        state.tree = emst(&sc.config_unchecked(t))?;
        state.event_count += 1;
        records.push(record(sc, t, t, &state.tree, EventType::Recompute)?);
        solutions.push((t, state.tree.clone()));
    }
    let mut trace = EventTrace {
        label: sc.label.clone(),
        k: sc.k,
        records: Vec::new(),
        event_count: state.event_count,
        solutions,
    };
    for t in sample_times(sc.horizon(), samples) {
        records.push(record(sc, t, trace.reference_at(t), trace.solution_at(t), EventType::Sample)?);
    }
    trace.records = merge(records);
    Ok(trace)
}

/// Baseline that recomputes the EMST at every sample.
pub fn run_recompute_always(sc: &KineticScenario, samples: usize) -> Result<EventTrace> {
    let mut records = Vec::new();
    let mut solutions = Vec::new();
    for t in sample_times(sc.horizon(), samples.max(1)) {
        let tree = emst(&sc.config_unchecked(t))?;
        records.push(record(sc, t, t, &tree, EventType::Recompute)?);
        solutions.push((t, tree));
    }
    Ok(EventTrace {
        label: sc.label.clone(),
        k: 0.0,
        event_count: solutions.len().saturating_sub(1),
        records,
        solutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectories::{gen_stationary, Poly, Trajectory};

    #[test]
    fn stationary_no_events() {
        let sc = gen_stationary(&[vec![0.1], vec![0.6], vec![0.9]], 1.0).unwrap();
        let tr = run_event_regime(&sc, 11).unwrap();
        assert_eq!(tr.event_count, 0);
        assert_eq!(tr.records.len(), 12);
        assert_eq!(tr.max_ratio(), 1.0);
    }

    #[test]
    fn unit_mover_four_events() {
        let sc = KineticScenario::new(
            "mover",
            vec![
                Trajectory::polynomial(1.0, vec![Poly::new(vec![0.0, 1.0])]).unwrap(),
                Trajectory::stationary(1.0, &[0.5]).unwrap(),
            ],
        )
        .unwrap()
        .with_k(0.25);
        let tr = run_event_regime(&sc, 5).unwrap();
        assert_eq!(tr.event_count, 4);
        let times: Vec<f64> = tr
            .records
            .iter()
            .filter(|r| r.event_type == EventType::Recompute)
            .map(|r| r.time)
            .collect();
        for (got, want) in times.iter().zip([0.0, 0.25, 0.5, 0.75, 1.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert!(tr.records.windows(2).all(|w| w[0].time <= w[1].time));
    }

    #[test]
    fn unnormalized_rejected() {
        let sc = gen_stationary(&[vec![0.1], vec![1.5]], 1.0).unwrap();
        assert!(matches!(run_event_regime(&sc, 3), Err(Error::Precondition(_))));
        let sc = gen_stationary(&[vec![0.1], vec![0.5]], 1.0).unwrap().with_k(0.0);
        assert!(matches!(run_event_regime(&sc, 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn csv_header() {
        let sc = gen_stationary(&[vec![0.1], vec![0.6]], 1.0).unwrap();
        let mut buf = Vec::new();
        run_event_regime(&sc, 2).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("time,event_type,tree_length,opt_length,ratio,displacement_since_ref\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
