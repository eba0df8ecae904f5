use std::io::Write;

use super::slide::{budget_integral, Carrier, SlideSchedule};
use crate::error::{param, Error, Result};
use crate::spanning::{emst, emst_length, two_coloring, Color, Edge, SpanningTree};
use crate::trajectories::{recolor, Construction, KineticScenario};

/// Smallest gain (at the final configuration) worth starting a slide for.
const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzRecord {
    pub time: f64,
    pub active_slides: usize,
    pub completed_slides: usize,
    pub tree_length: f64,
    pub opt_length: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlideOutcome {
    pub schedule: SlideSchedule,
    pub end: Option<f64>,
    /// `K ∫ dt / L` over the active interval, by quadrature on the actual carrier.
    pub budget_used: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzRun {
    pub label: String,
    pub budget: f64,
    pub final_tree: SpanningTree,
    /// Interpolated length at the horizon, partial slides included.
    pub final_length: f64,
    pub opt_length: f64,
    pub ratio: f64,
    pub completed: usize,
    pub slides: Vec<SlideOutcome>,
    pub records: Vec<LipschitzRecord>,
}

impl LipschitzRun {
    pub const CSV_HEADER: [&'static str; 6] =
        ["time", "active_slides", "completed_slides", "tree_length", "opt_length", "ratio"];

    pub fn max_ratio(&self) -> f64 {
        self.records.iter().map(|r| r.ratio).fold(1.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.time.to_string(),
                r.active_slides.to_string(),
                r.completed_slides.to_string(),
                r.tree_length.to_string(),
                r.opt_length.to_string(),
                r.ratio.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

struct Sim<'a> {
    sc: &'a KineticScenario,
    red: Vec<bool>,
    budget: f64,
    horizon: f64,
    tree: SpanningTree,
    active: Vec<SlideSchedule>,
    slides: Vec<SlideOutcome>,
    completed: usize,
}

impl Sim<'_> {
    fn dist(&self, t: f64, a: usize, b: usize) -> f64 {
        self.sc.config_unchecked(t).dist(a, b)
    }

    fn carrier(&self, from: usize, to: usize) -> Carrier {
        let cfg = self.sc.config_unchecked(0.0);
        let span = cfg.dist(from, to);
        if self.red[from] == self.red[to] {
            Carrier::Constant(span)
        } else {
            Carrier::Hyperbolic { x: span }
        }
    }

    fn busy(&self, e: Edge) -> bool {
        self.active
            .iter()
            .any(|s| Edge::new(s.kept, s.from) == e || Edge::new(s.from, s.to) == e)
    }

    fn sliding(&self, e: Edge) -> bool {
        self.active.iter().any(|s| Edge::new(s.kept, s.from) == e)
    }

    /// Greedily starts the slides with the largest length gain at the horizon.
    fn plan(&mut self, now: f64) {
        loop {
            let mut best: Option<(f64, usize, usize, usize)> = None;
            for &e in self.tree.edges() {
                if self.busy(e) {
                    continue;
                }
                for (kept, from) in [(e.0, e.1), (e.1, e.0)] {
                    for to in self.tree.neighbors(from) {
                        if to == kept || self.sliding(Edge::new(from, to)) {
                            continue;
                        }
                        let gain = self.dist(self.horizon, kept, from) - self.dist(self.horizon, kept, to);
                        let better = match best {
                            None => true,
                            Some((g, ..)) => gain > g,
                        };
                        if gain > MIN_GAIN && better {
                            best = Some((gain, kept, from, to));
                        }
                    }
                }
            }
            let Some((_, kept, from, to)) = best else { break };
            let carrier = self.carrier(from, to);
            self.active.push(SlideSchedule { kept, from, to, start: now, budget: self.budget, carrier });
        }
    }

    fn length_at(&self, t: f64) -> f64 {
        let cfg = self.sc.config_unchecked(t);
        let mut total = 0.0;
        for &e in self.tree.edges() {
            match self.active.iter().find(|s| Edge::new(s.kept, s.from) == e) {
                Some(s) => {
                    let p = s.progress(t);
                    total += (1.0 - p) * cfg.dist(s.kept, s.from) + p * cfg.dist(s.kept, s.to);
                }
                None => total += cfg.dist(e.0, e.1),
            }
        }
        total
    }

    fn record(&self, t: f64) -> LipschitzRecord {
        let len = self.length_at(t);
        let opt = emst_length(&self.sc.config_unchecked(t));
        LipschitzRecord {
            time: t,
            active_slides: self.active.len(),
            completed_slides: self.completed,
            tree_length: len,
            opt_length: opt,
            ratio: if opt > 0.0 { len / opt } else { 1.0 },
        }
    }

    fn outcome(&self, s: &SlideSchedule, end: Option<f64>) -> SlideOutcome {
        let stop = end.unwrap_or(self.horizon);
        let (from, to) = (s.from, s.to);
        let used = budget_integral(s.budget, |t| self.dist(t, from, to), s.start, stop);
        SlideOutcome { schedule: s.clone(), end, budget_used: used }
    }
}

/// Event-driven run of the split construction under slide budget `budget`.
///
/// Each slide moves its endpoint along the carrier at the fastest rate the
/// budget allows, `dp/dt = K / L(t)`, and completes when `∫ K / L = 1`.
/// Slides run concurrently on distinct edges; an edge in use as a carrier
/// is not slid, and a sliding edge is not used as a carrier. The greedy
/// policy starts every available slide with positive gain, largest first,
/// at `t = 0` and again after each completion.
pub fn run_lipschitz_regime(
    sc: &KineticScenario,
    budget: f64,
    initial: Option<&SpanningTree>,
    samples: usize,
) -> Result<LipschitzRun> {
    if !matches!(sc.construction, Some(Construction::Split { .. })) {
        return Err(Error::Unsupported(format!(
            "the Lipschitz regime runs on split scenarios only, not `{}`",
            sc.label
        )));
    }
    if !(budget > 0.0) {
        return Err(param(format!("budget K must be positive, got {budget}")));
    }
    let tree = match initial {
        Some(t) => t.clone(),
        None => emst(&sc.config_unchecked(0.0))?,
    };
    if tree.n() != sc.n() {
        return Err(param("initial tree does not match the scenario size"));
    }
    let colors = two_coloring(&tree);
    let sc = &recolor(sc, &colors)?;
    let red: Vec<bool> = colors.iter().map(|&c| c == Color::Red).collect();
    let horizon = sc.horizon();
    let samples = samples.max(2);
    let grid: Vec<f64> = (0..samples)
        .map(|j| if j == samples - 1 { horizon } else { horizon * j as f64 / (samples - 1) as f64 })
        .collect();

    let mut sim = Sim {
        sc,
        red,
        budget,
        horizon,
        tree,
        active: Vec::new(),
        slides: Vec::new(),
        completed: 0,
    };
    let mut records = Vec::new();
    sim.plan(0.0);
    let mut next_sample = 0;
    loop {
        let due = sim
            .active
            .iter()
            .enumerate()
            .map(|(i, s)| (s.completion(), i))
            .filter(|(t, _)| *t <= horizon)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        let until = due.map_or(horizon, |d| d.0);
        while next_sample < grid.len() && grid[next_sample] < until {
            records.push(sim.record(grid[next_sample]));
            next_sample += 1;
        }
        let Some((tc, i)) = due else { break };
        let s = sim.active.remove(i);
        sim.slides.push(sim.outcome(&s, Some(tc)));
        sim.tree = sim.tree.exchanged(Edge::new(s.kept, s.from), Edge::new(s.kept, s.to));
        sim.completed += 1;
        sim.plan(tc);
        records.push(sim.record(tc));
    }
    while next_sample < grid.len() {
        records.push(sim.record(grid[next_sample]));
        next_sample += 1;
    }
    let unfinished: Vec<SlideSchedule> = sim.active.clone();
    for s in &unfinished {
        sim.slides.push(sim.outcome(s, None));
    }
    let final_length = sim.length_at(horizon);
    let opt_length = emst_length(&sc.config_unchecked(horizon));
    Ok(LipschitzRun {
        label: sc.label.clone(),
        budget,
        final_tree: sim.tree,
        final_length,
        opt_length,
        ratio: final_length / opt_length,
        completed: sim.completed,
        slides: sim.slides,
        records,
    })
}

/// True when no carrier of vertical span at least `1/n` can finish a slide
/// by `t = 1` under budget `K`: `K asinh(n) < 1`.
pub fn split_no_completion(n: usize, budget: f64) -> bool {
    budget * (n as f64).asinh() < 1.0
}
