//! `kemst`: batch front end for the kinetic EMST regimes.

mod svg;

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use kinetic_emst::event_stability::{
    approximation_audit, estimate_stability_ratio, run_event_regime, EventTrace,
};
use kinetic_emst::lipschitz::{any_tree_bound_audit, run_lipschitz_regime};
use kinetic_emst::morph::{diamond_certificate, minimax_flip_oracle, plan_morph, run_topo_regime};
use kinetic_emst::random::seeded;
use kinetic_emst::spanning::{emst_length, random_tree, tree_length};
use kinetic_emst::trajectories::{
    generator_to_toml, load_scenario, GeneratorSpec, KineticScenario, MorphMode,
    DIAMOND_DEFAULT_DENSITY,
};
use rayon::prelude::*;
use svg::Series;

#[derive(Parser)]
#[command(name = "kemst", version, about = "Kinetic EMST stability experiments")]
struct Cli {
    /// Directory for scenario files, traces and plots.
    #[arg(long, global = true, env = "KEMST_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    /// Number of scenarios processed in parallel.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a scenario file for a named generator.
    Gen {
        generator: GeneratorName,
        #[command(flatten)]
        params: GenParams,
        #[command(flatten)]
        overrides: Overrides,
        /// Output path (default: <out-dir>/<label>.toml).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Event regime: recompute the EMST whenever a point has moved k.
    RunEvent {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Also estimate the stability ratio from this many sample times.
        #[arg(long)]
        stability_pairs: Option<usize>,
        #[arg(long)]
        svg: bool,
    },
    /// Topological regime: morph through every EMST swap.
    RunTopo {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Also write every morph plan as text.
        #[arg(long)]
        plans: bool,
        #[arg(long)]
        svg: bool,
    },
    /// Budgeted slides on the split construction.
    RunLipschitz {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        svg: bool,
    },
    /// Minimax flip-graph oracle (small n only).
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 201)]
        time_steps: usize,
        #[arg(long, default_value_t = kinetic_emst::morph::DEFAULT_N_LIMIT)]
        n_limit: usize,
    },
    /// Check a guarantee; exits 1 on the first violation.
    Audit {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Check::Approx)]
        check: Check,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Random trees per sample time for `any-tree`.
        #[arg(long, default_value_t = 20)]
        trees: usize,
        /// Tolerance for the diamond certificate.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    /// tree_length <= opt_length + 4kn along the event regime
    Approx,
    /// random trees stay within (n-1) OPT
    AnyTree,
    /// rotation lower-bound certificate on the diamond
    Diamond,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorName {
    Chebyshev,
    AppendixRational,
    Circle,
    Diamond,
    Split,
    UnitSquareSwap,
    Stationary,
    Random,
}

#[derive(Args, Clone)]
struct GenParams {
    /// Polynomial degree.
    #[arg(long)]
    s: Option<usize>,
    /// Number of points.
    #[arg(long)]
    n: Option<usize>,
    /// Dimension (random).
    #[arg(long)]
    d: Option<usize>,
    /// Time horizon.
    #[arg(long = "T")]
    horizon: Option<f64>,
    /// Chord length of the circle construction.
    #[arg(long)]
    e_len: Option<f64>,
    /// Diamond discretization.
    #[arg(long)]
    points_per_side: Option<usize>,
    /// Seed for random scenarios and random trees.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stationary point, comma separated coordinates (repeatable).
    #[arg(long = "point", value_delimiter = ';')]
    points: Vec<String>,
}

#[derive(Args, Clone)]
struct Overrides {
    /// Displacement budget k.
    #[arg(long)]
    k: Option<f64>,
    /// Slide budget K.
    #[arg(long = "K")]
    budget: Option<f64>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<MorphMode>,
    #[arg(long)]
    label: Option<String>,
}

#[derive(Args, Clone)]
struct Source {
    /// Scenario file, or a generator name built from the generator flags (repeatable).
    #[arg(long = "scenario")]
    scenarios: Vec<String>,
    #[command(flatten)]
    params: GenParams,
    #[command(flatten)]
    overrides: Overrides,
}

fn parse_mode(s: &str) -> std::result::Result<MorphMode, String> {
    s.parse().map_err(|e: kinetic_emst::Error| e.to_string())
}

fn generator_spec(name: GeneratorName, p: &GenParams) -> Result<GeneratorSpec> {
    let horizon = p.horizon.unwrap_or(1.0);
    Ok(match name {
        GeneratorName::Chebyshev => {
            GeneratorSpec::Chebyshev { s: p.s.unwrap_or(3), n: p.n.unwrap_or(11), horizon }
        }
        GeneratorName::AppendixRational => {
            GeneratorSpec::AppendixRational { s: p.s.unwrap_or(4), n: p.n.unwrap_or(4) }
        }
        GeneratorName::Circle => {
            GeneratorSpec::Circle { n: p.n.unwrap_or(6), e_len: p.e_len.unwrap_or(0.1) }
        }
        GeneratorName::Diamond => GeneratorSpec::Diamond {
            points_per_side: p.points_per_side.unwrap_or(DIAMOND_DEFAULT_DENSITY),
        },
        GeneratorName::Split => GeneratorSpec::Split { n: p.n.unwrap_or(8) },
        GeneratorName::UnitSquareSwap => GeneratorSpec::UnitSquareSwap,
        GeneratorName::Stationary => {
            if p.points.is_empty() {
                bail!("stationary scenarios need at least one --point");
            }
            let points = p
                .points
                .iter()
                .map(|s| {
                    s.split(',')
                        .map(|c| c.trim().parse::<f64>().with_context(|| format!("bad coordinate in `{s}`")))
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            GeneratorSpec::Stationary { points, horizon }
        }
        GeneratorName::Random => GeneratorSpec::RandomPolynomial {
            n: p.n.unwrap_or(10),
            d: p.d.unwrap_or(2),
            s: p.s.unwrap_or(3),
            horizon,
            seed: p.seed,
        },
    })
}

fn apply_overrides(mut sc: KineticScenario, o: &Overrides) -> KineticScenario {
    if let Some(k) = o.k {
        sc.k = k;
    }
    if let Some(budget) = o.budget {
        sc.lipschitz = budget;
    }
    if let Some(mode) = o.mode {
        sc.morph_mode = mode;
    }
    if let Some(label) = &o.label {
        sc.label = label.clone();
    }
    sc
}

fn load_sources(src: &Source) -> Result<Vec<KineticScenario>> {
    if src.scenarios.is_empty() {
        Cli::command()
            .error(clap::error::ErrorKind::MissingRequiredArgument, "at least one --scenario is required")
            .exit();
    }
    let mut out = Vec::new();
    let mut labels = HashSet::new();
    for entry in &src.scenarios {
        let sc = match GeneratorName::from_str(entry, true) {
            Ok(name) => generator_spec(name, &src.params)?.build()?,
            Err(_) => load_scenario(entry).with_context(|| format!("loading scenario `{entry}`"))?,
        };
        let sc = apply_overrides(sc, &src.overrides);
        if !labels.insert(sc.label.clone()) {
            bail!("two scenarios share the label `{}`; set distinct labels", sc.label);
        }
        out.push(sc);
    }
    Ok(out)
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn write_svg(out: &Path, label: &str, kind: &str, points: &[(f64, f64, f64)]) -> Result<()> {
    let series = [
        Series { name: "ratio", points: points.iter().map(|p| (p.0, p.1)).collect() },
        Series { name: "tree_length", points: points.iter().map(|p| (p.0, p.2)).collect() },
    ];
    write(&out.join(format!("{label}.{kind}.svg")), svg::plot(&format!("{label} ({kind})"), &series).as_bytes())
}

fn summary(label: &str, events: usize, max_ratio: f64, extra: &str) -> String {
    format!("{label} events={events} max_ratio={max_ratio}{extra}")
}

fn run_event(sc: &KineticScenario, out: &Path, samples: usize, pairs: Option<usize>, svg: bool) -> Result<String> {
    let trace = run_event_regime(sc, samples)?;
    let mut csv = Vec::new();
    trace.write_csv(&mut csv)?;
    write(&out.join(format!("{}.event.csv", sc.label)), &csv)?;
    if svg {
        let pts: Vec<_> = trace.records.iter().map(|r| (r.time, r.ratio, r.tree_length)).collect();
        write_svg(out, &sc.label, "event", &pts)?;
    }
    let mut extra = String::new();
    if let Some(m) = pairs {
        extra = format!(" stability={}", estimate_stability_ratio(&trace, sc, m)?.ratio);
    }
    Ok(summary(&sc.label, trace.event_count, trace.max_ratio(), &extra))
}

fn run_topo(sc: &KineticScenario, out: &Path, samples: usize, plans: bool, svg: bool) -> Result<String> {
    let trace = run_topo_regime(sc, sc.morph_mode, samples)?;
    let mut csv = Vec::new();
    trace.write_csv(&mut csv)?;
    write(&out.join(format!("{}.topo.csv", sc.label)), &csv)?;
    if plans {
        let mut text = String::new();
        for ev in &trace.swaps {
            let cfg = sc.config_at(ev.time)?;
            text.push_str(&format!("# t={} remove {} insert {}\n", ev.time, ev.removed, ev.inserted));
            text.push_str(&plan_morph(ev, &cfg, sc.morph_mode)?.to_string());
            text.push('\n');
        }
        write(&out.join(format!("{}.plans.txt", sc.label)), text.as_bytes())?;
    }
    if svg {
        let pts: Vec<_> = trace.records.iter().map(|r| (r.time, r.ratio, r.tree_length)).collect();
        write_svg(out, &sc.label, "topo", &pts)?;
    }
    let extra = format!(" mode={} fallbacks={}", trace.mode, trace.fallbacks);
    Ok(summary(&sc.label, trace.swaps.len(), trace.max_ratio, &extra))
}

fn run_lipschitz(sc: &KineticScenario, out: &Path, samples: usize, svg: bool) -> Result<String> {
    let run = run_lipschitz_regime(sc, sc.lipschitz, None, samples)?;
    let mut csv = Vec::new();
    run.write_csv(&mut csv)?;
    write(&out.join(format!("{}.lipschitz.csv", sc.label)), &csv)?;
    if svg {
        let pts: Vec<_> = run.records.iter().map(|r| (r.time, r.ratio, r.tree_length)).collect();
        write_svg(out, &sc.label, "lipschitz", &pts)?;
    }
    let extra = format!(" K={} final_ratio={}", run.budget, run.ratio);
    Ok(summary(&sc.label, run.completed, run.max_ratio(), &extra))
}

fn run_oracle(sc: &KineticScenario, out: &Path, steps: usize, n_limit: usize) -> Result<String> {
    let result = minimax_flip_oracle(sc, sc.morph_mode, steps, n_limit)?;
    let mut changes = 0;
    if let Some(schedule) = &result.schedule {
        changes = schedule.windows(2).filter(|w| w[0] != w[1]).count();
        let mut text = String::from("time,tree_length,opt_length,ratio\n");
        for (t, tree) in result.times.iter().zip(schedule) {
            let cfg = sc.config_at(*t)?;
            let (len, opt) = (tree_length(&cfg, tree)?, emst_length(&cfg));
            text.push_str(&format!("{t},{len},{opt},{}\n", len / opt));
        }
        write(&out.join(format!("{}.oracle.csv", sc.label)), text.as_bytes())?;
    }
    Ok(summary(&sc.label, changes, result.ratio, &format!(" mode={}", sc.morph_mode)))
}

/// Approximation or any-tree audit of one scenario. Audit violations surface
/// as `kinetic_emst::Error::Audit`.
fn run_audit(sc: &KineticScenario, check: Check, samples: usize, trees: usize, seed: u64) -> Result<String> {
    match check {
        Check::Approx => {
            let trace: EventTrace = run_event_regime(sc, samples)?;
            let report = approximation_audit(&trace, sc)?;
            let extra = format!(" max_slack={} bound={}", report.max_slack, report.slack_bound);
            Ok(summary(&sc.label, trace.event_count, report.max_ratio, &extra))
        }
        Check::AnyTree => {
            let mut rng = seeded(seed);
            let mut worst: f64 = 1.0;
            let horizon = sc.horizon();
            for j in 0..samples.max(1) {
                let t = horizon * j as f64 / (samples.max(2) - 1) as f64;
                let cfg = sc.config_at(t.min(horizon))?;
                for _ in 0..trees {
                    let tree = random_tree(sc.n(), &mut rng);
                    worst = worst.max(any_tree_bound_audit(&cfg, &tree)?.ratio);
                }
            }
            Ok(summary(&sc.label, 0, worst, &format!(" cap={}", sc.n() - 1)))
        }
        Check::Diamond => unreachable!("handled without a scenario"),
    }
}

fn diamond_audit(points_per_side: usize, tol: f64) -> Result<String> {
    let cert = diamond_certificate(points_per_side, tol)?;
    let label = format!("diamond_pps{points_per_side}");
    match cert.bottleneck {
        None => Ok(summary(&label, 0, cert.ratio(), &format!(" explored={}", cert.explored))),
        Some(b) => {
            let path: Vec<String> = cert
                .witness
                .iter()
                .map(|t| t.edges().iter().map(|e| format!("({e})")).collect::<Vec<_>>().join(""))
                .collect();
            Err(kinetic_emst::Error::Audit(format!(
                "{label}: a rotation path reaches a bottom connector with max length {b} < {}; path: {}",
                cert.threshold,
                path.join(" -> ")
            ))
            .into())
        }
    }
}

fn for_each<F>(jobs: usize, scenarios: &[KineticScenario], f: F) -> Result<Vec<String>>
where
    F: Fn(&KineticScenario) -> Result<String> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    pool.install(|| scenarios.par_iter().map(|sc| f(sc).with_context(|| sc.label.clone())).collect())
}

fn run(cli: Cli) -> Result<Vec<String>> {
    let out = cli.out_dir.as_path();
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let jobs = cli.jobs;
    match cli.command {
        Command::Gen { generator, params, overrides, output } => {
            let spec = generator_spec(generator, &params)?;
            let sc = apply_overrides(spec.build()?, &overrides);
            let path = output.unwrap_or_else(|| out.join(format!("{}.toml", sc.label)));
            write(&path, generator_to_toml(&spec, &sc)?.as_bytes())?;
            Ok(vec![format!("{} n={} T={} -> {}", sc.label, sc.n(), sc.horizon(), path.display())])
        }
        Command::RunEvent { source, samples, stability_pairs, svg } => {
            for_each(jobs, &load_sources(&source)?, |sc| run_event(sc, out, samples, stability_pairs, svg))
        }
        Command::RunTopo { source, samples, plans, svg } => {
            for_each(jobs, &load_sources(&source)?, |sc| run_topo(sc, out, samples, plans, svg))
        }
        Command::RunLipschitz { source, samples, svg } => {
            for_each(jobs, &load_sources(&source)?, |sc| run_lipschitz(sc, out, samples, svg))
        }
        Command::Oracle { source, time_steps, n_limit } => {
            for_each(jobs, &load_sources(&source)?, |sc| run_oracle(sc, out, time_steps, n_limit))
        }
        Command::Audit { source, check: Check::Diamond, tol, .. } => {
            let pps = source.params.points_per_side.unwrap_or(DIAMOND_DEFAULT_DENSITY);
            Ok(vec![diamond_audit(pps, tol)?])
        }
        Command::Audit { source, check, samples, trees, .. } => {
            let seed = source.params.seed;
            for_each(jobs, &load_sources(&source)?, |sc| run_audit(sc, check, samples, trees, seed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            // audit errors already read "audit failed: ..."
            let audit = err.chain().any(|e| {
                matches!(e.downcast_ref::<kinetic_emst::Error>(), Some(kinetic_emst::Error::Audit(_)))
            });
            if audit {
                eprintln!("{err:#}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::FAILURE
        }
    }
}
