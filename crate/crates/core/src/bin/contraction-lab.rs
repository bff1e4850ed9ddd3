use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use contraction_lab::grid::EpsGrid;
use contraction_lab::report::{self, Format, Timing};
use contraction_lab::{emit_report, Error, Report, RunConfig};

/// Contraction-condition classifier and sequence diagnostics.
#[derive(Parser)]
#[command(name = "contraction-lab", version)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comparison tolerance (and the stopping tolerance for `solve`).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Leave wall-clock timing out of the report.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check contraction conditions for one map.
    Classify(Classify),
    /// Diagnose a sequence prefix read from CSV or generated as an orbit.
    Seq(Seq),
    /// Picard iteration towards a fixed point.
    Solve(Solve),
    /// Audit the built-in counterexample space.
    ReproduceExample(Reproduce),
    /// Check the metric axioms on a sample.
    Axioms(Axioms),
}

#[derive(Args)]
struct SpaceMap {
    #[arg(long, default_value = "example")]
    space: String,
    #[arg(long, default_value = "double-index")]
    map: String,
    /// Orbit seed; defaults to x_1, the upper end of an interval, or the first table point.
    #[arg(long)]
    x0: Option<String>,
}

#[derive(Args)]
struct Grids {
    /// Epsilon grid as lo:hi:geometric.
    #[arg(long)]
    eps_grid: Option<String>,
    #[arg(long, default_value_t = 12)]
    delta_steps: u32,
}

#[derive(Args)]
struct Classify {
    #[command(flatten)]
    target: SpaceMap,
    #[command(flatten)]
    grids: Grids,
    /// Repeatable: banach, meir-keeler, ciric-matkowski, shifted:<gauge>, acf, amc:<gauge>.
    #[arg(long = "condition", required = true)]
    conditions: Vec<String>,
    #[arg(long, default_value_t = 0)]
    n_min: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, default_value_t = 8)]
    nu_max: usize,
    #[arg(long, default_value_t = 512)]
    cutoff: usize,
    #[arg(long, default_value_t = 4096)]
    pairs: usize,
    #[arg(long, default_value_t = 128)]
    horizon: usize,
    /// Repeatable companions `y` for the orbits-merge check.
    #[arg(long = "companion")]
    companions: Vec<String>,
    #[arg(long, default_value_t = 1e-6)]
    tail_tol: f64,
    #[arg(long, default_value_t = 0)]
    window: usize,
}

#[derive(Args)]
struct Seq {
    /// CSV of reals, one per row.
    #[arg(long)]
    input: Option<String>,
    #[command(flatten)]
    target: SpaceMap,
    #[command(flatten)]
    grids: Grids,
    #[arg(long, default_value_t = 256)]
    length: usize,
    /// Repeatable gauge descriptor.
    #[arg(long = "gauge")]
    gauges: Vec<String>,
    /// Comma-separated lags for the witness construction.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    nu: Vec<usize>,
    /// Tail window; 0 picks the last quarter.
    #[arg(long, default_value_t = 0)]
    window: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-6)]
    tail_tol: f64,
}

#[derive(Args)]
struct Solve {
    #[command(flatten)]
    target: SpaceMap,
    #[arg(long, default_value_t = contraction_lab::maps::DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Further seeded starting points.
    #[arg(long, default_value_t = 0)]
    starts: usize,
    #[arg(long, default_value_t = 512)]
    cutoff: usize,
}

#[derive(Args)]
struct Reproduce {
    #[arg(long, default_value_t = 512)]
    cutoff: usize,
    #[arg(long, default_value_t = 12)]
    delta_steps: u32,
}

#[derive(Args)]
struct Axioms {
    #[arg(long, default_value = "example")]
    space: String,
    #[arg(long, default_value_t = 64)]
    cutoff: usize,
    /// Sample size on continuum spaces.
    #[arg(long, default_value_t = 64)]
    points: usize,
}

fn apply_grids(cfg: &mut RunConfig, g: &Grids) -> Result<(), Error> {
    if let Some(s) = &g.eps_grid {
        cfg.eps_grid = EpsGrid::parse(s)?.values().to_vec();
    }
    cfg.delta_steps = g.delta_steps;
    Ok(())
}

fn apply_target(cfg: &mut RunConfig, t: &SpaceMap) {
    cfg.space = t.space.clone();
    cfg.map = t.map.clone();
    cfg.x0 = t.x0.clone();
}

fn run(cli: Cli) -> Result<Report, Error> {
    let format: Format = cli.format.parse()?;
    let mut cfg = RunConfig {
        seed: cli.seed,
        out: cli.out.as_ref().map(|p| p.display().to_string()),
        format: cli.format.clone(),
        ..RunConfig::default()
    };
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    let started = SystemTime::now();
    let clock = Instant::now();
    let mut rep = match &cli.command {
        Command::Classify(c) => {
            apply_target(&mut cfg, &c.target);
            apply_grids(&mut cfg, &c.grids)?;
            cfg.conditions = c.conditions.clone();
            cfg.n_min = c.n_min;
            cfg.n_max = c.n_max;
            cfg.nu_max = c.nu_max;
            cfg.cutoff = c.cutoff;
            cfg.pairs = c.pairs;
            cfg.horizon = c.horizon;
            cfg.companions = c.companions.clone();
            cfg.tail_tol = c.tail_tol;
            cfg.window = c.window;
            report::run_classify(cfg)?
        }
        Command::Seq(s) => {
            apply_target(&mut cfg, &s.target);
            apply_grids(&mut cfg, &s.grids)?;
            cfg.input = s.input.clone();
            cfg.length = s.length;
            cfg.gauges = s.gauges.clone();
            cfg.nu = s.nu.clone();
            cfg.window = s.window;
            cfg.n_max = s.n_max;
            cfg.tail_tol = s.tail_tol;
            report::run_seq(cfg)?
        }
        Command::Solve(s) => {
            apply_target(&mut cfg, &s.target);
            cfg.max_iter = s.max_iter;
            cfg.starts = s.starts;
            cfg.cutoff = s.cutoff;
            report::run_solve(cfg)?
        }
        Command::ReproduceExample(r) => {
            cfg.cutoff = r.cutoff;
            cfg.delta_steps = r.delta_steps;
            report::run_reproduce_example(cfg)?
        }
        Command::Axioms(a) => {
            cfg.space = a.space.clone();
            cfg.cutoff = a.cutoff;
            cfg.pairs = a.points;
            report::run_axioms(cfg)?
        }
    };
    if !cli.no_timestamp {
        rep.timing = Some(Timing {
            started_unix_ms: started
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0),
            wall_clock_ms: clock.elapsed().as_millis(),
        });
    }
    emit_report(&rep, format, cli.out.as_deref())?;
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(rep) => ExitCode::from(rep.exit_code() as u8),
        Err(e) => {
            eprintln!("contraction-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
