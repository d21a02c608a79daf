use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mer_core::io::bench::{medians, run_bench, write_csv, BenchConfig};
use mer_core::io::gen::{generate, Distribution};
use mer_core::io::{load_point_set, render_svg, write_points, ResultDocument};
use mer_core::{solve_exact, solve_oracle, solve_sampled, Error, SampleParams};

/// Minimum-area enclosing rectangles with outliers.
///
/// Set MER_WORKERS to fix the number of solver threads.
#[derive(Parser)]
#[command(name = "mer", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and write a result document.
    Solve(SolveArgs),
    /// Generate a point set as CSV.
    Gen(GenArgs),
    /// Time the exact solver on generated instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Oracle,
    Sample,
}

#[derive(Args)]
struct SolveArgs {
    /// CSV of x,y points, or - for standard input.
    input: String,
    /// Number of points that may be left out.
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Accept collinear and repeated points (default).
    #[arg(long, overrides_with = "general_position")]
    collinear_robust: bool,
    /// Reject input with three collinear points.
    #[arg(long, overrides_with = "collinear_robust")]
    general_position: bool,
    /// Write the document here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Include wall-clock timings in the document.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    dist: Distribution,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Far-away points appended after the n regular ones.
    #[arg(long, default_value_t = 0)]
    outliers: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
    sizes: Vec<usize>,
    #[arg(long = "t", value_delimiter = ',', default_value = "5")]
    ts: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform-square")]
    dist: Distribution,
    /// Redraw instances with collinear triples instead of handling them.
    #[arg(long)]
    general_position: bool,
    /// Per-trial CSV; medians go to standard output and to `<report>.medians.csv`.
    #[arg(long)]
    report: PathBuf,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSampleParams(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn io_fail(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn write_to(path: Option<&Path>, body: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(io_fail(p)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(body).and_then(|_| out.flush()).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn cmd_solve(a: SolveArgs) -> Result<(), Failure> {
    let robust = !a.general_position;
    let ps = load_point_set(&a.input)?;
    let report = match a.mode {
        Mode::Exact => solve_exact(&ps, a.t, robust)?,
        Mode::Oracle => solve_oracle(&ps, a.t)?,
        Mode::Sample => {
            let p = SampleParams::new(a.epsilon, a.c, a.seed, ps.len(), a.t)?;
            solve_sampled(&ps, a.t, &p, robust)?
        }
    };
    let doc = ResultDocument::from_report(&report, ps.len(), a.timings);
    write_to(a.output.as_deref(), doc.to_json().as_bytes())?;
    if let Some(path) = &a.svg {
        std::fs::write(path, render_svg(&ps, &report)).map_err(io_fail(path))?;
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let pts = generate(a.dist, a.n, a.outliers, a.seed)?;
    let mut buf = Vec::new();
    write_points(&mut buf, &pts)?;
    write_to(a.output.as_deref(), &buf)
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    if a.sizes.iter().any(|&n| n < 3) || a.trials == 0 {
        return Err(Failure::Usage("sizes must be at least 3 and trials positive".into()));
    }
    let cfg = BenchConfig {
        sizes: a.sizes,
        ts: a.ts,
        trials: a.trials,
        seed: a.seed,
        dist: a.dist,
        collinear_robust: !a.general_position,
    };
    let rows = run_bench(&cfg, |r| {
        eprintln!("n={} t={} trial={} k={} pairs={} total={:.3}s", r.n, r.t, r.trial, r.k, r.valid_pairs, r.time_total)
    })?;
    let file = File::create(&a.report).map_err(io_fail(&a.report))?;
    write_csv(BufWriter::new(file), &rows)?;

    let med = medians(&rows);
    let mut side = a.report.clone().into_os_string();
    side.push(".medians.csv");
    let side = PathBuf::from(side);
    write_csv(BufWriter::new(File::create(&side).map_err(io_fail(&side))?), &med)?;
    write_csv(io::stdout().lock(), &med)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(w) = std::env::var("MER_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let res = match cli.cmd {
        Command::Solve(a) => cmd_solve(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a).map_err(|f| match f {
            Failure::Input(m) => Failure::Usage(m),
            u => u,
        }),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
