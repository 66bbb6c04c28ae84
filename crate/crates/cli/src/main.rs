//! gshape: choose the Gaussian RBF shape parameter from error-bound theory.
//!
//! Subcommands: `constants` (bound constants), `advise` (optimal beta),
//! `curve` (MN curve CSV), `nodes` (evenly spaced simplex nodes), `interp`
//! (build and evaluate an interpolant), `experiment` (beta sweep CSV).
//!
//! Exit codes: 0 success, 2 invalid configuration or usage, 1 runtime failure.

mod csvio;
mod opts;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gshape::harness::{
    beta_sweep, format_float, write_csv, NodeLayout, TestFunction,
};
use gshape::mn::{advise, mn_curve};
use gshape::{BoundConstants, Criterion, ProblemConfig};

use csvio::{coordinate_header, read_table, write_table};
use opts::{required, FileConfig, LayoutArg, ProblemFlags};

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or input (exit 2).
    Config(String),
    /// Runtime failure such as I/O (exit 1).
    Runtime(String),
}

impl From<gshape::Error> for CliError {
    fn from(e: gshape::Error) -> Self {
        if e.is_invalid_configuration() {
            CliError::Config(e.to_string())
        } else {
            CliError::Runtime(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gshape",
    version,
    about = "Optimal Gaussian RBF shape parameter from exponential error bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every bound constant for (n, b0, beta).
    Constants(ConstantsCmd),
    /// Recommend the optimal feasible shape parameter.
    Advise(AdviseCmd),
    /// Write the MN curve as CSV (beta,log_mn).
    Curve(CurveCmd),
    /// Print evenly spaced simplex nodes as CSV of coordinates.
    Nodes(NodesCmd),
    /// Build an interpolant from a data CSV and evaluate it.
    Interp(InterpCmd),
    /// Run a beta-sweep experiment and write the report CSV.
    Experiment(ExperimentCmd),
}

#[derive(Args)]
struct ConstantsCmd {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    b0: Option<f64>,
    /// Shape parameter the beta-dependent constants are evaluated at.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct AdviseCmd {
    #[command(flatten)]
    problem: ProblemFlags,
}

#[derive(Args)]
struct CurveCmd {
    #[command(flatten)]
    problem: ProblemFlags,
    #[arg(long)]
    beta_min: Option<f64>,
    #[arg(long)]
    beta_max: Option<f64>,
    /// Number of log-uniform samples.
    #[arg(long)]
    count: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NodesCmd {
    /// Simplex dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Lattice degree l (nodes have barycentric coordinates k/l).
    #[arg(long)]
    degree: Option<u32>,
    /// Scale of the standard simplex (vertices 0, b0*e_1, ..., b0*e_n).
    #[arg(long)]
    b0: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct InterpCmd {
    /// Shape parameter of the Gaussian kernel.
    #[arg(long)]
    beta: Option<f64>,
    /// CSV of centers and values (header x1,...,xn,y).
    #[arg(long)]
    data: Option<PathBuf>,
    /// CSV of evaluation points (header x1,...,xn). When omitted (1-d data
    /// only) a uniform grid over the node range is used.
    #[arg(long)]
    eval: Option<PathBuf>,
    /// Size of the generated 1-d evaluation grid.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentCmd {
    #[command(flatten)]
    problem: ProblemFlags,
    #[arg(long)]
    beta_min: Option<f64>,
    #[arg(long)]
    beta_max: Option<f64>,
    /// Number of log-uniform betas in the sweep.
    #[arg(long)]
    count: Option<usize>,
    /// Node layout (defaults to the criterion's natural one).
    #[arg(long, value_enum)]
    layout: Option<LayoutArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Constants(cmd) => run_constants(cmd),
        Command::Advise(cmd) => run_advise(cmd),
        Command::Curve(cmd) => run_curve(cmd),
        Command::Nodes(cmd) => run_nodes(cmd),
        Command::Interp(cmd) => run_interp(cmd),
        Command::Experiment(cmd) => run_experiment(cmd),
    }
}

/// Builds the validated problem description from flags and config file.
fn problem_config(flags: &ProblemFlags) -> Result<ProblemConfig, CliError> {
    let file = FileConfig::load(flags.config.as_deref())?;
    let criterion: Criterion = match flags.criterion {
        Some(c) => c.into(),
        None => required(None, file.criterion()?, "criterion")?,
    };
    let space = match flags.space {
        Some(s) => s.into(),
        None => required(None, file.space()?, "space")?,
    };
    let n = flags.n.or(file.n).unwrap_or(1);
    let b0 = required(flags.b0, file.b0, "b0")?;
    let delta = required(flags.delta, file.delta, "delta")?;
    let sigma = required(flags.sigma, file.sigma, "sigma")?;
    Ok(ProblemConfig::new(n, b0, delta, sigma, space, criterion)?)
}

fn with_output<F>(out: Option<&Path>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let io_err = |target: &str, e: std::io::Error| {
        CliError::Runtime(format!("cannot write {target}: {e}"))
    };
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|e| io_err(&path.display().to_string(), e))?;
            let mut writer = std::io::BufWriter::new(file);
            body(&mut writer).map_err(|e| io_err(&path.display().to_string(), e))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).map_err(|e| io_err("stdout", e))
        }
    }
}

fn run_constants(cmd: ConstantsCmd) -> Result<(), CliError> {
    let file = FileConfig::load(cmd.config.as_deref())?;
    let n = required(cmd.n, file.n, "n")?;
    let b0 = required(cmd.b0, file.b0, "b0")?;
    let beta = required(cmd.beta, file.beta, "beta")?;
    let k = BoundConstants::compute(n, b0, beta)?;
    with_output(None, |out| {
        writeln!(out, "n = {}", k.n)?;
        writeln!(out, "b0 = {}", format_float(k.b0))?;
        writeln!(out, "beta = {}", format_float(k.beta))?;
        writeln!(out, "gamma_n = {}", k.gamma_n)?;
        writeln!(out, "alpha_n = {}", format_float(k.alpha_n))?;
        writeln!(out, "delta_pp_scattered = {}", format_float(k.delta_pp_scattered))?;
        writeln!(out, "delta_pp_evenly = {}", format_float(k.delta_pp_evenly))?;
        writeln!(out, "c_scattered = {}", format_float(k.c_scattered))?;
        writeln!(out, "log_c_scattered = {}", format_float(k.log_c_scattered.ln_value()))?;
        writeln!(out, "delta_n = {}", format_float(k.delta_n))?;
        writeln!(
            out,
            "log_delta0_scattered = {}",
            format_float(k.log_delta0_scattered.ln_value())
        )?;
        writeln!(out, "c1_evenly = {}", format_float(k.c1_evenly))?;
        writeln!(out, "log_c2_evenly = {}", format_float(k.log_c2_evenly.ln_value()))?;
        writeln!(out, "c3_evenly = {}", format_float(k.c3_evenly))?;
        writeln!(
            out,
            "log_delta0_evenly = {}",
            format_float(k.log_delta0_evenly.ln_value())
        )
    })
}

fn run_advise(cmd: AdviseCmd) -> Result<(), CliError> {
    let config = problem_config(&cmd.problem)?;
    let result = advise(&config)?;
    with_output(None, |out| {
        writeln!(out, "beta_star = {}", format_float(result.beta_star))?;
        writeln!(
            out,
            "beta_unconstrained = {}",
            format_float(result.beta_unconstrained)
        )?;
        writeln!(out, "log_beta0 = {}", format_float(result.log_beta0))?;
        writeln!(out, "clamped = {}", result.clamped)?;
        writeln!(
            out,
            "log_mn_at_star = {}",
            format_float(result.log_mn_at_star)
        )
    })
}

fn run_curve(cmd: CurveCmd) -> Result<(), CliError> {
    let file = FileConfig::load(cmd.problem.config.as_deref())?;
    let config = problem_config(&cmd.problem)?;
    let beta_min = required(cmd.beta_min, file.beta_min, "beta-min")?;
    let beta_max = required(cmd.beta_max, file.beta_max, "beta-max")?;
    let count = cmd.count.or(file.count).unwrap_or(101);
    let curve = mn_curve(&config, beta_min, beta_max, count)?;
    let out = cmd.out.or(file.out);
    with_output(out.as_deref(), |w| {
        writeln!(w, "beta,log_mn")?;
        for (beta, value) in &curve.samples {
            writeln!(w, "{},{}", format_float(*beta), format_float(*value))?;
        }
        w.flush()
    })
}

fn run_nodes(cmd: NodesCmd) -> Result<(), CliError> {
    let file = FileConfig::load(cmd.config.as_deref())?;
    let n = cmd.n.or(file.n).unwrap_or(1) as usize;
    let degree = required(cmd.degree, file.degree, "degree")?;
    let scale = cmd.b0.or(file.b0).unwrap_or(1.0);
    let simplex = gshape::Simplex::standard(n, scale)?;
    let nodes = gshape::geometry::evenly_spaced_nodes(&simplex, degree)?;
    let out = cmd.out.or(file.out);
    with_output(out.as_deref(), |w| {
        write_table(
            w,
            &coordinate_header(n),
            nodes.cartesian().iter().cloned(),
        )
    })
}

fn run_interp(cmd: InterpCmd) -> Result<(), CliError> {
    let file = FileConfig::load(cmd.config.as_deref())?;
    let beta = required(cmd.beta, file.beta, "beta")?;
    let data_path = required(cmd.data, file.data, "data")?;
    let table = read_table(&data_path)?;
    if table.header.len() < 2 {
        return Err(CliError::Config(format!(
            "{}: need at least one coordinate column and one value column",
            data_path.display()
        )));
    }
    let dim = table.header.len() - 1;
    let centers: Vec<Vec<f64>> = table.rows.iter().map(|r| r[..dim].to_vec()).collect();
    let values: Vec<f64> = table.rows.iter().map(|r| r[dim]).collect();
    let (interpolant, report) = gshape::interpolation::build(&centers, &values, beta)?;
    eprintln!(
        "condition_estimate = {}",
        format_float(report.condition_estimate)
    );
    eprintln!(
        "max_node_residual = {}",
        format_float(report.max_node_residual)
    );
    eprintln!("fallback = {}", report.fallback);

    let eval_points: Vec<Vec<f64>> = match cmd.eval.or(file.eval) {
        Some(path) => {
            let eval_table = read_table(&path)?;
            if eval_table.header.len() != dim {
                return Err(CliError::Config(format!(
                    "{}: expected {dim} coordinate columns",
                    path.display()
                )));
            }
            eval_table.rows
        }
        None => {
            if dim != 1 {
                return Err(CliError::Config(
                    "--eval is required for multi-dimensional data".to_string(),
                ));
            }
            let count = cmd.count.or(file.count).unwrap_or(201).max(2);
            let lo = centers.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min);
            let hi = centers
                .iter()
                .map(|c| c[0])
                .fold(f64::NEG_INFINITY, f64::max);
            (0..count)
                .map(|i| vec![lo + (hi - lo) * i as f64 / (count - 1) as f64])
                .collect()
        }
    };

    let mut header = coordinate_header(dim);
    header.push("s".to_string());
    let rows: Result<Vec<Vec<f64>>, gshape::Error> = eval_points
        .into_iter()
        .map(|p| {
            let s = interpolant.evaluate(&p)?;
            let mut row = p;
            row.push(s);
            Ok(row)
        })
        .collect();
    let rows = rows?;
    let out = cmd.out.or(file.out);
    with_output(out.as_deref(), |w| write_table(w, &header, rows.into_iter()))
}

fn run_experiment(cmd: ExperimentCmd) -> Result<(), CliError> {
    let file = FileConfig::load(cmd.problem.config.as_deref())?;
    let config = problem_config(&cmd.problem)?;
    let beta_min = required(cmd.beta_min, file.beta_min, "beta-min")?;
    let beta_max = required(cmd.beta_max, file.beta_max, "beta-max")?;
    let count = cmd.count.or(file.count).unwrap_or(25).max(2);
    if !(beta_min > 0.0 && beta_max > beta_min) {
        return Err(CliError::Config(format!(
            "need 0 < beta-min < beta-max (got {beta_min}, {beta_max})"
        )));
    }
    let layout = match cmd.layout.or(file.layout()?) {
        Some(LayoutArg::Grid) => NodeLayout::EquispacedGrid,
        Some(LayoutArg::Simplex) => NodeLayout::SimplexEven,
        None => match config.criterion {
            Criterion::Scattered => NodeLayout::EquispacedGrid,
            Criterion::EvenlySpaced => NodeLayout::SimplexEven,
        },
    };
    let grid: Vec<f64> = (0..count)
        .map(|i| {
            if i == count - 1 {
                beta_max
            } else {
                (beta_min.ln() + (beta_max.ln() - beta_min.ln()) * i as f64 / (count - 1) as f64)
                    .exp()
            }
        })
        .collect();
    let test_fn = TestFunction::sinc_band_limited(config.sigma)?;
    let report = beta_sweep(&config, &test_fn, layout, &grid)?;
    eprintln!(
        "argmin_empirical = {}",
        format_float(report.argmin_empirical)
    );
    eprintln!("argmin_mn = {}", format_float(report.argmin_mn));
    let out = cmd.out.or(file.out);
    with_output(out.as_deref(), |w| write_csv(w, &report))
}
