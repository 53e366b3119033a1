//! The `fracvoigt` command line.
//!
//! Exit codes: 0 success, 1 solver did not converge (output is still
//! written and marked in the trailer), 2 usage or parameter error,
//! 3 I/O error (including unreadable or malformed input CSV).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;

use crate::csvio::{self, format_value};
use crate::error::Error;
use crate::expr;
use crate::fracops::{Grid, Signal};
use crate::nonlinear::{self, ConstitutiveLaw, ProbeConfig};
use crate::special::{self, MlParams};
use crate::voigt::{self, PicardResult, SolverConfig, VoigtParams};

const EXPR_HELP: &str = "Expressions use numbers, the variable, + - * / ^, unary minus and \
exp, log, sqrt, sin, cos, abs, pow(a, b). ^ is right associative and binds tighter than unary \
minus (-2^2 = -4). Multiplication must be explicit (2*t, not 2t).";

#[derive(Debug, Parser)]
#[command(
    name = "fracvoigt",
    version,
    about = "Fractional Voigt creep models: Mittag-Leffler functions, strain, Picard solvers",
    after_help = EXPR_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(z)
    Ml {
        /// Order, in (0, 2]
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Second parameter, > 0
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        beta: f64,
        /// Real argument, in [-100, 30]
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Tabulate the creep function k_alpha(t)
    Creep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Strain response to a stress history (closed-form convolution)
    Strain {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        stress: StressArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Strain response by successive approximations
    Picard {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        stress: StressArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Solve the nonlinear model with stress sigma(eps)
    Solve {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Constitutive law as an expression in `eps`, e.g. "1/(1+eps)"
        #[arg(long)]
        sigma_expr: String,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sample a constitutive law against the existence hypotheses
    Check {
        /// Constitutive law as an expression in `eps`
        #[arg(long)]
        sigma_expr: String,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Fractional order, in (0, 1]
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Viscosity coefficient, > 0
    #[arg(long, allow_negative_numbers = true)]
    eta: f64,
    /// Elastic modulus, > 0
    #[arg(long, allow_negative_numbers = true)]
    e_mod: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// End of the time interval [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    /// Number of grid intervals [default: 256]
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StressArgs {
    /// Stress history as an expression in `t`
    #[arg(long)]
    stress_expr: Option<String>,
    /// Stress history from a `t,value` CSV on a uniform grid starting at 0
    /// (the grid is taken from the file)
    #[arg(long)]
    stress_csv: Option<PathBuf>,
    /// Named stress history
    #[arg(long, value_enum)]
    stress_builtin: Option<StressBuiltin>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StressBuiltin {
    /// sigma(t) = 0
    Zero,
    /// sigma(t) = 1 for t >= 0
    UnitStep,
    /// sigma(t) = t
    Ramp,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Sup-norm stopping tolerance
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-8)]
    tol: f64,
    /// Iteration limit
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Relaxation factor in (0, 1]
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    damping: f64,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Write the CSV here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

/// Name the command-line flag behind a library parameter error.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match &e {
            Error::Domain { name, .. } => {
                CliError::Usage(format!("--{}: {e}", name.replace('_', "-")))
            }
            Error::OutOfRange { .. } => {
                CliError::Usage(format!("{e} (reduce --t-end or the time scale)"))
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Run the command line `args` (including the program name) and return the
/// process exit code. Results go to `out` unless `-o` is given; diagnostics
/// go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    match dispatch(cli.command, out) {
        Ok(converged) => {
            if converged {
                0
            } else {
                let _ = writeln!(err, "warning: the iteration did not converge");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Ml { alpha, beta, z } => {
            let p = MlParams::new(alpha, beta)?;
            let v = special::ml_eval(p, z).map_err(|e| match e {
                Error::OutOfRange { .. } => CliError::Usage(format!("--z: {e}")),
                e => e.into(),
            })?;
            writeln!(out, "{v}").map_err(io_error("standard output"))?;
            Ok(true)
        }
        Command::Creep {
            model,
            grid,
            out: o,
        } => {
            let params = model.params()?;
            let grid = grid.grid()?;
            let k = Signal::try_from_fn(grid, |t| {
                voigt::creep_function(&params, t).map_err(CliError::from)
            })?;
            emit(&k, &[], o.output.as_deref(), out)?;
            Ok(true)
        }
        Command::Strain {
            model,
            grid,
            stress,
            out: o,
        } => {
            let params = model.params()?;
            let stress = stress.signal(&grid)?;
            let trailer = stress_warning(&stress);
            let eps = voigt::linear_strain(&params, &stress)?;
            emit(&eps, &trailer, o.output.as_deref(), out)?;
            Ok(true)
        }
        Command::Picard {
            model,
            grid,
            stress,
            solver,
            out: o,
        } => {
            let params = model.params()?;
            let stress = stress.signal(&grid)?;
            let cfg = solver.config()?;
            let mut trailer = stress_warning(&stress);
            let r = voigt::picard_linear(&params, &stress, &cfg)?;
            trailer.extend(solver_trailer(&r, None));
            emit(&r.solution, &trailer, o.output.as_deref(), out)?;
            Ok(r.converged)
        }
        Command::Solve {
            model,
            grid,
            sigma_expr,
            solver,
            out: o,
        } => {
            let params = model.params()?;
            let grid = grid.grid()?;
            let law = law_from(&sigma_expr)?;
            let cfg = solver.config()?;
            let r = nonlinear::solve_nonlinear(&params, &law, grid, &cfg)?;
            let res = nonlinear::residual(&params, &law, &r.solution)?;
            let trailer = solver_trailer(&r, Some(res));
            emit(&r.solution, &trailer, o.output.as_deref(), out)?;
            Ok(r.converged)
        }
        Command::Check { sigma_expr } => {
            let law = law_from(&sigma_expr)?;
            let r = nonlinear::check_hypotheses(&law, &ProbeConfig::default())?;
            let text = format!(
                "is_decreasing={}\nis_convex={}\nsigma_at_zero={}\ne0_estimate={}\ne_inf_estimate={}\nverdict={}\n\
                 # sampled check only: a true verdict does not certify existence\n",
                r.is_decreasing,
                r.is_convex,
                r.sigma_at_zero,
                r.e0_estimate,
                r.e_inf_estimate,
                r.verdict
            );
            out.write_all(text.as_bytes())
                .map_err(io_error("standard output"))?;
            Ok(true)
        }
    }
}

impl ModelArgs {
    fn params(&self) -> Result<VoigtParams, CliError> {
        Ok(VoigtParams::new(self.eta, self.e_mod, self.alpha)?)
    }
}

impl GridArgs {
    fn grid(&self) -> Result<Grid, CliError> {
        Ok(Grid::new(self.t_end.unwrap_or(1.0), self.n.unwrap_or(256))?)
    }
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            damping: self.damping,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl StressArgs {
    fn signal(&self, grid: &GridArgs) -> Result<Signal, CliError> {
        if let Some(path) = &self.stress_csv {
            if grid.t_end.is_some() || grid.n.is_some() {
                return Err(CliError::Usage(
                    "--t-end and --n cannot be combined with --stress-csv (the file defines the grid)".into(),
                ));
            }
            let file = File::open(path).map_err(io_error(path))?;
            return csvio::read_signal(file)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())));
        }
        let grid = grid.grid()?;
        if let Some(src) = &self.stress_expr {
            let e = expr::parse(src, "t")
                .map_err(|e| CliError::Usage(format!("--stress-expr: {e}")))?;
            return Signal::try_from_fn(grid, |t| {
                e.eval(t)
                    .map_err(|err| CliError::Usage(format!("--stress-expr: {err} at t = {t}")))
            });
        }
        let b = self
            .stress_builtin
            .expect("clap enforces one stress source");
        Ok(Signal::from_fn(grid, |t| match b {
            StressBuiltin::Zero => 0.0,
            StressBuiltin::UnitStep => 1.0,
            StressBuiltin::Ramp => t,
        })?)
    }
}

fn law_from(src: &str) -> Result<ConstitutiveLaw, CliError> {
    ConstitutiveLaw::expression(src).map_err(|e| CliError::Usage(format!("--sigma-expr: {e}")))
}

fn stress_warning(stress: &Signal) -> Vec<String> {
    let s0 = stress.values()[0];
    if s0 == 0.0 {
        return Vec::new();
    }
    warn!("sigma(0) = {s0} is nonzero; the model assumes sigma(0) = 0");
    vec![format!(
        "warning: sigma(0) = {} is nonzero",
        format_value(s0)
    )]
}

fn solver_trailer(r: &PicardResult, residual: Option<f64>) -> Vec<String> {
    let mut t = vec![
        format!("iterations={}", r.iterations),
        format!("final_diff={}", format_value(r.final_diff)),
    ];
    if let Some(res) = residual {
        t.push(format!("residual={}", format_value(res)));
    }
    t.push(format!("converged={}", r.converged));
    t
}

fn emit(
    signal: &Signal,
    trailer: &[String],
    path: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(io_error(p))?;
            csvio::write_signal(BufWriter::new(f), signal, trailer).map_err(io_error(p))
        }
        None => csvio::write_signal(stdout, signal, trailer).map_err(io_error("standard output")),
    }
}

fn io_error<P: AsRef<Path>>(what: P) -> impl FnOnce(std::io::Error) -> CliError {
    let name = what.as_ref().display().to_string();
    move |e| CliError::Io(format!("{name}: {e}"))
}
