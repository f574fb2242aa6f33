//! Command-line front end: `solve`, `spectrum`, `gen`, `verify`, `bench`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 singular system. Diagnostics go to standard error only.

pub mod bench;
pub mod problem;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use circsym_core::{
    solve, spectrum, Error as CoreError, SolveOptions, SolvePath, SolveReport,
    DEFAULT_SINGULAR_TOLERANCE,
};

use crate::bench::{run_bench, BenchConfig, BenchPath};
use crate::problem::{float_array, float_list, fmt_float, InputFormat, ProblemFile, Rhs};
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "circsym",
    version,
    about = "Solve symmetric circulant real linear systems"
)]
pub struct Cli {
    /// Relative threshold under which an eigenvalue counts as zero.
    #[arg(long, global = true, default_value_t = DEFAULT_SINGULAR_TOLERANCE)]
    pub tolerance: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the system in a problem file.
    Solve(SolveArgs),
    /// Print the eigenvalues of a matrix.
    Spectrum(SpectrumArgs),
    /// Write a random diagonally dominant problem file.
    Gen(GenArgs),
    /// Cross-check every solver path against the dense oracle.
    Verify(VerifyArgs),
    /// Time the solver paths and fit scaling exponents.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Toml,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Auto,
    Direct,
    Fft,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormatArg {
    Auto,
    Toml,
    Csv,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem file, or `-` for standard input.
    pub input: String,
    #[arg(long, value_enum, default_value_t = PathArg::Auto)]
    pub path: PathArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Toml)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = InputFormatArg::Auto)]
    pub input_format: InputFormatArg,
    /// Smallest n routed to the FFT path by `--path auto`.
    #[arg(long, default_value_t = circsym_core::solver::DEFAULT_FFT_THRESHOLD)]
    pub fft_threshold: usize,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Problem file or first-row CSV, or `-` for standard input.
    #[arg(required_unless_present = "row", conflicts_with = "row")]
    pub input: Option<String>,
    /// First row given inline, e.g. `--row 4,1,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub row: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Toml)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = InputFormatArg::Auto)]
    pub input_format: InputFormatArg,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use a constant right-hand side with this value.
    #[arg(long, allow_hyphen_values = true)]
    pub constant: Option<f64>,
    /// Output path, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Toml)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 32)]
    pub n_max: usize,
    /// Number of seeds per n.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// First seed; cases use `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Deliberately corrupt eigenvalue k to check that the suite notices.
    #[arg(long)]
    pub perturb_eigenvalue: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Strictly ascending comma-separated sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 1024, 4096])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 9)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 2)]
    pub warmup: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [BenchPathArg::Direct, BenchPathArg::Fft, BenchPathArg::Dense])]
    pub paths: Vec<BenchPathArg>,
    /// Largest n timed on the dense LU path.
    #[arg(long, default_value_t = 1024)]
    pub dense_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output path, `-` for standard output.
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchPathArg {
    Direct,
    Fft,
    Dense,
}

impl std::fmt::Display for BenchPathArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(BenchPath::from(*self).as_str())
    }
}

impl From<BenchPathArg> for BenchPath {
    fn from(p: BenchPathArg) -> Self {
        match p {
            BenchPathArg::Direct => BenchPath::Direct,
            BenchPathArg::Fft => BenchPath::Fft,
            BenchPathArg::Dense => BenchPath::Dense,
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Singular(String),
    #[error("{0}")]
    VerificationFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Singular(_) => EXIT_SINGULAR,
            CliError::VerificationFailed(_) => EXIT_VERIFY_FAILED,
        }
    }
}

impl From<problem::ProblemError> for CliError {
    fn from(e: problem::ProblemError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("i/o error: {e}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SingularSystem {
                indices,
                magnitudes,
            } => {
                let listed: Vec<String> = indices
                    .iter()
                    .zip(&magnitudes)
                    .map(|(k, m)| format!("k={k} |psi_k|={}", fmt_float(*m)))
                    .collect();
                CliError::Singular(format!("singular system: {}", listed.join(", ")))
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Standard streams, injectable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                io.stderr.write_all(text.as_bytes())
            } else {
                io.stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, io) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    if !cli.tolerance.is_finite() || cli.tolerance < 0.0 {
        return Err(CliError::Input(format!(
            "--tolerance must be finite and non-negative, got {}",
            cli.tolerance
        )));
    }
    match &cli.command {
        Command::Solve(args) => cmd_solve(args, cli.tolerance, io),
        Command::Spectrum(args) => cmd_spectrum(args, cli.tolerance, io),
        Command::Gen(args) => cmd_gen(args, io),
        Command::Verify(args) => cmd_verify(args, cli.tolerance, io),
        Command::Bench(args) => cmd_bench(args, io),
    }
}

fn read_input(path: &str, io: &mut Io<'_>) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io.stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    }
}

fn load_problem(
    path: &str,
    format: InputFormatArg,
    io: &mut Io<'_>,
) -> Result<ProblemFile, CliError> {
    let content = read_input(path, io)?;
    let format = match format {
        InputFormatArg::Toml => InputFormat::Toml,
        InputFormatArg::Csv => InputFormat::Csv,
        InputFormatArg::Auto => InputFormat::detect((path != "-").then_some(path), &content),
    };
    Ok(ProblemFile::parse(&content, format)?)
}

fn write_output(path: &str, bytes: &[u8], io: &mut Io<'_>) -> Result<(), CliError> {
    if path == "-" {
        io.stdout.write_all(bytes)?;
        Ok(())
    } else {
        fs::write(PathBuf::from(path), bytes)
            .map_err(|e| CliError::Input(format!("cannot write {path}: {e}")))
    }
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    path: &'static str,
    residual_inf_norm: f64,
    spectrum_min_abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fft_imag_residue: Option<f64>,
    solution: &'a [f64],
}

impl<'a> From<&'a SolveReport> for SolveOutput<'a> {
    fn from(r: &'a SolveReport) -> Self {
        Self {
            path: r.path.as_str(),
            residual_inf_norm: r.residual_inf_norm,
            spectrum_min_abs: r.spectrum_min_abs,
            fft_imag_residue: r.fft_imag_residue,
            solution: r.solution.as_slice(),
        }
    }
}

/// Structured-text rendering of a solve report.
pub fn format_solve_toml(report: &SolveReport) -> String {
    let mut out = format!(
        "path = \"{}\"\nresidual_inf_norm = {}\nspectrum_min_abs = {}\n",
        report.path,
        fmt_float(report.residual_inf_norm),
        fmt_float(report.spectrum_min_abs)
    );
    if let Some(im) = report.fft_imag_residue {
        out.push_str(&format!("fft_imag_residue = {}\n", fmt_float(im)));
    }
    out.push_str(&format!(
        "solution = {}\n",
        float_array(report.solution.as_slice())
    ));
    out
}

pub fn cmd_solve(args: &SolveArgs, tolerance: f64, io: &mut Io<'_>) -> Result<(), CliError> {
    let problem = load_problem(&args.input, args.input_format, io)?;
    let spec = problem.spec()?;
    let b = problem.rhs_vector()?;
    let options = SolveOptions {
        path: match args.path {
            PathArg::Auto => None,
            PathArg::Direct => Some(SolvePath::Direct),
            PathArg::Fft => Some(SolvePath::Fft),
            PathArg::Constant => Some(SolvePath::ConstantRhs),
        },
        fft_threshold: args.fft_threshold,
        singular_tolerance: tolerance,
    };
    let report = solve(&spec, &b, &options)?;
    let text = match args.format {
        OutputFormat::Toml => format_solve_toml(&report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&SolveOutput::from(&report))
                .expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = format!(
                "path,{}\nresidual_inf_norm,{}\nspectrum_min_abs,{}\n",
                report.path,
                fmt_float(report.residual_inf_norm),
                fmt_float(report.spectrum_min_abs)
            );
            if let Some(im) = report.fft_imag_residue {
                s.push_str(&format!("fft_imag_residue,{}\n", fmt_float(im)));
            }
            s.push_str(&format!(
                "solution,{}\n",
                float_list(report.solution.as_slice())
            ));
            s
        }
    };
    io.stdout.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    n: usize,
    singular_tolerance: f64,
    singular: bool,
    near_zero: &'a [usize],
    values: &'a [f64],
}

pub fn cmd_spectrum(args: &SpectrumArgs, tolerance: f64, io: &mut Io<'_>) -> Result<(), CliError> {
    let spec = match (&args.row, &args.input) {
        (Some(row), _) => ProblemFile::parse_csv(row)?.spec()?,
        (None, Some(path)) => load_problem(path, args.input_format, io)?.spec()?,
        (None, None) => return Err(CliError::Input("no input given".into())),
    };
    let psi = spectrum(&spec).with_tolerance(tolerance)?;
    let report = psi.is_singular();
    if report.singular {
        log::warn!("near-zero eigenvalues at k = {:?}", report.offending);
    }
    let out = SpectrumOutput {
        n: psi.n(),
        singular_tolerance: tolerance,
        singular: report.singular,
        near_zero: &report.offending,
        values: psi.values(),
    };
    let text = match args.format {
        OutputFormat::Toml => {
            let near: Vec<String> = out.near_zero.iter().map(|k| k.to_string()).collect();
            format!(
                "n = {}\nsingular_tolerance = {}\nsingular = {}\nnear_zero = [{}]\nvalues = {}\n",
                out.n,
                fmt_float(tolerance),
                out.singular,
                near.join(", "),
                float_array(out.values)
            )
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&out).expect("spectrum serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("k,psi,near_zero\n");
            for (k, v) in out.values.iter().enumerate() {
                s.push_str(&format!(
                    "{k},{},{}\n",
                    fmt_float(*v),
                    out.near_zero.contains(&k)
                ));
            }
            s
        }
    };
    io.stdout.write_all(text.as_bytes())?;
    Ok(())
}

/// The problem `gen` writes for `(n, seed)`.
pub fn generated_problem(n: usize, seed: u64, constant: Option<f64>) -> ProblemFile {
    let spec = circsym_core::random_spec(n, seed);
    let rhs = match constant {
        Some(constant) => Rhs::Constant { constant },
        None => Rhs::Values(circsym_core::random_rhs(n, seed).into_inner()),
    };
    ProblemFile::new(spec.first_row().to_vec(), Some(rhs))
}

pub fn cmd_gen(args: &GenArgs, io: &mut Io<'_>) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    if args.constant.is_some_and(|c| !c.is_finite()) {
        return Err(CliError::Input("--constant must be finite".into()));
    }
    let problem = generated_problem(args.n, args.seed, args.constant);
    let text = match args.format {
        OutputFormat::Toml => problem.to_toml(),
        OutputFormat::Csv => problem.to_csv(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&problem).expect("problem serializes");
            s.push('\n');
            s
        }
    };
    write_output(&args.output, text.as_bytes(), io)
}

pub fn cmd_verify(args: &VerifyArgs, tolerance: f64, io: &mut Io<'_>) -> Result<(), CliError> {
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(CliError::Input(format!(
            "invalid n range {}..={}",
            args.n_min, args.n_max
        )));
    }
    if args.n_max > circsym_core::oracle::DEFAULT_DENSE_CAP {
        return Err(CliError::Input(format!(
            "--n-max exceeds the dense oracle cap of {}",
            circsym_core::oracle::DEFAULT_DENSE_CAP
        )));
    }
    if args.seeds == 0 {
        return Err(CliError::Input("--seeds must be at least 1".into()));
    }
    let report = run_verify(&VerifyConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        seeds: args.seeds,
        base_seed: args.seed,
        perturb_eigenvalue: args.perturb_eigenvalue,
        singular_tolerance: tolerance,
    });
    report.write(io.stdout)?;
    if report.passed() {
        return Ok(());
    }
    let worst = report
        .worst()
        .map(|(case, check)| {
            format!(
                "worst offender: n={} seed={} {} error {:e} > tolerance {:e}",
                case.n, case.seed, check.name, check.error, check.tolerance
            )
        })
        .or_else(|| {
            report.cases.iter().find_map(|c| {
                c.failure
                    .as_ref()
                    .map(|f| format!("n={} seed={}: {f}", c.n, c.seed))
            })
        })
        .unwrap_or_default();
    Err(CliError::VerificationFailed(format!(
        "{} of {} cases failed; {worst}",
        report.failures(),
        report.cases.len()
    )))
}

pub fn cmd_bench(args: &BenchArgs, io: &mut Io<'_>) -> Result<(), CliError> {
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        repetitions: args.repetitions,
        warmup: args.warmup,
        paths: args.paths.iter().map(|&p| p.into()).collect(),
        dense_max: args.dense_max,
        seed: args.seed,
        ..BenchConfig::default()
    };
    config.validate().map_err(CliError::Input)?;
    let result = run_bench(&config)?;
    let mut csv = Vec::new();
    result.write_csv(&mut csv)?;
    write_output(&args.output, &csv, io)
}
