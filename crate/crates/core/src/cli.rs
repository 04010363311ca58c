//! The `grover-svp` command line.
//!
//! Every command prints one JSON report on stdout. `--report FILE` also
//! writes it to `FILE`; otherwise, when `GROVER_SVP_REPORT_DIR` is set, the
//! report lands in `<dir>/<command>.json`.
//!
//! Exit codes: 0 success, 2 bad input, 3 a resource cap was exceeded,
//! 4 a verification failed.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bkz::{
    bkz_reduce, quality_bound_ln, BkzConfig, ClassicalBackend, CostLedger, Delta, EarlyTermination,
    GroverCostBackend, SvpBackend,
};
use crate::circuit::{metrics, write_circuit};
use crate::estimate::{
    extrapolate, fit, measure_dimension, sweep_csv, Extrapolation, LogBase, Metric, MetricFit,
    SweepConfig, SweepPoint, ThresholdPolicy, TABLE_DIMS,
};
use crate::grover::{
    assemble_with, iteration_count, plan_grover, solution_probability, success_probability,
    GroverPlan, SearchOracle, ASSEMBLY_ITERATION_CAP, DEFAULT_SOLUTIONS,
};
use crate::lattice::{parse_basis, write_basis, LatticeBasis};
use crate::oracle::{
    choose_threshold, derive_bounds, synthesize_oracle, BoundPolicy, OracleCircuit, OracleReport,
    Threshold,
};
use crate::sim::{brute_force_svp, verify_oracle, VerificationReport, DEFAULT_EXHAUSTION_CAP_BITS};
use crate::{Error, Result};

pub const REPORT_DIR_ENV: &str = "GROVER_SVP_REPORT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "grover-svp",
    version,
    about = "Grover oracles, resource estimates and BKZ for the shortest vector problem"
)]
pub struct Cli {
    /// Leave the generation time out of reports.
    #[arg(long, global = true)]
    pub no_timestamp: bool,

    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Also write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oracle synthesis and exhaustive verification.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Plans (and optionally simulates) the full Grover search.
    Grover(GroverArgs),
    /// Measures oracles over a range of dimensions.
    Sweep(SweepArgs),
    /// Fits the scaling families to a sweep report.
    Fit(FitArgs),
    /// Evaluates fits at large dimensions beside the published coefficients.
    Extrapolate(ExtrapolateArgs),
    /// BKZ reduction with a classical or Grover-costed SVP backend.
    Bkz(BkzArgs),
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Writes the oracle circuit and its resource report.
    Build(BuildArgs),
    /// Checks the oracle against brute force on every input pattern.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EncodingArgs {
    /// The same bound `d` on every coefficient.
    #[arg(long, value_name = "D", group = "bounds_policy")]
    pub uniform_d: Option<i64>,

    /// One bound per coefficient, comma separated.
    #[arg(
        long,
        value_name = "D,..",
        value_delimiter = ',',
        group = "bounds_policy"
    )]
    pub bounds: Option<Vec<i64>>,

    /// Bounds `ceil(A |dual_i|)`; `A` defaults to the Gaussian heuristic.
    #[arg(long, value_name = "A", num_args = 0..=1, default_missing_value = "gh", group = "bounds_policy")]
    pub dual: Option<String>,

    /// `ceil(log2 n)` bits per coefficient.
    #[arg(long, group = "bounds_policy")]
    pub log_n: bool,
}

impl EncodingArgs {
    pub fn policy(&self, default: BoundPolicy) -> Result<BoundPolicy> {
        if let Some(d) = self.uniform_d {
            return Ok(BoundPolicy::Uniform(d));
        }
        if let Some(d) = &self.bounds {
            return Ok(BoundPolicy::Explicit(d.clone()));
        }
        if self.log_n {
            return Ok(BoundPolicy::LogN);
        }
        match self.dual.as_deref() {
            None => Ok(default),
            Some("gh") => Ok(BoundPolicy::DualBasis(None)),
            Some(a) => a
                .parse()
                .map(|a| BoundPolicy::DualBasis(Some(a)))
                .map_err(|_| Error::input(format!("bad dual-basis scale `{a}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdKind {
    Gh,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    /// Radius from the Gaussian heuristic (the default).
    #[arg(long, value_enum, group = "threshold_policy")]
    pub threshold: Option<ThresholdKind>,

    /// Radius `scale * gh`, `scale >= 1`.
    #[arg(long, value_name = "SCALE", group = "threshold_policy")]
    pub threshold_scale: Option<f64>,

    /// Explicit bound on the squared length.
    #[arg(long, value_name = "TAU", group = "threshold_policy")]
    pub threshold_sq: Option<u64>,
}

impl ThresholdArgs {
    pub fn policy(&self) -> ThresholdPolicy {
        match (self.threshold_sq, self.threshold_scale) {
            (Some(t), _) => ThresholdPolicy::Explicit(t),
            (None, Some(s)) => ThresholdPolicy::Gh(s),
            (None, None) => ThresholdPolicy::Gh(1.0),
        }
    }

    pub fn resolve(&self, basis: &LatticeBasis) -> Result<Threshold> {
        match self.policy() {
            ThresholdPolicy::Explicit(t) => Ok(Threshold::explicit(t)),
            ThresholdPolicy::Gh(s) => choose_threshold(basis, s),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OracleInput {
    /// Basis file: `n m`, then `n` rows of `m` integers.
    pub basis: PathBuf,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: OracleInput,
    /// Where to write the circuit text.
    #[arg(long, value_name = "FILE")]
    pub circuit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: OracleInput,
    /// Delete gate `K` before verifying.
    #[arg(long, value_name = "K")]
    pub mutate: Option<usize>,
    /// Largest number of input bits checked exhaustively.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTION_CAP_BITS)]
    pub cap: u32,
}

#[derive(Debug, Args)]
pub struct GroverArgs {
    #[command(flatten)]
    pub input: OracleInput,
    /// Assumed number of solutions.
    #[arg(long, default_value_t = DEFAULT_SOLUTIONS)]
    pub m: u64,
    /// Run the search on a simulator with the true solution count.
    #[arg(long)]
    pub simulate: bool,
    /// Largest number of input bits simulated.
    #[arg(long, default_value_t = 16)]
    pub sim_cap: u32,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Dimensions, comma separated; `a..b` ranges are accepted.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<String>>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Basis entries are drawn from `[-B, B]`.
    #[arg(long, default_value_t = 10)]
    pub entry_bound: i64,
    #[command(flatten)]
    pub encoding: EncodingArgs,
    #[command(flatten)]
    pub threshold: ThresholdArgs,
    /// Skip the Grover planning of each point.
    #[arg(long)]
    pub no_grover: bool,
    /// Also write the CSV table here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBaseArg {
    Two,
    E,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// A report written by `sweep`.
    pub sweep: PathBuf,
    #[arg(long, value_enum, default_value = "two")]
    pub log_base: LogBaseArg,
}

#[derive(Debug, Args)]
pub struct ExtrapolateArgs {
    /// A report written by `fit`; without one only the published
    /// coefficients are evaluated.
    #[arg(long, value_name = "FILE")]
    pub fits: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = [186u32, 400])]
    pub targets: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Classical,
    GroverCost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TerminationArg {
    None,
    NoChange,
    TourBudget,
}

#[derive(Debug, Args)]
pub struct BkzArgs {
    pub basis: PathBuf,
    #[arg(long)]
    pub beta: usize,
    #[arg(long, value_enum, default_value = "classical")]
    pub backend: BackendArg,
    #[arg(long, default_value_t = 64)]
    pub max_tours: usize,
    #[arg(long, value_enum, default_value = "no-change")]
    pub termination: TerminationArg,
    /// LLL parameter in `(1/4, 1)`.
    #[arg(long, default_value_t = 0.99)]
    pub delta: f64,
    /// Hermite constant for blocksizes beyond the exact table.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Where to write the reduced basis.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// What a command produced besides its report.
enum Failure {
    Error(Error),
    /// The report was written but a check failed.
    Verification(String),
    /// Some items failed; their errors are in the report.
    Partial(i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Cap { .. } | Error::WidthOverflow(_) => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
    report: &'a T,
}

struct Output<'a> {
    cli: &'a Cli,
}

impl Output<'_> {
    fn emit<T: Serialize>(&self, command: &str, report: &T) -> Result<()> {
        let generated_at = (!self.cli.no_timestamp).then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        let env = Envelope {
            command,
            version: env!("CARGO_PKG_VERSION"),
            generated_at,
            report,
        };
        let text = serde_json::to_string_pretty(&env)? + "\n";
        print!("{text}");
        let target = match (&self.cli.report, std::env::var_os(REPORT_DIR_ENV)) {
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => {
                Some(Path::new(&dir).join(format!("{}.json", command.replace(' ', "-"))))
            }
            (None, None) => None,
        };
        if let Some(path) = target {
            write_file(&path, &text)?;
        }
        Ok(())
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)
        .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

pub fn read_basis(path: &Path) -> Result<LatticeBasis> {
    parse_basis(&read_file(path)?)
}

fn load_oracle(input: &OracleInput) -> Result<(LatticeBasis, OracleCircuit)> {
    let basis = read_basis(&input.basis)?;
    let enc = derive_bounds(
        &basis,
        &input.encoding.policy(BoundPolicy::DualBasis(None))?,
    )?;
    let threshold = input.threshold.resolve(&basis)?;
    let oracle = synthesize_oracle(&basis, &enc, &threshold)?;
    Ok((basis, oracle))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_INPUT;
        }
        // a second initialization (e.g. from tests) keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    match dispatch(&cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_VERIFY
        }
        Err(Failure::Partial(code)) => code,
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<(), Failure> {
    let out = Output { cli };
    match &cli.command {
        Command::Oracle(OracleCommand::Build(a)) => cmd_oracle_build(&out, a),
        Command::Oracle(OracleCommand::Verify(a)) => cmd_oracle_verify(&out, a),
        Command::Grover(a) => cmd_grover(&out, a),
        Command::Sweep(a) => cmd_sweep(&out, a),
        Command::Fit(a) => cmd_fit(&out, a),
        Command::Extrapolate(a) => cmd_extrapolate(&out, a),
        Command::Bkz(a) => cmd_bkz(&out, a),
    }
}

#[derive(Serialize)]
struct BuildReport {
    #[serde(flatten)]
    oracle: OracleReport,
    gates: usize,
    circuit_file: Option<String>,
}

fn cmd_oracle_build(out: &Output, a: &BuildArgs) -> std::result::Result<(), Failure> {
    let (basis, oracle) = load_oracle(&a.input)?;
    if let Some(path) = &a.circuit {
        write_file(path, &write_circuit(&oracle.circuit))?;
    }
    let report = BuildReport {
        oracle: OracleReport::new(&basis, &oracle, metrics(&oracle.circuit)),
        gates: oracle.circuit.len(),
        circuit_file: a.circuit.as_ref().map(|p| p.display().to_string()),
    };
    out.emit("oracle build", &report)?;
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    mutated_gate: Option<usize>,
    tau: u64,
    #[serde(flatten)]
    result: VerificationReport,
}

fn cmd_oracle_verify(out: &Output, a: &VerifyArgs) -> std::result::Result<(), Failure> {
    let (basis, mut oracle) = load_oracle(&a.input)?;
    if let Some(k) = a.mutate {
        if oracle.circuit.remove_gate(k).is_none() {
            return Err(Error::input(format!(
                "no gate {k}; the oracle has {} gates",
                oracle.circuit.len()
            ))
            .into());
        }
    }
    let result = verify_oracle(&oracle, &basis, a.cap)?;
    let passed = result.passed();
    let counterexample = result.first_counterexample.clone();
    let failures = result.failures;
    out.emit(
        "oracle verify",
        &VerifyReport {
            passed,
            mutated_gate: a.mutate,
            tau: oracle.threshold.tau,
            result,
        },
    )?;
    if passed {
        return Ok(());
    }
    Err(Failure::Verification(match counterexample {
        Some(c) => format!(
            "{failures} wrong outputs; first at pattern {} (x = {:?}): expected {}, got {}",
            c.pattern, c.coefficients, c.expected, c.got
        ),
        None => "ancillas or inputs not restored".to_string(),
    }))
}

#[derive(Serialize)]
struct SimulationReport {
    solutions_true: u64,
    k: u64,
    measured: f64,
    predicted: f64,
    abs_error: f64,
    passed: bool,
}

#[derive(Serialize)]
struct GroverReport {
    tau: u64,
    plan: GroverPlan,
    simulation: Option<SimulationReport>,
}

/// Agreement required between simulated and closed-form success.
pub const SIMULATION_TOLERANCE: f64 = 1e-6;

fn cmd_grover(out: &Output, a: &GroverArgs) -> std::result::Result<(), Failure> {
    let (basis, oracle) = load_oracle(&a.input)?;
    let plan = plan_grover(&oracle, a.m)?;
    let simulation = if a.simulate {
        Some(simulate(&basis, &oracle, a.sim_cap)?)
    } else {
        None
    };
    let failed = simulation.as_ref().is_some_and(|s| !s.passed);
    let msg = simulation
        .as_ref()
        .map(|s| format!("measured {} vs predicted {}", s.measured, s.predicted));
    out.emit(
        "grover",
        &GroverReport {
            tau: oracle.threshold.tau,
            plan,
            simulation,
        },
    )?;
    if failed {
        return Err(Failure::Verification(msg.unwrap_or_default()));
    }
    Ok(())
}

fn simulate(basis: &LatticeBasis, oracle: &OracleCircuit, cap: u32) -> Result<SimulationReport> {
    let bits = oracle.encoding.total_input_bits();
    if bits > cap {
        return Err(Error::Cap {
            what: "simulated input bits",
            value: bits as u64,
            cap: cap as u64,
        });
    }
    let brute = brute_force_svp(
        basis,
        &oracle.encoding,
        Some(oracle.threshold.tau),
        1u64 << cap,
    )?;
    let solutions = brute.all_solutions.unwrap_or_default();
    let m = solutions.len() as u64;
    if m == 0 {
        return Err(Error::input(
            "no input pattern satisfies the threshold; nothing to search for",
        ));
    }
    let n_space = BigUint::from(1u8) << bits;
    let k = iteration_count(&n_space, m)?.to_u64().unwrap_or(u64::MAX);
    if k > ASSEMBLY_ITERATION_CAP {
        return Err(Error::Cap {
            what: "Grover iterations to emit",
            value: k,
            cap: ASSEMBLY_ITERATION_CAP,
        });
    }
    let search = SearchOracle::from_oracle(oracle);
    let (c, _) = assemble_with(&search, k)?;
    let measured = solution_probability(&c, &search.inputs, &solutions);
    let predicted = success_probability((1u64 << bits) as f64, m as f64, k);
    let abs_error = (measured - predicted).abs();
    Ok(SimulationReport {
        solutions_true: m,
        k,
        measured,
        predicted,
        abs_error,
        passed: abs_error <= SIMULATION_TOLERANCE,
    })
}

/// Parses `2,5,10` and `2..10` (inclusive) into a sorted, deduplicated list.
pub fn parse_dims(items: &[String]) -> Result<Vec<u32>> {
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::input(format!("bad dimension `{s}`")))
    };
    let mut dims = Vec::new();
    for item in items {
        match item.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(Error::input(format!("empty range `{item}`")));
                }
                dims.extend(lo..=hi);
            }
            None => dims.push(num(item)?),
        }
    }
    dims.sort_unstable();
    dims.dedup();
    if dims.is_empty() {
        return Err(Error::input("no dimensions given"));
    }
    Ok(dims)
}

#[derive(Serialize)]
struct ItemFailure {
    item: String,
    error: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct SweepReport {
    seed: u64,
    entry_bound: i64,
    threshold: ThresholdPolicy,
    points: Vec<SweepPoint>,
    failures: Vec<ItemFailure>,
}

fn cmd_sweep(out: &Output, a: &SweepArgs) -> std::result::Result<(), Failure> {
    let dims = match &a.dims {
        Some(d) => parse_dims(d)?,
        None => TABLE_DIMS.to_vec(),
    };
    let cfg = SweepConfig {
        dims: dims.clone(),
        seed: a.seed,
        entry_bound: a.entry_bound,
        bounds: a.encoding.policy(BoundPolicy::LogN)?,
        threshold: a.threshold.policy(),
        grover: !a.no_grover,
    };
    let results: Vec<(u32, Result<SweepPoint>)> = dims
        .par_iter()
        .map(|&n| (n, measure_dimension(n, &cfg)))
        .collect();
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for (n, r) in results {
        match r {
            Ok(p) => points.push(p),
            Err(e) => failures.push(ItemFailure {
                item: format!("n={n}"),
                exit_code: exit_code(&e),
                error: e.to_string(),
            }),
        }
    }
    if let Some(path) = &a.csv {
        write_file(path, &sweep_csv(&points))?;
    }
    let code = failures.first().map(|f| f.exit_code);
    out.emit(
        "sweep",
        &SweepReport {
            seed: a.seed,
            entry_bound: a.entry_bound,
            threshold: cfg.threshold.clone(),
            points,
            failures,
        },
    )?;
    code.map_or(Ok(()), |c| Err(Failure::Partial(c)))
}

#[derive(serde::Deserialize)]
struct SweepFile {
    report: SweepPoints,
}

#[derive(serde::Deserialize)]
struct SweepPoints {
    points: Vec<SweepPoint>,
}

#[derive(Serialize)]
struct FitReport {
    points: usize,
    fits: Vec<MetricFit>,
    failures: Vec<ItemFailure>,
}

fn cmd_fit(out: &Output, a: &FitArgs) -> std::result::Result<(), Failure> {
    let text = read_file(&a.sweep)?;
    let points = serde_json::from_str::<SweepFile>(&text)
        .map(|f| f.report.points)
        .or_else(|_| serde_json::from_str::<Vec<SweepPoint>>(&text))
        .map_err(|e| Error::input(format!("{} is not a sweep report: {e}", a.sweep.display())))?;
    let base = match a.log_base {
        LogBaseArg::Two => LogBase::Two,
        LogBaseArg::E => LogBase::E,
    };
    let mut fits = Vec::new();
    let mut failures = Vec::new();
    for metric in Metric::ALL {
        let data: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p.n as f64, metric.of(&p.metrics) as f64))
            .collect();
        match fit(&data, metric.family(), base) {
            Ok(model) => fits.push(MetricFit { metric, model }),
            Err(e) => failures.push(ItemFailure {
                item: metric.name().into(),
                exit_code: exit_code(&e),
                error: e.to_string(),
            }),
        }
    }
    let code = failures.first().map(|f| f.exit_code);
    out.emit(
        "fit",
        &FitReport {
            points: points.len(),
            fits,
            failures,
        },
    )?;
    code.map_or(Ok(()), |c| Err(Failure::Partial(c)))
}

#[derive(serde::Deserialize)]
struct FitFile {
    report: FitFits,
}

#[derive(serde::Deserialize)]
struct FitFits {
    fits: Vec<MetricFit>,
}

fn cmd_extrapolate(out: &Output, a: &ExtrapolateArgs) -> std::result::Result<(), Failure> {
    let fits = match &a.fits {
        Some(path) => {
            let text = read_file(path)?;
            serde_json::from_str::<FitFile>(&text)
                .map(|f| f.report.fits)
                .or_else(|_| serde_json::from_str::<Vec<MetricFit>>(&text))
                .map_err(|e| Error::input(format!("{} is not a fit report: {e}", path.display())))?
        }
        None => Vec::new(),
    };
    if a.targets.is_empty() || a.targets.iter().any(|&n| n < 2) {
        return Err(Error::input("extrapolation targets must be at least 2").into());
    }
    let reports: Vec<Extrapolation> = a
        .targets
        .iter()
        .map(|&n| extrapolate(&fits, n))
        .collect::<Result<_>>()?;
    out.emit("extrapolate", &reports)?;
    Ok(())
}

#[derive(Serialize)]
struct BkzReport {
    n: usize,
    beta: usize,
    backend: String,
    input_norms_sq: Vec<String>,
    output_norms_sq: Vec<String>,
    tours: usize,
    converged: bool,
    quality_bound: Option<f64>,
    first_vector_norm: f64,
    bound_satisfied: Option<bool>,
    reduced_basis: String,
    ledger: CostLedger,
}

fn norms_sq(b: &LatticeBasis) -> Vec<String> {
    b.rows()
        .iter()
        .map(|r| crate::lattice::dot(r, r).to_string())
        .collect()
}

fn cmd_bkz(out: &Output, a: &BkzArgs) -> std::result::Result<(), Failure> {
    let basis = read_basis(&a.basis)?;
    if !basis.is_full_rank() {
        return Err(Error::NotFullRank {
            n: basis.n(),
            m: basis.m(),
        }
        .into());
    }
    let config = BkzConfig {
        beta: a.beta,
        max_tours: a.max_tours,
        early_termination: match a.termination {
            TerminationArg::None => EarlyTermination::None,
            TerminationArg::NoChange => EarlyTermination::NoChange,
            TerminationArg::TourBudget => EarlyTermination::TourBudget,
        },
        delta: Delta::from_f64(a.delta)?,
    };
    let mut classical = ClassicalBackend;
    let mut grover = GroverCostBackend::default();
    let backend: &mut dyn SvpBackend = match a.backend {
        BackendArg::Classical => &mut classical,
        BackendArg::GroverCost => &mut grover,
    };
    let reduced = bkz_reduce(&basis, &config, backend)?;
    let n = basis.n();
    let quality_bound = quality_bound_ln(n as u32, a.beta as u32, basis.ln_volume(), a.gamma).ok();
    let first_vector_norm = reduced
        .first_vector_norm_sq
        .to_f64()
        .unwrap_or(f64::INFINITY)
        .sqrt();
    let text = write_basis(&reduced.basis);
    if let Some(path) = &a.output {
        write_file(path, &text)?;
    }
    let report = BkzReport {
        n,
        beta: a.beta,
        backend: reduced.ledger.backend.clone(),
        input_norms_sq: norms_sq(&basis),
        output_norms_sq: norms_sq(&reduced.basis),
        tours: reduced.tours_executed,
        converged: reduced.converged,
        quality_bound,
        first_vector_norm,
        bound_satisfied: quality_bound.map(|q| first_vector_norm <= q * (1.0 + 1e-12)),
        reduced_basis: text,
        ledger: reduced.ledger,
    };
    out.emit("bkz", &report)?;
    Ok(())
}
