//! Command-line front end. The `qviterbi` binary is a thin wrapper around
//! [`run`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bits::BitVector;
use crate::code::{resolve_code, Code};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    build_cost_hamiltonian, build_g_matrix, build_mixer_hamiltonian, GMatrix, HamiltonianJson,
};
use crate::qaoa::{
    landscape_csv, landscape_scan, train, Estimator, QaoaProblem, Strategy, TrainingConfig,
    TrainingResult,
};
use crate::statevector::{AmplitudeEntry, CircuitMode};
use crate::trellis::{ml_brute_force, DecodeResult};

/// Environment variable capping the worker threads used for training.
pub const THREADS_ENV: &str = "QVITERBI_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "qviterbi",
    version,
    about = "QAOA Viterbi decoder for small binary linear codes"
)]
pub struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train the decoder circuit and report the decoded distribution.
    Decode(DecodeArgs),
    /// Classical Viterbi decoding of the received vector.
    Oracle(CodeArgs),
    /// Per-repetition solution hits of UPO versus FPO, as CSV.
    Compare(CompareArgs),
    /// Cost landscape over uniform (beta, gamma), as CSV.
    Landscape(LandscapeArgs),
    /// Cost and mixer Hamiltonians and the codespace transition matrix, as JSON.
    Hamiltonian(HamiltonianArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    /// Built-in code name (lbc_633, lbc_321, conv_r12_m2) or path to a code JSON file.
    #[arg(long)]
    pub code: String,
    /// Received bit string, leftmost bit first.
    #[arg(long)]
    pub received: String,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    /// Number of circuit layers.
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    /// Random initializations per optimization.
    #[arg(long, default_value_t = 5)]
    pub q: usize,
    #[arg(long, default_value_t = 2000)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cost estimator used while optimizing.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Simulate the received register explicitly instead of folding it into phases.
    #[arg(long)]
    pub full_register: bool,
}

impl TrainArgs {
    fn config(&self, seed: u64) -> TrainingConfig {
        TrainingConfig {
            p: self.p,
            q: self.q,
            shots: self.shots,
            seed,
            estimator: match self.mode {
                ModeArg::Exact => Estimator::Exact,
                ModeArg::Sampled => Estimator::Sampled { shots: self.shots },
            },
            mode: self.circuit_mode(),
            ..Default::default()
        }
    }

    fn circuit_mode(&self) -> CircuitMode {
        if self.full_register {
            CircuitMode::FullRegister
        } else {
            CircuitMode::FoldedAncilla
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[arg(long, value_enum, default_value_t = StrategyArg::Upo)]
    pub strategy: StrategyArg,
    /// Include the final statevector amplitudes in the report.
    #[arg(long)]
    pub dump_state: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub train: TrainArgs,
    #[arg(long, default_value_t = 10)]
    pub repetitions: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LandscapeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    /// Grid points per axis over [0, 2π).
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long)]
    pub full_register: bool,
}

#[derive(Debug, Clone, Args)]
pub struct HamiltonianArgs {
    #[arg(long)]
    pub code: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Upo,
    Fpo,
    Random,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Upo => Strategy::Upo,
            StrategyArg::Fpo => Strategy::Fpo,
            StrategyArg::Random => Strategy::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub best_metric: u32,
    pub best_codewords: Vec<BitVector>,
}

impl From<&DecodeResult> for OracleReport {
    fn from(d: &DecodeResult) -> Self {
        Self {
            best_metric: d.best_metric,
            best_codewords: d.best_codewords.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecodeReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub received: BitVector,
    pub circuit: CircuitMode,
    pub oracle: OracleReport,
    pub argmax: Vec<BitVector>,
    pub oracle_agrees: bool,
    pub result: TrainingResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<AmplitudeEntry>>,
}

#[derive(Debug, Serialize)]
pub struct HamiltonianReport {
    pub code: String,
    pub cost: HamiltonianJson,
    pub mixer: HamiltonianJson,
    pub g_matrix: GMatrix,
    pub g_connected: bool,
}

/// Argmax states are compared with this slack on probability ties.
const ARGMAX_TOL: f64 = 1e-9;

fn load(args: &CodeArgs) -> Result<(Code, BitVector)> {
    let code = resolve_code(&args.code)?;
    let received: BitVector = args.received.parse()?;
    if received.len() != code.n() {
        return Err(Error::Config(format!(
            "received vector has {} bits but {} has n = {}",
            received.len(),
            code.name(),
            code.n()
        )));
    }
    Ok((code, received))
}

/// Builds the instance and cross-checks the trellis decoder against the
/// exhaustive scan.
fn problem(code: &Code, received: &BitVector, mode: CircuitMode) -> Result<QaoaProblem> {
    let problem = QaoaProblem::new(code, received, mode)?;
    let brute = ml_brute_force(code, received)?;
    if brute.best_metric != problem.oracle().best_metric
        || brute.best_codewords != problem.oracle().best_codewords
    {
        return Err(Error::Invariant(format!(
            "trellis decoder disagrees with exhaustive search for r = {received}"
        )));
    }
    Ok(problem)
}

pub fn cmd_decode(args: &DecodeArgs, progress: bool) -> Result<DecodeReport> {
    let (code, received) = load(&args.code)?;
    let problem = problem(&code, &received, args.train.circuit_mode())?;
    let config = args.train.config(args.train.seed);
    let strategy = Strategy::from(args.strategy);
    if progress {
        eprintln!(
            "training {strategy:?} on {} (p = {}, q = {}, seed = {})",
            code.name(),
            config.p,
            config.q,
            config.seed
        );
    }
    let result = train(&problem, strategy, &config)?;
    let total: f64 = result.distribution.values().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Invariant(format!(
            "output distribution sums to {total}"
        )));
    }
    let state = if args.dump_state {
        Some(problem.state(&result.best_params)?.dump()?)
    } else {
        None
    };
    let argmax = result.argmax_states(ARGMAX_TOL);
    Ok(DecodeReport {
        code: code.name().to_string(),
        n: code.n(),
        k: code.k(),
        d: code.d(),
        received,
        circuit: config.mode,
        oracle: problem.oracle().into(),
        oracle_agrees: result.argmax_is_optimal(ARGMAX_TOL),
        argmax,
        result,
        state,
    })
}

pub fn cmd_oracle(args: &CodeArgs) -> Result<OracleReport> {
    let (code, received) = load(args)?;
    let trellis = crate::trellis::Trellis::build(&code)?;
    let result = crate::trellis::viterbi_decode(&trellis, &received)?;
    Ok((&result).into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub repetition: usize,
    pub seed: u64,
    pub upo_hits: usize,
    pub fpo_hits: usize,
}

/// Trains UPO and FPO with the same seed per repetition; seed of repetition
/// `i` (1-based) is `seed + i − 1`.
pub fn cmd_compare(args: &CompareArgs, progress: bool) -> Result<Vec<CompareRow>> {
    if args.repetitions == 0 {
        return Err(Error::Config("repetitions must be ≥ 1".into()));
    }
    let (code, received) = load(&args.code)?;
    let problem = problem(&code, &received, args.train.circuit_mode())?;
    (1..=args.repetitions)
        .map(|repetition| {
            let seed = args.train.seed.wrapping_add(repetition as u64 - 1);
            let config = args.train.config(seed);
            if progress {
                eprintln!("repetition {repetition}/{}", args.repetitions);
            }
            Ok(CompareRow {
                repetition,
                seed,
                upo_hits: train(&problem, Strategy::Upo, &config)?.solution_hits,
                fpo_hits: train(&problem, Strategy::Fpo, &config)?.solution_hits,
            })
        })
        .collect()
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from("repetition,seed,upo_hits,fpo_hits\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.repetition, r.seed, r.upo_hits, r.fpo_hits
        ));
    }
    out
}

pub fn cmd_landscape(args: &LandscapeArgs) -> Result<String> {
    let (code, received) = load(&args.code)?;
    let mode = if args.full_register {
        CircuitMode::FullRegister
    } else {
        CircuitMode::FoldedAncilla
    };
    let problem = problem(&code, &received, mode)?;
    Ok(landscape_csv(&landscape_scan(&problem, args.p, args.grid)?))
}

pub fn cmd_hamiltonian(args: &HamiltonianArgs) -> Result<HamiltonianReport> {
    let code = resolve_code(&args.code)?;
    let g_matrix = build_g_matrix(&code);
    Ok(HamiltonianReport {
        code: code.name().to_string(),
        cost: build_cost_hamiltonian(code.n())?.to_json(),
        mixer: build_mixer_hamiltonian(&code)?.to_json(),
        g_connected: g_matrix.is_connected(),
        g_matrix,
    })
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Runs a parsed command, returning the text to emit and its destination.
pub fn execute(cli: &Cli) -> Result<(String, Option<PathBuf>)> {
    let progress = !cli.quiet;
    Ok(match &cli.command {
        Command::Decode(a) => (json(&cmd_decode(a, progress)?)?, a.code.out.clone()),
        Command::Oracle(a) => (json(&cmd_oracle(a)?)?, a.out.clone()),
        Command::Compare(a) => (compare_csv(&cmd_compare(a, progress)?), a.code.out.clone()),
        Command::Landscape(a) => (cmd_landscape(a)?, a.code.out.clone()),
        Command::Hamiltonian(a) => (json(&cmd_hamiltonian(a)?)?, a.out.clone()),
    })
}

/// Parses arguments and runs the command; returns the output text or an
/// exit status with a message.
pub fn run_to_string<I, T>(args: I) -> std::result::Result<String, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Err((code, e.to_string()));
        }
    };
    let (text, out) = execute(&cli).map_err(|e| (e.exit_code(), format!("error: {e}")))?;
    match out {
        Some(path) => {
            std::fs::write(&path, &text)
                .map_err(|e| (2, format!("error: {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

/// Caps the global thread pool from `QVITERBI_THREADS`, if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // Fails only if the pool was already built, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Entry point for the binary; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    match run_to_string(args) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err((0, text)) => {
            print!("{text}");
            0
        }
        Err((code, message)) => {
            eprintln!("{}", message.trim_end());
            code
        }
    }
}
