// Copyright 2026 The maximin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 on usage, input or I/O errors (with a JSON
//! error object on stderr), 2 when `verify` rejects a solution.

use crate::error::Error;
use crate::flowcore::trim_to_forest;
use crate::instance::{
    gen_cubic_gap, gen_phragmen_worstcase, gen_random, graphs, parse_instance, solution_from_file, solution_to_file,
    RandomParams, SolutionFile, StakeDist,
};
use crate::oracle::{check_pjr_exact, opt_maximin, score_by_rootfind};
use crate::protocol::{log_to_jsonl, run_window_with_extension, Mode, Scenario};
use crate::scalar::{to_json_value, Scalar};
use crate::solvers::{balanced_phragmms, lazy_mms, lazy_mms_search, ls_pjr, mms, seq_phragmen};
use crate::verify::verify_submission;
use crate::{ElectionInstance, Rational, Solution};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "maximin", version, about = "Maximin-support committee elections")]
pub struct Cli {
    /// Use exact rational arithmetic instead of 64-bit floats.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `oracle` and `bench` (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write an instance from one of the built-in families.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Compute a committee and weight vector.
    Solve {
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Target support for lazy-mms; without it the threshold is searched.
        #[arg(long)]
        threshold: Option<String>,
        /// Accuracy of the lazy-mms threshold search.
        #[arg(long, default_value = "0.1")]
        eps: String,
        #[command(flatten)]
        io: InstanceOut,
    },
    /// Improve an existing solution.
    Postprocess {
        #[command(subcommand)]
        method: Postprocess,
    },
    /// Check a solution; exit code 2 if any check fails.
    Verify {
        /// Also test the sufficient PJR condition at this threshold.
        #[arg(long = "pjr-t")]
        pjr_t: Option<String>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Reduce a solution to an acyclic set of positive edges.
    Trim {
        #[arg(short, long)]
        solution: PathBuf,
        #[command(flatten)]
        io: InstanceOut,
    },
    /// Exhaustive ground truth for small instances (always exact).
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Simulate an election window.
    Simulate {
        #[arg(short, long)]
        input: PathBuf,
        /// Scenario file with window length and prover list.
        #[arg(long)]
        provers: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        /// Write the JSON-lines log here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Objective ratios against the oracle and timings, as CSV.
    Bench {
        #[arg(long, value_enum)]
        family: BenchFamily,
        /// Comma-separated sizes (candidates for random, k otherwise).
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct InstanceOut {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Instance on which sequential Phragmen is a factor H_k - eps off.
    PhragmenWorstcase {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "0.1")]
        eps: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One candidate per vertex and one unit voter per edge of a cubic graph.
    CubicGap {
        #[arg(long, value_enum, default_value_t = Graph::K4)]
        graph: Graph,
        /// JSON adjacency lists, overriding --graph.
        #[arg(long)]
        adjacency: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Independent approvals with random stakes.
    Random {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        candidates: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.3)]
        prob: f64,
        /// `unit`, `uniform:LOW:HIGH` or `pareto:SHAPE`.
        #[arg(long, default_value = "uniform:1:10")]
        stake: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Postprocess {
    /// Swap out least-supported members until the PJR condition holds.
    LsPjr {
        /// Improvement factor; `inf` leaves only the PJR stopping rule.
        #[arg(long, default_value = "inf")]
        eps: String,
        #[arg(short, long)]
        solution: PathBuf,
        #[command(flatten)]
        io: InstanceOut,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleQuery {
    /// Best least support over all committees.
    Opt {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Exact t-PJR check of a solution's committee (t defaults to Σ s / k).
    Pjr {
        #[arg(long)]
        t: Option<String>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Scores of unelected candidates by bisection.
    Score {
        /// Only this candidate (by name).
        #[arg(long)]
        candidate: Option<String>,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    BalancedPhragmms,
    SeqPhragmen,
    Mms,
    LazyMms,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::BalancedPhragmms => "balanced-phragmms",
            Algorithm::SeqPhragmen => "seq-phragmen",
            Algorithm::Mms => "mms",
            Algorithm::LazyMms => "lazy-mms",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Graph {
    K4,
    K33,
    Petersen,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Full,
    Optimized,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchFamily {
    Random,
    PhragmenWorstcase,
    CubicGap,
}

/// Error carried to the top level and printed as JSON on stderr.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind, "message": self.message})
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::new("input", e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io", e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new("schema", e.to_string())
    }
}

type CliResult<T = i32> = Result<T, CliError>;

/// Runs the CLI on `args` (including the program name); returns the exit
/// code. Output goes to stdout/stderr or to the requested files.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = stdout(&e.to_string());
                return 0;
            }
            eprintln!("{}", CliError::new("usage", e.to_string().trim_end()).to_json());
            return 1;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os())
}

fn execute(cli: &Cli) -> CliResult {
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if cli.exact {
        dispatch::<Rational>(cli)
    } else {
        dispatch::<f64>(cli)
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe is not an error.
fn stdout(text: &str) -> CliResult<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::new("io", format!("{}: {e}", path.display()))),
        None => stdout(text),
    }
}

fn parse_scalar<T: Scalar>(what: &str, s: &str) -> CliResult<T> {
    T::parse_str(s).ok_or_else(|| CliError::new("usage", format!("invalid {what}: {s}")))
}

fn load_instance<T: Scalar>(path: &Path) -> CliResult<ElectionInstance<T>> {
    Ok(parse_instance(&read(path)?)?)
}

fn load_solution<T: Scalar>(instance: &ElectionInstance<T>, path: &Path) -> CliResult<Solution<T>> {
    let file: SolutionFile = serde_json::from_str(&read(path)?)?;
    Ok(solution_from_file(instance, &file)?)
}

fn solution_text<T: Scalar>(instance: &ElectionInstance<T>, solution: &Solution<T>) -> String {
    let mut text = serde_json::to_string_pretty(&solution_to_file(instance, solution)).expect("solution serializes");
    text.push('\n');
    text
}

fn instance_text<T: Scalar>(instance: &ElectionInstance<T>) -> String {
    let mut text = instance.to_canonical_json();
    text.push('\n');
    text
}

fn dispatch<T: Scalar>(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Generate { family } => generate::<T>(family, cli.seed),
        Command::Solve { algorithm, threshold, eps, io } => {
            let instance = load_instance::<T>(&io.input)?;
            let solution = solve(&instance, *algorithm, threshold.as_deref(), eps)?;
            emit(io.output.as_ref(), &solution_text(&instance, &solution))?;
            Ok(0)
        }
        Command::Postprocess { method: Postprocess::LsPjr { eps, solution, io } } => {
            let instance = load_instance::<T>(&io.input)?;
            let start = load_solution(&instance, solution)?;
            let eps = match eps.as_str() {
                "inf" | "infinity" => None,
                s => Some(parse_scalar::<T>("eps", s)?),
            };
            let out = ls_pjr(&instance, &start, eps.as_ref());
            emit(io.output.as_ref(), &solution_text(&instance, &out.solution))?;
            Ok(0)
        }
        Command::Verify { pjr_t, input, solution } => {
            let instance = load_instance::<T>(input)?;
            let file: SolutionFile = serde_json::from_str(&read(solution)?)?;
            let t = pjr_t.as_deref().map(|s| parse_scalar::<T>("pjr-t", s)).transpose()?;
            let (_, report) = verify_submission(&instance, &file, t.as_ref());
            stdout(&format!("{}\n", serde_json::to_string_pretty(&report.to_json(&instance))?))?;
            Ok(if report.passed() { 0 } else { 2 })
        }
        Command::Trim { solution, io } => {
            let instance = load_instance::<T>(&io.input)?;
            let sol = load_solution(&instance, solution)?;
            emit(io.output.as_ref(), &solution_text(&instance, &trim_to_forest(&instance, &sol)))?;
            Ok(0)
        }
        Command::Oracle { query } => oracle(query),
        Command::Simulate { input, provers, mode, output } => {
            let instance = load_instance::<T>(input)?;
            let scenario: Scenario = serde_json::from_str(&read(provers)?)?;
            let mode = match mode {
                ModeArg::Full => Mode::FullCheck,
                ModeArg::Optimized => Mode::Optimized,
            };
            let extension = scenario.extension.unwrap_or(instance.k() as u64);
            let outcome = run_window_with_extension(&instance, &scenario.provers, mode, scenario.window, extension)?;
            emit(output.as_ref(), &log_to_jsonl(&outcome.log))?;
            Ok(0)
        }
        Command::Bench { family, sizes, trials, output } => {
            let csv = bench::<T>(*family, sizes, *trials, cli.seed)?;
            emit(output.as_ref(), &csv)?;
            Ok(0)
        }
    }
}

fn generate<T: Scalar>(family: &Family, seed: u64) -> CliResult {
    let (instance, output) = match family {
        Family::PhragmenWorstcase { k, eps, output } => {
            (gen_phragmen_worstcase::<T>(*k, parse_scalar("eps", eps)?)?, output)
        }
        Family::CubicGap { graph, adjacency, k, output } => {
            let adj = match adjacency {
                Some(path) => serde_json::from_str(&read(path)?)?,
                None => match graph {
                    Graph::K4 => graphs::k4(),
                    Graph::K33 => graphs::k33(),
                    Graph::Petersen => graphs::petersen(),
                },
            };
            (gen_cubic_gap::<T>(&adj, *k)?, output)
        }
        Family::Random { voters, candidates, k, prob, stake, output } => {
            let stake: StakeDist = stake.parse()?;
            (gen_random::<T>(&RandomParams::new(*voters, *candidates, *k, *prob, stake, seed))?, output)
        }
    };
    emit(output.as_ref(), &instance_text(&instance))?;
    Ok(0)
}

fn solve<T: Scalar>(
    instance: &ElectionInstance<T>,
    algorithm: Algorithm,
    threshold: Option<&str>,
    eps: &str,
) -> CliResult<Solution<T>> {
    Ok(match algorithm {
        Algorithm::BalancedPhragmms => balanced_phragmms(instance),
        Algorithm::SeqPhragmen => seq_phragmen(instance),
        Algorithm::Mms => mms(instance),
        Algorithm::LazyMms => match threshold {
            Some(t) => {
                let t: T = parse_scalar("threshold", t)?;
                lazy_mms(instance, &t).map_err(|f| {
                    CliError::new(
                        "threshold",
                        format!("lazy-mms could not reach {t}; stopped with {} members", f.partial.committee().len()),
                    )
                })?
            }
            None => lazy_mms_search(instance, &parse_scalar::<T>("eps", eps)?).solution,
        },
    })
}

fn oracle(query: &OracleQuery) -> CliResult {
    let value = match query {
        OracleQuery::Opt { input } => {
            let instance = load_instance::<Rational>(input)?;
            let (value, committee) = opt_maximin(&instance)?;
            let names: Vec<&str> = committee.iter().map(|&c| instance.candidate_name(c)).collect();
            json!({"value": to_json_value(&value), "committee": names})
        }
        OracleQuery::Pjr { t, input, solution } => {
            let instance = load_instance::<Rational>(input)?;
            let sol = load_solution(&instance, solution)?;
            let t = match t {
                Some(s) => parse_scalar::<Rational>("t", s)?,
                None => instance.pjr_threshold(),
            };
            let violation = check_pjr_exact(&instance, sol.committee(), &t)?;
            json!({
                "t": to_json_value(&t),
                "holds": violation.is_none(),
                "witness": violation.map(|v| json!({
                    "voters": v.voters.iter().map(|&n| instance.voter_name(n)).collect::<Vec<_>>(),
                    "r": v.r,
                })),
            })
        }
        OracleQuery::Score { candidate, input, solution } => {
            let instance = load_instance::<Rational>(input)?;
            let sol = load_solution(&instance, solution)?;
            let targets: Vec<_> = match candidate {
                Some(name) => {
                    let c = instance.candidate_by_name(name).ok_or_else(|| Error::UnknownCandidate(name.clone()))?;
                    if sol.contains(c) {
                        return Err(CliError::new("input", format!("candidate {name} is elected")));
                    }
                    vec![c]
                }
                None => instance.candidates().filter(|&c| !sol.contains(c)).collect(),
            };
            let scores: Vec<Value> = targets
                .par_iter()
                .map(|&c| json!({"candidate": instance.candidate_name(c), "score": to_json_value(&score_by_rootfind(&instance, &sol, c).to_f64())}))
                .collect();
            json!({"scores": scores})
        }
    };
    stdout(&format!("{}\n", serde_json::to_string_pretty(&value)?))?;
    Ok(0)
}

const BENCH_ALGORITHMS: [Algorithm; 4] =
    [Algorithm::SeqPhragmen, Algorithm::BalancedPhragmms, Algorithm::Mms, Algorithm::LazyMms];

fn bench_instance<T: Scalar>(family: BenchFamily, size: usize, trial: usize, seed: u64) -> CliResult<ElectionInstance<T>> {
    Ok(match family {
        BenchFamily::Random => {
            let params = RandomParams::new(
                size + size / 2,
                size,
                (size / 2).max(1),
                0.4,
                StakeDist::Uniform { low: 1.0, high: 10.0 },
                seed.wrapping_add(trial as u64),
            );
            gen_random(&params)?
        }
        BenchFamily::PhragmenWorstcase => gen_phragmen_worstcase(size, T::from_ratio(1, 10))?,
        BenchFamily::CubicGap => gen_cubic_gap(&graphs::petersen(), size)?,
    })
}

fn bench<T: Scalar>(family: BenchFamily, sizes: &[usize], trials: usize, seed: u64) -> CliResult<String> {
    let jobs: Vec<(usize, usize)> = sizes.iter().flat_map(|&s| (0..trials).map(move |t| (s, t))).collect();
    let rows: Vec<CliResult<String>> = jobs
        .par_iter()
        .map(|&(size, trial)| {
            let instance = bench_instance::<T>(family, size, trial, seed)?;
            let opt = opt_maximin(&instance).ok().map(|(v, _)| v.to_f64());
            let mut out = String::new();
            for algorithm in BENCH_ALGORITHMS {
                let start = Instant::now();
                let solution = solve(&instance, algorithm, None, "0.1")?;
                let micros = start.elapsed().as_micros();
                let objective = solution.objective().map(|o| o.to_f64()).unwrap_or(0.0);
                let (opt_col, ratio_col) = match opt {
                    Some(o) => (o.to_string(), (o / objective).to_string()),
                    None => (String::new(), String::new()),
                };
                let family_name = family.to_possible_value().expect("named").get_name().to_string();
                writeln!(
                    out,
                    "{family_name},{size},{trial},{},{objective},{opt_col},{ratio_col},{micros}",
                    algorithm.name()
                )
                .expect("string write");
            }
            Ok(out)
        })
        .collect();
    let mut csv = String::from("family,size,trial,algorithm,objective,opt,ratio,micros\n");
    for row in rows {
        csv.push_str(&row?);
    }
    Ok(csv)
}
