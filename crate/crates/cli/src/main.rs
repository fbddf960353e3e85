use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bpsp_core::export::{write_records_csv, write_stats_json};
use bpsp_core::mfaoa::{self, MfConfig, Pin, StepRule};
use bpsp_core::qaoa::{angle_table, powerlaw_fit, AngleSet, Simulator, TreeValueTable, CANONICAL_MAX_DEPTH};
use bpsp_core::{
    generate_instance, monte_carlo, solve_qaoa, to_ising, Algorithm, CarSequence, EnsembleSpec, Error, QaoaSolver,
    Result, RunOptions, Solver,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "bpsp", version, about = "Binary paint shop solver laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write random instance files.
    Gen {
        /// Number of car types.
        #[arg(long)]
        n: usize,
        /// Number of instances.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Base seed; instance i uses a seed derived from it.
        #[arg(long, env = "BPSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve one instance file and print the result as JSON.
    Solve {
        /// greedy, rgreedy, mfaoa, qaoa or brute.
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        /// Instance file.
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// MF-AOA: write the trajectory CSV here.
        #[arg(long)]
        trajectory: Option<PathBuf>,
        /// MF-AOA: trajectory sampling interval in steps.
        #[arg(long, default_value_t = 10)]
        record_every: usize,
    },
    /// Run a seeded Monte Carlo ensemble.
    Bench {
        /// greedy, rgreedy, mfaoa, qaoa or brute.
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        /// Instance sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Base seed.
        #[arg(long, env = "BPSP_SEED", default_value_t = 0)]
        seed: u64,
        /// Per-instance records CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Summary statistics JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Record per-instance wall time (makes the CSV non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Fit the power law to (p, ratio) rows and extrapolate.
    Fit {
        /// CSV with columns p,ratio. Defaults to the embedded tree table.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Also write the fit as JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export the Ising model of an instance as JSON.
    Reduce {
        /// Instance file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Write here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// MF-AOA step count (default max(1000, n)).
    #[arg(long = "T")]
    steps: Option<usize>,
    /// MF-AOA schedule scale.
    #[arg(long, default_value_t = 0.5)]
    tau: f64,
    /// MF-AOA driver strength.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// MF-AOA pinned spin index (default: last).
    #[arg(long)]
    pin: Option<usize>,
    /// QAOA depth for table angles.
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// QAOA angles: "table" or a JSON file.
    #[arg(long, default_value = "table")]
    angles: String,
    /// Allow table depths beyond the evaluated range.
    #[arg(long)]
    allow_unsimulated: bool,
    /// QAOA statevector qubit cap.
    #[arg(long, default_value_t = bpsp_core::qaoa::DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl SolverArgs {
    fn mf_config(&self) -> MfConfig {
        MfConfig {
            delta: self.delta,
            steps: self.steps.map_or(StepRule::Auto, StepRule::Fixed),
            tau: self.tau,
            pin: self.pin.map_or(Pin::Last, Pin::Index),
            record_every: 0,
        }
    }

    fn angles(&self) -> Result<AngleSet> {
        if self.angles == "table" {
            if self.p > CANONICAL_MAX_DEPTH && !self.allow_unsimulated {
                return Err(Error::InvalidArgument(format!(
                    "depth {} is beyond the evaluated table; pass --allow-unsimulated",
                    self.p
                )));
            }
            angle_table(self.p)
        } else {
            let path = Path::new(&self.angles);
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.into(),
                source: e,
            })?;
            AngleSet::from_json(&text)
        }
    }

    fn solver(&self, algorithm: Algorithm) -> Result<Solver> {
        Ok(match algorithm {
            Algorithm::MfAoa => Solver::MfAoa(self.mf_config()),
            Algorithm::Qaoa => Solver::Qaoa(QaoaSolver {
                angles: self.angles()?,
                simulator: Simulator::with_max_qubits(self.max_qubits),
            }),
            other => Solver::default_for(other)?,
        })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.into(),
        source,
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(io_err(p)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { n, count, seed, out } => {
            std::fs::create_dir_all(&out).map_err(io_err(&out))?;
            for i in 0..count {
                let instance_seed = bpsp_core::rng::derive_seed(seed, i as u64);
                let seq = generate_instance(n, instance_seed)?;
                seq.write_to(out.join(format!("bpsp_n{n}_{i:05}.txt")))?;
            }
            Ok(())
        }
        Command::Solve {
            algo,
            input,
            solver,
            trajectory,
            record_every,
        } => {
            let seq = CarSequence::read_from(&input)?;
            let n = seq.n();
            let mut report = json!({ "algo": algo.name(), "n": n });
            let (colouring, swaps) = match algo {
                Algorithm::MfAoa => {
                    let mut cfg = solver.mf_config();
                    if trajectory.is_some() {
                        cfg.record_every = record_every.max(1);
                    }
                    let r = mfaoa::run(&seq, &cfg)?;
                    if let Some(path) = &trajectory {
                        mfaoa::write_trajectory_csv(path, &r.outcome.trajectory)?;
                    }
                    report["steps"] = json!(r.outcome.steps);
                    report["max_norm_error"] = json!(r.outcome.final_state.max_norm_error());
                    (r.colouring, r.swaps)
                }
                Algorithm::Qaoa => {
                    let Solver::Qaoa(q) = solver.solver(algo)? else {
                        unreachable!()
                    };
                    let r = solve_qaoa(&seq, &q)?;
                    report["p"] = json!(q.angles.depth());
                    report["expectation"] = json!(r.expectation);
                    report["expected_ratio"] = json!(r.expectation / n as f64);
                    report["probability"] = json!(r.probability);
                    (r.colouring, r.swaps)
                }
                other => solver.solver(other)?.solve(&seq)?,
            };
            report["swaps"] = json!(swaps);
            report["ratio"] = json!(swaps as f64 / n as f64);
            report["colouring"] = json!(colouring.bits());
            println!("{report}");
            Ok(())
        }
        Command::Bench {
            algo,
            n,
            count,
            seed,
            csv,
            json,
            workers,
            timing,
            solver,
        } => {
            let solver = solver.solver(algo)?;
            let mut records = Vec::new();
            let mut stats = Vec::new();
            for &size in &n {
                let spec = EnsembleSpec { n: size, count, seed };
                let ensemble = monte_carlo(&solver, spec, RunOptions { workers, timing })?;
                eprintln!(
                    "{} n={} count={} mean_ratio={:.4} std_ratio={}",
                    algo,
                    size,
                    count,
                    ensemble.stats.mean_ratio,
                    ensemble.stats.std_ratio.map_or("-".into(), |s| format!("{s:.4}"))
                );
                records.extend(ensemble.records);
                stats.push(ensemble.stats);
            }
            if let Some(path) = &csv {
                write_records_csv(path, &records)?;
            }
            match &json {
                Some(path) => write_stats_json(path, &stats)?,
                None => println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialise")),
            }
            Ok(())
        }
        Command::Fit { input, json } => {
            let table = match &input {
                Some(path) => read_ratio_csv(path)?,
                None => TreeValueTable::default(),
            };
            let fit = powerlaw_fit(&table.tree_values())?;
            let (low, high) = fit.asymptotic_ratio_range();
            let mut value = serde_json::to_value(fit).expect("fit serialises");
            value["asymptotic_ratio"] = json!(fit.asymptotic_ratio());
            value["asymptotic_ratio_range"] = json!([low, high]);
            write_or_print(json.as_deref(), &serde_json::to_string_pretty(&value).expect("json"))
        }
        Command::Reduce { input, json } => {
            let model = to_ising(&CarSequence::read_from(&input)?);
            write_or_print(json.as_deref(), &model.to_json())
        }
    }
}

/// Reads `p,ratio` rows (header optional).
fn read_ratio_csv(path: &Path) -> Result<TreeValueTable> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (k == 0 && line.starts_with(|c: char| c.is_ascii_alphabetic())) {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let parsed = (|| Some((parts.next()?.parse().ok()?, parts.next()?.parse().ok()?)))();
        rows.push(parsed.ok_or_else(|| Error::Parse(format!("line {}: expected p,ratio", k + 1)))?);
    }
    Ok(TreeValueTable::from_rows(rows))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::FAILURE
        }
    }
}
