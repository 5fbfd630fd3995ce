use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qreuse::bench::{head_to_head, run_suite, write_csv, BenchOptions, Suite};
use qreuse::reducibility::{self, Method};
use qreuse::verify::{compiled_distance, MAX_REGISTERS};
use qreuse::{Algorithm, Circuit, FamilySpec, HeuristicConfig, Problem, SwapRoles};

/// Compile static quantum circuits into dynamic circuits that reuse qubits.
#[derive(Parser)]
#[command(name = "qreuse", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether any qubit can be reused. Exit 0 if so, 1 if not, 2 on error.
    Check {
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Compile a circuit document.
    Compile(CompileArgs),
    /// Write a benchmark circuit.
    Generate(GenerateArgs),
    /// Run a benchmark suite and write CSV.
    Bench {
        suite: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave elapsed_ms empty so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct CompileArgs {
    input: PathBuf,
    #[arg(long, default_value = "greedy")]
    algo: Algorithm,
    #[arg(long, env = "QREUSE_SEED", default_value_t = 0)]
    seed: u64,
    /// Greedy runs.
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Hybrid hierarchy level.
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// MRV orientation: off, on or auto.
    #[arg(long, default_value = "off")]
    swap_roles: SwapRoles,
    /// Node budget for the exact solver.
    #[arg(long)]
    budget: Option<u64>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check outcome distributions against the input (small circuits only).
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct GenerateArgs {
    family: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    w: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    secret: Option<String>,
    #[arg(long)]
    balanced: Option<bool>,
    #[arg(long)]
    tagged: Option<bool>,
    #[arg(long, env = "QREUSE_SEED", default_value_t = 0)]
    seed: u64,
    /// Drop single-qubit gates.
    #[arg(long)]
    strip: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { input, method } => check(&input, method),
        Command::Compile(args) => compile(&args).map(|_| ExitCode::SUCCESS),
        Command::Generate(args) => generate(&args).map(|_| ExitCode::SUCCESS),
        Command::Bench { suite, out, no_timing } => bench(&suite, out, no_timing).map(|_| ExitCode::SUCCESS),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}

fn read(input: &PathBuf) -> Result<Circuit> {
    Circuit::from_file(input).with_context(|| format!("reading {}", input.display()))
}

fn check(input: &PathBuf, method: Method) -> Result<ExitCode> {
    let circuit = read(input)?;
    let started = Instant::now();
    let (reducible, used) = reducibility::check(&circuit, method)?;
    let verdict = if reducible { "REDUCIBLE" } else { "IRREDUCIBLE" };
    println!("{verdict} (method {used}, {:.3} ms)", started.elapsed().as_secs_f64() * 1e3);
    Ok(ExitCode::from(if reducible { 0 } else { 1 }))
}

fn compile(args: &CompileArgs) -> Result<()> {
    let circuit = read(&args.input)?;
    let cfg = HeuristicConfig { seed: args.seed, runs: args.runs, swap_roles: args.swap_roles, level: args.level };
    let result = args.algo.compile(&circuit, &cfg, args.budget)?;
    let json = result.dynamic_circuit.to_json();
    let mut summary = vec![result.summary()];
    if Problem::new(&circuit)?.c.is_zero() {
        summary.push("no candidate edges".into());
    }
    if args.algo == Algorithm::Exact {
        summary.push(format!("optimal={}", result.optimal));
        if !result.optimal {
            eprintln!("warning: node budget exhausted; the width is not proven optimal");
        }
    }
    if args.verify {
        if circuit.width() > MAX_REGISTERS {
            bail!("--verify supports at most {MAX_REGISTERS} qubits");
        }
        let tvd = compiled_distance(&circuit, &result)?;
        if tvd > 1e-9 {
            bail!("compiled circuit differs from the input (TVD {tvd:e})");
        }
        summary.push(format!("verified (TVD {tvd:.1e})"));
    }
    let summary = summary.join(", ");
    match &args.out {
        Some(path) => {
            std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            io::stdout().write_all(json.as_bytes())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn generate(args: &GenerateArgs) -> Result<()> {
    let mut params: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    let numbers =
        [("n", args.n), ("l", args.l), ("k", args.k), ("w", args.w), ("d", args.d), ("p", args.p), ("m", args.m)];
    for (key, value) in numbers {
        if let Some(v) = value {
            params.insert(key.into(), v.into());
        }
    }
    if let Some(s) = &args.secret {
        params.insert("secret".into(), s.clone().into());
    }
    for (key, value) in [("balanced", args.balanced), ("tagged", args.tagged)] {
        if let Some(b) = value {
            params.insert(key.into(), b.into());
        }
    }
    params.insert("seed".into(), args.seed.into());
    let spec = FamilySpec::from_params(&args.family, &params)?;
    let mut circuit = spec.generate()?;
    if args.strip {
        circuit = circuit.strip_single_qubit();
    }
    match &args.out {
        Some(path) => {
            circuit.write_file(path).with_context(|| format!("writing {}", path.display()))?;
            println!("{} qubits, {} instructions -> {}", circuit.width(), circuit.len(), path.display());
        }
        None => io::stdout().write_all(circuit.to_json().as_bytes())?,
    }
    Ok(())
}

fn bench(suite: &PathBuf, out: Option<PathBuf>, no_timing: bool) -> Result<()> {
    let suite = Suite::from_file(suite).with_context(|| format!("reading {}", suite.display()))?;
    let records = run_suite(&suite, BenchOptions { timing: !no_timing })?;
    match &out {
        Some(path) => write_csv(BufWriter::new(File::create(path)?), &records)?,
        None => write_csv(io::stdout().lock(), &records)?,
    }
    let failed = records.iter().filter(|r| !r.error.is_empty()).count();
    eprintln!("{} rows, {failed} failed", records.len());
    if records.iter().any(|r| r.algo == "greedy") && records.iter().any(|r| r.algo == "dckf") {
        let (win, tie, loss) = head_to_head(&records, "greedy", "dckf");
        eprintln!("greedy vs dckf: {win} narrower, {tie} tied, {loss} wider");
    }
    Ok(())
}
