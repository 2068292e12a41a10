use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use majlab::harness::{
    emit_table, resolve_threads, run_sweep, selftest, Command, HarnessError, RunConfig, Threads,
    DEFAULT_SEED, THREADS_ENV,
};

#[derive(Parser)]
#[command(name = "majlab", version, about = "Majorana zero-mode toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Finite-chain BdG eigenvalues.
    Spectrum(RunArgs),
    /// Topological charge and bulk gap over a parameter grid.
    PhaseDiagram(RunArgs),
    /// Zero-mode count, splitting and localization.
    ZeroModes(RunArgs),
    /// Compile braid words to permutations and logical gates.
    Braid(RunArgs),
    /// Charge splitting and dispersive cavity shifts.
    Readout(RunArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_threads)]
    threads: Option<Threads>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Optional config; only its seed is used.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_threads)]
    threads: Option<Threads>,
}

fn parse_threads(s: &str) -> Result<Threads, String> {
    Threads::parse(s).map_err(|e| e.to_string())
}

fn load_config(path: &PathBuf) -> Result<RunConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

fn run(cmd: Command, args: RunArgs) -> Result<(), HarnessError> {
    let cfg = load_config(&args.config)?;
    let env = std::env::var(THREADS_ENV).ok();
    let threads = resolve_threads(env.as_deref(), args.threads, cfg.threads)?;
    let table = run_sweep(&cfg, cmd, threads)?;
    let bytes = emit_table(&table, cfg.output.format)?;
    match args.out.or(cfg.output.path.clone()) {
        Some(path) => std::fs::write(&path, &bytes)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(|e| HarnessError::Io(e.to_string())),
    }
}

fn run_selftest(args: SelftestArgs) -> Result<bool, HarnessError> {
    let cfg_seed = match &args.config {
        Some(p) => Some(load_config(p)?.seed),
        None => None,
    };
    // the suite is sequential; the flag is validated for interface symmetry
    let env = std::env::var(THREADS_ENV).ok();
    resolve_threads(env.as_deref(), args.threads, Threads::Auto)?;
    let report = selftest(args.seed.or(cfg_seed).unwrap_or(DEFAULT_SEED));
    print!("{}", report.render());
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::Spectrum(a) => run(Command::Spectrum, a).map(|_| true),
        Cmd::PhaseDiagram(a) => run(Command::PhaseDiagram, a).map(|_| true),
        Cmd::ZeroModes(a) => run(Command::ZeroModes, a).map(|_| true),
        Cmd::Braid(a) => run(Command::Braid, a).map(|_| true),
        Cmd::Readout(a) => run(Command::Readout, a).map(|_| true),
        Cmd::Selftest(a) => run_selftest(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("majlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
