use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use twisted_gabidulin::cli::{
    cmd_aut, cmd_construct, cmd_nuclei, cmd_selfcheck, cmd_sweep, exit_code, Overrides, RunConfig,
    SweepConfig, Task, EXIT_OK, EXIT_SELFCHECK,
};
use twisted_gabidulin::Error;

#[derive(Parser)]
#[command(name = "gtg", about = "Twisted Gabidulin codes: construction, nuclei, automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and print its generator basis as JSON
    Construct(RunArgs),
    /// Compute middle and right nuclei and compare with predictions
    Nuclei(RunArgs),
    /// Enumerate the automorphism group and test the monomial form
    Aut(RunArgs),
    /// Run a parameter grid and print CSV
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        unsafe_limits: bool,
    },
    /// Run the invariant suite on a small built-in grid
    Selfcheck,
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    e: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Modulus coefficients, constant term first, comma separated
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(long)]
    h: Option<u32>,
    /// "0", "nonsquare-min", or comma-separated digits
    #[arg(long)]
    eta: Option<String>,
    /// "generic:SEED", "subfield:L", or "d,d,..;d,d,.."
    #[arg(long)]
    subspace: Option<String>,
    /// Also certify MRD and print the weight distribution
    #[arg(long)]
    mrd: bool,
    #[arg(long)]
    codeword_limit: Option<u64>,
    #[arg(long)]
    gl_limit: Option<u64>,
    #[arg(long)]
    unsafe_limits: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let base = match &self.config {
            Some(path) => Some(RunConfig::from_json(&read(path)?)?),
            None => None,
        };
        let o = Overrides {
            p: self.p,
            e: self.e,
            n: self.n,
            modulus: self.modulus.clone(),
            m: self.m,
            k: self.k,
            s: self.s,
            h: self.h,
            eta: self.eta.clone(),
            subspace: self.subspace.clone(),
            tasks: self.mrd.then(|| vec![Task::Mrd]),
            unsafe_limits: self.unsafe_limits,
            codeword_limit: self.codeword_limit,
            gl_limit: self.gl_limit,
            output: self.out.as_ref().map(|p| p.display().to_string()),
        };
        o.apply(base)
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Config(format!("{path}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(value: &T, out: Option<&str>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    emit(&text, out)
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Construct(args) => {
            let cfg = args.resolve()?;
            let rep = cmd_construct(&cfg)?;
            if let Some(c) = &rep.mrd {
                eprintln!("d = {:?}, MRD: {}", c.min_distance, c.is_mrd);
            }
            emit_json(&rep, cfg.output.path.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Nuclei(args) => {
            let cfg = args.resolve()?;
            let rep = cmd_nuclei(&cfg)?;
            eprintln!("{}", rep.summary());
            emit_json(&rep, cfg.output.path.as_deref())?;
            Ok(if rep.consistent() { EXIT_OK } else { EXIT_SELFCHECK })
        }
        Command::Aut(args) => {
            let cfg = args.resolve()?;
            let rep = cmd_aut(&cfg)?;
            eprintln!("{}", rep.summary());
            emit_json(&rep, cfg.output.path.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            config,
            out,
            unsafe_limits,
        } => {
            let mut cfg = SweepConfig::from_json(&read(&config)?)?;
            cfg.guards.unsafe_limits |= unsafe_limits;
            let csv = cmd_sweep(&cfg)?;
            emit(csv.trim_end(), out.as_ref().map(|p| p.to_str().unwrap_or_default()))?;
            Ok(EXIT_OK)
        }
        Command::Selfcheck => {
            let results = cmd_selfcheck();
            for r in &results {
                let mark = if r.pass { "pass" } else { "FAIL" };
                println!("{mark}  {}  [{}]", r.name, r.detail);
            }
            Ok(if results.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_SELFCHECK })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
