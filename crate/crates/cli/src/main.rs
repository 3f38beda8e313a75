use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use orbitcat_cli::{run, verify, CliError, CliResult, Command, Flags, Report};

#[derive(Parser)]
#[command(name = "orbitcat", version, about = "Graded cluster-tilted algebras, gradability and density certificates")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    /// Spec file describing the algebra and modules.
    spec: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace the prime of the spec's field.
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long, default_value_t = orbitcat_core::tilde::DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
}

impl Common {
    fn flags(&self, amax: Option<i64>, bmax: Option<i64>) -> Flags {
        Flags { seed: self.seed, prime: self.prime, degree_cap: self.degree_cap, amax, bmax }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension, basis and global dimension.
    Info(Common),
    /// Whether the algebra is tau_2-finite.
    Tau2(Common),
    /// Degree dimensions and generators of the graded algebra.
    Tilde(Common),
    /// Decide gradability of a module over the graded algebra.
    GradeTest {
        #[command(flatten)]
        common: Common,
        module: String,
    },
    /// Search for fractional Calabi-Yau pairs of a module's resolution.
    CySearch {
        #[command(flatten)]
        common: Common,
        module: String,
        #[arg(long)]
        amax: Option<i64>,
        #[arg(long)]
        bmax: Option<i64>,
    },
    /// Produce a certificate that the orbit category is not dense in the cluster category.
    NotDense(Common),
    /// Re-check a report.
    Verify { report: PathBuf },
}

fn read(p: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
}

fn dispatch(cmd: Cmd) -> CliResult<Report> {
    let go = |c: Command, common: &Common, flags: Flags| run(&c, &read(&common.spec)?, &flags);
    match cmd {
        Cmd::Info(c) => go(Command::Info, &c, c.flags(None, None)),
        Cmd::Tau2(c) => go(Command::Tau2, &c, c.flags(None, None)),
        Cmd::Tilde(c) => go(Command::Tilde, &c, c.flags(None, None)),
        Cmd::NotDense(c) => go(Command::NotDense, &c, c.flags(None, None)),
        Cmd::GradeTest { common, module } => go(Command::GradeTest(module), &common, common.flags(None, None)),
        Cmd::CySearch { common, module, amax, bmax } => go(Command::CySearch(module), &common, common.flags(amax, bmax)),
        Cmd::Verify { report } => verify(&read(&report)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let (text, code) = match dispatch(cli.command) {
        Ok(r) => (r.to_json(), r.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            let v = json!({ "status": "error", "code": e.code(), "message": e.to_string() });
            (format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), 1)
        }
    };
    match output {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
