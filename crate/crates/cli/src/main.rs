use std::io::Read;
use std::process::ExitCode;

use chabauty_core::cli::{self, Output};
use chabauty_core::Error;
use clap::{Parser, Subcommand};

/// Classification, limit certification, verification suites and figure data
/// for limits of Cartan subspaces in sl3 and sl4. Output is one JSON document.
#[derive(Parser)]
#[command(name = "chabauty", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an abelian subalgebra of the upper-triangular Borel.
    Classify {
        /// sl3 or sl4; inferred from the ambient dimension when omitted.
        #[arg(long)]
        algebra: Option<String>,
        /// JSON subspace file, or - for stdin.
        #[arg(long)]
        subspace: String,
    },
    /// Certify the limit of a named sequence of subspaces.
    Limit {
        /// lemma53, lemma57, thm62-T1 .. thm62-T10, sl2 or constant.
        #[arg(long)]
        family: String,
        /// Family parameter as key=value; sequences use "c@k" terms for c·n^k.
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        schedule: Vec<u64>,
        #[arg(long, env = "CHABAUTY_TOL")]
        tol: Option<f64>,
        /// Subspace for the constant family.
        #[arg(long)]
        subspace: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, env = "CHABAUTY_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "CHABAUTY_TOL")]
        tol: Option<f64>,
        /// Restrict the thm62 suite to one type (T1 .. T10).
        #[arg(long)]
        tag: Option<String>,
    },
    /// Plücker coordinates of a subspace.
    Plucker {
        #[arg(long)]
        subspace: String,
    },
    /// Emit figure data (blownball point cloud or cw cell description).
    EmitFigure {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "CHABAUTY_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<String>,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
    }
}

fn with_input(path: &str, f: impl FnOnce(&str) -> Output) -> Output {
    match read_input(path) {
        Ok(text) => f(&text),
        Err(e) => Output::usage(&e),
    }
}

fn default_tol(family: &str) -> f64 {
    if family.starts_with("lemma5") {
        1e-4
    } else {
        1e-3
    }
}

fn dispatch(cmd: Command) -> Output {
    match cmd {
        Command::Classify { algebra, subspace } => with_input(&subspace, |t| cli::cmd_classify(algebra.as_deref(), t)),
        Command::Limit { family, params, schedule, tol, subspace } => {
            let tol = tol.unwrap_or_else(|| default_tol(&family));
            match subspace.as_deref().map(read_input).transpose() {
                Ok(text) => cli::cmd_limit(&family, &params, &schedule, tol, text.as_deref()),
                Err(e) => Output::usage(&e),
            }
        }
        Command::Verify { suite, seed, tol, tag } => cli::cmd_verify(&suite, seed, tol, tag.as_deref()),
        Command::Plucker { subspace } => with_input(&subspace, cli::cmd_plucker),
        Command::EmitFigure { which, samples, seed, output } => {
            cli::cmd_emit_figure(&which, samples, seed, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let out = dispatch(args.command);
    print!("{}", out.render());
    if let Some(err) = out.json.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or("unknown"));
    }
    ExitCode::from(out.exit)
}
