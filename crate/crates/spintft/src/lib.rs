//! JSON front end for `spintft-core`: input schemas, rendering, the command
//! dispatcher and the bundled example corpus.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod render;
pub mod schema;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use commands::Outcome;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "spintft", version, about = "Exact spin TFT invariants for pointed spin-modular data")]
pub struct Cli {
    /// Role-tagged input, e.g. `psm=z4.json`; `@name` selects a bundled corpus file.
    #[arg(long = "input", value_name = "ROLE=FILE", global = true)]
    pub inputs: Vec<String>,

    /// Digits in float renderings.
    #[arg(long, default_value_t = 12, global = true)]
    pub precision: usize,

    /// Worker threads for coloring sums.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,

    /// Cap on enumerated isomorphisms and automorphisms.
    #[arg(long, default_value_t = 4096, global = true)]
    pub cap: usize,

    /// Run every bundled example and report all results.
    #[arg(long)]
    pub corpus: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Gauss sums and signature of a metric group (`group` or `psm`).
    GaussSum,
    /// Spin state-space dimensions (`summary` or `psm`).
    Dims {
        /// Enumerate every spin structure of this genus.
        #[arg(long)]
        genus: Option<usize>,
        /// One spin structure as `a1,b1,a2,b2,...`.
        #[arg(long)]
        spin: Option<String>,
    },
    /// Spin and oriented surgery invariants (`psm`, `link`).
    Invariant,
    /// Functor image, kernel automorphism and 2:1 check (`psm`), or the
    /// lattice round trip (`lattice`).
    Classify {
        #[arg(long)]
        from_lattice: bool,
    },
    /// Torus S and T in the spin basis with restriction and intertwiner checks (`psm`).
    Mcg,
    /// Refinement identity with one constant across all links (`psm`, `link`...).
    CheckRefinement,
    /// Discriminant triple of an odd lattice with characteristic vector (`lattice`).
    Lattice,
}

#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    pub inputs: Vec<(String, String)>,
    pub precision: usize,
    pub jobs: usize,
    pub cap: usize,
}

impl Job {
    pub fn new(command: Command, inputs: &[(&str, &str)]) -> Self {
        Job {
            command,
            inputs: inputs.iter().map(|(r, s)| (r.to_string(), s.to_string())).collect(),
            precision: 12,
            jobs: 1,
            cap: 4096,
        }
    }
}

fn parse_inputs(raw: &[String]) -> Result<Vec<(String, String)>, CliError> {
    raw.iter()
        .map(|s| {
            s.split_once('=')
                .filter(|(r, f)| !r.is_empty() && !f.is_empty())
                .map(|(r, f)| (r.to_string(), f.to_string()))
                .ok_or_else(|| CliError::Usage(format!("--input `{s}`: expected ROLE=FILE")))
        })
        .collect()
}

/// Everything `main` does apart from printing: the output document and the
/// exit status.
pub fn execute(cli: &Cli) -> (Value, i32) {
    let result = (|| {
        if cli.corpus {
            if cli.command.is_some() || !cli.inputs.is_empty() {
                return Err(CliError::Usage("--corpus takes no subcommand or inputs".into()));
            }
            return Ok(corpus::run_all(cli.precision, cli.jobs, cli.cap));
        }
        let command = cli.command.clone().ok_or_else(|| CliError::Usage("no subcommand given (see --help)".into()))?;
        if cli.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let job =
            Job { command, inputs: parse_inputs(&cli.inputs)?, precision: cli.precision, jobs: cli.jobs, cap: cli.cap };
        commands::run(&job)
    })();
    match result {
        Ok(o) => {
            let code = if o.ok { error::EXIT_OK } else { error::EXIT_CHECK };
            (o.output, code)
        }
        Err(e) => (json!({"error": {"kind": e.kind(), "message": e.message()}}), e.exit_code()),
    }
}
