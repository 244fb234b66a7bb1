//! `isograss`: presentations, invariants, oracle checks and degree verdicts
//! for oriented isotropic and real Grassmannians.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 unsupported space, 4 dimension mismatch.

mod commands;

use clap::{Parser, Subcommand};

pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_DIMENSION_MISMATCH: i32 = 4;

#[derive(Parser)]
#[command(
    name = "isograss",
    about = "Exact cohomology presentations and Brouwer-degree obstructions for isotropic and real oriented Grassmannians",
    after_help = "Space specs: I:2n,k (oriented isotropic, ambient 2n), RG:m,l (oriented real), CG:n,k (complex), S:d (sphere).\nThe scan bound may also be set through the ISOGRASS_BOUND environment variable; the --bound flag wins."
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Scan bound for enumerations (default 40, or ISOGRASS_BOUND)
    #[arg(long, global = true)]
    bound: Option<u32>,

    /// Range for the parametric case families (default 200)
    #[arg(long = "s-max", global = true)]
    s_max: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, fact sheet and sphere identification of a space
    Space { spec: String },
    /// Ring presentation: generators, relations, exterior degrees
    Ring {
        spec: String,
        /// Also print the sieve trace and the survivor-formula comparison
        #[arg(long)]
        trace: bool,
    },
    /// Poincaré polynomial, top degree and palindrome check
    Poincare { spec: String },
    /// Nilpotency height of an element in the quotient presentation
    Height {
        spec: String,
        /// Ring element, e.g. p1 or e^2 (canonical rendering syntax)
        #[arg(long)]
        element: String,
        /// Override the power-search cap
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Evaluate an expression and reduce it to normal form
    Eval { spec: String, expression: String },
    /// Degree-possibility verdict for maps source -> target
    Verdict { source: String, target: String },
    /// Enumerate equal-dimension pairs with verdicts
    Enumerate {
        /// all | iso-iso | iso-real | real-iso
        #[arg(long, default_value = "all")]
        family: String,
    },
    /// Run every scan and cross-validation suite
    Verify,
}

pub struct CliConfig {
    pub json: bool,
    pub bound: u32,
    pub s_max: u32,
}

fn effective_bound(flag: Option<u32>) -> u32 {
    flag.or_else(|| {
        std::env::var("ISOGRASS_BOUND")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(40)
}

pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_UNSUPPORTED,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let config = CliConfig {
        json: cli.json,
        bound: effective_bound(cli.bound),
        s_max: cli.s_max.unwrap_or(200),
    };
    let result = match cli.command {
        Command::Space { spec } => commands::cmd_space(&config, &spec),
        Command::Ring { spec, trace } => commands::cmd_ring(&config, &spec, trace),
        Command::Poincare { spec } => commands::cmd_poincare(&config, &spec),
        Command::Height { spec, element, cap } => {
            commands::cmd_height(&config, &spec, &element, cap)
        }
        Command::Eval { spec, expression } => commands::cmd_eval(&config, &spec, &expression),
        Command::Verdict { source, target } => commands::cmd_verdict(&config, &source, &target),
        Command::Enumerate { family } => commands::cmd_enumerate(&config, &family),
        Command::Verify => commands::cmd_verify(&config),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}
