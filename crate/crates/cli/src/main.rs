use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(
    name = "lietruss",
    version,
    about = "Finite heaps, trusses and ternary Lie brackets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Truss,
    Ring,
    LieTruss,
    Derivation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    AffebraToTernary,
    TernaryToAffebra,
    RetractLieRing,
    Strengthen,
    BracketFromTruss,
    Derivations,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoryArg {
    FreeHeap,
    FreeTruss,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    /// Group such as Z2, Z4 or Z2xZ2
    #[arg(long)]
    pub group: String,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Report isomorphism-class representatives instead of every structure
    #[arg(long)]
    pub up_to_iso: bool,
    /// Maximum number of structures listed
    #[arg(long)]
    pub limit: Option<usize>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Raise the candidate budget for large searches
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure file against the axioms for its kind
    Check {
        /// Structure file, or - for standard input
        file: PathBuf,
        /// Also check the five-variable Jacobi identity
        #[arg(long)]
        strong: bool,
        /// Report up to 100 witnesses instead of the first
        #[arg(long)]
        all: bool,
    },
    /// Enumerate structures on a small group
    Enumerate(SearchArgs),
    /// Enumerate and list isomorphism classes with their sizes
    Classify(SearchArgs),
    /// Apply a construction and print the resulting structure file
    Convert {
        #[arg(long, value_enum)]
        op: OpArg,
        /// Basepoint for constructions that need one
        #[arg(long)]
        at: Option<usize>,
        /// Allow affebra-to-ternary over a field of characteristic 2
        #[arg(long)]
        force_char2: bool,
        file: PathBuf,
    },
    /// Print the normal form of an expression
    Normalize {
        #[arg(long, value_enum, default_value = "free-truss")]
        theory: TheoryArg,
        /// Comma-separated list of allowed variables
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        expr: String,
    },
    /// Decide an identity "LHS == RHS" in a free theory
    Prove {
        #[arg(long, value_enum, default_value = "free-truss")]
        theory: TheoryArg,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Also search for a counterexample in this many random small trusses
        #[arg(long)]
        falsify: Option<usize>,
        identity: String,
    },
    /// List the derivations of a truss file
    Derivations { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, strong, all } => commands::check(&file, strong, all),
        Command::Enumerate(args) => commands::enumerate(&args),
        Command::Classify(args) => commands::classify(&args),
        Command::Convert {
            op,
            at,
            force_char2,
            file,
        } => commands::convert(&file, op, at, force_char2),
        Command::Normalize { theory, vars, expr } => {
            commands::normalize(theory, vars.as_deref(), &expr)
        }
        Command::Prove {
            theory,
            vars,
            falsify,
            identity,
        } => commands::prove(theory, vars.as_deref(), falsify, &identity),
        Command::Derivations { file } => commands::derivations(&file),
    };
    match result {
        Ok(code) => code,
        Err(e) => commands::report_error(&e),
    }
}
