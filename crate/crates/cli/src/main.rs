use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Homological invariants and extension / derived dimension bounds for
/// bound quiver algebras.
#[derive(Parser)]
#[command(name = "radlayer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Algebra description file, or a built-in fixture such as `FIX:E41(4,1)`.
    pub input: String,
    /// Syzygy cutoff for dimension verdicts.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    /// Refuse algebras with nonzero paths of this length.
    #[arg(long, default_value_t = 64)]
    pub max_path_length: usize,
    /// Override the coefficient field: `Q` or a prime `p`.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub json: bool,
    /// Seed of the randomized isomorphism search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, build and self-check an algebra.
    Validate(Common),
    /// Dimension, Loewy length, projectives, injectives, global dimension.
    Info(Common),
    /// Minimal projective resolution of a module.
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "module")]
        simple: Option<String>,
        /// `P:LABEL`, `S:LABEL`, `I:LABEL` or a module JSON file.
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Radical layer length trace for a subset V of simples.
    Layer {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex labels; empty for the empty set.
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        #[arg(long, conflicts_with = "module")]
        simple: Option<String>,
        #[arg(long)]
        module: Option<String>,
    },
    /// Bounds for one subset V.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        /// An externally known extension dimension, for the chain note.
        #[arg(long)]
        known_extdim: Option<i64>,
    },
    /// Bounds for every subset of simples.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 65536)]
        subset_cap: u128,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        parallel: u64,
    },
    /// Bounds relative to a finite subcategory add X.
    RelativeBounds {
        #[command(flatten)]
        common: Common,
        /// JSON list of generators: module objects or `P:`/`S:`/`I:` strings.
        #[arg(long)]
        generators: PathBuf,
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        #[arg(long)]
        assert_resolving: bool,
        #[arg(long)]
        assert_coresolving: bool,
    },
    /// Print (or write) a built-in algebra description.
    Fixture {
        /// `E41`, `N`, `B`, or a full name such as `E41(4,10)`, `N3`, `B2`.
        name: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every shipped fixture into this directory.
        #[arg(long, conflicts_with_all = ["name", "out"])]
        all: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Validate(c) => commands::validate(&c),
        Command::Info(c) => commands::info(&c),
        Command::Resolve {
            common,
            simple,
            module,
            steps,
        } => commands::resolve(&common, simple.as_deref(), module.as_deref(), steps),
        Command::Layer {
            common,
            v,
            simple,
            module,
        } => commands::layer(&common, &v, simple.as_deref(), module.as_deref()),
        Command::Bounds {
            common,
            v,
            known_extdim,
        } => commands::bounds(&common, &v, known_extdim),
        Command::Search {
            common,
            subset_cap,
            parallel,
        } => commands::search(&common, subset_cap, parallel as usize),
        Command::RelativeBounds {
            common,
            generators,
            v,
            assert_resolving,
            assert_coresolving,
        } => commands::relative_bounds(&common, &generators, &v, assert_resolving, assert_coresolving),
        Command::Fixture { name, m, n, out, all } => commands::fixture(name.as_deref(), m, n, out.as_deref(), all.as_deref()),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 2 } else { 1 })
        }
    }
}
