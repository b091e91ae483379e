use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};

use leibniz::cli::{self, CliFailure};

#[derive(Parser)]
#[command(
    name = "leibniz",
    about = "Exact-arithmetic Leibniz algebra cohomology and Ext-group calculator",
    version
)]
struct Cli {
    /// Log progress to stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity on every basis triple of an algebra.
    Validate {
        /// Catalog name (sl2, hemi:sl2:V1, ...) or JSON file path.
        algebra: String,
    },
    /// Print dimension, Leibniz kernel, quotient, Killing rank and the
    /// simplicity verdict.
    Invariants { algebra: String },
    /// Leibniz cohomology dimensions HL^q(h, M) for q = 0..=max-degree.
    Hl {
        algebra: String,
        /// Coefficient bimodule: k, V:m:s, V:m:a, or a JSON file.
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Dump representative cocycles as JSON.
        #[arg(long)]
        reps: bool,
    },
    /// Chevalley-Eilenberg cohomology dimensions H^p(g, V).
    Ce {
        algebra: String,
        /// Coefficient module: k, V:m, or a JSON file with left operators.
        #[arg(long)]
        coeff: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        reps: bool,
    },
    /// Ext groups between two bimodules, per degree with provenance.
    Ext {
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// direct | spectral | both
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// The full Ext grid over the simple bimodules up to a weight.
    Table {
        algebra: String,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// json | csv | latex
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn run(command: &Command) -> Result<(), CliFailure> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::Validate { algebra } => cli::cmd_validate(algebra, &mut out),
        Command::Invariants { algebra } => cli::cmd_invariants(algebra, &mut out),
        Command::Hl {
            algebra,
            coeff,
            max_degree,
            reps,
        } => cli::cmd_hl(algebra, coeff, *max_degree, *reps, &mut out),
        Command::Ce {
            algebra,
            coeff,
            max_degree,
            reps,
        } => cli::cmd_ce(algebra, coeff, *max_degree, *reps, &mut out),
        Command::Ext {
            algebra,
            left,
            right,
            max_degree,
            method,
        } => cli::cmd_ext(algebra, left, right, *max_degree, method, &mut out),
        Command::Table {
            algebra,
            max_weight,
            max_degree,
            format,
        } => cli::cmd_table(algebra, *max_weight, *max_degree, format, &mut out),
    }
}

fn main() {
    // Die silently when the consumer of a pipe goes away, like other
    // line-oriented tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let args = Cli::parse();
    let started = Instant::now();
    let code = match run(&args.command) {
        Ok(()) => cli::EXIT_OK,
        Err(failure) => {
            let mut err = std::io::stderr().lock();
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    };
    if args.verbose {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    std::process::exit(code);
}
