//! `maghom`: exact magnitude, magnitude homology and Morse-matching
//! computations on small graphs.
//!
//! Exit codes: 0 success, 1 invalid input or a failed verification,
//! 2 a size or search budget was exceeded, 3 an internal inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(name = "maghom", version, about)]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    /// Cap on the number of generators of any single chain complex.
    #[arg(long, global = true, env = "MAGHOM_MAX_BASIS",
          value_parser = clap::value_parser!(u64).range(1..))]
    max_basis: Option<u64>,

    /// Input format of graph files.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatchingSource {
    Pawful,
}

#[derive(Args, Debug, Clone)]
pub struct Endpoints {
    /// First endpoint (1-based).
    #[arg(long, short = 'a')]
    pub a: usize,
    /// Last endpoint (1-based).
    #[arg(long, short = 'b')]
    pub b: usize,
    /// Length ℓ.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub ell: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Magnitude as a rational function and as a power series.
    Magnitude {
        graph: PathBuf,
        /// Print series coefficients through q^N.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
        /// Compare series coefficients with Euler characteristics of MH up to ℓ = L.
        #[arg(long, value_name = "L")]
        euler: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Table of MH_k^ℓ for 0 <= k <= ℓ <= lmax.
    MhTable {
        graph: PathBuf,
        #[arg(long, default_value_t = 4)]
        lmax: usize,
        /// Restrict to tuples from A to B (1-based).
        #[arg(long, value_name = "A,B", value_delimiter = ',', num_args = 1)]
        ab: Option<Vec<usize>>,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// The simplicial pair K_ℓ(a,b) ⊇ K'_ℓ(a,b).
    AiComplex {
        graph: PathBuf,
        #[command(flatten)]
        at: Endpoints,
        /// List the maximal faces of K and the simplices of K'.
        #[arg(long)]
        list_faces: bool,
        /// Relative homology and the comparison with MH_*^ℓ(a,b).
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a matching on K \ K' and check it with discrete Morse theory.
    Morse {
        graph: PathBuf,
        #[command(flatten)]
        at: Endpoints,
        /// Use the selector-based S of a pawful graph.
        #[arg(long, value_enum, conflicts_with = "s_file")]
        matching: Option<MatchingSource>,
        /// Use the S-structure in this file.
        #[arg(long, value_name = "PATH")]
        s_file: Option<PathBuf>,
        /// Also list the critical cells and a cycle if one exists.
        #[arg(long)]
        report: bool,
        /// Let a later quadruple take precedence over a leading triple.
        #[arg(long)]
        quad_first: bool,
        #[arg(long)]
        json: bool,
    },
    /// Pawful test with a witness, and the star property.
    Pawful {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verify or search for an S-structure.
    SStructure {
        graph: PathBuf,
        #[arg(long, value_name = "FILE", conflicts_with = "search")]
        verify: Option<PathBuf>,
        #[arg(long)]
        search: bool,
        /// Write the certificate found by --search to this file.
        #[arg(long, value_name = "FILE", requires = "search")]
        output: Option<PathBuf>,
        /// Maximum number of search assignments.
        #[arg(long, env = "MAGHOM_BUDGET", default_value_t = 10_000_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// The matching pairs themselves.
    Match {
        graph: PathBuf,
        #[command(flatten)]
        at: Endpoints,
        #[arg(long, value_name = "FILE", conflicts_with = "pawful")]
        s: Option<PathBuf>,
        #[arg(long)]
        pawful: bool,
        #[arg(long)]
        quad_first: bool,
        #[arg(long)]
        json: bool,
    },
    /// One JSON record per graph of a graph6 stream ("-" for stdin).
    Classify {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        lmax: usize,
        #[arg(long, env = "MAGHOM_BUDGET", default_value_t = 10_000_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Whether every edge lies on a 3- or 4-cycle.
    AhkCheck {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // usage errors are validation errors (exit 1), not clap's default 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.into())
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use commands::Failure;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn rejects_short_lengths() {
        let r = Cli::try_parse_from(["maghom", "morse", "g", "-a", "1", "-b", "1", "--ell", "2"]);
        assert!(r.is_err());
    }

    #[test]
    fn failure_codes() {
        assert_eq!(Failure::Validation(String::new()).code(), 1);
        assert_eq!(Failure::Budget(String::new()).code(), 2);
        assert_eq!(Failure::Inconsistent(String::new()).code(), 3);
    }
}
