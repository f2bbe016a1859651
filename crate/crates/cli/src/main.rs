//! Command-line front end: build, verify, decompose and search for
//! d-divisible graceful labelings.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or format error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "divgraceful", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// d = 2m - 1
    F1,
    /// d = 2(2m - 1)
    F2,
    /// d = 4(2m - 1)
    F4,
}

impl FamilyArg {
    fn multiplier(self) -> u64 {
        match self {
            FamilyArg::F1 => 1,
            FamilyArg::F2 => 2,
            FamilyArg::F4 => 4,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a labeling of C_{4k} x P_m from one of the families and write its certificate.
    Construct {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write a DOT rendering with vertices labelled by their values.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Re-check a labeling certificate.
    Verify {
        path: PathBuf,
        /// Require the alpha condition even if the certificate has no alpha block.
        #[arg(long)]
        alpha: bool,
    },
    /// Derive the base blocks of the cyclic decomposition induced by a certificate.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Develop all translates and check the edge partition exhaustively.
        #[arg(long)]
        full_check: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive backtracking search; prints one certificate per line.
    Search {
        /// JSON graph descriptor ({"kind":"simple","n":..,"edges":[[u,v],..]} or a grid).
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        graph: Option<PathBuf>,
        /// Grid C_{4k} x P_m given as "k,m".
        #[arg(long, value_parser = parse_grid)]
        grid: Option<(usize, usize)>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long)]
        alpha: bool,
        /// Stop after this many labelings (0 = all).
        #[arg(long, default_value_t = 0)]
        limit: usize,
        /// Print only the number of labelings.
        #[arg(long)]
        count: bool,
        /// Keep one labeling per complementary pair.
        #[arg(long)]
        symmetry_breaking: bool,
    },
    /// Tabulate the multipartite hosts for every k <= kmax, 2 <= m <= mmax.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        kmax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        mmax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (k, m) = s.split_once(',').ok_or("expected k,m")?;
    let k: usize = k.trim().parse().map_err(|e| format!("k: {e}"))?;
    let m: usize = m.trim().parse().map_err(|e| format!("m: {e}"))?;
    if k < 1 || m < 2 {
        return Err(format!("need k >= 1 and m >= 2, got {k},{m}"));
    }
    Ok((k, m))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct {
            k,
            m,
            family,
            out,
            dot,
        } => commands::construct(
            k as usize,
            m as usize,
            family.multiplier(),
            &out,
            dot.as_deref(),
        ),
        Command::Verify { path, alpha } => commands::verify(&path, alpha),
        Command::Decompose {
            input,
            n,
            full_check,
            out,
        } => commands::decompose(&input, n, full_check, &out),
        Command::Search {
            graph,
            grid,
            d,
            alpha,
            limit,
            count,
            symmetry_breaking,
        } => commands::search(commands::SearchArgs {
            graph,
            grid,
            d,
            alpha,
            limit,
            count,
            symmetry_breaking,
        }),
        Command::Table { kmax, mmax, n } => commands::table(kmax as usize, mmax as usize, n),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
