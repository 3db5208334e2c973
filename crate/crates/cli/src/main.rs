use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gaussmod::verify::{Ranges, Suite};
use gaussmod::{Error, Modulus};

mod commands;
mod output;

use output::{render_csv, render_json, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Gamma,
    Zerosum,
    Blocks,
    Lemma34,
    Sections,
    Slopes,
    Formula,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::Zerosum => Suite::ZeroSum,
            SuiteArg::Blocks => Suite::Blocks,
            SuiteArg::Lemma34 => Suite::Lemma34,
            SuiteArg::Sections => Suite::Sections,
            SuiteArg::Slopes => Suite::Slopes,
            SuiteArg::Formula => Suite::Formula,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Gaussian binomial coefficients modulo N: periods, quasi-periods and
/// residue counts.
#[derive(Debug, Parser)]
#[command(name = "gaussmod", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Print nothing on stdout; the exit code still reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,

    /// Also write the output to this file (same bytes as stdout).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of [n choose k]_q mod N.
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
    },
    /// First LEN values of p_{<=k}(n) mod N.
    Partitions {
        #[arg(long)]
        k: usize,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
        #[arg(long)]
        len: usize,
    },
    /// Minimal period pi_N(k) of p_{<=k} mod N.
    Period {
        #[arg(long)]
        k: usize,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
        /// Confirm against the minimal period of three computed periods.
        #[arg(long)]
        verify: bool,
    },
    /// Quasi-period pi'_N(k) with the step-by-step recursion trace.
    Qperiod {
        #[arg(long)]
        k: usize,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
    },
    /// f_{k,R}(n), the number of coefficients of [n choose k]_q that are R mod N.
    Count {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Linear pieces of f_{k,R} on each class mod pi'_N(k), with the slope
    /// period check for odd N.
    Fit {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
    },
    /// Rational generating function of f_{k,R} and its expansion checked
    /// against direct counts.
    Genfun {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u32,
        #[arg(long = "mod", value_name = "N")]
        modulus: u64,
        #[arg(long)]
        terms: usize,
    },
    /// Run a batch of checks. Defaults: k <= 4, N <= 6, n <= 8 for the
    /// partition sweep, l <= 2 blocks. Exit code 1 if any check fails;
    /// skipped items do not count as failures.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Largest k.
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Largest modulus N.
        #[arg(long, default_value_t = 6)]
        mod_max: u32,
        /// Largest n in the partition identity sweep.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Largest block count l.
        #[arg(long, default_value_t = 2)]
        l_max: usize,
    },
    /// Exact values against asymptotic estimates over a grid of k, e.g.
    /// `--k-grid 10,100..1000/100,10^4`.
    Asymptotics {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, value_name = "SPEC")]
        k_grid: String,
    },
}

fn modulus(n: u64) -> gaussmod::Result<Modulus> {
    Modulus::new(n)
}

fn run(cmd: Command) -> gaussmod::Result<Report> {
    match cmd {
        Command::Coeffs { n, k, modulus: m } => commands::coeffs(n, k, modulus(m)?),
        Command::Partitions { k, modulus: m, len } => commands::partitions(k, modulus(m)?, len),
        Command::Period {
            k,
            modulus: m,
            verify,
        } => commands::period(k, modulus(m)?, verify),
        Command::Qperiod { k, modulus: m } => commands::qperiod(k, modulus(m)?),
        Command::Count {
            k,
            r,
            modulus: m,
            from,
            to,
        } => commands::count(k, r, modulus(m)?, from, to),
        Command::Fit { k, r, modulus: m } => commands::fit(k, r, modulus(m)?),
        Command::Genfun {
            k,
            r,
            modulus: m,
            terms,
        } => commands::genfun_cmd(k, r, modulus(m)?, terms),
        Command::Verify {
            suite,
            k_max,
            mod_max,
            n_max,
            l_max,
        } => commands::verify(
            suite.into(),
            Ranges {
                k_max,
                mod_max,
                n_max,
                l_max,
            },
        ),
        Command::Asymptotics { p, e, k_grid } => commands::asymptotics(p, e, &k_grid),
    }
}

/// 1 for errors that mean a computed identity broke, 2 for bad input.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::NonlinearFit { .. }
        | Error::StructureViolation(_)
        | Error::Inconsistent(_)
        | Error::NoPeriodFound { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gaussmod: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let text = match cli.format {
        Format::Json => render_json(&report),
        Format::Csv => render_csv(&report),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("gaussmod: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
            return ExitCode::from(2);
        }
    }
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
