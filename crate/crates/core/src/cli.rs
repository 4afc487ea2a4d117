//! Command-line front end. `run` parses arguments and writes to the given
//! streams so the binary stays a thin wrapper.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{MzvError, Result};
use crate::genfun::{build, GenFunKind};
use crate::identities::{
    mine_relations, relations_csv, restricted_sum_sides, verify, verify_all, verify_relations, IdentityId,
    RelationClass, Report, Tag,
};
use crate::numerics::{ArgTuple, Evaluator, PrecisionContext};
use crate::word_algebra::{parse_rational, Composition};

/// Environment variable holding the default number of digits.
pub const DIGITS_ENV: &str = "MZV_DIGITS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values of depth <= 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Precision {
    /// Correct decimal digits requested.
    #[arg(long, env = DIGITS_ENV, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..=2000))]
    digits: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    D,
    T,
    Dstar,
    Tstar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Class {
    R21,
    R111,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a convergent multiple zeta value.
    Zeta {
        /// Index such as `2,1,1`.
        #[arg(long)]
        index: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Evaluate Li_index(z^e1, ..., z^en) at a rational 0 < z < 1.
    Li {
        #[arg(long)]
        index: String,
        /// Exponents `e1,...,en`; all ones when omitted.
        #[arg(long)]
        exponents: Option<String>,
        /// Base point such as `1/2`.
        #[arg(long)]
        z: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// Print a generating function.
    Genfun {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify one identity family at one weight.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        weight: u32,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        json: bool,
    },
    /// Verify the whole catalog up to a weight.
    VerifyAll {
        #[arg(long, default_value_t = 10)]
        max_weight: u32,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        precision: Precision,
        #[arg(long)]
        json: bool,
    },
    /// Mine and check extended double shuffle relations.
    Relations {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum)]
        class: Class,
        /// Write the relation matrix to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        precision: Precision,
    },
    /// Restricted triple sums with numeric left and right sides.
    Sumtable {
        #[arg(long)]
        weight: u32,
        #[command(flatten)]
        precision: Precision,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        // the reader went away, e.g. `mzv ... | head`
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: i/o: {e}");
            EXIT_FAILED
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                MzvError::Parse(_)
                | MzvError::PreconditionViolated(_)
                | MzvError::WeightTooSmall { .. }
                | MzvError::DepthMismatch { .. }
                | MzvError::DivergentIndex(_)
                | MzvError::DomainError(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] MzvError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| MzvError::Parse(format!("bad list `{s}`"))))
        .collect()
}

fn print_reports(reports: &[Report], json: bool, out: &mut dyn Write) -> std::result::Result<bool, CliError> {
    if json {
        let text = serde_json::to_string_pretty(reports).map_err(|e| MzvError::Parse(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        for r in reports {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {}@{} ({}) max residual {}", r.id, r.l, r.kind, r.max_residual)?;
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        writeln!(out, "{} checks, {} failed", reports.len(), failed)?;
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> std::result::Result<bool, CliError> {
    match cmd {
        Command::Zeta { index, precision } => {
            let c: Composition = index.parse()?;
            let ctx = PrecisionContext::new(precision.digits);
            let v = Evaluator::uncached(ctx).zeta(&c)?;
            writeln!(out, "{}", v.to_decimal(precision.digits))?;
        }
        Command::Li { index, exponents, z, precision } => {
            let c: Composition = index.parse()?;
            let exps = match exponents {
                Some(e) => parse_list(&e)?,
                None => vec![1; c.depth()],
            };
            let ctx = PrecisionContext::new(precision.digits);
            let v = Evaluator::uncached(ctx).li(&c, &ArgTuple::new(exps, parse_rational(&z)?))?;
            writeln!(out, "{}", v.to_decimal(precision.digits))?;
        }
        Command::Genfun { kind, weight, json } => {
            let kind = match kind {
                Kind::D => GenFunKind::D,
                Kind::T => GenFunKind::T,
                Kind::Dstar => GenFunKind::Dstar,
                Kind::Tstar => GenFunKind::Tstar,
            };
            let p = build(kind, weight)?;
            if json {
                writeln!(out, "{}", p.to_json())?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Command::Verify { id, weight, precision, json } => {
            let id = IdentityId::new(id.parse::<Tag>()?, weight)?;
            let reports = verify(id, PrecisionContext::new(precision.digits))?;
            return print_reports(&reports, json, out);
        }
        Command::VerifyAll { max_weight, jobs, precision, json } => {
            let reports = verify_all(max_weight, PrecisionContext::new(precision.digits), jobs)?;
            return print_reports(&reports, json, out);
        }
        Command::Relations { weight, class, csv, precision } => {
            let class = match class {
                Class::R21 => RelationClass::R21,
                Class::R111 => RelationClass::R111,
            };
            let vectors = mine_relations(weight, class)?;
            if let Some(path) = csv {
                std::fs::write(&path, relations_csv(&vectors)?)?;
                writeln!(out, "wrote {} relations to {}", vectors.len(), path.display())?;
            }
            let reports = verify_relations(weight, class, PrecisionContext::new(precision.digits))?;
            return print_reports(&reports, false, out);
        }
        Command::Sumtable { weight, precision } => {
            let d = precision.digits;
            let ev = Evaluator::new(PrecisionContext::new(d));
            writeln!(out, "{:<14} {:>w$} {:>w$}", "equation", "lhs", "rhs", w = d as usize + 4)?;
            let mut ok = true;
            for (label, lhs, rhs) in restricted_sum_sides(weight)? {
                let (a, b) = (ev.expr(&lhs)?, ev.expr(&rhs)?);
                ok &= a.sub(&b).abs_upper_f64() < 10f64.powi(-(d.saturating_sub(5) as i32));
                writeln!(out, "{label:<14} {:>w$} {:>w$}", a.to_decimal(d), b.to_decimal(d), w = d as usize + 4)
                    ?;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
