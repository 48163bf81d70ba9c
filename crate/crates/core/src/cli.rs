//! Command-line front end. The `peterson` binary is a thin wrapper over [`run`].

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expansion::expand_general_square;
use crate::format::{class_to_csv, class_to_json, class_to_text, table_to_json, write_table_csv};
use crate::index_set::{IndexSet, RingContext};
use crate::poly::TautClass;
use crate::scalar::alternating_binomial_sum;
use crate::structure::{
    full_table_with_limit, multiply, size_limit, verify_exhaustive, verify_random, PairReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed used by `verify --mode random` when none is given.
pub const DEFAULT_SEED: u64 = 20_240_229;

#[derive(Parser, Debug)]
#[command(
    name = "peterson",
    version,
    about = "Exact products in the tautological basis of the Peterson variety cohomology"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<OutputFormat>,

    /// Worker threads for table and sweep commands (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest n accepted by exhaustive commands.
    #[arg(long, global = true, env = "PETERSON_MAX_N")]
    pub max_n: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Exhaustive,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand x_prefix · x_a⋯x_c²⋯x_b · x_suffix in the tautological basis.
    Expand {
        #[arg(long)]
        n: usize,
        /// Consecutive block `a..b`.
        #[arg(long, value_parser = parse_block)]
        block: (usize, usize),
        /// The squared index c, a <= c <= b.
        #[arg(long)]
        square: usize,
        #[arg(long, default_value = "", value_parser = parse_set)]
        prefix: IndexSet,
        #[arg(long, default_value = "", value_parser = parse_set)]
        suffix: IndexSet,
    },
    /// Product x_left · x_right. The empty string is the empty set.
    Multiply {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_set)]
        left: IndexSet,
        #[arg(long, value_parser = parse_set)]
        right: IndexSet,
    },
    /// Full structure-constant table.
    Table {
        #[arg(long)]
        n: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare products against the independent normal-form oracle.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: VerifyMode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Check the alternating binomial identity for 0 <= b < d <= d_max.
    Identity {
        #[arg(long, default_value_t = 30)]
        d_max: i64,
    },
}

fn parse_set(s: &str) -> std::result::Result<IndexSet, String> {
    IndexSet::parse_list(s).map_err(|e| e.to_string())
}

fn parse_block(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

enum Outcome {
    Ok,
    VerifyFailed,
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut (dyn Write + Send) = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| execute(&cli, stdout, stderr)),
            Err(e) => Err(Error::shape(format!("cannot start {w} workers: {e}"))),
        },
        None => execute(&cli, stdout, stderr),
    };
    match result {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::VerifyFailed) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn ring(n: usize) -> Result<RingContext> {
    if n < 2 {
        return Err(Error::shape(format!("n must be at least 2, got {n}")));
    }
    RingContext::new(n)
}

fn write_class(
    class: &TautClass,
    format: OutputFormat,
    out: &mut (dyn Write + Send),
) -> Result<()> {
    let text = match format {
        OutputFormat::Json => class_to_json(class) + "\n",
        OutputFormat::Csv => class_to_csv(class),
        OutputFormat::Text => class_to_text(class),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn execute(
    cli: &Cli,
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> Result<Outcome> {
    let limit = cli.max_n.unwrap_or_else(size_limit);
    match &cli.command {
        Command::Expand {
            n,
            block: (a, b),
            square,
            prefix,
            suffix,
        } => {
            let ctx = ring(*n)?;
            let class = expand_general_square(*prefix, *a, *square, *b, *suffix, ctx)?;
            write_class(&class, cli.format.unwrap_or(OutputFormat::Json), stdout)?;
        }
        Command::Multiply { n, left, right } => {
            let ctx = ring(*n)?;
            let product = multiply(
                &TautClass::basis_element(ctx, *left)?,
                &TautClass::basis_element(ctx, *right)?,
            )?;
            write_class(&product, cli.format.unwrap_or(OutputFormat::Json), stdout)?;
        }
        Command::Table { n, out } => {
            let table = full_table_with_limit(ring(*n)?, limit)?;
            let format = cli.format.unwrap_or(OutputFormat::Csv);
            let mut sink: Box<dyn Write + '_> = match out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(&mut *stdout),
            };
            match format {
                OutputFormat::Csv => write_table_csv(&table, &mut sink)?,
                OutputFormat::Json => writeln!(sink, "{}", table_to_json(&table))?,
                OutputFormat::Text => {
                    for (j, k, l, c) in table.rows() {
                        writeln!(sink, "c[{j}, {k}; {l}] = {c}")?;
                    }
                }
            }
            sink.flush()?;
        }
        Command::Verify {
            n,
            mode,
            seed,
            samples,
        } => {
            let ctx = ring(*n)?;
            let reports = match mode {
                VerifyMode::Exhaustive => verify_exhaustive(ctx, limit)?,
                VerifyMode::Random => {
                    verify_random(ctx, *samples, &mut ChaCha8Rng::seed_from_u64(*seed))?
                }
            };
            let failures: Vec<&PairReport> = reports.iter().filter(|r| !r.is_ok()).collect();
            for r in &failures {
                writeln!(
                    stderr,
                    "mismatch for J={} K={} (integral: {})",
                    r.j, r.k, r.integral
                )?;
                for d in &r.discrepancies {
                    writeln!(
                        stderr,
                        "  L={}: expansion {} vs oracle {}",
                        d.l, d.expansion, d.oracle
                    )?;
                }
            }
            if !failures.is_empty() {
                writeln!(
                    stdout,
                    "{} of {} pairs failed verification",
                    failures.len(),
                    reports.len()
                )?;
                return Ok(Outcome::VerifyFailed);
            }
            writeln!(stdout, "{} pairs verified against oracle", reports.len())?;
        }
        Command::Identity { d_max } => {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for d in 1..=*d_max {
                for b in 0..d {
                    let v = alternating_binomial_sum(d, b)?;
                    checked += 1;
                    if v != 1.into() {
                        bad.push((d, b, v));
                    }
                }
            }
            for (d, b, v) in &bad {
                writeln!(stderr, "d={d} b={b}: sum = {v}")?;
            }
            if !bad.is_empty() {
                writeln!(stdout, "{} of {checked} identities failed", bad.len())?;
                return Ok(Outcome::VerifyFailed);
            }
            writeln!(stdout, "{checked} identities checked, all equal 1")?;
        }
    }
    Ok(Outcome::Ok)
}
