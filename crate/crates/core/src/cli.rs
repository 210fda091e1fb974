//! Command-line front end. All output is deterministic for a given
//! configuration; exit codes are 0 (success), 1 (operational or validation
//! error) and 2 (a mathematical claim failed).

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

use crate::blackbox::BlackBoxGroup;
use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::group::{PGroup2, DEFAULT_TABLE_CAP};
use crate::invariants::{
    fingerprint_table, fingerprint_with, verify_injectivity, Fingerprint, FingerprintOptions,
};
use crate::params::{enumerate_admissible, is_admissible, region, region_svg, Tuple5};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CLAIM_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pgmip", version, about = "Two-generated class-two p-groups and their modular group-algebra invariants")]
pub struct Config {
    /// Worker threads for sweeps (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List admissible tuples, one `p,m,n1,n2,s1,s2` per line
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-total")]
        max_total: u32,
        /// One JSON object per line
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Comma-separated values (default)
        #[arg(long)]
        csv: bool,
    },
    /// Admissible (s1, s2) pairs for fixed (p, m, n1, n2) as CSV rows
    Figure {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        /// Also write an SVG scatter plot here
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Write the multiplication table of the group of a constructible tuple
    Construct {
        #[arg(long)]
        p: u64,
        /// m,n1,n2,s1,s2
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: usize,
    },
    /// Print the canonical tuple and witness pair of a table
    Canonicalize {
        #[arg(long = "in")]
        input: PathBuf,
        /// Relabel the table with this seed first
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the fingerprint of a table or tuple
    Invariants(InvariantsArgs),
    /// Fingerprint every admissible tuple up to an order bound and report collisions
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long = "max-total")]
        max_total: u32,
        /// Use the closed forms only
        #[arg(long)]
        formula_only: bool,
        /// Leave the squaring-chain kernel sizes out of the fingerprint
        #[arg(long)]
        drop_x: bool,
        /// Write the JSON-lines report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "tuple"])))]
pub struct InvariantsArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// m,n1,n2,s1,s2 (requires --p)
    #[arg(long, requires = "p")]
    tuple: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    formula_only: bool,
}

/// Parses `args` and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Config::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            }
        }
    }
}

pub fn run(cfg: &Config, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cfg.threads {
        if k == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_ERROR;
        }
        builder = builder.num_threads(k);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| dispatch(&cfg.command, out, err)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: &Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    match cmd {
        Command::Enumerate {
            p, max_total, json, ..
        } => {
            for t in enumerate_admissible(*p, *max_total)? {
                if *json {
                    writeln!(out, "{}", serde_json::to_string(&t).expect("serializable"))?;
                } else {
                    writeln!(out, "{t}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Figure { p, m, n1, n2, svg } => {
            let pairs = region(*p, *m, *n1, *n2)?;
            for (s1, s2) in &pairs {
                writeln!(out, "{s1},{s2}")?;
            }
            if let Some(path) = svg {
                std::fs::write(path, region_svg(*m, &pairs))?;
            }
            Ok(EXIT_OK)
        }
        Command::Construct { p, tuple, out: path, cap } => {
            let t = Tuple5::parse_shape(*p, tuple)?;
            PGroup2::new(t)?.multiplication_table(*cap)?.save(path)?;
            Ok(EXIT_OK)
        }
        Command::Canonicalize { input, seed } => {
            let mut g = BlackBoxGroup::load(input)?;
            if let Some(s) = seed {
                g = g.random_relabel(*s);
            }
            let c = canonicalize(&g)?;
            writeln!(out, "{}", c.tuple)?;
            writeln!(out, "witness {},{}", c.witness.g1, c.witness.g2)?;
            Ok(EXIT_OK)
        }
        Command::Invariants(args) => {
            let fp = if let Some(path) = &args.input {
                fingerprint_table(&BlackBoxGroup::load(path)?, false)?
            } else {
                let p = args.p.expect("clap enforces --p with --tuple");
                let shape = args.tuple.as_deref().expect("clap enforces a source");
                let t = Tuple5::parse_shape(p, shape)?;
                if is_admissible(&t) {
                    let mut opts = FingerprintOptions::for_prime(p);
                    opts.formula_only = args.formula_only;
                    fingerprint_with(&t, &opts)?.0
                } else {
                    // not admissible: describe the constructed group directly
                    let g = PGroup2::new(t)?.multiplication_table(DEFAULT_TABLE_CAP)?;
                    fingerprint_table(&g, false)?
                }
            };
            writeln!(out, "{}", format_fingerprint(&fp))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            p,
            max_total,
            formula_only,
            drop_x,
            out: path,
        } => {
            let opts = FingerprintOptions {
                formula_only: *formula_only,
                drop_x: *drop_x,
                ..FingerprintOptions::for_prime(*p)
            };
            let report = verify_injectivity(*p, *max_total, &opts)?;
            let mut text = String::new();
            for r in &report.records {
                let line = json!({
                    "record": "tuple",
                    "tuple": r.tuple.to_string(),
                    "path": r.path,
                    "fingerprint": r.fingerprint,
                    "u": r.u.u,
                    "u_predicted": r.u.predicted,
                    "u_claim": r.u.holds,
                    "u_index_zero": r.u.index_zero,
                    "exponent_claim": r.exponent_claim,
                });
                text.push_str(&line.to_string());
                text.push('\n');
            }
            for s in &report.separations {
                let line = json!({
                    "record": "separation",
                    "class": s.class,
                    "s2": s.s2,
                    "component": s.component,
                });
                text.push_str(&line.to_string());
                text.push('\n');
            }
            for (a, b) in &report.collisions {
                let line = json!({
                    "record": "collision",
                    "a": a.to_string(),
                    "b": b.to_string(),
                });
                text.push_str(&line.to_string());
                text.push('\n');
            }
            let u_failures = report.u_failures();
            let summary = json!({
                "record": "summary",
                "p": report.p,
                "max_total": report.max_total,
                "tuples": report.records.len(),
                "collisions": report.collisions.len(),
                "u_claim_failures": u_failures.len(),
                "u_index_zero_tuples": report.records.iter().filter(|r| r.u.index_zero).count(),
                "exponent_claim_failures": report.exponent_failures().len(),
                "formula_only": formula_only,
                "drop_x": drop_x,
            });
            text.push_str(&summary.to_string());
            text.push('\n');
            match path {
                Some(path) => std::fs::write(path, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            writeln!(
                err,
                "tuples={} collisions={}",
                report.records.len(),
                report.collisions.len()
            )?;
            for t in &u_failures {
                writeln!(err, "u-claim failed for {t}")?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAILED
            })
        }
    }
}

pub fn format_fingerprint(fp: &Fingerprint) -> String {
    let list = |v: Vec<String>| v.join(",");
    format!(
        "order={} abelianization=({},{}) exponent={} d=[{}] x=[{}]",
        fp.p.pow(fp.order),
        fp.abelianization.0,
        fp.abelianization.1,
        fp.p.pow(fp.exponent),
        list(fp.d.iter().map(u32::to_string).collect()),
        list(fp.x.iter().map(usize::to_string).collect()),
    )
}

impl From<Error> for std::io::Error {
    fn from(e: Error) -> Self {
        std::io::Error::other(e.to_string())
    }
}
