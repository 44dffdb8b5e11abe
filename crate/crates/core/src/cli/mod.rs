//! The `fpt` command line.
//!
//! Every subcommand writes plain text to the supplied writer; rationals are
//! always reduced `a/b`. Errors carry their own exit code (see
//! [`Error::exit_code`]).

mod config;

pub use config::{ConfigEntries, PolySource, ScanConfig, MIN_TERM_BUDGET};

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::charp::{self, reduce_mod_p, FpPoly, QPoly, TermBudget, DEFAULT_TERM_BUDGET};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, primes_in_progression, PrimeSearch, Rational};
use crate::polygeo::{self, MonomialSet};
use crate::text::format_monomial;
use crate::thresholds::{self, dense_fpurity_scan, report_json, write_csv, ClaimStrength, VerdictKind};

#[derive(Debug, Parser)]
#[command(name = "fpt", version, about = "Exact F-pure and log canonical thresholds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal coordinate sum of the splitting polytope, its maximizers and the minimal face.
    Alpha {
        monomials: String,
        #[arg(long)]
        vars: Option<usize>,
        /// Also report the main-theorem verdict at this prime.
        #[arg(short, long)]
        prime: Option<u64>,
    },
    /// Log canonical threshold of the monomial ideal.
    Lct {
        monomials: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Newton polyhedron: minimal face through the diagonal, or membership of a point.
    Newton {
        monomials: String,
        #[arg(long)]
        vars: Option<usize>,
        /// Comma-separated rational coordinates.
        #[arg(long)]
        point: Option<String>,
    },
    /// `nu_f(e)`, or the whole table up to `e` with `--table`.
    Nu {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(short)]
        e: u32,
        #[arg(long)]
        table: bool,
    },
    /// Bracket the threshold from the `nu` table up to `e_max`.
    Bracket {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(short = 'e', long)]
        e_max: u32,
    },
    /// Decide `fpt >= lambda` exactly; needs `(p^e - 1) lambda` integral.
    Certify {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(short)]
        e: u32,
    },
    /// Leading-coefficient polynomial for a monomial set in diagonal position.
    Theta {
        monomials: String,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(short, long)]
        p: u64,
        #[arg(short)]
        e: u32,
        /// Evaluate at the coefficients of this polynomial.
        #[arg(long)]
        at: Option<String>,
    },
    /// Per-prime threshold reports for the reductions of a rational polynomial.
    Scan(ScanArgs),
    /// Primes congruent to 1 modulo `modulus`.
    Primes {
        modulus: u64,
        count: usize,
        #[arg(long, default_value_t = crate::exactnum::DEFAULT_PRIME_CEILING)]
        ceiling: u64,
    },
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    pub poly: String,
    #[arg(short, long)]
    pub p: u64,
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
    pub budget: u64,
}

impl PolyArgs {
    fn reduce(&self) -> Result<FpPoly> {
        let f = QPoly::parse(&self.poly, self.vars)?;
        reduce_mod_p(&f, self.p, false)
    }

    fn budget(&self) -> TermBudget {
        TermBudget::new(self.budget)
    }
}

#[derive(Debug, Default, Args)]
pub struct ScanArgs {
    /// Flat `key = value` file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long)]
    pub input_file: Option<PathBuf>,
    /// `2,3,5`, `progression:d,count` or `range:lo..hi`.
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long)]
    pub e_max: Option<u32>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub e_cap: Option<u32>,
    #[arg(long)]
    pub preserve_support: Option<bool>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Print the CSV table to standard output.
    #[arg(long)]
    pub stdout: bool,
}

impl ScanArgs {
    pub fn to_config(&self) -> Result<ScanConfig> {
        let base = match &self.config {
            Some(path) => ConfigEntries::load(path)?,
            None => ConfigEntries::default(),
        };
        let mut flags = ConfigEntries::default();
        let mut set = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                flags.set(key, v);
            }
        };
        set("input", self.input.clone());
        set("input_file", self.input_file.as_ref().map(|p| p.display().to_string()));
        set("primes", self.primes.clone());
        set("e_max", self.e_max.map(|v| v.to_string()));
        set("budget", self.budget.map(|v| v.to_string()));
        set("e_cap", self.e_cap.map(|v| v.to_string()));
        set("preserve_support", self.preserve_support.map(|v| v.to_string()));
        set("jobs", self.jobs.map(|v| v.to_string()));
        set("csv", self.csv.as_ref().map(|p| p.display().to_string()));
        set("json", self.json.as_ref().map(|p| p.display().to_string()));
        set("stdout", self.stdout.then(|| "true".to_string()));
        base.merge(flags).resolve()
    }
}

fn monomials(text: &str, vars: Option<usize>) -> Result<MonomialSet> {
    MonomialSet::parse(text, vars)
}

fn tuple(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn member_list(ms: &MonomialSet, members: &[usize]) -> String {
    let names: Vec<String> = members.iter().map(|&i| format_monomial(ms.monomial(i))).collect();
    names.join(", ")
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Alpha { monomials: text, vars, prime } => {
            let ms = monomials(text, *vars)?;
            let points = polygeo::maximal_points(&ms);
            let newton = polygeo::newton_analysis(&ms);
            writeln!(out, "alpha = {}", format_rational(&points.alpha))?;
            match &points.eta {
                Some(eta) => writeln!(out, "maximal point: unique, eta = {}", tuple(eta))?,
                None => writeln!(out, "maximal point: not unique")?,
            }
            let diagonal = if newton.diagonal_position { "yes" } else { "no" };
            writeln!(out, "diagonal position: {diagonal}")?;
            writeln!(out, "minimal face monomials: {}", member_list(&ms, &newton.lambda_members))?;
            if let Some(p) = prime {
                let v = thresholds::main_theorem(&ms, *p)?;
                match v.kind {
                    VerdictKind::Exact => writeln!(out, "p = {p}: carry-free, fpt = {}", format_rational(&v.value))?,
                    VerdictKind::LowerBound => writeln!(
                        out,
                        "p = {p}: carry-free prefix L = {}, fpt >= {}",
                        v.carry,
                        format_rational(&v.value)
                    )?,
                }
            }
        }
        Command::Lct { monomials: text, vars } => {
            let ms = monomials(text, *vars)?;
            writeln!(out, "lct = {}", format_rational(&polygeo::lct_monomial(&ms)))?;
        }
        Command::Newton { monomials: text, vars, point } => {
            let ms = monomials(text, *vars)?;
            if let Some(point) = point {
                let v = point.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                let inside = polygeo::newton_contains(&ms, &v)?;
                writeln!(out, "{} {} the Newton polyhedron", tuple(&v), if inside { "lies in" } else { "lies outside" })?;
            } else {
                let a = polygeo::newton_analysis(&ms);
                writeln!(out, "diagonal point = (1/alpha) * 1, alpha = {}", format_rational(&a.alpha))?;
                writeln!(out, "minimal face monomials ({}): {}", a.r(), member_list(&ms, &a.lambda_members))?;
                writeln!(out, "diagonal position: {}", if a.diagonal_position { "yes" } else { "no" })?;
            }
        }
        Command::Nu { poly, e, table } => {
            let f = poly.reduce()?;
            if *table {
                let (t, err) = charp::nu_table(&f, *e, &poly.budget());
                for (i, v) in t.values.iter().enumerate() {
                    writeln!(out, "nu({}) = {v}", i + 1)?;
                }
                if let Some(err) = err {
                    return Err(err);
                }
            } else {
                writeln!(out, "{}", charp::nu(&f, *e, &poly.budget())?)?;
            }
        }
        Command::Bracket { poly, e_max } => {
            let f = poly.reduce()?;
            let report = charp::bracket(&f, *e_max, &poly.budget())?;
            if let Some(t) = &report.nu_table {
                let values: Vec<String> = t.values.iter().map(u64::to_string).collect();
                writeln!(out, "nu = [{}]", values.join(", "))?;
            }
            writeln!(
                out,
                "fpt in ({}, {}]",
                format_rational(&report.low),
                format_rational(&report.high)
            )?;
            if !report.complete {
                writeln!(out, "term budget exhausted; table is partial")?;
            }
        }
        Command::Certify { poly, lambda, e } => {
            let f = poly.reduce()?;
            let lambda = parse_rational(lambda)?;
            let proved = charp::certify_lower(&f, &lambda, *e, &poly.budget())?;
            let relation = if proved { "≥" } else { "<" };
            writeln!(out, "PROVED fpt {relation} {}", format_rational(&lambda))?;
        }
        Command::Theta { monomials: text, vars, p, e, at } => {
            let ms = monomials(text, *vars)?;
            let theta = thresholds::theta_polynomial(&ms, *p, *e)?;
            let names: Vec<String> = theta
                .variables
                .iter()
                .enumerate()
                .map(|(j, &i)| format!("t{} = coefficient of {}", j + 1, format_monomial(ms.monomial(i))))
                .collect();
            writeln!(out, "theta = {theta}")?;
            writeln!(out, "{}", names.join("; "))?;
            if let Some(poly) = at {
                let f = reduce_mod_p(&QPoly::parse(poly, Some(ms.num_vars()))?, *p, true)?;
                if !f.has_support(&ms) {
                    return Err(Error::SupportMismatch);
                }
                writeln!(out, "theta(u) = {} mod {p}", theta.evaluate_at(&f, &ms))?;
            }
        }
        Command::Scan(args) => scan(&args.to_config()?, out)?,
        Command::Primes { modulus, count, ceiling } => {
            let primes = primes_in_progression(*modulus, *count, PrimeSearch { ceiling: *ceiling })?;
            let text: Vec<String> = primes.iter().map(u64::to_string).collect();
            writeln!(out, "{}", text.join(" "))?;
        }
    }
    Ok(())
}

/// Runs a scan and writes every requested output.
pub fn scan(config: &ScanConfig, out: &mut dyn Write) -> Result<()> {
    let text = config.input_text()?;
    let f = QPoly::parse(&text, None)?;
    let primes = config.primes.resolve()?;
    let rows = dense_fpurity_scan(&f, &primes, &config.options())?;
    if let Some(path) = &config.csv {
        let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        write_csv(&rows, BufWriter::new(file))?;
    }
    if let Some(path) = &config.json {
        let config_json = serde_json::to_value(config).map_err(|e| Error::Io(e.to_string()))?;
        let report = report_json(&f.to_string(), config_json, &rows);
        let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut writer = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut writer, &report).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(writer)?;
        writer.flush()?;
    }
    if config.stdout {
        write_csv(&rows, &mut *out)?;
    }
    let failed = rows.iter().filter(|r| r.strength == ClaimStrength::ReductionError).count();
    if failed > 0 && !config.stdout {
        writeln!(out, "{failed} of {} primes failed to reduce", rows.len())?;
    }
    Ok(())
}
