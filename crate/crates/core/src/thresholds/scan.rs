use std::fmt;
use std::io::Write;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{generic_gap_test, main_theorem, MainTheoremVerdict, VerdictKind};
use crate::charp::{bracket, certify_lower, reduce_mod_p, Certificate, FpPoly, QPoly, TermBudget, ThresholdReport};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, is_prime, multiplicative_order, primes_in_progression, PrimeSearch, Rational};
use crate::polygeo;

/// Which primes a scan visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSpec {
    List(Vec<u64>),
    /// The first `count` primes `p = 1 mod modulus`.
    Progression { modulus: u64, count: usize },
    /// Primes in `lo..=hi`.
    Range { lo: u64, hi: u64 },
}

impl PrimeSpec {
    /// Accepts `2,3,5`, `progression:6,10` or `range:2..50`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |msg: &str| Error::parse(1, 1, format!("prime spec `{text}`: {msg}"));
        let number = |s: &str| s.trim().parse::<u64>().map_err(|_| bad("expected an unsigned integer"));
        if let Some(rest) = text.strip_prefix("progression:") {
            let (d, c) = rest.split_once(',').ok_or_else(|| bad("expected `progression:d,count`"))?;
            return Ok(PrimeSpec::Progression { modulus: number(d)?, count: number(c)? as usize });
        }
        if let Some(rest) = text.strip_prefix("range:") {
            let (lo, hi) = rest.split_once("..").ok_or_else(|| bad("expected `range:lo..hi`"))?;
            return Ok(PrimeSpec::Range { lo: number(lo)?, hi: number(hi)? });
        }
        let list = text.split(',').map(number).collect::<Result<Vec<_>>>()?;
        Ok(PrimeSpec::List(list))
    }

    pub fn resolve(&self) -> Result<Vec<u64>> {
        match self {
            PrimeSpec::List(ps) => {
                if let Some(&bad) = ps.iter().find(|&&p| !is_prime(p)) {
                    return Err(Error::NotPrime(bad));
                }
                let mut ps = ps.clone();
                ps.sort_unstable();
                ps.dedup();
                Ok(ps)
            }
            PrimeSpec::Progression { modulus, count } => {
                primes_in_progression(*modulus, *count, PrimeSearch::default())
            }
            PrimeSpec::Range { lo, hi } => {
                if lo > hi {
                    return Err(Error::InvalidInput(format!("empty prime range {lo}..{hi}")));
                }
                Ok((*lo..=*hi).filter(|&p| is_prime(p)).collect())
            }
        }
    }
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSpec::List(ps) => {
                let parts: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            PrimeSpec::Progression { modulus, count } => write!(f, "progression:{modulus},{count}"),
            PrimeSpec::Range { lo, hi } => write!(f, "range:{lo}..{hi}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    pub e_max: u32,
    /// Term budget for each computation inside a prime job.
    pub term_budget: u64,
    pub preserve_support: bool,
    /// Largest `e` tried when looking for an integral `(p^e - 1) t`.
    pub e_cap: u32,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            e_max: 3,
            term_budget: crate::charp::DEFAULT_TERM_BUDGET,
            preserve_support: true,
            e_cap: 8,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimStrength {
    CertifiedExact,
    LowerBoundOnly,
    BracketOnly,
    ReductionError,
}

impl fmt::Display for ClaimStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStrength::CertifiedExact => "CERTIFIED_EXACT",
            ClaimStrength::LowerBoundOnly => "LOWER_BOUND_ONLY",
            ClaimStrength::BracketOnly => "BRACKET_ONLY",
            ClaimStrength::ReductionError => "REDUCTION_ERROR",
        })
    }
}

/// The outcome of the exact-certification attempt at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanAttempt {
    /// `fpt >= t` proved at this `e`.
    Proved(Certificate),
    /// `fpt < t` proved at this `e`.
    Refuted(Certificate),
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub prime: u64,
    pub strength: ClaimStrength,
    /// Certified value or proved lower bound.
    pub value: Option<Rational>,
    /// `min(1, alpha)` for the reduced support.
    pub target: Option<Rational>,
    pub attempt: Option<ScanAttempt>,
    pub verdict: Option<MainTheoremVerdict>,
    pub gap_test: Option<bool>,
    pub bracket: Option<ThresholdReport>,
    /// `fpt(f_p) = min(1, alpha)` is proved.
    pub witness: bool,
    pub notes: Vec<String>,
}

impl ScanRow {
    fn reduction_error(prime: u64, err: &Error) -> Self {
        ScanRow {
            prime,
            strength: ClaimStrength::ReductionError,
            value: None,
            target: None,
            attempt: None,
            verdict: None,
            gap_test: None,
            bracket: None,
            witness: false,
            notes: vec![err.to_string()],
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.attempt {
            Some(ScanAttempt::Proved(c)) => Some(c),
            _ => None,
        }
    }

    /// The lower bound meets the bracket's upper end, so it is the threshold.
    pub fn pinned(&self) -> bool {
        match (&self.value, &self.bracket) {
            (Some(v), Some(b)) => v == &b.high,
            _ => false,
        }
    }
}

/// Per-prime threshold reports for the reductions of `f`, in prime order.
pub fn dense_fpurity_scan(f: &QPoly, primes: &[u64], options: &ScanOptions) -> Result<Vec<ScanRow>> {
    if options.e_max == 0 {
        return Err(Error::InvalidInput("e_max must be at least 1".into()));
    }
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    Ok(pool.install(|| primes.par_iter().map(|&p| scan_prime(f, p, options)).collect()))
}

fn scan_prime(f: &QPoly, p: u64, options: &ScanOptions) -> ScanRow {
    let fp = match reduce_mod_p(f, p, options.preserve_support) {
        Ok(fp) => fp,
        Err(err) => return ScanRow::reduction_error(p, &err),
    };
    let ms = match fp.support_set() {
        Ok(ms) => ms,
        Err(err) => return ScanRow::reduction_error(p, &err),
    };
    let mut notes = Vec::new();
    let alpha = polygeo::alpha(&ms);
    let target = alpha.clone().min(Rational::one());

    let attempt = certification_attempt(&fp, &target, options);
    if let ScanAttempt::NotApplicable(why) = &attempt {
        notes.push(format!("exact path not applicable: {why}"));
    }

    let verdict = match main_theorem(&ms, p) {
        Ok(v) => Some(v),
        Err(err) => {
            notes.push(format!("main theorem: {err}"));
            None
        }
    };

    let gap_test = if alpha <= Rational::one() { generic_gap_test(&fp, &ms).ok() } else { None };

    let bracket = match bracket(&fp, options.e_max, &TermBudget::new(options.term_budget)) {
        Ok(r) => {
            if !r.complete {
                notes.push(format!("bracket stopped at e = {}", r.nu_table.as_ref().map_or(0, |t| t.e_max())));
            }
            Some(r)
        }
        Err(err) => {
            notes.push(format!("bracket: {err}"));
            None
        }
    };

    let (strength, value) = match (&attempt, &verdict) {
        (ScanAttempt::Proved(c), _) => (ClaimStrength::CertifiedExact, Some(c.lambda.clone())),
        (_, Some(v)) => (ClaimStrength::LowerBoundOnly, Some(v.value.clone())),
        _ => (ClaimStrength::BracketOnly, None),
    };
    let witness = match (&attempt, &verdict) {
        (ScanAttempt::Proved(_), _) => true,
        (_, Some(v)) => v.kind == VerdictKind::Exact || v.value >= target,
        _ => false,
    };

    ScanRow {
        prime: p,
        strength,
        value,
        target: Some(target),
        attempt: Some(attempt),
        verdict,
        gap_test,
        bracket,
        witness,
        notes,
    }
}

fn certification_attempt(fp: &FpPoly, target: &Rational, options: &ScanOptions) -> ScanAttempt {
    let p = fp.characteristic();
    let Some(e) = multiplicative_order(p, target.denom(), options.e_cap) else {
        return ScanAttempt::NotApplicable(format!(
            "no e <= {} makes ({p}^e - 1) * {} integral",
            options.e_cap,
            format_rational(target)
        ));
    };
    let certificate = Certificate { e, lambda: target.clone() };
    match certify_lower(fp, target, e, &TermBudget::new(options.term_budget)) {
        Ok(true) => ScanAttempt::Proved(certificate),
        Ok(false) => ScanAttempt::Refuted(certificate),
        Err(err) => ScanAttempt::NotApplicable(err.to_string()),
    }
}

/// Writes the scan table: one row per prime with
/// `prime, kind, value_num, value_den, bracket_low, bracket_high, witness_flag`.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer
        .write_record(["prime", "kind", "value_num", "value_den", "bracket_low", "bracket_high", "witness_flag"])
        .map_err(io)?;
    for row in rows {
        let (num, den) = row
            .value
            .as_ref()
            .map_or((String::new(), String::new()), |v| (v.numer().to_string(), v.denom().to_string()));
        let (low, high) = row
            .bracket
            .as_ref()
            .map_or((String::new(), String::new()), |b| (format_rational(&b.low), format_rational(&b.high)));
        writer
            .write_record([
                row.prime.to_string(),
                row.strength.to_string(),
                num,
                den,
                low,
                high,
                row.witness.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}

fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn row_json(row: &ScanRow) -> Value {
    let attempt = match &row.attempt {
        Some(ScanAttempt::Proved(c)) => json!({"outcome": "PROVED_AT_LEAST", "e": c.e, "lambda": rational_json(&c.lambda)}),
        Some(ScanAttempt::Refuted(c)) => json!({"outcome": "PROVED_BELOW", "e": c.e, "lambda": rational_json(&c.lambda)}),
        Some(ScanAttempt::NotApplicable(why)) => json!({"outcome": "NOT_APPLICABLE", "reason": why}),
        None => Value::Null,
    };
    let verdict = row.verdict.as_ref().map_or(Value::Null, |v| {
        json!({
            "kind": v.kind,
            "carry_free_prefix": v.carry.to_string(),
            "value": rational_json(&v.value),
            "alpha": rational_json(&v.alpha),
            "eta": v.eta.iter().map(rational_json).collect::<Vec<_>>(),
        })
    });
    let bracket = row.bracket.as_ref().map_or(Value::Null, |b| {
        json!({
            "low": rational_json(&b.low),
            "high": rational_json(&b.high),
            "complete": b.complete,
            "nu": b.nu_table.as_ref().map(|t| t.values.clone()),
        })
    });
    json!({
        "prime": row.prime,
        "kind": row.strength,
        "value": row.value.as_ref().map(rational_json),
        "target": row.target.as_ref().map(rational_json),
        "certification": attempt,
        "main_theorem": verdict,
        "gap_test": row.gap_test,
        "bracket": bracket,
        "witness_flag": row.witness,
        "pinned_exact": row.pinned(),
        "notes": row.notes,
    })
}

/// The full report: `{input, config, rows, certificates}`.
pub fn report_json(input: &str, config: Value, rows: &[ScanRow]) -> Value {
    let certificates: Vec<Value> = rows
        .iter()
        .filter_map(|r| {
            r.certificate()
                .map(|c| json!({"prime": r.prime, "e": c.e, "lambda": rational_json(&c.lambda)}))
        })
        .collect();
    json!({
        "input": input,
        "config": config,
        "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        "certificates": certificates,
    })
}
