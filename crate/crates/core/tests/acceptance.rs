//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use fpt_core::charp::{self, FpPoly, QPoly, TermBudget};
use fpt_core::exactnum::{denominator_lcm, multinomial_mod_p, primes_in_progression, PrimeSearch, Rational};
use fpt_core::polygeo::{self, MonomialSet};
use fpt_core::thresholds::{self, dense_fpurity_scan, ClaimStrength, ScanOptions, VerdictKind};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn ms(text: &str) -> MonomialSet {
    MonomialSet::parse(text, None).unwrap()
}

fn cusp_table() -> Check {
    let start = Instant::now();
    let f = QPoly::parse("x^2 + y^3", None).unwrap();
    let rows = dense_fpurity_scan(&f, &[2, 3, 5, 7, 11, 13], &ScanOptions { e_max: 3, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = [
        (2, rat(1, 2), ClaimStrength::LowerBoundOnly),
        (3, rat(2, 3), ClaimStrength::LowerBoundOnly),
        (5, rat(5, 6) - rat(1, 30), ClaimStrength::LowerBoundOnly),
        (7, rat(5, 6), ClaimStrength::CertifiedExact),
        (11, rat(5, 6) - rat(1, 66), ClaimStrength::LowerBoundOnly),
        (13, rat(5, 6), ClaimStrength::CertifiedExact),
    ];
    ensure!(rows.len() == expected.len(), "{} rows", rows.len());
    for (row, (p, value, strength)) in rows.iter().zip(expected) {
        ensure!(row.prime == p, "row order: got {}", row.prime);
        ensure!(row.strength == strength, "p = {p}: {} instead of {strength}", row.strength);
        ensure!(row.value.as_ref() == Some(&value), "p = {p}: value {:?}", row.value);
        let bracket = row.bracket.as_ref().ok_or(format!("p = {p}: no bracket"))?;
        ensure!(bracket.contains(&value), "p = {p}: bracket ({}, {}] misses the value", bracket.low, bracket.high);
        let pp = p as i64;
        ensure!(bracket.width() <= rat(1, pp * pp), "p = {p}: bracket too wide");
        match strength {
            ClaimStrength::CertifiedExact => {
                let cert = row.certificate().ok_or(format!("p = {p}: no certificate"))?;
                let fp = charp::reduce_mod_p(&f, p, true).unwrap();
                let replay = charp::certify_lower(&fp, &cert.lambda, cert.e, &TermBudget::default()).map_err(|e| e.to_string())?;
                ensure!(replay && row.witness, "p = {p}: certificate does not replay");
            }
            _ => {
                let verdict = row.verdict.as_ref().ok_or(format!("p = {p}: no main theorem verdict"))?;
                ensure!(verdict.kind == VerdictKind::LowerBound && verdict.value == value, "p = {p}: main theorem bound");
                ensure!(row.pinned(), "p = {p}: bound is not the bracket's upper end");
            }
        }
    }
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("six rows exact in {:.2} s", elapsed.as_secs_f64()))
}

fn frobenius_sum() -> Check {
    for p in [2u64, 3, 5] {
        let f = FpPoly::from_terms(p, 2, [(vec![p as u32, 0], 1), (vec![0, p as u32], 1)]).unwrap();
        let report = charp::bracket(&f, 3, &TermBudget::default()).map_err(|e| e.to_string())?;
        let nu = report.nu_table.as_ref().unwrap().values.clone();
        let expected: Vec<u64> = (1..=3).map(|e| p.pow(e - 1) - 1).collect();
        ensure!(nu == expected, "p = {p}: nu = {nu:?}");
        let inv = rat(1, p as i64);
        ensure!(report.contains(&inv) && report.high == inv, "p = {p}: bracket does not pin 1/p");
        let monomial_ideal = ms(&format!("x^{p}, y^{p}"));
        let nu_m = charp::nu_ideal(&monomial_ideal, p, 2).map_err(|e| e.to_string())?;
        ensure!(nu_m == 2 * (p - 1), "p = {p}: ideal nu(2) = {nu_m}");
        ensure!(polygeo::alpha(&monomial_ideal) == rat(2, p as i64), "p = {p}: alpha");
    }
    Ok("fpt = 1/p pinned for p = 2, 3, 5; ideal nu(2) = 2(p-1)".into())
}

fn alpha_equals_lct() -> Check {
    let mut rng = rng(2024);
    let sets: Vec<MonomialSet> = (0..100).map(|_| random_monomial_set(&mut rng, 4, 4, 6)).collect();
    for (i, s) in sets.iter().enumerate() {
        let alpha = polygeo::alpha(s);
        ensure!(alpha == polygeo::lct_monomial(s), "alpha != lct on {s}");
        if i < 50 {
            ensure!(alpha == alpha_oracle(s), "alpha != vertex oracle on {s}");
        }
    }
    Ok("100 sets agree, 50 also with vertex enumeration".into())
}

fn lucas() -> Check {
    let start = Instant::now();
    let facts = FactorialTable::new(60);
    let mut lists: Vec<Vec<u64>> = Vec::new();
    for len in 1..=4 {
        for total in 0..=60 {
            lists.extend(compositions(total, len));
        }
    }
    let failures: Vec<String> = lists
        .par_iter()
        .flat_map_iter(|parts| {
            let exact = facts.multinomial(parts);
            [2u64, 3, 5, 7, 11].into_iter().filter_map(move |p| {
                let expected = (&exact % p).to_u64().unwrap();
                let got = multinomial_mod_p(parts, p).ok()?;
                (got != expected).then(|| format!("{parts:?} mod {p}: {got} != {expected}"))
            })
        })
        .collect();
    let elapsed = start.elapsed();
    ensure!(failures.is_empty(), "{} mismatches, first {}", failures.len(), failures[0]);
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("{} part lists x 5 primes in {:.2} s", lists.len(), elapsed.as_secs_f64()))
}

fn nu_oracle_check() -> Check {
    let monomials: Vec<Vec<u32>> = (0..=4u32)
        .flat_map(|a| (0..=4u32).map(move |b| vec![a, b]))
        .filter(|m| m != &[0, 0])
        .collect();
    let mut supports: Vec<Vec<Vec<u32>>> = Vec::new();
    for i in 0..monomials.len() {
        for j in i + 1..monomials.len() {
            supports.push(vec![monomials[i].clone(), monomials[j].clone()]);
            for k in j + 1..monomials.len() {
                supports.push(vec![monomials[i].clone(), monomials[j].clone(), monomials[k].clone()]);
            }
        }
    }
    let mut cases = Vec::new();
    let mut rng = rng(5);
    for p in [2u64, 3, 5, 7] {
        for support in &supports {
            cases.push((p, support.clone(), vec![1u64; support.len()]));
            if p > 2 {
                let coeffs = (0..support.len()).map(|_| rng.gen_range(1..p)).collect();
                cases.push((p, support.clone(), coeffs));
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|(p, support, coeffs)| {
            let signed: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
            let f = FpPoly::from_terms(*p, 2, support.iter().cloned().zip(signed)).unwrap();
            (1..=2u32).filter_map(move |e| {
                let got = charp::nu(&f, e, &TermBudget::unlimited()).ok();
                let expected = nu_oracle(support, coeffs, *p, e);
                (got != Some(expected)).then(|| format!("{f} mod {p}, e = {e}: {got:?} != {expected}"))
            })
        })
        .collect();
    ensure!(failures.is_empty(), "{} mismatches, first {}", failures.len(), failures[0]);
    Ok(format!("{} polynomials x 2 levels", cases.len()))
}

fn main_theorem_sandwich() -> Check {
    let mut rng = rng(99);
    let mut sets = Vec::new();
    while sets.len() < 30 {
        let s = random_monomial_set(&mut rng, 3, 3, 4);
        if polygeo::maximal_points(&s).unique {
            sets.push(s);
        }
    }
    let mut exact = 0;
    let mut lower = 0;
    for s in &sets {
        for (p, e_max) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
            let verdict = thresholds::main_theorem(s, p).map_err(|e| e.to_string())?;
            let coeffs: Vec<i64> = (0..s.len()).map(|_| rng.gen_range(1..p as i64)).collect();
            let f = FpPoly::from_monomials(p, s, &coeffs).unwrap();
            let bracket = charp::bracket(&f, e_max, &TermBudget::default()).map_err(|e| e.to_string())?;
            match verdict.kind {
                VerdictKind::Exact => {
                    exact += 1;
                    ensure!(bracket.contains(&verdict.value), "{s} at {p}: exact value outside bracket");
                }
                VerdictKind::LowerBound => {
                    lower += 1;
                    ensure!(verdict.value <= bracket.high, "{s} at {p}: bound above bracket");
                    ensure!(verdict.value <= verdict.alpha, "{s} at {p}: bound above alpha");
                }
            }
        }
    }
    let mut confirmed = 0;
    for s in &sets {
        let points = polygeo::maximal_points(s);
        if points.alpha > Rational::one() {
            continue;
        }
        let d = denominator_lcm(points.eta.as_ref().unwrap()).to_u64().unwrap();
        let p = primes_in_progression(d, 1, PrimeSearch::default()).map_err(|e| e.to_string())?[0];
        if p > 40 {
            continue;
        }
        let verdict = thresholds::main_theorem(s, p).map_err(|e| e.to_string())?;
        ensure!(verdict.kind == VerdictKind::Exact, "{s} at carry-free {p}: {:?}", verdict.kind);
        let coeffs: Vec<i64> = (0..s.len()).map(|_| rng.gen_range(1..p as i64)).collect();
        let f = FpPoly::from_monomials(p, s, &coeffs).unwrap();
        let ok = charp::certify_lower(&f, &points.alpha, 1, &TermBudget::unlimited()).map_err(|e| e.to_string())?;
        ensure!(ok, "{s} at carry-free {p}: certificate failed");
        confirmed += 1;
    }
    ensure!(confirmed >= 10, "only {confirmed} carry-free confirmations");
    Ok(format!("{exact} exact + {lower} lower-bound verdicts sandwiched; {confirmed} carry-free primes certified"))
}

fn theta_identities() -> Check {
    let cases: [(&str, u64, &[u32]); 2] = [("x^2, y^3", 7, &[1, 2]), ("x^2, y^2", 3, &[1, 2])];
    let mut checked = 0;
    for (text, p, levels) in cases {
        let s = ms(text);
        let alpha = polygeo::alpha(&s);
        let thetas: Vec<_> = [1u32, 2]
            .iter()
            .map(|&e| thresholds::theta_polynomial(&s, p, e).map_err(|err| err.to_string()))
            .collect::<Result<_, _>>()?;
        for u1 in 1..p {
            for u2 in 1..p {
                let u = [u1, u2];
                for &e in levels {
                    let q = p.pow(e);
                    let n = (&alpha * Rational::from_integer((q - 1).into())).to_integer().to_u64().unwrap();
                    let table = BinomialTable::new(p, n as usize);
                    let survivors = power_below(s.monomials(), &u, n, p, q, &table);
                    let value = thetas[e as usize - 1].evaluate_mod(&u, p);
                    let corner = vec![q - 1; 2];
                    let expected: std::collections::HashMap<_, _> =
                        if value == 0 { Default::default() } else { [(corner, value)].into() };
                    ensure!(survivors == expected, "{text}, p = {p}, e = {e}, u = {u:?}: expansion {survivors:?}, theta {value}");
                    checked += 1;
                }
                let theta1 = thetas[0].evaluate_mod(&u, p);
                let power = (0..p + 1).fold(1u64, |acc, _| acc * theta1 % p);
                ensure!(thetas[1].evaluate_mod(&u, p) == power, "{text}, p = {p}, u = {u:?}: multiplicativity");
            }
        }
    }
    Ok(format!("{checked} coefficient identities and multiplicativity on all unit coefficients"))
}

fn supersingular_cubic() -> Check {
    let start = Instant::now();
    let cubic = |p| FpPoly::from_terms(p, 3, [(vec![3, 0, 0], 1), (vec![0, 3, 0], 1), (vec![0, 0, 3], 1)]).unwrap();
    let at7 = charp::fpt_is_one(&cubic(7), &TermBudget::default()).map_err(|e| e.to_string())?;
    let at5 = charp::fpt_is_one(&cubic(5), &TermBudget::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(at7 && !at5, "fpt_is_one: p = 7 -> {at7}, p = 5 -> {at5}");
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("p = 7 pure, p = 5 not, {:.3} s", elapsed.as_secs_f64()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("cusp table reproduced by the prime scan", cusp_table),
        ("x^p + y^p: nu(e) = p^(e-1) - 1 and monomial nu(2) = 2(p-1)", frobenius_sum),
        ("alpha = lct = vertex oracle on random monomial sets", alpha_equals_lct),
        ("Lucas multinomials vs exact factorials", lucas),
        ("incremental nu vs full-expansion oracle", nu_oracle_check),
        ("main-theorem verdicts sandwiched by brackets", main_theorem_sandwich),
        ("theta coefficient identity and multiplicativity", theta_identities),
        ("Fermat cubic: fpt = 1 at p = 7, not at p = 5", supersingular_cubic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.2} s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
