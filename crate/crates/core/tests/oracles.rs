mod common;

use common::*;
use fpt_core::charp::{self, FpPoly, TermBudget};
use fpt_core::exactnum::{multinomial_mod_p, Rational};
use fpt_core::polygeo;
use fpt_core::ratlp::{self, LinearProgram, LpOutcome};
use rand::Rng;

fn random_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=4i64).into())
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = rng(7);
    let mut infeasible = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let c: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng, -5, 5)).collect();
        let mut a: Vec<Vec<Rational>> = (0..m)
            .map(|_| (0..n).map(|_| random_rational(&mut rng, -4, 4)).collect())
            .collect();
        let mut b: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng, -3, 6)).collect();
        // a box keeps the region bounded for the oracle
        for i in 0..n {
            let mut row = vec![q(0); n];
            row[i] = q(1);
            a.push(row);
            b.push(q(10));
        }
        let lp = LinearProgram::new(c.clone(), a.clone(), b.clone()).unwrap();
        match (ratlp::maximize(&lp), vertex_lp_max(&c, &a, &b)) {
            (LpOutcome::Optimal { value, witness }, Some(expected)) => {
                assert_eq!(value, expected);
                assert!(lp.satisfies(&witness));
                assert_eq!(lp.evaluate(&witness), value);
            }
            (LpOutcome::Infeasible, None) => infeasible += 1,
            (got, expected) => panic!("simplex gave {got:?}, oracle {expected:?}"),
        }
    }
    assert!(infeasible > 0 && infeasible < 200);
}

#[test]
fn alpha_matches_oracle_and_lct() {
    let mut rng = rng(11);
    for _ in 0..60 {
        let ms = random_monomial_set(&mut rng, 3, 4, 6);
        let alpha = polygeo::alpha(&ms);
        assert_eq!(alpha, alpha_oracle(&ms), "{ms}");
        assert_eq!(alpha, polygeo::lct_monomial(&ms), "{ms}");
        let points = polygeo::maximal_points(&ms);
        if let Some(eta) = points.eta {
            assert!(polygeo::is_maximal_point(&ms, &alpha, &eta));
        }
    }
}

#[test]
fn nu_matches_expansion_oracle() {
    let mut rng = rng(3);
    for _ in 0..80 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let ms = random_monomial_set(&mut rng, 2, 3, 3);
        let coeffs: Vec<u64> = (0..ms.len()).map(|_| rng.gen_range(1..p)).collect();
        let signed: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
        let f = FpPoly::from_monomials(p, &ms, &signed).unwrap();
        for e in 1..=2 {
            let expected = nu_oracle(ms.monomials(), &coeffs, p, e);
            assert_eq!(charp::nu(&f, e, &TermBudget::unlimited()).unwrap(), expected, "{ms} mod {p}, e = {e}");
        }
        let (table, err) = charp::nu_table(&f, 2, &TermBudget::unlimited());
        assert!(err.is_none());
        assert_eq!(table.get(2), Some(nu_oracle(ms.monomials(), &coeffs, p, 2)));
    }
}

#[test]
fn binomial_table_and_factorials_agree_with_lucas() {
    let facts = FactorialTable::new(40);
    for p in [2u64, 3, 5, 7] {
        let table = BinomialTable::new(p, 40);
        for parts in compositions(12, 3) {
            let lucas = multinomial_mod_p(&parts, p).unwrap();
            assert_eq!(lucas, table.multinomial(&parts));
            assert_eq!(lucas, facts.multinomial_mod(&parts, p));
        }
    }
}
