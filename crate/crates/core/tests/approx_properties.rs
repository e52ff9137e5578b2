mod common;

use common::{dyadic_grid, q};
use orc_core::corpus::{general_corpus, rng, small_rational};
use orc_core::{
    approximate, ar_embed, embed_rational, le, lt_rational, monotone_limit, sup_enumerated, OrientedReal, Rational,
};
use rand::Rng;

#[test]
fn sandwich_on_corpus() {
    for s in general_corpus(31, 64) {
        for n in 1..=8 {
            let z = approximate(&s.value, n).unwrap();
            let step = Rational::pow2_neg(n);
            let zs = z.prefix(129).unwrap();
            let bs = s.value.prefix(129).unwrap();
            for k in 0..=128 {
                assert!(zs[k] <= bs[k] && bs[k] < &zs[k] + &step, "{} n={n} k={k}", s.label);
            }
        }
    }
}

#[test]
fn embedded_approximation_brackets_the_value() {
    for s in general_corpus(32, 48) {
        for n in [1, 3, 6] {
            let z = approximate(&s.value, n).unwrap();
            let e = ar_embed(&z);
            let up = e.shift(&Rational::pow2_neg(n));
            for fuel in [0, 16, 256] {
                assert!(!le(&e, &s.value, fuel).is_refuted(), "{} n={n}", s.label);
                assert!(!le(&s.value, &up, fuel).is_refuted(), "{} n={n}", s.label);
            }
        }
    }
}

#[test]
fn suprema_of_random_enumerations() {
    let mut r = rng(33);
    let probes = dyadic_grid(-3, 3, 5);
    for _ in 0..100 {
        let len = r.gen_range(1..=6);
        let values: Vec<Rational> = (0..len).map(|_| small_rational(&mut r, -2, 2)).collect();
        let bound = values.iter().max().unwrap() + q(1, r.gen_range(1..=16));
        let v = values.clone();
        let a = sup_enumerated(move |n| v[n % v.len()].clone(), bound);
        let fuel = 128;
        for b in &values {
            assert!(!le(&embed_rational(b), &a, fuel).is_refuted());
        }
        for p in &probes {
            if lt_rational(p, &a, fuel).is_confirmed() {
                assert!((0..=fuel).any(|m| values[m % len] > *p), "{p} with {values:?}");
            }
        }
    }
}

#[test]
fn monotone_limit_theorem_items() {
    let mut r = rng(34);
    let probes = dyadic_grid(-3, 3, 6);
    for _ in 0..20 {
        let len = r.gen_range(1..=8);
        let mut rs: Vec<Rational> = (0..len).map(|_| small_rational(&mut r, -2, 2)).collect();
        rs.sort();
        let bound = rs.last().unwrap() + q(1, 4);
        let terms: Vec<OrientedReal> = rs.iter().map(embed_rational).collect();
        let t = terms.clone();
        let fuel = 128;
        let lim = monotone_limit(move |i| t[i.min(t.len() - 1)].clone(), bound, fuel).unwrap();
        for (i, a) in terms.iter().enumerate() {
            assert!(!le(a, &lim, fuel).is_refuted(), "term {i} of {rs:?}");
        }
        for p in &probes {
            if lt_rational(p, &lim, fuel).is_confirmed() {
                let m = (0..len).find(|&m| lt_rational(p, &terms[m], fuel).is_confirmed());
                let m = m.unwrap_or_else(|| panic!("no term reaches {p} in {rs:?}"));
                assert!(terms[m..].iter().all(|a| lt_rational(p, a, fuel).is_confirmed()));
            }
        }
    }
}
