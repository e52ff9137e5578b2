mod common;

use common::q;
use orc_core::corpus::{general_corpus, rng, unit_corpus};
use orc_core::{
    compose_witness, d_check, lt_signature, oriented_nbhd_member, validate_witness, OrientedReal, Rational,
};
use rand::seq::SliceRandom;
use rand::Rng;

const FUEL: usize = 1024;

fn radii() -> Vec<Rational> {
    (0..=6).map(Rational::pow2_neg).collect()
}

#[test]
fn reflexivity() {
    for s in general_corpus(51, 40) {
        for r in radii() {
            let c = d_check(&s.value, &s.value, &r, FUEL).unwrap();
            assert!(c.verdict.is_confirmed(), "{} q={r}", s.label);
            let w = c.witness.unwrap();
            assert!(validate_witness(&w, &s.value, FUEL).is_confirmed());
        }
    }
}

#[test]
fn monotone_in_radius_and_symmetric() {
    let corpus = general_corpus(52, 32);
    let mut r = rng(53);
    let radii = [q(1, 16), q(1, 8), q(1, 4), q(1, 2), q(1, 1), q(2, 1), q(4, 1)];
    for _ in 0..300 {
        let a = corpus.choose(&mut r).unwrap();
        let b = corpus.choose(&mut r).unwrap();
        let verdicts: Vec<_> = radii
            .iter()
            .map(|p| d_check(&a.value, &b.value, p, FUEL).unwrap().verdict)
            .collect();
        if let Some(i) = verdicts.iter().position(|v| v.is_confirmed()) {
            assert!(
                verdicts[i..].iter().all(|v| v.is_confirmed()),
                "{} {}",
                a.label,
                b.label
            );
        }
        for (p, v) in radii.iter().zip(&verdicts) {
            let back = d_check(&b.value, &a.value, p, FUEL).unwrap().verdict;
            assert_eq!(v.is_confirmed(), back.is_confirmed(), "{} {} q={p}", a.label, b.label);
            assert_eq!(v.is_refuted(), back.is_refuted(), "{} {} q={p}", a.label, b.label);
        }
    }
}

#[test]
fn triangle_through_composed_witnesses() {
    let corpus = unit_corpus(54, 30);
    let mut r = rng(55);
    let radii = [q(1, 8), q(1, 4), q(1, 2), q(1, 1)];
    let mut premises = 0;
    for _ in 0..400 {
        let [a, b, c]: [&OrientedReal; 3] = std::array::from_fn(|_| &corpus.choose(&mut r).unwrap().value);
        let (p1, p2) = (radii.choose(&mut r).unwrap(), radii.choose(&mut r).unwrap());
        let (d1, d2) = (d_check(a, b, p1, FUEL).unwrap(), d_check(b, c, p2, FUEL).unwrap());
        if !(d1.verdict.is_confirmed() && d2.verdict.is_confirmed()) {
            continue;
        }
        premises += 1;
        assert!(d_check(a, c, &(p1 + p2), FUEL).unwrap().verdict.is_confirmed());
        let w = compose_witness(&d1.witness.unwrap(), &d2.witness.unwrap(), b, FUEL).expect("both validate on b");
        assert!(w.p <= p1 + p2);
        assert!(validate_witness(&w, a, FUEL).is_confirmed());
        assert!(validate_witness(&w, c, FUEL).is_confirmed());
    }
    assert!(premises >= 50, "only {premises} confirmed premise pairs");
}

fn reference(r: &mut impl Rng) -> Vec<OrientedReal> {
    (0..r.gen_range(1..=3))
        .map(|_| orc_core::embed_rational(&q(r.gen_range(1..=15), 16)))
        .collect()
}

#[test]
fn neighborhoods_close_under_intersection() {
    let corpus = unit_corpus(56, 40);
    let mut r = rng(57);
    let mut decided = 0;
    while decided < 100 {
        let a = &corpus.choose(&mut r).unwrap().value;
        let (e1, e2) = (reference(&mut r), reference(&mut r));
        let both: Vec<OrientedReal> = e1.iter().chain(&e2).cloned().collect();
        if !lt_signature(a, &both, FUEL).is_decided() {
            continue;
        }
        decided += 1;
        for b in &corpus {
            if oriented_nbhd_member(&b.value, a, &both, FUEL).is_confirmed() {
                assert!(
                    oriented_nbhd_member(&b.value, a, &e1, FUEL).is_confirmed(),
                    "{}",
                    b.label
                );
                assert!(
                    oriented_nbhd_member(&b.value, a, &e2, FUEL).is_confirmed(),
                    "{}",
                    b.label
                );
            }
        }
    }
}

#[test]
fn signatures_are_stable_under_more_fuel() {
    let corpus = unit_corpus(58, 40);
    let reference: Vec<OrientedReal> = (1..8).map(|i| orc_core::embed_rational(&q(i, 8))).collect();
    for s in &corpus {
        let low = lt_signature(&s.value, &reference, 16);
        let high = lt_signature(&s.value, &reference, 1024);
        for (x, y) in low.entries().iter().zip(high.entries()) {
            assert!(!x.is_decided() || x == y, "{}: {low} then {high}", s.label);
        }
    }
}
