//! Seeded generators of oriented reals for property checks and the harness.
//!
//! Every sample carries a label in the expression syntax of the command line
//! front end, so a failing case can be rebuilt by hand.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::almost::ar_embed;
use crate::approx::{approximate, inf_finite, monotone_limit};
use crate::hyperfield::{add, neg_twosided};
use crate::rational::Rational;
use crate::real::{cut_from_cycle, cut_intersection, embed_rational, OrientedReal};

#[derive(Clone, Debug)]
pub struct Sample {
    pub label: String,
    pub value: OrientedReal,
}

impl Sample {
    fn new(label: String, value: OrientedReal) -> Self {
        Sample { label, value }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[lo, hi]` with a small or dyadic denominator.
pub fn small_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let den: i64 = if rng.gen_bool(0.5) {
        1 << rng.gen_range(0..=6)
    } else {
        rng.gen_range(1..=16)
    };
    Rational::frac(rng.gen_range(lo * den..=hi * den), den)
}

fn list_label(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn hat(r: &Rational) -> Sample {
    Sample::new(format!("hat({r})"), embed_rational(r))
}

fn bseq(rng: &mut impl Rng) -> Sample {
    let len = rng.gen_range(1..=4);
    let values: Vec<Rational> = (0..len).map(|_| small_rational(rng, -2, 2)).collect();
    let top = values.iter().max().expect("nonempty").clone();
    let bound = top + Rational::frac(1, rng.gen_range(1..=64));
    let v = cut_from_cycle(&values, bound.clone()).expect("values below bound");
    Sample::new(format!("bseq({},{bound})", list_label(&values)), v)
}

fn limit(rng: &mut impl Rng) -> Sample {
    let len = rng.gen_range(1..=5);
    let mut rs: Vec<Rational> = (0..len).map(|_| small_rational(rng, -2, 2)).collect();
    rs.sort();
    let bound = rs.last().expect("nonempty").clone();
    let terms: Vec<OrientedReal> = rs.iter().map(embed_rational).collect();
    let t = terms.clone();
    let v =
        monotone_limit(move |i| t[i.min(t.len() - 1)].clone(), bound.clone(), 64).expect("nondecreasing embeddings");
    let labels: Vec<String> = rs.iter().map(|r| format!("hat({r})")).collect();
    Sample::new(format!("limit([{}],{bound})", labels.join(",")), v)
}

/// Mixed corpus: embeddings, bounded-sequence cuts, intersections, sums,
/// monotone limits, embedded approximations, negations and shifts.
pub fn general_corpus(seed: u64, size: usize) -> Vec<Sample> {
    let mut rng = rng(seed);
    (0..size)
        .map(|i| match i % 8 {
            0 => hat(&small_rational(&mut rng, -2, 2)),
            1 => bseq(&mut rng),
            2 => {
                let a = hat(&small_rational(&mut rng, -2, 2));
                let b = if rng.gen_bool(0.5) {
                    bseq(&mut rng)
                } else {
                    hat(&small_rational(&mut rng, -2, 2))
                };
                Sample::new(
                    format!("meet({},{})", a.label, b.label),
                    cut_intersection(&a.value, &b.value),
                )
            }
            3 => {
                let a = hat(&small_rational(&mut rng, -2, 2));
                let b = if rng.gen_bool(0.5) {
                    bseq(&mut rng)
                } else {
                    hat(&small_rational(&mut rng, -2, 2))
                };
                Sample::new(format!("add({},{})", a.label, b.label), add(&a.value, &b.value))
            }
            4 => limit(&mut rng),
            5 => {
                let a = hat(&small_rational(&mut rng, -2, 2));
                let n = rng.gen_range(1..=6);
                let z = approximate(&a.value, n).expect("embedding samples");
                Sample::new(format!("embed(approx({},{n}))", a.label), ar_embed(&z))
            }
            6 => {
                let a = hat(&small_rational(&mut rng, -2, 2));
                let v = neg_twosided(&a.value).expect("embeddings are two-sided");
                Sample::new(format!("neg({})", a.label), v)
            }
            _ => {
                let a = bseq(&mut rng);
                let s = small_rational(&mut rng, -1, 1);
                Sample::new(format!("shift({},{s})", a.label), a.value.shift(&s))
            }
        })
        .collect()
}

/// A rational in `(0, 1]`.
fn unit_rational(rng: &mut impl Rng) -> Rational {
    let den: i64 = if rng.gen_bool(0.6) {
        1 << rng.gen_range(0..=6)
    } else {
        rng.gen_range(2..=12)
    };
    Rational::frac(rng.gen_range(1..=den), den)
}

/// Values with supremum in `(0, 1]`, mostly carrying exact knowledge of it.
pub fn unit_corpus(seed: u64, size: usize) -> Vec<Sample> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let s = match out.len() % 6 {
            0 | 1 => hat(&unit_rational(&mut rng)),
            2 => {
                let (a, b) = (hat(&unit_rational(&mut rng)), hat(&unit_rational(&mut rng)));
                Sample::new(
                    format!("meet({},{})", a.label, b.label),
                    cut_intersection(&a.value, &b.value),
                )
            }
            3 => {
                let mut d: Vec<Rational> = (0..rng.gen_range(1..=3)).map(|_| unit_rational(&mut rng)).collect();
                d.shuffle(&mut rng);
                let v = inf_finite(&d).expect("nonempty");
                Sample::new(format!("inf({})", list_label(&d)), v)
            }
            4 => {
                let total = unit_rational(&mut rng);
                let part = &total * Rational::frac(rng.gen_range(1..=3), 4);
                let (a, b) = (hat(&part), hat(&(&total - &part)));
                if rng.gen_bool(0.5) {
                    Sample::new(format!("add({},{})", a.label, b.label), add(&a.value, &b.value))
                } else {
                    let rest = &total - &part;
                    Sample::new(format!("shift({},{rest})", a.label), a.value.shift(&rest))
                }
            }
            _ => {
                if rng.gen_bool(0.75) {
                    let a = hat(&unit_rational(&mut rng));
                    let n = rng.gen_range(2..=7);
                    let z = approximate(&a.value, n).expect("embedding samples");
                    if !z.max_value().is_positive() {
                        continue;
                    }
                    Sample::new(format!("embed(approx({},{n}))", a.label), ar_embed(&z))
                } else {
                    let len = rng.gen_range(1..=3);
                    let values: Vec<Rational> = (0..len)
                        .map(|_| unit_rational(&mut rng) / Rational::integer(2))
                        .collect();
                    let top = values.iter().max().expect("nonempty").clone();
                    let bound = (top + Rational::frac(1, 1024)).min(Rational::one());
                    let v = cut_from_cycle(&values, bound.clone()).expect("values below bound");
                    Sample::new(format!("bseq({},{bound})", list_label(&values)), v)
                }
            }
        };
        out.push(s);
    }
    out
}

/// All unordered pairs `(i, j)` with `i < j`, in lexicographic order.
pub fn all_pairs(samples: &[Sample]) -> Vec<(OrientedReal, OrientedReal)> {
    let mut out = Vec::new();
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            out.push((samples[i].value.clone(), samples[j].value.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a: Vec<String> = general_corpus(7, 40).into_iter().map(|s| s.label).collect();
        let b: Vec<String> = general_corpus(7, 40).into_iter().map(|s| s.label).collect();
        assert_eq!(a, b);
        let c: Vec<String> = general_corpus(8, 40).into_iter().map(|s| s.label).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn corpus_values_are_well_formed() {
        for s in general_corpus(1, 64) {
            s.value.prefix(200).unwrap_or_else(|e| panic!("{}: {e}", s.label));
        }
    }

    #[test]
    fn unit_corpus_stays_in_unit_interval() {
        for s in unit_corpus(3, 60) {
            let v = &s.value;
            assert!(v.upper_evidence(512) <= Rational::one(), "{}", s.label);
            let zero = Rational::zero();
            assert!(v.at(512) > zero, "{}", s.label);
        }
    }
}
