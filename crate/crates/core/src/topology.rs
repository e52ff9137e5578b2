//! The semi-metric `d(α, β, q)`, its balls, and the oriented topology built
//! from finite comparison signatures.
//!
//! `d(α, β, q)` holds when some almost rational `ζ` and rational `0 < p ≤ q`
//! satisfy `ζ̂ ≤ x ≤ ζ̂ + p` for both `x = α` and `x = β`.

use std::fmt;
use std::str::FromStr;

use crate::almost::{ar_min, AlmostRational};
use crate::approx::approximate;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::real::{le_rational, lt, lt_rational, OrientedReal};
use crate::trilean::{Confirmed, Refuted, Trilean};

/// How a metric witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// Both sides share an origin; the witness approximates that value.
    SharedOrigin { k: u32 },
    /// Pointwise minimum of the two `2⁻ᵏ` approximations.
    Approximation { k: u32 },
    /// A constant below both samples.
    Constant,
    /// Built from two witnesses sharing a middle point.
    Composed,
}

#[derive(Clone, Debug)]
pub struct MetricWitness {
    pub zeta: AlmostRational,
    pub p: Rational,
    pub source: WitnessSource,
}

#[derive(Clone, Debug)]
pub struct DistanceCheck {
    pub verdict: Trilean,
    pub witness: Option<MetricWitness>,
    /// When refuted: a rational `r` with one side below `r` and the other
    /// beyond `r + q`.
    pub separator: Option<Rational>,
}

/// Smallest `k` with `2·2⁻ᵏ < q`.
fn approximation_level(q: &Rational) -> u32 {
    let mut k = 0;
    while Rational::pow2_neg(k) * Rational::integer(2) >= *q {
        k += 1;
    }
    k
}

/// Checks `ζ̂ ≤ x ≤ ζ̂ + p` using structural facts or declared bounds.
pub fn validate_witness(w: &MetricWitness, x: &OrientedReal, fuel: usize) -> Trilean {
    let lower = w.zeta.dominated_by(x) || w.zeta.max_value() <= x.at(fuel);
    let upper = w.zeta.cover_slack(x).is_some_and(|s| s <= w.p) || x.upper_evidence(fuel) <= w.zeta.at(fuel) + &w.p;
    if lower && upper {
        Confirmed
    } else {
        Trilean::unknown(fuel)
    }
}

/// Decides `d(α, β, q)` within `fuel`.
///
/// Confirmation tries, in order: a shared origin, the minimum of both
/// approximations at the first level `k` with `2·2⁻ᵏ < q`, and a constant
/// witness `min(α(f), β(f))`. Refutation needs one side to exceed the
/// other's upper evidence by at least `q`. The outcome is symmetric in the
/// two arguments and monotone in `q`.
pub fn d_check(alpha: &OrientedReal, beta: &OrientedReal, q: &Rational, fuel: usize) -> Result<DistanceCheck> {
    if !q.is_positive() {
        return Err(Error::NotPositive(q.to_string()));
    }
    let k = approximation_level(q);
    if alpha.shares_origin(beta) {
        let witness = MetricWitness {
            zeta: approximate(alpha, k)?,
            p: Rational::pow2_neg(k),
            source: WitnessSource::SharedOrigin { k },
        };
        return Ok(confirmed(witness));
    }
    let (hi_a, hi_b) = (alpha.upper_evidence(fuel), beta.upper_evidence(fuel));
    let (a_f, b_f) = (alpha.at(fuel), beta.at(fuel));
    let top = hi_a.clone().max(hi_b.clone());

    let zeta = ar_min(&approximate(alpha, k)?, &approximate(beta, k)?);
    let p = &top - zeta.at(fuel);
    if p <= *q {
        return Ok(confirmed(MetricWitness {
            zeta,
            p,
            source: WitnessSource::Approximation { k },
        }));
    }
    let c = a_f.clone().min(b_f.clone());
    let p = &top - &c;
    if p <= *q {
        return Ok(confirmed(MetricWitness {
            zeta: AlmostRational::from_prefix(&[c])?,
            p,
            source: WitnessSource::Constant,
        }));
    }

    let separator = if b_f >= &hi_a + q {
        Some(hi_a)
    } else if a_f >= &hi_b + q {
        Some(hi_b)
    } else {
        None
    };
    Ok(DistanceCheck {
        verdict: if separator.is_some() {
            Refuted
        } else {
            Trilean::unknown(fuel)
        },
        witness: None,
        separator,
    })
}

fn confirmed(witness: MetricWitness) -> DistanceCheck {
    DistanceCheck {
        verdict: Confirmed,
        witness: Some(witness),
        separator: None,
    }
}

/// Triangle composition: from witnesses for `(α, β)` and `(β, δ)` builds
/// one for `(α, δ)` with `ζ = min(ζ₁, ζ₂)` and `p = p₁ + p₂`.
///
/// Both witnesses must validate on the shared middle point `β`, otherwise
/// `None`. The covering facts of each side are carried over, loosened by
/// the other side's `p`.
pub fn compose_witness(
    first: &MetricWitness,
    second: &MetricWitness,
    middle: &OrientedReal,
    fuel: usize,
) -> Option<MetricWitness> {
    if !validate_witness(first, middle, fuel).is_confirmed() || !validate_witness(second, middle, fuel).is_confirmed() {
        return None;
    }
    let mut zeta = ar_min(&first.zeta, &second.zeta);
    for (o, s) in &first.zeta.covers {
        zeta.covers.push((o.clone(), s + &second.p));
    }
    for (o, s) in &second.zeta.covers {
        zeta.covers.push((o.clone(), s + &first.p));
    }
    Some(MetricWitness {
        zeta,
        p: &first.p + &second.p,
        source: WitnessSource::Composed,
    })
}

/// Whether `β` lies in the ball of radius `p` around `center`.
pub fn ball_member(beta: &OrientedReal, center: &OrientedReal, p: &Rational, fuel: usize) -> Result<Trilean> {
    Ok(d_check(center, beta, p, fuel)?.verdict)
}

/// Verdicts of `δ < α` for each `δ` of a reference list, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(Vec<Trilean>);

impl Signature {
    pub fn new(entries: Vec<Trilean>) -> Self {
        Signature(entries)
    }

    pub fn entries(&self) -> &[Trilean] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_decided(&self) -> bool {
        self.0.iter().all(|t| t.is_decided())
    }

    /// Equal decided prefix parts: no position has opposite decided entries.
    pub fn compatible(&self, other: &Signature) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| !(a.is_decided() && b.is_decided() && a != b))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|t| write!(f, "{}", t.code()))
    }
}

/// Parses the `C`/`R`/`U` code form. Unknown entries read back with zero
/// fuel spent.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| Trilean::from_code(c).ok_or_else(|| Error::Record(format!("bad signature code {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Signature)
    }
}

pub fn lt_signature(alpha: &OrientedReal, reference: &[OrientedReal], fuel: usize) -> Signature {
    Signature(reference.iter().map(|d| lt(d, alpha, fuel)).collect())
}

/// Whether `β` is in the oriented neighborhood of `α` cut out by the
/// reference list: both signatures decided and equal.
pub fn oriented_nbhd_member(
    beta: &OrientedReal,
    alpha: &OrientedReal,
    reference: &[OrientedReal],
    fuel: usize,
) -> Trilean {
    let (sa, sb) = (
        lt_signature(alpha, reference, fuel),
        lt_signature(beta, reference, fuel),
    );
    if !sa.compatible(&sb) {
        Refuted
    } else if sa.is_decided() && sb.is_decided() {
        Confirmed
    } else {
        Trilean::unknown(fuel)
    }
}

/// Membership of `β` in the interval `(a, b]`.
pub fn interval_open_member(beta: &OrientedReal, a: &Rational, b: &Rational, fuel: usize) -> Result<Trilean> {
    if a >= b {
        return Err(Error::InvalidInterval(format!("({a}, {b}] is empty")));
    }
    Ok(lt_rational(a, beta, fuel).and(le_rational(beta, b, fuel)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{cut_from_bounded_sequence, embed_rational};

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn hat(n: i64, d: i64) -> OrientedReal {
        embed_rational(&q(n, d))
    }

    #[test]
    fn level_choice() {
        assert_eq!(approximation_level(&q(1, 4)), 4);
        assert_eq!(approximation_level(&q(3, 1)), 0);
        assert_eq!(approximation_level(&q(2, 1)), 1);
    }

    #[test]
    fn d_examples() {
        let r = d_check(&hat(0, 1), &hat(1, 8), &q(1, 4), 1024).unwrap();
        assert_eq!(r.verdict, Confirmed);
        let w = r.witness.unwrap();
        assert_eq!(w.source, WitnessSource::Approximation { k: 4 });
        assert_eq!(w.p, q(3, 16));
        assert_eq!(validate_witness(&w, &hat(0, 1), 1024), Confirmed);
        assert_eq!(validate_witness(&w, &hat(1, 8), 1024), Confirmed);

        let r = d_check(&hat(0, 1), &hat(1, 1), &q(1, 2), 1024).unwrap();
        assert_eq!(r.verdict, Refuted);
        assert_eq!(r.separator, Some(q(0, 1)));

        let a = cut_from_bounded_sequence(|n| q(1, 3) - Rational::index_offset(n + 1), q(1, 2));
        for k in 0..7 {
            let r = d_check(&a, &a, &Rational::pow2_neg(k), 16).unwrap();
            assert_eq!(r.verdict, Confirmed);
            let w = r.witness.unwrap();
            assert_eq!(validate_witness(&w, &a, 16), Confirmed);
        }
        assert!(d_check(&a, &a, &q(0, 1), 16).is_err());
    }

    #[test]
    fn d_constant_fallback() {
        // coarse approximation levels lose to the constant witness
        let r = d_check(&hat(0, 1), &hat(1, 3), &q(2, 5), 64).unwrap();
        assert_eq!(r.verdict, Confirmed);
        let w = r.witness.unwrap();
        assert_eq!(w.source, WitnessSource::Constant);
        assert_eq!(validate_witness(&w, &hat(0, 1), 64), Confirmed);
        assert_eq!(validate_witness(&w, &hat(1, 3), 64), Confirmed);
    }

    #[test]
    fn composition_validates() {
        let (a, b, c) = (hat(0, 1), hat(1, 8), hat(1, 4));
        let w1 = d_check(&a, &b, &q(1, 4), 256).unwrap().witness.unwrap();
        let w2 = d_check(&b, &c, &q(1, 4), 256).unwrap().witness.unwrap();
        let w = compose_witness(&w1, &w2, &b, 256).unwrap();
        for x in [&a, &b, &c] {
            assert_eq!(validate_witness(&w, x, 256), Confirmed);
        }
        assert_eq!(d_check(&a, &c, &q(1, 2), 256).unwrap().verdict, Confirmed);
    }

    #[test]
    fn ball_examples() {
        assert_eq!(ball_member(&hat(1, 8), &hat(0, 1), &q(1, 4), 1024).unwrap(), Confirmed);
        assert_eq!(ball_member(&hat(1, 1), &hat(0, 1), &q(1, 2), 1024).unwrap(), Refuted);
        let a = hat(2, 3);
        assert_eq!(ball_member(&a, &a, &q(1, 1000), 8).unwrap(), Confirmed);
    }

    #[test]
    fn signature_examples() {
        let e = [hat(1, 4), hat(1, 2), hat(3, 4)];
        let s = lt_signature(&hat(3, 8), &e, 64);
        assert_eq!(s.to_string(), "CRR");
        assert_eq!(lt_signature(&hat(1, 4), &e, 64).to_string(), "RRR");
        assert!(lt_signature(&hat(1, 4), &[], 64).is_empty());
        assert_eq!("CRU".parse::<Signature>().unwrap().to_string(), "CRU");
        assert!("CX".parse::<Signature>().is_err());
    }

    #[test]
    fn nbhd_examples() {
        let e = [hat(1, 4), hat(1, 2)];
        assert_eq!(oriented_nbhd_member(&hat(5, 16), &hat(3, 8), &e, 64), Confirmed);
        assert_eq!(oriented_nbhd_member(&hat(5, 8), &hat(3, 8), &e, 64), Refuted);
        assert_eq!(oriented_nbhd_member(&hat(3, 8), &hat(3, 8), &e, 64), Confirmed);
    }

    #[test]
    fn interval_examples() {
        let (a, b) = (q(1, 4), q(1, 2));
        assert_eq!(interval_open_member(&hat(3, 8), &a, &b, 64).unwrap(), Confirmed);
        assert_eq!(interval_open_member(&hat(5, 8), &a, &b, 64).unwrap(), Refuted);
        for fuel in [0, 10, 1000] {
            assert_eq!(interval_open_member(&hat(1, 4), &a, &b, fuel).unwrap(), Refuted);
        }
        assert!(interval_open_member(&hat(1, 4), &b, &a, 8).is_err());
    }
}
