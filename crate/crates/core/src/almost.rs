//! Almost natural and almost rational numbers.
//!
//! Both are nondecreasing sequences whose image lies in a declared finite
//! set: a cap `k` for naturals, a [`ValueSet`] for rationals. The declared
//! bound is what lets a universal statement ever be confirmed.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lazy::LazySeq;
use crate::origin::Origin;
use crate::rational::Rational;
use crate::real::{malformed, OrientedReal, Parts};
use crate::trilean::{Confirmed, Refuted, Trilean};

type PointRule<T> = Arc<dyn Fn(usize) -> Result<T> + Send + Sync>;

#[derive(Clone)]
enum Terms<T> {
    /// Memoized, each term checked against its predecessor and the declared
    /// range.
    Checked(LazySeq<T>),
    /// Evaluated on demand; valid by construction.
    Pointwise(PointRule<T>),
}

impl<T: Clone + Send + 'static> Terms<T> {
    fn get(&self, n: usize) -> Result<T> {
        match self {
            Terms::Checked(seq) => seq.get(n),
            Terms::Pointwise(rule) => rule(n),
        }
    }

    fn prefix(&self, len: usize) -> Result<Vec<T>> {
        match self {
            Terms::Checked(seq) => seq.prefix(len),
            Terms::Pointwise(rule) => (0..len).map(|n| rule(n)).collect(),
        }
    }
}

/// A nondecreasing sequence of naturals bounded by `cap`.
#[derive(Clone)]
pub struct AlmostNatural {
    seq: Terms<u64>,
    cap: u64,
}

impl AlmostNatural {
    pub fn from_rule(rule: impl Fn(usize) -> u64 + Send + Sync + 'static, cap: u64) -> Self {
        Self::from_fallible(move |n| Ok(rule(n)), cap)
    }

    /// The sequence listing `prefix` and then repeating its last entry.
    pub fn from_prefix(prefix: &[u64], cap: u64) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::Empty("almost natural prefix"));
        }
        let p = prefix.to_vec();
        Ok(Self::from_rule(move |n| p[n.min(p.len() - 1)], cap))
    }

    pub(crate) fn from_fallible(rule: impl Fn(usize) -> Result<u64> + Send + Sync + 'static, cap: u64) -> Self {
        let seq = LazySeq::recurrence(move |n, prefix: &[u64]| {
            let v = rule(n)?;
            if let Some(&prev) = prefix.last() {
                if v < prev {
                    return Err(malformed("almost natural", n, format!("{v} is below {prev}")));
                }
            }
            if v > cap {
                return Err(malformed("almost natural", n, format!("{v} exceeds cap {cap}")));
            }
            Ok(v)
        });
        AlmostNatural {
            seq: Terms::Checked(seq),
            cap,
        }
    }

    /// For rules already known to be nondecreasing and at most `cap`.
    pub(crate) fn pointwise(rule: impl Fn(usize) -> Result<u64> + Send + Sync + 'static, cap: u64) -> Self {
        AlmostNatural {
            seq: Terms::Pointwise(Arc::new(rule)),
            cap,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn sample(&self, n: usize) -> Result<u64> {
        self.seq.get(n)
    }

    /// `ξ(n)`. Panics on malformation.
    pub fn at(&self, n: usize) -> u64 {
        self.sample(n).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn prefix(&self, len: usize) -> Result<Vec<u64>> {
        self.seq.prefix(len)
    }
}

impl fmt::Debug for AlmostNatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlmostNatural")
            .field("cap", &self.cap)
            .finish_non_exhaustive()
    }
}

/// `ξ ≤ ν`: `∀m ∃n ξ(m) ≤ ν(n)`.
pub fn an_le(xi: &AlmostNatural, nu: &AlmostNatural, fuel: usize) -> Trilean {
    if nu.at(fuel) >= xi.cap {
        Confirmed
    } else if xi.at(fuel) > nu.cap {
        Refuted
    } else {
        Trilean::unknown(fuel)
    }
}

/// `ξ =* ν`.
pub fn an_eq(xi: &AlmostNatural, nu: &AlmostNatural, fuel: usize) -> Trilean {
    an_le(xi, nu, fuel).and(an_le(nu, xi, fuel))
}

/// Evidence about the eventual value of an almost natural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    /// The cap once reached, otherwise the last sampled value.
    pub limit: u64,
    /// First index carrying `limit`.
    pub since: usize,
    /// Confirmed only when `limit` is the cap, so no later change is possible.
    pub verdict: Trilean,
}

pub fn stabilization_probe(xi: &AlmostNatural, fuel: usize) -> Stabilization {
    let prefix = xi.prefix(fuel + 1).unwrap_or_else(|e| panic!("{e}"));
    let limit = prefix[fuel];
    let since = prefix.partition_point(|&v| v < limit);
    let verdict = if limit == xi.cap {
        Confirmed
    } else {
        Trilean::unknown(fuel)
    };
    Stabilization { limit, since, verdict }
}

/// Errors unless `values` is strictly ascending.
pub fn check_ascending(values: &[Rational]) -> Result<()> {
    match values.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(Error::NonAscending(i + 1)),
        None => Ok(()),
    }
}

/// `Φ(β)(0) = 0` and `Φ(β)(n) = #{i | d_i ≤ β(n)}` for `n ≥ 1`, with cap `j`.
pub fn threshold_phi(thresholds: &[Rational], beta: &OrientedReal) -> Result<AlmostNatural> {
    check_ascending(thresholds)?;
    let d = thresholds.to_vec();
    let b = beta.clone();
    let cap = d.len() as u64;
    // β is increasing, so the count is nondecreasing and at most j
    Ok(AlmostNatural::pointwise(
        move |n| {
            if n == 0 {
                return Ok(0);
            }
            let v = b.sample(n)?;
            Ok(d.partition_point(|t| *t <= v) as u64)
        },
        cap,
    ))
}

/// The same map computed by walking the thresholds in order while time
/// advances: at each index the walk resumes from the threshold it stopped at,
/// skips every threshold already reached by `β(t)`, and emits the count of
/// skipped ones. Once all are passed the value is `j` forever.
pub fn threshold_phi_scan(thresholds: &[Rational], beta: &OrientedReal) -> Result<AlmostNatural> {
    check_ascending(thresholds)?;
    let d = thresholds.to_vec();
    let b = beta.clone();
    let j = d.len();
    let seq = move |t: usize, prefix: &[u64]| -> Result<u64> {
        if t == 0 {
            return Ok(0);
        }
        // the walk left off at threshold Φ(t-1)+1 (1-based)
        let mut i = prefix[t - 1] as usize + 1;
        if i > j {
            return Ok(j as u64);
        }
        let bt = b.sample(t)?;
        while i <= j && bt >= d[i - 1] {
            i += 1;
        }
        Ok((i - 1) as u64)
    };
    let memo = LazySeq::recurrence(seq);
    Ok(AlmostNatural::from_fallible(move |n| memo.get(n), j as u64))
}

/// A finite superset of an almost rational's image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueSet {
    /// Strictly ascending, nonempty.
    Listed(Vec<Rational>),
    /// `start + step·t` for `0 ≤ t < count`.
    Grid {
        start: Rational,
        step: Rational,
        count: BigInt,
    },
    /// Members of any part that do not exceed `cap`; `cap` is itself a member.
    Union { parts: Vec<ValueSet>, cap: Rational },
}

impl ValueSet {
    pub fn listed(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("value set"));
        }
        check_ascending(&values)?;
        Ok(ValueSet::Listed(values))
    }

    pub fn grid(start: Rational, step: Rational, count: BigInt) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::NotPositive(step.to_string()));
        }
        if count < BigInt::one() {
            return Err(Error::Empty("value grid"));
        }
        Ok(ValueSet::Grid { start, step, count })
    }

    pub fn contains(&self, v: &Rational) -> bool {
        match self {
            ValueSet::Listed(vs) => vs.binary_search(v).is_ok(),
            ValueSet::Grid { start, step, count } => {
                let t = (v - start) / step;
                t.is_integer() && !t.is_negative() && t.numer() < count
            }
            ValueSet::Union { parts, cap } => v <= cap && parts.iter().any(|p| p.contains(v)),
        }
    }

    pub fn max(&self) -> Rational {
        match self {
            ValueSet::Listed(vs) => vs.last().expect("nonempty").clone(),
            ValueSet::Grid { start, step, count } => start + step * Rational::integer(count - 1),
            ValueSet::Union { cap, .. } => cap.clone(),
        }
    }

    /// All members in ascending order, or `None` if there are more than `limit`.
    pub fn enumerate(&self, limit: usize) -> Option<Vec<Rational>> {
        match self {
            ValueSet::Listed(vs) => (vs.len() <= limit).then(|| vs.clone()),
            ValueSet::Grid { start, step, count } => {
                let c = count.to_usize().filter(|&c| c <= limit)?;
                Some((0..c).map(|t| start + step * Rational::integer(t)).collect())
            }
            ValueSet::Union { parts, cap } => {
                let mut all = Vec::new();
                for p in parts {
                    all.extend(p.enumerate(limit)?.into_iter().filter(|v| v <= cap));
                }
                all.sort();
                all.dedup();
                (all.len() <= limit).then_some(all)
            }
        }
    }
}

/// A nondecreasing rational sequence with image in a declared [`ValueSet`].
#[derive(Clone)]
pub struct AlmostRational {
    seq: Terms<Rational>,
    values: ValueSet,
    /// Origins of oriented reals `x` with `ζ(j) ≤ x(j)` for every `j`.
    pub(crate) dominated: Vec<Origin>,
    /// `(origin of x, s)` such that `x ≤ ζ̂ + s` holds as oriented reals.
    pub(crate) covers: Vec<(Origin, Rational)>,
}

impl AlmostRational {
    pub fn new(rule: impl Fn(usize) -> Rational + Send + Sync + 'static, values: ValueSet) -> Self {
        Self::from_fallible(move |n| Ok(rule(n)), values)
    }

    /// The sequence listing `prefix` and then repeating its last entry; the
    /// value set is exactly the listed values.
    pub fn from_prefix(prefix: &[Rational]) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::Empty("almost rational prefix"));
        }
        let mut vs = prefix.to_vec();
        vs.sort();
        vs.dedup();
        let p = prefix.to_vec();
        Ok(Self::new(move |n| p[n.min(p.len() - 1)].clone(), ValueSet::Listed(vs)))
    }

    pub(crate) fn from_fallible(
        rule: impl Fn(usize) -> Result<Rational> + Send + Sync + 'static,
        values: ValueSet,
    ) -> Self {
        let vs = values.clone();
        let seq = LazySeq::recurrence(move |n, prefix: &[Rational]| {
            let v = rule(n)?;
            if let Some(prev) = prefix.last() {
                if v < *prev {
                    return Err(malformed("almost rational", n, format!("{v} is below {prev}")));
                }
            }
            if !vs.contains(&v) {
                return Err(malformed("almost rational", n, format!("{v} is outside the value set")));
            }
            Ok(v)
        });
        AlmostRational {
            seq: Terms::Checked(seq),
            values,
            dominated: Vec::new(),
            covers: Vec::new(),
        }
    }

    /// For rules already known to be nondecreasing with image in `values`.
    pub(crate) fn pointwise(
        rule: impl Fn(usize) -> Result<Rational> + Send + Sync + 'static,
        values: ValueSet,
    ) -> Self {
        AlmostRational {
            seq: Terms::Pointwise(Arc::new(rule)),
            values,
            dominated: Vec::new(),
            covers: Vec::new(),
        }
    }

    pub fn values(&self) -> &ValueSet {
        &self.values
    }

    pub fn max_value(&self) -> Rational {
        self.values.max()
    }

    pub fn sample(&self, n: usize) -> Result<Rational> {
        self.seq.get(n)
    }

    /// `ζ(n)`. Panics on malformation.
    pub fn at(&self, n: usize) -> Rational {
        self.sample(n).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>> {
        self.seq.prefix(len)
    }

    /// Whether `ζ(j) ≤ x(j)` for all `j` is known structurally.
    pub fn dominated_by(&self, x: &OrientedReal) -> bool {
        self.dominated.contains(x.origin())
    }

    /// Smallest known `s` with `x ≤ ζ̂ + s`, from construction facts.
    pub fn cover_slack(&self, x: &OrientedReal) -> Option<Rational> {
        self.covers
            .iter()
            .filter(|(o, _)| o == x.origin())
            .map(|(_, s)| s.clone())
            .min()
    }
}

impl fmt::Debug for AlmostRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlmostRational")
            .field("max", &self.values.max())
            .finish_non_exhaustive()
    }
}

/// `ζ ≤ ζ′`: `∀m ∃n ζ(m) ≤ ζ′(n)`.
pub fn ar_le(zeta: &AlmostRational, other: &AlmostRational, fuel: usize) -> Trilean {
    if other.at(fuel) >= zeta.max_value() {
        Confirmed
    } else if zeta.at(fuel) > other.max_value() {
        Refuted
    } else {
        Trilean::unknown(fuel)
    }
}

pub fn ar_eq(zeta: &AlmostRational, other: &AlmostRational, fuel: usize) -> Trilean {
    ar_le(zeta, other, fuel).and(ar_le(other, zeta, fuel))
}

/// `ζ̂(n) = ζ(n) − 1/(n+1)`, bounded by the largest declared value.
pub fn ar_embed(zeta: &AlmostRational) -> OrientedReal {
    let z = zeta.clone();
    let top = zeta.max_value();
    let t = top.clone();
    let mut parts = Parts::new(
        Box::new(move |n| Ok(z.sample(n)? - Rational::index_offset(n))),
        top,
        Origin::fresh(),
    );
    parts.upper = Some(Box::new(move |_| Ok(t.clone())));
    parts.assemble()
}

/// Pointwise minimum. Domination facts of either side carry over.
///
/// The minimum of two nondecreasing sequences is nondecreasing and never
/// exceeds the smaller maximum, so the result needs no checking of its own.
pub fn ar_min(a: &AlmostRational, b: &AlmostRational) -> AlmostRational {
    let (x, y) = (a.clone(), b.clone());
    let values = ValueSet::Union {
        parts: vec![a.values.clone(), b.values.clone()],
        cap: a.max_value().min(b.max_value()),
    };
    let mut out = AlmostRational::pointwise(move |n| Ok(x.sample(n)?.min(y.sample(n)?)), values);
    out.dominated = a.dominated.iter().chain(&b.dominated).cloned().collect();
    out.dominated.sort();
    out.dominated.dedup();
    out
}

/// Count helper for grids: `⌈span/step⌉`, at least one.
pub(crate) fn grid_count(span: &Rational, step: &Rational) -> BigInt {
    let c = (span / step).ceil_int();
    if c <= BigInt::zero() {
        BigInt::one()
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::embed_rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn an(prefix: &[u64], cap: u64) -> AlmostNatural {
        AlmostNatural::from_prefix(prefix, cap).unwrap()
    }

    fn ar(prefix: &[Rational]) -> AlmostRational {
        AlmostRational::from_prefix(prefix).unwrap()
    }

    #[test]
    fn an_le_examples() {
        assert_eq!(an_le(&an(&[0, 1], 1), &an(&[0, 0, 2], 2), 4), Confirmed);
        assert_eq!(an_le(&an(&[0, 2], 2), &an(&[1], 1), 4), Refuted);
        let x = an(&[0, 1], 1);
        assert!(an_le(&x, &x, 0).is_unknown());
        assert_eq!(an_le(&x, &x, 1), Confirmed);
    }

    #[test]
    fn an_eq_examples() {
        assert_eq!(an_eq(&an(&[0, 1], 1), &an(&[1], 1), 3), Confirmed);
        assert_eq!(an_eq(&an(&[0], 0), &an(&[1], 1), 3), Refuted);
        let never = an(&[0], 2);
        assert!(an_eq(&never, &never, 50).is_unknown());
    }

    #[test]
    fn stabilization_examples() {
        let s = stabilization_probe(&an(&[0, 1, 2], 2), 5);
        assert_eq!((s.limit, s.since, s.verdict), (2, 2, Confirmed));
        let s = stabilization_probe(&an(&[0], 3), 10);
        assert_eq!((s.limit, s.since), (0, 0));
        assert!(s.verdict.is_unknown());
        let jump = an(&[0, 0, 0, 0, 0, 0, 0, 1], 1);
        let s = stabilization_probe(&jump, 3);
        assert_eq!((s.limit, s.since), (0, 0));
        assert!(s.verdict.is_unknown());
        let s = stabilization_probe(&jump, 8);
        assert_eq!((s.limit, s.since, s.verdict), (1, 7, Confirmed));
    }

    #[test]
    fn almost_natural_validation() {
        let bad = AlmostNatural::from_rule(|n| if n == 2 { 0 } else { 1 }, 3);
        assert!(matches!(bad.sample(4), Err(Error::Malformed { index: 2, .. })));
        let over = AlmostNatural::from_rule(|n| n as u64, 3);
        assert!(matches!(over.sample(6), Err(Error::Malformed { index: 4, .. })));
    }

    #[test]
    fn phi_examples() {
        let d = [q(1, 4), q(1, 2), q(3, 4)];
        let phi = threshold_phi(&d, &embed_rational(&q(3, 5))).unwrap();
        assert_eq!(phi.prefix(11).unwrap(), vec![0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(phi.cap(), 3);
        let flat = threshold_phi(&[q(1, 2)], &embed_rational(&q(1, 4))).unwrap();
        assert!(flat.prefix(40).unwrap().iter().all(|&v| v == 0));
        let one = threshold_phi(&[q(1, 2)], &embed_rational(&q(1, 1))).unwrap();
        assert_eq!(one.prefix(5).unwrap(), vec![0, 1, 1, 1, 1]);
        assert_eq!(
            threshold_phi(&[q(1, 2), q(1, 2)], &embed_rational(&q(1, 1))).unwrap_err(),
            Error::NonAscending(1)
        );
    }

    #[test]
    fn phi_scan_matches_examples() {
        let d = [q(1, 4), q(1, 2), q(3, 4)];
        let beta = embed_rational(&q(3, 5));
        let a = threshold_phi(&d, &beta).unwrap().prefix(30).unwrap();
        let b = threshold_phi_scan(&d, &beta).unwrap().prefix(30).unwrap();
        assert_eq!(a, b);
        let top = embed_rational(&q(2, 1));
        let all = threshold_phi_scan(&d, &top).unwrap();
        assert_eq!(all.prefix(4).unwrap(), vec![0, 3, 3, 3]);
        let empty = threshold_phi_scan(&[], &top).unwrap();
        assert_eq!(empty.prefix(3).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn ar_order_examples() {
        let a = ar(&[q(0, 1), q(1, 2)]);
        let b = ar(&[q(1, 2)]);
        assert_eq!(ar_eq(&a, &b, 2), Confirmed);
        let zero = ar(&[q(0, 1)]);
        let one = ar(&[q(1, 1)]);
        assert_eq!(ar_le(&zero, &one, 0), Confirmed);
        assert_eq!(ar_le(&one, &zero, 0), Refuted);
        assert_eq!(ar_eq(&a, &a, 1), Confirmed);
    }

    #[test]
    fn ar_embed_examples() {
        let e = ar_embed(&ar(&[q(0, 1), q(1, 2)]));
        assert_eq!(e.prefix(3).unwrap(), vec![q(-1, 1), q(0, 1), q(1, 6)]);
        assert_eq!(e.strict_bound(), &q(1, 2));
        assert_eq!(crate::real::lt_rational(&q(1, 4), &e, 8), Confirmed);
        let c = ar_embed(&ar(&[q(1, 2)]));
        let h = embed_rational(&q(1, 2));
        for n in 0..16 {
            assert_eq!(c.at(n), h.at(n));
        }
    }

    #[test]
    fn value_sets() {
        let g = ValueSet::grid(q(-1, 1), q(1, 4), BigInt::from(8)).unwrap();
        assert!(g.contains(&q(-1, 2)));
        assert!(g.contains(&q(3, 4)));
        assert!(!g.contains(&q(1, 1)));
        assert!(!g.contains(&q(1, 8)));
        assert_eq!(g.max(), q(3, 4));
        assert_eq!(g.enumerate(100).unwrap().len(), 8);
        assert!(g.enumerate(7).is_none());
        assert!(ValueSet::listed(vec![q(1, 1), q(0, 1)]).is_err());
        let u = ValueSet::Union {
            parts: vec![g, ValueSet::Listed(vec![q(1, 3), q(2, 1)])],
            cap: q(1, 2),
        };
        assert!(u.contains(&q(1, 3)));
        assert!(!u.contains(&q(3, 4)));
        assert_eq!(
            u.enumerate(100).unwrap(),
            vec![
                q(-1, 1),
                q(-3, 4),
                q(-1, 2),
                q(-1, 4),
                q(0, 1),
                q(1, 4),
                q(1, 3),
                q(1, 2)
            ]
        );
    }

    #[test]
    fn min_stays_in_union() {
        let a = ar(&[q(0, 1), q(1, 2), q(1, 1)]);
        let b = ar(&[q(1, 4), q(1, 4), q(3, 4)]);
        let m = ar_min(&a, &b);
        assert_eq!(m.prefix(4).unwrap(), vec![q(0, 1), q(1, 4), q(3, 4), q(3, 4)]);
        assert_eq!(m.max_value(), q(3, 4));
    }
}
