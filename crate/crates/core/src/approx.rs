//! Approximation by almost rationals, suprema, finite infima and monotone
//! limits.

use crate::almost::{grid_count, AlmostRational, ValueSet};
use crate::error::{Error, Result};
use crate::lazy::LazySeq;
use crate::origin::Origin;
use crate::rational::{grid_floor, Rational};
use crate::real::{
    bounded_sequence_parts, cut_from_bounded_sequence, cut_from_cycle, le, malformed, OrientedReal, Parts,
};

/// Almost rational `ζ` on the grid `β(0) + 2⁻ⁿℤ` with
/// `ζ(k) ≤ β(k) < ζ(k) + 2⁻ⁿ` for every `k`.
///
/// `ζ(0) = β(0)` and each step climbs by the largest grid multiple that stays
/// at or below the next sample, which telescopes to
/// `ζ(k) = β(0) + 2⁻ⁿ·⌊(β(k) − β(0)) / 2⁻ⁿ⌋`.
pub fn approximate(beta: &OrientedReal, n: u32) -> Result<AlmostRational> {
    let step = Rational::pow2_neg(n);
    let start = beta.sample(0)?;
    let count = grid_count(&(beta.strict_bound() - &start), &step);
    let values = ValueSet::grid(start.clone(), step.clone(), count)?;
    let b = beta.clone();
    // t stays below ⌈(M − β(0))/2⁻ⁿ⌉ because β(k) < M
    let mut zeta = AlmostRational::pointwise(
        move |k| {
            let t = grid_floor(&(b.sample(k)? - &start), &step);
            Ok(&start + &step * Rational::integer(t))
        },
        values,
    );
    zeta.dominated.push(beta.origin().clone());
    zeta.covers.push((beta.origin().clone(), Rational::pow2_neg(n)));
    Ok(zeta)
}

/// Supremum of the set enumerated by `gamma`, which must stay below `bound`.
pub fn sup_enumerated(gamma: impl Fn(usize) -> Rational + Send + Sync + 'static, bound: Rational) -> OrientedReal {
    cut_from_bounded_sequence(gamma, bound)
}

/// Supremum of the set enumerated by cycling through `values`.
pub fn sup_of_list(values: &[Rational], bound: Rational) -> Result<OrientedReal> {
    cut_from_cycle(values, bound)
}

/// Infimum of a finite nonempty set: the supremum of its lower bounds,
/// enumerated cofinally as `min D − 1/(n+1)`.
pub fn inf_finite(d: &[Rational]) -> Result<OrientedReal> {
    let m = d.iter().min().ok_or(Error::Empty("infimum set"))?.clone();
    let mm = m.clone();
    let mut parts = bounded_sequence_parts(
        Box::new(move |n| Ok(&mm - Rational::index_offset(n))),
        m.clone(),
        Origin::node("inf", vec![m.clone()], Vec::new()),
    );
    let top = m.clone();
    parts.upper = Some(Box::new(move |_| Ok(top.clone())));
    parts.exact = Some(m);
    Ok(parts.assemble())
}

/// How many leading terms `monotone_limit` spot-checks at most.
pub const LIMIT_SPOT_CHECK: usize = 64;

/// Limit of a nondecreasing sequence of oriented reals bounded by `bound`,
/// as the diagonal `k ↦ max{α_i(k) | i ≤ k} − 1/(k+1)`.
///
/// The first `min(fuel, 64)` terms are checked up front: each strict bound
/// must be at most `bound` and `α_i ≤ α_{i+1}` must not be refuted. Later
/// terms only have their bound checked, when the diagonal reaches them.
pub fn monotone_limit(
    seq: impl Fn(usize) -> OrientedReal + Send + Sync + 'static,
    bound: Rational,
    fuel: usize,
) -> Result<OrientedReal> {
    let terms: LazySeq<OrientedReal> = LazySeq::from_fn(move |i| Ok(seq(i)));
    let checked = fuel.min(LIMIT_SPOT_CHECK);
    for i in 0..=checked {
        let a = terms.get(i)?;
        if *a.strict_bound() > bound {
            return Err(Error::Precondition {
                index: i,
                detail: format!("strict bound {} exceeds {bound}", a.strict_bound()),
            });
        }
        if i < checked {
            let next = terms.get(i + 1)?;
            if le(&a, &next, fuel).is_refuted() {
                return Err(Error::Precondition {
                    index: i,
                    detail: format!("term {i} is not below term {}", i + 1),
                });
            }
        }
    }
    let m = bound.clone();
    let diagonal = LazySeq::from_fn(move |k| {
        let mut best: Option<Rational> = None;
        for i in 0..=k {
            let a = terms.get(i)?;
            if *a.strict_bound() > m {
                return Err(malformed(
                    "monotone sequence",
                    i,
                    format!("strict bound {} exceeds {m}", a.strict_bound()),
                ));
            }
            let v = a.sample(k)?;
            best = Some(match best {
                Some(b) => b.max(v),
                None => v,
            });
        }
        Ok(best.expect("k+1 terms") - Rational::index_offset(k))
    });
    Ok(Parts::new(Box::new(move |k| diagonal.get(k)), bound, Origin::fresh()).assemble())
}
