//! Oriented reals: strictly increasing rational sequences with a declared
//! strict upper bound, read as left cuts `A_α = {q | ∃n q < α(n)}`.
//!
//! Order relations are semi-decidable. Every verdict function takes a fuel
//! budget: existential quantifiers search indices `0..=fuel`, universal ones
//! are only discharged through declared data (the strict bound, an optional
//! nonincreasing upper rule, or a known exact supremum). Sampling alone never
//! confirms a universal statement.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lazy::LazySeq;
use crate::origin::Origin;
use crate::rational::Rational;
use crate::trilean::{Confirmed, Refuted, Trilean};

pub(crate) type Rule = Box<dyn Fn(usize) -> Result<Rational> + Send + Sync>;

struct Inner {
    lower: LazySeq<Rational>,
    bound: Rational,
    upper: Option<LazySeq<Rational>>,
    exact: Option<Rational>,
    origin: Origin,
}

/// One oriented cut. Cheap to clone; clones share the evaluated prefix.
#[derive(Clone)]
pub struct OrientedReal(Arc<Inner>);

/// Raw ingredients of an oriented real, validated lazily once assembled.
pub(crate) struct Parts {
    pub rule: Rule,
    pub bound: Rational,
    pub upper: Option<Rule>,
    /// Supremum of the cut, when it is known to be exactly this rational.
    pub exact: Option<Rational>,
    pub origin: Origin,
}

impl Parts {
    pub fn new(rule: Rule, bound: Rational, origin: Origin) -> Self {
        Parts {
            rule,
            bound,
            upper: None,
            exact: None,
            origin,
        }
    }

    pub fn assemble(self) -> OrientedReal {
        let Parts {
            rule,
            bound,
            upper,
            exact,
            origin,
        } = self;
        let m = bound.clone();
        let lower = LazySeq::recurrence(move |n, prefix: &[Rational]| {
            let v = rule(n)?;
            if let Some(prev) = prefix.last() {
                if v <= *prev {
                    return Err(malformed("oriented real", n, format!("{v} does not exceed {prev}")));
                }
            }
            if v >= m {
                return Err(malformed("oriented real", n, format!("{v} reaches strict bound {m}")));
            }
            Ok(v)
        });
        let upper = upper.map(|urule| {
            let lower = lower.clone();
            LazySeq::recurrence(move |n, prefix: &[Rational]| {
                let u = urule(n)?;
                if let Some(prev) = prefix.last() {
                    if u > *prev {
                        return Err(malformed("upper rule", n, format!("{u} exceeds previous {prev}")));
                    }
                }
                let a = lower.get(n)?;
                if a >= u {
                    return Err(malformed("upper rule", n, format!("{u} does not exceed {a}")));
                }
                Ok(u)
            })
        });
        OrientedReal(Arc::new(Inner {
            lower,
            bound,
            upper,
            exact,
            origin,
        }))
    }
}

pub(crate) fn malformed(kind: &'static str, index: usize, detail: String) -> Error {
    Error::Malformed { kind, index, detail }
}

impl OrientedReal {
    /// An oriented real from a pointwise rule and a strict bound. The rule is
    /// checked for strict increase and the bound as indices get evaluated.
    pub fn from_rule(rule: impl Fn(usize) -> Rational + Send + Sync + 'static, bound: Rational) -> Self {
        Parts::new(Box::new(move |n| Ok(rule(n))), bound, Origin::fresh()).assemble()
    }

    /// Like [`from_rule`](Self::from_rule) with a nonincreasing upper rule
    /// satisfying `rule(n) < upper(n)`.
    pub fn two_sided(
        rule: impl Fn(usize) -> Rational + Send + Sync + 'static,
        upper: impl Fn(usize) -> Rational + Send + Sync + 'static,
        bound: Rational,
    ) -> Self {
        let mut parts = Parts::new(Box::new(move |n| Ok(rule(n))), bound, Origin::fresh());
        parts.upper = Some(Box::new(move |n| Ok(upper(n))));
        parts.assemble()
    }

    /// `α(n)`, or the malformation detected while reaching index `n`.
    pub fn sample(&self, n: usize) -> Result<Rational> {
        self.0.lower.get(n)
    }

    /// `α(n)`.
    ///
    /// Panics if the value is malformed: that means a broken constructor,
    /// and no verdict about it would be meaningful.
    pub fn at(&self, n: usize) -> Rational {
        self.sample(n).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `α(0), …, α(len-1)`.
    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>> {
        self.0.lower.prefix(len)
    }

    pub fn strict_bound(&self) -> &Rational {
        &self.0.bound
    }

    pub fn has_upper_rule(&self) -> bool {
        self.0.upper.is_some()
    }

    pub fn sample_upper(&self, n: usize) -> Option<Result<Rational>> {
        self.0.upper.as_ref().map(|u| u.get(n))
    }

    /// Upper rule at `n`. Panics on malformation, like [`at`](Self::at).
    pub fn upper_at(&self, n: usize) -> Option<Rational> {
        self.sample_upper(n).map(|r| r.unwrap_or_else(|e| panic!("{e}")))
    }

    /// The supremum, when the constructor knows it exactly.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.0.exact.as_ref()
    }

    pub fn origin(&self) -> &Origin {
        &self.0.origin
    }

    /// Whether both values carry the same structural origin, which certifies
    /// `=ᵒ` without sampling.
    pub fn shares_origin(&self, other: &OrientedReal) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.origin == other.0.origin
    }

    /// Best known `h` with `∀m α(m) < h` at this fuel.
    pub fn upper_evidence(&self, fuel: usize) -> Rational {
        if let Some(p) = &self.0.exact {
            return p.clone();
        }
        match self.upper_at(fuel) {
            Some(u) => u.min(self.0.bound.clone()),
            None => self.0.bound.clone(),
        }
    }

    /// `(α + r)(n) = α(n) + r`.
    pub fn shift(&self, r: &Rational) -> OrientedReal {
        let a = self.clone();
        let r1 = r.clone();
        let mut parts = Parts::new(
            Box::new(move |n| Ok(a.sample(n)? + &r1)),
            &self.0.bound + r,
            Origin::node("shift", vec![r.clone()], vec![self.origin().clone()]),
        );
        if self.has_upper_rule() {
            let a = self.clone();
            let r2 = r.clone();
            parts.upper = Some(Box::new(move |n| Ok(a.sample_upper(n).expect("upper rule")? + &r2)));
        }
        parts.exact = self.exact_value().map(|p| p + r);
        parts.assemble()
    }
}

impl fmt::Debug for OrientedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedReal")
            .field("bound", &self.0.bound)
            .field("exact", &self.0.exact)
            .field("two_sided", &self.has_upper_rule())
            .field("origin", &self.0.origin)
            .finish()
    }
}

/// `q̂(n) = q − 1/(n+1)`, with strict bound `q` and constant upper rule `q`.
pub fn embed_rational(q: &Rational) -> OrientedReal {
    let a = q.clone();
    let b = q.clone();
    let mut parts = Parts::new(
        Box::new(move |n| Ok(&a - Rational::index_offset(n))),
        q.clone(),
        Origin::Embed(q.clone()),
    );
    parts.upper = Some(Box::new(move |_| Ok(b.clone())));
    parts.exact = Some(q.clone());
    parts.assemble()
}

/// First index `n ≤ fuel` with `q < α(n)`.
pub fn cut_witness(q: &Rational, alpha: &OrientedReal, fuel: usize) -> Option<usize> {
    if alpha.at(fuel) <= *q {
        return None;
    }
    // α is strictly increasing, so the witnesses form a suffix of 0..=fuel
    let (mut lo, mut hi) = (0, fuel);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if alpha.at(mid) > *q {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// `q < α`, i.e. `q ∈ A_α`: `∃n q < α(n)`.
pub fn lt_rational(q: &Rational, alpha: &OrientedReal, fuel: usize) -> Trilean {
    if *q >= alpha.upper_evidence(fuel) {
        Refuted
    } else if alpha.at(fuel) > *q {
        Confirmed
    } else {
        Trilean::unknown(fuel)
    }
}

/// `α ≤ q`: `∀n α(n) < q`.
pub fn le_rational(alpha: &OrientedReal, q: &Rational, fuel: usize) -> Trilean {
    if alpha.upper_evidence(fuel) <= *q {
        Confirmed
    } else if alpha.at(fuel) >= *q {
        Refuted
    } else {
        Trilean::unknown(fuel)
    }
}

/// `α < β`: `∃n ∀m α(m) < β(n)`.
pub fn lt(alpha: &OrientedReal, beta: &OrientedReal, fuel: usize) -> Trilean {
    if alpha.shares_origin(beta) {
        // α =ᵒ β, and < is irreflexive
        return Refuted;
    }
    if beta.at(fuel) >= alpha.upper_evidence(fuel) {
        return Confirmed;
    }
    let hi_b = beta.upper_evidence(fuel);
    if alpha.at(fuel) >= hi_b {
        return Refuted;
    }
    if let Some(p) = alpha.exact_value() {
        // every β(n) < hi_b ≤ sup α, so each β(n) is overtaken by some α(m)
        if hi_b <= *p {
            return Refuted;
        }
    }
    Trilean::unknown(fuel)
}

/// `α ≤ β`: `∀m ∃n α(m) < β(n)`, i.e. `A_α ⊆ A_β`.
pub fn le(alpha: &OrientedReal, beta: &OrientedReal, fuel: usize) -> Trilean {
    if alpha.shares_origin(beta) || lt(alpha, beta, fuel).is_confirmed() {
        return Confirmed;
    }
    if let Some(q) = beta.exact_value() {
        if alpha.upper_evidence(fuel) <= *q {
            return Confirmed;
        }
    }
    let hi_b = beta.upper_evidence(fuel);
    if alpha.at(fuel) >= hi_b {
        return Refuted;
    }
    if let Some(p) = alpha.exact_value() {
        if hi_b < *p {
            return Refuted;
        }
    }
    Trilean::unknown(fuel)
}

/// `α =ᵒ β`: both inclusions of the cuts.
pub fn eq_o(alpha: &OrientedReal, beta: &OrientedReal, fuel: usize) -> Trilean {
    if alpha.shares_origin(beta) {
        return Confirmed;
    }
    le(alpha, beta, fuel).and(le(beta, alpha, fuel))
}

/// The cut `A_α ∩ A_β`, realized pointwise as `min(α(n), β(n))`.
pub fn cut_intersection(alpha: &OrientedReal, beta: &OrientedReal) -> OrientedReal {
    if alpha.shares_origin(beta) {
        return alpha.clone();
    }
    let (a, b) = (alpha.clone(), beta.clone());
    let mut parts = Parts::new(
        Box::new(move |n| Ok(a.sample(n)?.min(b.sample(n)?))),
        alpha.strict_bound().clone().min(beta.strict_bound().clone()),
        Origin::commutative("meet", alpha.origin(), beta.origin()),
    );
    let sides: Vec<OrientedReal> = [alpha, beta]
        .into_iter()
        .filter(|x| x.has_upper_rule())
        .cloned()
        .collect();
    if !sides.is_empty() {
        parts.upper = Some(Box::new(move |n| {
            let mut best: Option<Rational> = None;
            for s in &sides {
                let u = s.sample_upper(n).expect("upper rule")?;
                best = Some(match best {
                    Some(b) => b.min(u),
                    None => u,
                });
            }
            Ok(best.expect("at least one side"))
        }));
    }
    if let (Some(p), Some(q)) = (alpha.exact_value(), beta.exact_value()) {
        parts.exact = Some(p.clone().min(q.clone()));
    }
    parts.assemble()
}

/// Running maximum of a bounded rational sequence, checking `γ(n) < M`.
pub(crate) fn running_max(gamma: Rule, bound: Rational) -> LazySeq<Rational> {
    LazySeq::recurrence(move |n, prefix: &[Rational]| {
        let g = gamma(n)?;
        if g >= bound {
            return Err(malformed("bounded sequence", n, format!("{g} reaches bound {bound}")));
        }
        Ok(match prefix.last() {
            Some(prev) if *prev >= g => prev.clone(),
            _ => g,
        })
    })
}

pub(crate) fn bounded_sequence_parts(gamma: Rule, bound: Rational, origin: Origin) -> Parts {
    let maxes = running_max(gamma, bound.clone());
    Parts::new(
        Box::new(move |n| Ok(maxes.get(n)? - Rational::index_offset(n))),
        bound,
        origin,
    )
}

/// The oriented real whose cut is `{q | ∃n q < γ(n)}` for a sequence bounded
/// strictly by `bound`: `α(n) = max{γ(0),…,γ(n)} − 1/(n+1)`.
///
/// `γ(n) < bound` is checked lazily; a breach surfaces as a malformed error
/// when the offending index is first sampled.
pub fn cut_from_bounded_sequence(
    gamma: impl Fn(usize) -> Rational + Send + Sync + 'static,
    bound: Rational,
) -> OrientedReal {
    bounded_sequence_parts(Box::new(move |n| Ok(gamma(n))), bound, Origin::fresh()).assemble()
}

/// [`cut_from_bounded_sequence`] for the sequence that cycles through a
/// finite list. The list is validated eagerly.
pub fn cut_from_cycle(values: &[Rational], bound: Rational) -> Result<OrientedReal> {
    if values.is_empty() {
        return Err(Error::Empty("bounded sequence"));
    }
    if let Some(i) = values.iter().position(|v| *v >= bound) {
        return Err(malformed(
            "bounded sequence",
            i,
            format!("{} reaches bound {bound}", values[i]),
        ));
    }
    let mut params = vec![bound.clone()];
    params.extend(values.iter().cloned());
    let vals = values.to_vec();
    let parts = bounded_sequence_parts(
        Box::new(move |n| Ok(vals[n % vals.len()].clone())),
        bound,
        Origin::node("bseq", params, Vec::new()),
    );
    Ok(parts.assemble())
}
