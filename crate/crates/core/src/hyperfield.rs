//! Arithmetic as relations between cuts.
//!
//! `+(α, β, γ)` holds when the real cut of `γ` is the sum of those of `α` and
//! `β`, and likewise for products. Membership of a rational `r` in the real
//! cut of `α` is `r < s` for some `s` in `A_α`. Cut equality is never
//! finitely witnessable, so the checkers only ever refute or stay unknown.
//! The constructors below produce one canonical `γ` for each relation.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::origin::Origin;
use crate::rational::Rational;
use crate::real::{cut_witness, lt, malformed, OrientedReal, Parts};
use crate::trilean::{Confirmed, Refuted, Trilean};

/// Rational test points `lo, lo+step, …` up to `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridProbe {
    lo: Rational,
    hi: Rational,
    step: Rational,
}

impl GridProbe {
    pub fn new(lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::DegenerateProbe(format!("empty span {lo}..{hi}")));
        }
        if !step.is_positive() {
            return Err(Error::DegenerateProbe(format!("step {step} is not positive")));
        }
        if (&hi - &lo) / &step < Rational::integer(2) {
            return Err(Error::DegenerateProbe(format!(
                "step {step} leaves fewer than two cells"
            )));
        }
        Ok(GridProbe { lo, hi, step })
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut p = self.lo.clone();
        while p <= self.hi {
            out.push(p.clone());
            p = p + &self.step;
        }
        out
    }
}

/// Result of a real-cut membership probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMembership {
    pub verdict: Trilean,
    /// `(s, n)` with `r < s < α(n)`, when confirmed.
    pub witness: Option<(Rational, usize)>,
    /// Confirmation reads the doubly negated search `¬¬∃n s < α(n)` as a
    /// plain search, which is justified by Markov's principle.
    pub assumes_markov: bool,
}

pub fn psi_member_detail(r: &Rational, alpha: &OrientedReal, fuel: usize) -> PsiMembership {
    if *r >= alpha.upper_evidence(fuel) {
        return PsiMembership {
            verdict: Refuted,
            witness: None,
            assumes_markov: false,
        };
    }
    match cut_witness(r, alpha, fuel) {
        Some(n) => {
            let s = (r + alpha.at(n)) / Rational::integer(2);
            PsiMembership {
                verdict: Confirmed,
                witness: Some((s, n)),
                assumes_markov: true,
            }
        }
        None => PsiMembership {
            verdict: Trilean::unknown(fuel),
            witness: None,
            assumes_markov: false,
        },
    }
}

/// Whether `r` lies in the real cut of `α`.
pub fn psi_member(r: &Rational, alpha: &OrientedReal, fuel: usize) -> Trilean {
    psi_member_detail(r, alpha, fuel).verdict
}

/// A grid rational `q` at the given step with `q` outside the real cut of `α`
/// and inside that of `β`, found when `α < β` is confirmed at `fuel`.
/// Membership in `β` is probed at `fuel + 1`, since a confirmed `α < β` may
/// only give `β(fuel) = sup α` exactly.
pub fn psi_separator(alpha: &OrientedReal, beta: &OrientedReal, step: &Rational, fuel: usize) -> Option<Rational> {
    if !lt(alpha, beta, fuel).is_confirmed() {
        return None;
    }
    let hi = alpha.upper_evidence(fuel);
    let q = step * Rational::integer((&hi / step).ceil_int());
    let sep = psi_member(&q, alpha, fuel).is_refuted() && psi_member(&q, beta, fuel + 1).is_confirmed();
    sep.then_some(q)
}

/// `(α + β)(n) = α(n) + β(n)`.
pub fn add(alpha: &OrientedReal, beta: &OrientedReal) -> OrientedReal {
    let (a, b) = (alpha.clone(), beta.clone());
    let mut parts = Parts::new(
        Box::new(move |n| Ok(a.sample(n)? + b.sample(n)?)),
        alpha.strict_bound() + beta.strict_bound(),
        Origin::commutative("add", alpha.origin(), beta.origin()),
    );
    if alpha.has_upper_rule() && beta.has_upper_rule() {
        let (a, b) = (alpha.clone(), beta.clone());
        parts.upper = Some(Box::new(move |n| {
            Ok(a.sample_upper(n).expect("upper rule")? + b.sample_upper(n).expect("upper rule")?)
        }));
    }
    if let (Some(p), Some(q)) = (alpha.exact_value(), beta.exact_value()) {
        parts.exact = Some(p + q);
    }
    parts.assemble()
}

/// `(α·β)(n) = α(n)·β(n)` for values starting at or above zero.
pub fn mul_positive(alpha: &OrientedReal, beta: &OrientedReal) -> Result<OrientedReal> {
    for (side, x) in [("left", alpha), ("right", beta)] {
        let x0 = x.sample(0)?;
        if x0.is_negative() {
            return Err(Error::Precondition {
                index: 0,
                detail: format!("{side} factor starts at {x0}, below zero"),
            });
        }
    }
    let (a, b) = (alpha.clone(), beta.clone());
    let mut parts = Parts::new(
        Box::new(move |n| Ok(a.sample(n)? * b.sample(n)?)),
        alpha.strict_bound() * beta.strict_bound(),
        Origin::commutative("mul", alpha.origin(), beta.origin()),
    );
    if alpha.has_upper_rule() && beta.has_upper_rule() {
        let (a, b) = (alpha.clone(), beta.clone());
        parts.upper = Some(Box::new(move |n| {
            Ok(a.sample_upper(n).expect("upper rule")? * b.sample_upper(n).expect("upper rule")?)
        }));
    }
    if let (Some(p), Some(q)) = (alpha.exact_value(), beta.exact_value()) {
        parts.exact = Some(p * q);
    }
    Ok(parts.assemble())
}

/// Additive inverse of a two-sided value: `n ↦ −u(n) − 1/(n+1)` with upper
/// rule `n ↦ −α(n)`.
///
/// The gap `u(n) − α(n)` must be nonincreasing; this is checked lazily.
pub fn neg_twosided(alpha: &OrientedReal) -> Result<OrientedReal> {
    if !alpha.has_upper_rule() {
        return Err(Error::Unsupported(
            "negation needs a two-sided value (one with an upper rule)".into(),
        ));
    }
    let a0 = alpha.sample(0)?;
    let a = alpha.clone();
    let mut parts = Parts::new(
        Box::new(move |n| {
            let u = a.sample_upper(n).expect("upper rule")?;
            if n > 0 {
                let gap = &u - a.sample(n)?;
                let prev = a.sample_upper(n - 1).expect("upper rule")? - a.sample(n - 1)?;
                if gap > prev {
                    return Err(malformed("two-sided value", n, format!("gap {gap} widens from {prev}")));
                }
            }
            Ok(-u - Rational::index_offset(n))
        }),
        -a0 + Rational::one(),
        Origin::node("neg", Vec::new(), vec![alpha.origin().clone()]),
    );
    let a = alpha.clone();
    parts.upper = Some(Box::new(move |n| Ok(-a.sample(n)?)));
    Ok(parts.assemble())
}

/// Verdicts for one grid point of a relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellVerdict {
    pub q: Rational,
    /// Membership of `q` in the combined cut of the operands.
    pub combined: Trilean,
    /// Membership of `q` in the real cut of the claimed result.
    pub target: Trilean,
}

impl CellVerdict {
    pub fn separates(&self) -> bool {
        matches!(
            (self.combined, self.target),
            (Confirmed, Refuted) | (Refuted, Confirmed)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// Refuted if some cell separates, otherwise Unknown.
    pub verdict: Trilean,
    pub cells: Vec<CellVerdict>,
}

fn run_cells(
    probe: &GridProbe,
    gamma: &OrientedReal,
    fuel: usize,
    combined: impl Fn(&Rational) -> Trilean + Sync,
) -> RelationReport {
    // sampling γ up front keeps the parallel section free of first evaluations
    gamma.upper_evidence(fuel);
    let cells: Vec<CellVerdict> = probe
        .points()
        .into_par_iter()
        .map(|q| CellVerdict {
            combined: combined(&q),
            target: psi_member(&q, gamma, fuel),
            q,
        })
        .collect();
    let verdict = if cells.iter().any(CellVerdict::separates) {
        Refuted
    } else {
        Trilean::unknown(fuel)
    };
    RelationReport { verdict, cells }
}

/// Probes `+(α, β, γ)` on the grid.
pub fn check_add(
    alpha: &OrientedReal,
    beta: &OrientedReal,
    gamma: &OrientedReal,
    probe: &GridProbe,
    fuel: usize,
) -> RelationReport {
    let lo = alpha.at(fuel) + beta.at(fuel);
    let hi = alpha.upper_evidence(fuel) + beta.upper_evidence(fuel);
    run_cells(probe, gamma, fuel, |q| {
        if *q < lo {
            Confirmed
        } else if *q >= hi {
            Refuted
        } else {
            Trilean::unknown(fuel)
        }
    })
}

/// Probes `∗(α, β, γ)` on the grid. The product of the two suprema lies in
/// the box `(α(f), hi_α] × (β(f), hi_β]`, whose corner products bound it.
pub fn check_mul(
    alpha: &OrientedReal,
    beta: &OrientedReal,
    gamma: &OrientedReal,
    probe: &GridProbe,
    fuel: usize,
) -> RelationReport {
    let xs = [alpha.at(fuel), alpha.upper_evidence(fuel)];
    let ys = [beta.at(fuel), beta.upper_evidence(fuel)];
    let corners: Vec<Rational> = xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)).collect();
    let lo = corners.iter().min().expect("four corners").clone();
    let hi = corners.iter().max().expect("four corners").clone();
    run_cells(probe, gamma, fuel, |q| {
        if *q < lo {
            Confirmed
        } else if *q >= hi {
            Refuted
        } else {
            Trilean::unknown(fuel)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::embed_rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn hat(n: i64, d: i64) -> OrientedReal {
        embed_rational(&q(n, d))
    }

    fn probe(lo: (i64, i64), hi: (i64, i64), step: (i64, i64)) -> GridProbe {
        GridProbe::new(q(lo.0, lo.1), q(hi.0, hi.1), q(step.0, step.1)).unwrap()
    }

    #[test]
    fn probe_validation() {
        assert!(GridProbe::new(q(1, 1), q(1, 1), q(1, 4)).is_err());
        assert!(GridProbe::new(q(0, 1), q(1, 1), q(0, 1)).is_err());
        assert!(GridProbe::new(q(0, 1), q(1, 1), q(3, 4)).is_err());
        assert_eq!(probe((0, 1), (1, 1), (1, 4)).points().len(), 5);
    }

    #[test]
    fn psi_examples() {
        let d = psi_member_detail(&q(0, 1), &hat(1, 1), 8);
        assert_eq!(d.verdict, Confirmed);
        assert_eq!(d.witness, Some((q(1, 4), 1)));
        assert!(d.assumes_markov);
        assert_eq!(psi_member(&q(1, 1), &hat(1, 1), 8), Refuted);
        assert!(psi_member(&q(99, 100), &hat(1, 1), 10).is_unknown());
    }

    #[test]
    fn add_examples() {
        let two = add(&hat(1, 1), &hat(1, 1));
        assert_eq!(two.at(3), q(3, 2));
        assert_eq!(two.at(0), q(0, 1));
        for fuel in [4, 64, 512] {
            let r = check_add(&hat(1, 1), &hat(1, 1), &hat(2, 1), &probe((0, 1), (3, 1), (1, 8)), fuel);
            assert_ne!(r.verdict, Refuted);
        }
        let wrong = check_add(&hat(1, 1), &hat(1, 1), &hat(3, 1), &probe((1, 1), (3, 1), (1, 4)), 32);
        assert_eq!(wrong.verdict, Refuted);
        assert!(wrong.cells.iter().any(|c| c.q == q(5, 2) && c.separates()));
        let a = hat(2, 5);
        let s = add(&a, &hat(0, 1));
        for n in 0..8 {
            assert_eq!(s.at(n), a.at(n) - Rational::index_offset(n));
        }
        assert_eq!(add(&a, &hat(1, 3)).origin(), add(&hat(1, 3), &a).origin());
    }

    #[test]
    fn mul_examples() {
        let two = hat(2, 1);
        let wrong = check_mul(&two, &two, &hat(5, 1), &probe((3, 1), (5, 1), (1, 4)), 64);
        assert_eq!(wrong.verdict, Refuted);
        let one = hat(1, 1);
        let p = mul_positive(&one, &one).unwrap();
        assert_ne!(
            check_mul(&one, &one, &p, &probe((0, 1), (2, 1), (1, 8)), 256).verdict,
            Refuted
        );
        let neg = mul_positive(&hat(-1, 1), &one);
        assert!(matches!(neg, Err(Error::Precondition { index: 0, .. })));
        let four = mul_positive(&two, &two).unwrap();
        assert_eq!(four.exact_value(), Some(&q(4, 1)));
    }

    #[test]
    fn negation_examples() {
        let n = neg_twosided(&hat(3, 4)).unwrap();
        assert_eq!(n.at(0), q(-7, 4));
        assert_eq!(n.upper_at(0), Some(q(1, 4)));
        let pr = probe((-2, 1), (2, 1), (1, 16));
        assert_ne!(check_add(&hat(0, 1), &n, &hat(-3, 4), &pr, 256).verdict, Refuted);
        let back = neg_twosided(&n).unwrap();
        assert_ne!(check_add(&hat(0, 1), &back, &hat(3, 4), &pr, 256).verdict, Refuted);
        let inv = neg_twosided(&hat(1, 1)).unwrap();
        let r = check_add(&hat(1, 1), &inv, &hat(0, 1), &probe((-1, 1), (1, 1), (1, 8)), 64);
        assert_ne!(r.verdict, Refuted);
        let one_sided = OrientedReal::from_rule(|n| -Rational::index_offset(n), q(1, 1));
        assert!(matches!(neg_twosided(&one_sided), Err(Error::Unsupported(_))));
    }

    #[test]
    fn separator_examples() {
        let step = Rational::pow2_neg(7);
        assert_eq!(psi_separator(&hat(0, 1), &hat(1, 1), &step, 1), Some(q(0, 1)));
        assert_eq!(psi_separator(&hat(1, 1), &hat(0, 1), &step, 1), None);
        assert_eq!(psi_separator(&hat(0, 1), &hat(1, 1000), &step, 1024), Some(q(0, 1)));
    }
}
