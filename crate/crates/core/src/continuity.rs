//! Executable checks of the continuity principle on `(0,1]ᵒ`.
//!
//! Maps under test come from a closed family of descriptors, each total and
//! well defined by construction. For maps into almost naturals the modulus
//! `E` is computed analytically; a pair `(α, β)` whose signatures against `E`
//! are decided and equal must then have `=*`-equal images. For maps into
//! oriented reals, composing with a `2⁻ⁿ` grid map gives such a modulus, and
//! equal signatures must put the images within distance `2⁻ⁿ`.

use std::fmt;

use rayon::prelude::*;

use crate::almost::{an_eq, check_ascending, threshold_phi, AlmostNatural};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::real::{embed_rational, OrientedReal};
use crate::topology::{d_check, oriented_nbhd_member};
use crate::trilean::{Confirmed, Refuted, Trilean};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDescriptor {
    /// `Φ` counting the thresholds reached; values in almost naturals.
    Threshold(Vec<Rational>),
    /// Constant almost natural `k`.
    ConstantLevel(u64),
    /// Constant oriented real `ĉ`.
    ConstantReal(Rational),
    /// `δ ↦ δ + s`.
    Shift(Rational),
    Identity,
    /// The `2⁻ⁿ` grid map applied after a real-valued inner map: counts the
    /// grid lines `i·2⁻ⁿ` (covering the inner map's image) that are reached.
    Grid {
        n: u32,
        inner: Box<MapDescriptor>,
    },
}

/// Image of an oriented real under a descriptor.
#[derive(Clone, Debug)]
pub enum MapValue {
    Level(AlmostNatural),
    Real(OrientedReal),
}

impl MapDescriptor {
    pub fn threshold(values: Vec<Rational>) -> Result<Self> {
        check_ascending(&values)?;
        Ok(MapDescriptor::Threshold(values))
    }

    pub fn grid(n: u32, inner: MapDescriptor) -> Result<Self> {
        if !inner.is_real_valued() {
            return Err(Error::Unsupported(format!(
                "grid map needs a real-valued inner map, got {inner}"
            )));
        }
        Ok(MapDescriptor::Grid {
            n,
            inner: Box::new(inner),
        })
    }

    pub fn is_real_valued(&self) -> bool {
        matches!(
            self,
            MapDescriptor::ConstantReal(_) | MapDescriptor::Shift(_) | MapDescriptor::Identity
        )
    }

    pub fn apply(&self, x: &OrientedReal) -> Result<MapValue> {
        Ok(match self {
            MapDescriptor::Threshold(d) => MapValue::Level(threshold_phi(d, x)?),
            MapDescriptor::ConstantLevel(k) => {
                let k = *k;
                MapValue::Level(AlmostNatural::from_rule(move |_| k, k))
            }
            MapDescriptor::ConstantReal(c) => MapValue::Real(embed_rational(c)),
            MapDescriptor::Shift(s) => MapValue::Real(x.shift(s)),
            MapDescriptor::Identity => MapValue::Real(x.clone()),
            MapDescriptor::Grid { n, inner } => {
                let y = self.real_image(inner, x)?;
                MapValue::Level(threshold_phi(&grid_lines(*n, inner)?, &y)?)
            }
        })
    }

    fn real_image(&self, inner: &MapDescriptor, x: &OrientedReal) -> Result<OrientedReal> {
        match inner.apply(x)? {
            MapValue::Real(y) => Ok(y),
            MapValue::Level(_) => Err(Error::Unsupported(format!("{inner} is not real-valued"))),
        }
    }

    pub fn apply_level(&self, x: &OrientedReal) -> Result<AlmostNatural> {
        match self.apply(x)? {
            MapValue::Level(v) => Ok(v),
            MapValue::Real(_) => Err(Error::Unsupported(format!("{self} is real-valued"))),
        }
    }

    pub fn apply_real(&self, x: &OrientedReal) -> Result<OrientedReal> {
        match self.apply(x)? {
            MapValue::Real(v) => Ok(v),
            MapValue::Level(_) => Err(Error::Unsupported(format!("{self} is not real-valued"))),
        }
    }

    /// `(t, thresholds)` such that the image level is the number of
    /// thresholds strictly below the real `t(x)`. Only for level-valued maps.
    fn level_structure(&self) -> Result<Option<(&MapDescriptor, Vec<Rational>)>> {
        match self {
            MapDescriptor::Threshold(d) => Ok(Some((&MapDescriptor::Identity, d.clone()))),
            MapDescriptor::ConstantLevel(_) => Ok(None),
            MapDescriptor::Grid { n, inner } => Ok(Some((inner, grid_lines(*n, inner)?))),
            other => Err(Error::Unsupported(format!("{other} is real-valued"))),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::Threshold(d) => {
                write!(f, "threshold[")?;
                for (i, v) in d.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
            MapDescriptor::ConstantLevel(k) => write!(f, "level({k})"),
            MapDescriptor::ConstantReal(c) => write!(f, "const({c})"),
            MapDescriptor::Shift(s) => write!(f, "shift({s})"),
            MapDescriptor::Identity => write!(f, "identity"),
            MapDescriptor::Grid { n, inner } => write!(f, "grid({n}, {inner})"),
        }
    }
}

/// Closed range of a real-valued map's sups over `(0,1]`.
fn image_range(d: &MapDescriptor) -> Result<(Rational, Rational)> {
    match d {
        MapDescriptor::Identity => Ok((Rational::zero(), Rational::one())),
        MapDescriptor::Shift(s) => Ok((s.clone(), s + Rational::one())),
        MapDescriptor::ConstantReal(c) => Ok((c.clone(), c.clone())),
        other => Err(Error::Unsupported(format!("{other} is not real-valued"))),
    }
}

/// Grid lines `i·2⁻ⁿ` inside the closed image range of `inner`.
pub fn grid_lines(n: u32, inner: &MapDescriptor) -> Result<Vec<Rational>> {
    let (lo, hi) = image_range(inner)?;
    let step = Rational::pow2_neg(n);
    let (a, b) = ((&lo / &step).ceil_int(), (&hi / &step).floor_int());
    let mut out = Vec::new();
    let mut i = a;
    while i <= b {
        out.push(&step * Rational::integer(i.clone()));
        i += 1;
    }
    Ok(out)
}

fn in_unit(r: &Rational) -> bool {
    !r.is_negative() && *r < Rational::one()
}

/// The rationals whose embeddings form the modulus of a level-valued map.
pub fn modulus_points(phi: &MapDescriptor) -> Result<Vec<Rational>> {
    let Some((inner, thresholds)) = phi.level_structure()? else {
        return Ok(Vec::new());
    };
    let pre: Vec<Rational> = match inner {
        MapDescriptor::Identity => thresholds,
        MapDescriptor::Shift(s) => thresholds.iter().map(|t| t - s).collect(),
        MapDescriptor::ConstantReal(_) => Vec::new(),
        other => return Err(Error::Unsupported(format!("no modulus for {other}"))),
    };
    Ok(pre.into_iter().filter(in_unit).collect())
}

/// Finite `E` such that equal decided signatures against `E` force equal
/// images under `phi`.
pub fn ocp_modulus(phi: &MapDescriptor) -> Result<Vec<OrientedReal>> {
    Ok(modulus_points(phi)?.iter().map(embed_rational).collect())
}

/// Modulus of the `2⁻ⁿ` grid map composed after the real-valued `f`.
pub fn totalc_modulus(f: &MapDescriptor, n: u32) -> Result<Vec<OrientedReal>> {
    ocp_modulus(&MapDescriptor::grid(n, f.clone())?)
}

/// `=*` between the images of `α` and `β` under a level-valued map.
///
/// Besides the cap shortcut of `an_eq`, the limit of each image is
/// bracketed: at least the sampled level, at most the number of thresholds
/// below the upper evidence of the real being thresholded.
pub fn level_eq(phi: &MapDescriptor, alpha: &OrientedReal, beta: &OrientedReal, fuel: usize) -> Result<Trilean> {
    let (xa, xb) = (phi.apply_level(alpha)?, phi.apply_level(beta)?);
    let Some((inner, thresholds)) = phi.level_structure()? else {
        return Ok(an_eq(&xa, &xb, fuel));
    };
    let bracket = |x: &OrientedReal, level: &AlmostNatural| -> Result<(u64, u64)> {
        let y = inner.apply_real(x)?;
        let hi = y.upper_evidence(fuel);
        let top = thresholds.partition_point(|t| *t < hi) as u64;
        Ok((level.at(fuel), top))
    };
    let (a, b) = (bracket(alpha, &xa)?, bracket(beta, &xb)?);
    Ok(if a.0 > b.1 || b.0 > a.1 {
        Refuted
    } else if a.0 == a.1 && b.0 == b.1 && a.0 == b.0 {
        Confirmed
    } else {
        an_eq(&xa, &xb, fuel)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub id: usize,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<PairResult>,
}

impl Report {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.results.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn total(&self) -> usize {
        self.results.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairResult> {
        self.results.iter().filter(|r| r.outcome == Outcome::Fail)
    }

    pub fn summary(&self) -> String {
        format!(
            "total={} pass={} fail={} undecided={}",
            self.total(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Undecided)
        )
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{} {} {}", r.outcome, r.id, r.detail)?;
        }
        write!(f, "{}", self.summary())
    }
}

fn run_pairs(
    pairs: &[(OrientedReal, OrientedReal)],
    reference: &[OrientedReal],
    fuel: usize,
    check: impl Fn(&OrientedReal, &OrientedReal) -> Result<(Trilean, String)> + Sync,
) -> Result<Report> {
    let mut results = pairs
        .par_iter()
        .enumerate()
        .map(|(id, (a, b))| {
            let nb = oriented_nbhd_member(b, a, reference, fuel);
            let (outcome, detail) = match nb {
                Refuted => (Outcome::Pass, "nbhd=Refuted vacuous".to_string()),
                Trilean::Unknown { .. } => (Outcome::Undecided, "nbhd=Unknown".to_string()),
                Confirmed => {
                    let (v, detail) = check(a, b)?;
                    let outcome = if v.is_refuted() { Outcome::Fail } else { Outcome::Pass };
                    (outcome, format!("nbhd=Confirmed {detail}"))
                }
            };
            Ok(PairResult { id, outcome, detail })
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by_key(|r| r.id);
    Ok(Report { results })
}

/// Checks that pairs in one neighborhood of `reference` have `=*`-equal
/// images under the level-valued `phi`.
pub fn verify_modulus(
    phi: &MapDescriptor,
    reference: &[OrientedReal],
    pairs: &[(OrientedReal, OrientedReal)],
    fuel: usize,
) -> Result<Report> {
    phi.level_structure()?;
    run_pairs(pairs, reference, fuel, |a, b| {
        let v = level_eq(phi, a, b, fuel)?;
        Ok((v, format!("eq={v}")))
    })
}

/// Checks that pairs in one neighborhood of `reference` have images under
/// the real-valued `f` within distance `2⁻ⁿ`.
pub fn verify_totalc(
    f: &MapDescriptor,
    n: u32,
    reference: &[OrientedReal],
    pairs: &[(OrientedReal, OrientedReal)],
    fuel: usize,
) -> Result<Report> {
    if !f.is_real_valued() {
        return Err(Error::Unsupported(format!("{f} is not real-valued")));
    }
    let q = Rational::pow2_neg(n);
    run_pairs(pairs, reference, fuel, |a, b| {
        let v = d_check(&f.apply_real(a)?, &f.apply_real(b)?, &q, fuel)?.verdict;
        Ok((v, format!("d={v}")))
    })
}
