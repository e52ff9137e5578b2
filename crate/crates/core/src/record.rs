//! Line-oriented text records of sampled prefixes.
//!
//! ```text
//! oriented-real v1 bound=1/1
//! 0 0/1
//! 1 1/2
//! ```
//!
//! Body lines are `<index> <value>` with indices `0, 1, 2, …` in order.
//! Parsing checks the same invariants the in-memory values carry, so a record
//! that reads back is a faithful prefix.

use std::fmt;
use std::str::FromStr;

use crate::almost::{AlmostNatural, AlmostRational, ValueSet};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::real::OrientedReal;

/// Value sets with more members than this are not written out.
pub const MAX_LISTED_VALUES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRecord {
    pub bound: Rational,
    pub samples: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalRecord {
    pub cap: u64,
    pub samples: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRecord {
    /// Strictly ascending.
    pub values: Vec<Rational>,
    pub samples: Vec<Rational>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Record(msg.into())
}

/// Splits off the header, checks its tag and returns the `key=` payload and
/// the body lines.
fn split<'a>(text: &'a str, tag: &str, key: &str) -> Result<(&'a str, Vec<&'a str>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty record"))?;
    let rest = header
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix(" v1 "))
        .ok_or_else(|| bad(format!("expected header `{tag} v1 {key}=…`, got {header:?}")))?;
    let payload = rest
        .trim()
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| bad(format!("header lacks `{key}=`")))?;
    Ok((payload, lines.collect()))
}

fn body<T: FromStr>(lines: &[&str]) -> Result<Vec<T>> {
    lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let mut it = line.split_whitespace();
            let (Some(idx), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad(format!("line {}: expected `<index> <value>`", i + 2)));
            };
            if idx.parse::<usize>().ok() != Some(i) {
                return Err(bad(format!("line {}: expected index {i}, got {idx}", i + 2)));
            }
            v.parse().map_err(|_| bad(format!("line {}: bad value {v:?}", i + 2)))
        })
        .collect()
}

fn write_body<T: fmt::Display>(f: &mut fmt::Formatter<'_>, samples: &[T]) -> fmt::Result {
    samples.iter().enumerate().try_for_each(|(i, v)| writeln!(f, "{i} {v}"))
}

impl RealRecord {
    pub fn capture(x: &OrientedReal, len: usize) -> Result<Self> {
        Ok(RealRecord {
            bound: x.strict_bound().clone(),
            samples: x.prefix(len)?,
        })
    }
}

impl fmt::Display for RealRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oriented-real v1 bound={}", self.bound)?;
        write_body(f, &self.samples)
    }
}

impl FromStr for RealRecord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (payload, lines) = split(text, "oriented-real", "bound")?;
        let bound: Rational = payload.parse().map_err(|_| bad(format!("bad bound {payload:?}")))?;
        let samples: Vec<Rational> = body(&lines)?;
        if let Some(i) = samples.windows(2).position(|w| w[0] >= w[1]) {
            return Err(bad(format!("index {}: samples must strictly increase", i + 1)));
        }
        if let Some(i) = samples.iter().position(|v| *v >= bound) {
            return Err(bad(format!("index {i}: sample reaches the bound")));
        }
        Ok(RealRecord { bound, samples })
    }
}

impl NaturalRecord {
    pub fn capture(x: &AlmostNatural, len: usize) -> Result<Self> {
        Ok(NaturalRecord {
            cap: x.cap(),
            samples: x.prefix(len)?,
        })
    }

    /// The recorded prefix continued by its last entry.
    pub fn to_value(&self) -> Result<AlmostNatural> {
        AlmostNatural::from_prefix(&self.samples, self.cap)
    }
}

impl fmt::Display for NaturalRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "almost-natural v1 cap={}", self.cap)?;
        write_body(f, &self.samples)
    }
}

impl FromStr for NaturalRecord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (payload, lines) = split(text, "almost-natural", "cap")?;
        let cap: u64 = payload.parse().map_err(|_| bad(format!("bad cap {payload:?}")))?;
        let samples: Vec<u64> = body(&lines)?;
        if let Some(i) = samples.windows(2).position(|w| w[0] > w[1]) {
            return Err(bad(format!("index {}: samples must not decrease", i + 1)));
        }
        if let Some(i) = samples.iter().position(|&v| v > cap) {
            return Err(bad(format!("index {i}: sample exceeds cap {cap}")));
        }
        Ok(NaturalRecord { cap, samples })
    }
}

impl RationalRecord {
    /// Errors with `Unsupported` when the value set has more than
    /// [`MAX_LISTED_VALUES`] members.
    pub fn capture(x: &AlmostRational, len: usize) -> Result<Self> {
        let values = x
            .values()
            .enumerate(MAX_LISTED_VALUES)
            .ok_or_else(|| Error::Unsupported(format!("value set has more than {MAX_LISTED_VALUES} members")))?;
        Ok(RationalRecord {
            values,
            samples: x.prefix(len)?,
        })
    }

    /// The recorded prefix continued by its last entry, over the recorded
    /// value set.
    pub fn to_value(&self) -> Result<AlmostRational> {
        let last = self
            .samples
            .last()
            .ok_or(Error::Empty("almost rational prefix"))?
            .clone();
        let p = self.samples.clone();
        let values = ValueSet::listed(self.values.clone())?;
        Ok(AlmostRational::new(move |n| p.get(n).unwrap_or(&last).clone(), values))
    }
}

impl fmt::Display for RationalRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        writeln!(f, "almost-rational v1 values={}", vs.join(","))?;
        write_body(f, &self.samples)
    }
}

impl FromStr for RationalRecord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (payload, lines) = split(text, "almost-rational", "values")?;
        let values = payload
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<Rational>()
                    .map_err(|_| bad(format!("bad value {v:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("values must be strictly ascending"));
        }
        let samples: Vec<Rational> = body(&lines)?;
        if let Some(i) = samples.windows(2).position(|w| w[0] > w[1]) {
            return Err(bad(format!("index {}: samples must not decrease", i + 1)));
        }
        if let Some(i) = samples.iter().position(|v| values.binary_search(v).is_err()) {
            return Err(bad(format!("index {i}: sample is not a declared value")));
        }
        Ok(RationalRecord { values, samples })
    }
}
