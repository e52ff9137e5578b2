//! Typed expressions and their canonical text form.

use std::fmt;

use orc_core::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqSource {
    List(Vec<Rational>),
    /// One of [`RULES`].
    Rule(String),
}

/// Named enumerations accepted by `bseq`.
pub const RULES: &[&str] = &["harmonic", "dyadic", "alternating", "zero"];

/// `n`-th term of a named enumeration.
pub fn rule_term(name: &str, n: usize) -> Option<Rational> {
    Some(match name {
        "harmonic" => Rational::one() - Rational::index_offset(n),
        "dyadic" => Rational::one() - Rational::pow2_neg(n.min(u32::MAX as usize) as u32),
        "alternating" if n.is_multiple_of(2) => Rational::zero(),
        "alternating" => Rational::frac(1, 2),
        "zero" => Rational::zero(),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rat(Rational),
    Var(String),
    Hat(Rational),
    Bseq { source: SeqSource, bound: Rational },
    Sup { values: Vec<Rational>, bound: Rational },
    Inf(Vec<Rational>),
    Add(Box<Expr>, Box<Expr>),
    MulPos(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Approx(Box<Expr>, u32),
    Phi(Vec<Rational>, Box<Expr>),
    Limit(Vec<Expr>, Rational),
    Meet(Box<Expr>, Box<Expr>),
    Shift(Box<Expr>, Rational),
    Embed(Box<Expr>),
}

impl Expr {
    /// Head symbol, used in error paths.
    pub fn head(&self) -> &'static str {
        match self {
            Expr::Rat(_) => "rat",
            Expr::Var(_) => "name",
            Expr::Hat(_) => "hat",
            Expr::Bseq { .. } => "bseq",
            Expr::Sup { .. } => "sup",
            Expr::Inf(_) => "inf",
            Expr::Add(..) => "add",
            Expr::MulPos(..) => "mulpos",
            Expr::Neg(_) => "neg",
            Expr::Approx(..) => "approx",
            Expr::Phi(..) => "phi",
            Expr::Limit(..) => "limit",
            Expr::Meet(..) => "meet",
            Expr::Shift(..) => "shift",
            Expr::Embed(_) => "embed",
        }
    }
}

fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

/// Canonical rendering; parsing it gives back the same expression.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(r) => write!(f, "rat({r})"),
            Expr::Var(name) => write!(f, "{name}"),
            Expr::Hat(r) => write!(f, "hat({r})"),
            Expr::Bseq { source, bound } => {
                write!(f, "bseq(")?;
                match source {
                    SeqSource::List(vs) => list(f, vs)?,
                    SeqSource::Rule(name) => write!(f, "{name}")?,
                }
                write!(f, ",{bound})")
            }
            Expr::Sup { values, bound } => {
                write!(f, "sup(")?;
                list(f, values)?;
                write!(f, ",{bound})")
            }
            Expr::Inf(values) => {
                write!(f, "inf(")?;
                list(f, values)?;
                write!(f, ")")
            }
            Expr::Add(a, b) => write!(f, "add({a},{b})"),
            Expr::MulPos(a, b) => write!(f, "mulpos({a},{b})"),
            Expr::Neg(a) => write!(f, "neg({a})"),
            Expr::Approx(a, n) => write!(f, "approx({a},{n})"),
            Expr::Phi(ds, a) => {
                write!(f, "phi(")?;
                list(f, ds)?;
                write!(f, ",{a})")
            }
            Expr::Limit(terms, bound) => {
                write!(f, "limit(")?;
                list(f, terms)?;
                write!(f, ",{bound})")
            }
            Expr::Meet(a, b) => write!(f, "meet({a},{b})"),
            Expr::Shift(a, s) => write!(f, "shift({a},{s})"),
            Expr::Embed(a) => write!(f, "embed({a})"),
        }
    }
}
