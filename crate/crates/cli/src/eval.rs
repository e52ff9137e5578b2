//! Evaluation of typed expressions.

use std::collections::BTreeMap;
use std::fmt;

use orc_core::{
    add, approximate, ar_embed, cut_from_bounded_sequence, cut_from_cycle, cut_intersection, embed_rational,
    inf_finite, monotone_limit, mul_positive, neg_twosided, sup_of_list, threshold_phi, AlmostNatural, AlmostRational,
    OrientedReal, Rational,
};
use thiserror::Error;

use crate::ast::{rule_term, Expr, SeqSource};

#[derive(Clone, Debug)]
pub enum Value {
    Rat(Rational),
    Real(OrientedReal),
    Natural(AlmostNatural),
    Almost(AlmostRational),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Rat(_) => "rational",
            Value::Real(_) => "oriented real",
            Value::Natural(_) => "almost natural",
            Value::Almost(_) => "almost rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("{path}: expected {expected}, got {got}")]
    Type {
        path: String,
        expected: &'static str,
        got: &'static str,
    },
    #[error("{path}: {source}")]
    Domain {
        path: String,
        #[source]
        source: orc_core::Error,
    },
}

/// Position inside an expression, e.g. `add#2/hat`.
#[derive(Clone, Default)]
struct Path(Vec<String>);

impl Path {
    fn arg(&self, head: &str, i: usize) -> Path {
        let mut p = self.0.clone();
        p.push(format!("{head}#{i}"));
        Path(p)
    }

    fn at(&self, head: &str) -> String {
        let mut p = self.0.clone();
        p.push(head.to_string());
        p.join("/")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("/"))
    }
}

pub type Env = BTreeMap<String, Value>;

pub struct Evaluator<'a> {
    pub env: &'a Env,
    /// Budget for the up-front checks of `limit`.
    pub fuel: usize,
}

impl Evaluator<'_> {
    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        self.eval_at(e, &Path::default())
    }

    pub fn real(&self, e: &Expr) -> Result<OrientedReal, EvalError> {
        self.real_at(e, &Path::default())
    }

    fn real_at(&self, e: &Expr, path: &Path) -> Result<OrientedReal, EvalError> {
        match self.eval_at(e, path)? {
            Value::Real(x) => Ok(x),
            other => Err(EvalError::Type {
                path: path.at(e.head()),
                expected: "an oriented real",
                got: other.kind(),
            }),
        }
    }

    fn eval_at(&self, e: &Expr, path: &Path) -> Result<Value, EvalError> {
        let head = e.head();
        let domain = |source: orc_core::Error| EvalError::Domain {
            path: path.at(head),
            source,
        };
        let real = |i: usize, sub: &Expr| self.real_at(sub, &path.arg(head, i));
        Ok(match e {
            Expr::Rat(r) => Value::Rat(r.clone()),
            Expr::Var(name) => self
                .env
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::Unbound(name.clone()))?,
            Expr::Hat(r) => Value::Real(embed_rational(r)),
            Expr::Bseq { source, bound } => Value::Real(match source {
                SeqSource::List(vs) => cut_from_cycle(vs, bound.clone()).map_err(domain)?,
                SeqSource::Rule(name) => {
                    let name = name.clone();
                    cut_from_bounded_sequence(
                        move |n| rule_term(&name, n).expect("validated rule name"),
                        bound.clone(),
                    )
                }
            }),
            Expr::Sup { values, bound } => Value::Real(sup_of_list(values, bound.clone()).map_err(domain)?),
            Expr::Inf(values) => Value::Real(inf_finite(values).map_err(domain)?),
            Expr::Add(a, b) => Value::Real(add(&real(1, a)?, &real(2, b)?)),
            Expr::MulPos(a, b) => Value::Real(mul_positive(&real(1, a)?, &real(2, b)?).map_err(domain)?),
            Expr::Neg(a) => Value::Real(neg_twosided(&real(1, a)?).map_err(domain)?),
            Expr::Meet(a, b) => Value::Real(cut_intersection(&real(1, a)?, &real(2, b)?)),
            Expr::Shift(a, s) => Value::Real(real(1, a)?.shift(s)),
            Expr::Approx(a, n) => Value::Almost(approximate(&real(1, a)?, *n).map_err(domain)?),
            Expr::Phi(ds, a) => Value::Natural(threshold_phi(ds, &real(2, a)?).map_err(domain)?),
            Expr::Limit(terms, bound) => {
                let xs = terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| self.real_at(t, &path.arg(head, i + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                let last = xs.len() - 1;
                Value::Real(monotone_limit(move |i| xs[i.min(last)].clone(), bound.clone(), self.fuel).map_err(domain)?)
            }
            Expr::Embed(a) => match self.eval_at(a, &path.arg(head, 1))? {
                Value::Almost(z) => Value::Real(ar_embed(&z)),
                other => {
                    return Err(EvalError::Type {
                        path: path.arg(head, 1).at(a.head()),
                        expected: "an almost rational",
                        got: other.kind(),
                    })
                }
            },
        })
    }
}
