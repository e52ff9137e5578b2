//! Expression syntax.
//!
//! ```text
//! expr     := name "(" args ")" | name | rational
//! args     := arg {"," arg}
//! arg      := expr | list
//! list     := "[" [expr {"," expr}] "]"
//! rational := ["-"] digits ["/" digits]
//! ```
//!
//! Parsing first builds an untyped [`Tree`]; a separate validation pass checks
//! arities and argument kinds. Every error carries the byte offset of the
//! offending token or node.

use std::fmt;

use orc_core::Rational;
use thiserror::Error;

use crate::ast::{Expr, SeqSource, RULES};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at offset {offset}: expected {}, found {found}", Expected(expected))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("at offset {offset}: zero denominator")]
    ZeroDenominator { offset: usize },
    #[error("at offset {offset}: {message}")]
    Invalid { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ZeroDenominator { offset }
            | ParseError::Invalid { offset, .. } => *offset,
        }
    }
}

struct Expected<'a>(&'a [&'static str]);

impl fmt::Display for Expected<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [one] => write!(f, "{one}"),
            many => write!(f, "one of {}", many.join(", ")),
        }
    }
}

/// Untyped syntax tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Num {
        value: Rational,
        offset: usize,
    },
    Ident {
        name: String,
        offset: usize,
    },
    Call {
        name: String,
        offset: usize,
        args: Vec<Tree>,
    },
    List {
        items: Vec<Tree>,
        offset: usize,
    },
}

impl Tree {
    pub fn offset(&self) -> usize {
        match self {
            Tree::Num { offset, .. }
            | Tree::Ident { offset, .. }
            | Tree::Call { offset, .. }
            | Tree::List { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Open,
    Close,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(r) => write!(f, "rational {r}"),
            Tok::Ident(s) => write!(f, "name `{s}`"),
            Tok::Open => write!(f, "`(`"),
            Tok::Close => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

const EXPR_START: &[&str] = &["name", "rational"];
const ARG_START: &[&str] = &["name", "rational", "`[`"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn text(&self, from: usize) -> &'a str {
        std::str::from_utf8(&self.src[from..self.pos]).expect("ascii slice")
    }

    /// Next token and its offset, consuming it.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let at = self.pos;
        let Some(&c) = self.src.get(at) else {
            return Ok((Tok::End, at));
        };
        let single = match c {
            b'(' => Some(Tok::Open),
            b')' => Some(Tok::Close),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, at));
        }
        if c == b'-' || c.is_ascii_digit() {
            return self.number(at).map(|r| (Tok::Num(r), at));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.text(at).to_string()), at));
        }
        let found = std::str::from_utf8(&self.src[at..])
            .ok()
            .and_then(|s| s.chars().next())
            .map_or_else(|| "a non-UTF-8 byte".to_string(), |ch| format!("`{ch}`"));
        Err(ParseError::Syntax {
            offset: at,
            expected: ARG_START.to_vec(),
            found,
        })
    }

    fn number(&mut self, at: usize) -> Result<Rational, ParseError> {
        if self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        if self.digits() == 0 {
            return Err(self.digit_error());
        }
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            if self.digits() == 0 {
                return Err(self.digit_error());
            }
        }
        self.text(at)
            .parse()
            .map_err(|_| ParseError::ZeroDenominator { offset: at })
    }

    fn digit_error(&self) -> ParseError {
        let found = match self.src.get(self.pos) {
            Some(&b) if b.is_ascii_graphic() => format!("`{}`", b as char),
            Some(_) => "whitespace".to_string(),
            None => "end of input".to_string(),
        };
        ParseError::Syntax {
            offset: self.pos,
            expected: vec!["digit"],
            found,
        }
    }

    fn peek(&mut self) -> Result<(Tok, usize), ParseError> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }

    fn arg(&mut self, allow_list: bool) -> Result<Tree, ParseError> {
        let expected = if allow_list { ARG_START } else { EXPR_START };
        match self.next()? {
            (Tok::Num(value), offset) => Ok(Tree::Num { value, offset }),
            (Tok::Ident(name), offset) => {
                if self.peek()?.0 != Tok::Open {
                    return Ok(Tree::Ident { name, offset });
                }
                self.next()?;
                let mut args = vec![self.arg(true)?];
                loop {
                    match self.next()? {
                        (Tok::Comma, _) => args.push(self.arg(true)?),
                        (Tok::Close, _) => break,
                        (t, at) => return Err(syntax(at, &["`,`", "`)`"], &t)),
                    }
                }
                Ok(Tree::Call { name, offset, args })
            }
            (Tok::LBracket, offset) if allow_list => {
                let mut items = Vec::new();
                if self.peek()?.0 == Tok::RBracket {
                    self.next()?;
                    return Ok(Tree::List { items, offset });
                }
                items.push(self.arg(false)?);
                loop {
                    match self.next()? {
                        (Tok::Comma, _) => items.push(self.arg(false)?),
                        (Tok::RBracket, _) => break,
                        (t, at) => return Err(syntax(at, &["`,`", "`]`"], &t)),
                    }
                }
                Ok(Tree::List { items, offset })
            }
            (t, at) => Err(syntax(at, expected, &t)),
        }
    }
}

fn syntax(offset: usize, expected: &[&'static str], found: &Tok) -> ParseError {
    ParseError::Syntax {
        offset,
        expected: expected.to_vec(),
        found: found.to_string(),
    }
}

/// Parses one argument (an expression or a list) spanning all of `src`.
pub fn parse_tree(src: &str) -> Result<Tree, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let tree = p.arg(true)?;
    match p.next()? {
        (Tok::End, _) => Ok(tree),
        (t, at) => Err(syntax(at, &["end of input"], &t)),
    }
}

/// Parses and validates an expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    validate(&parse_tree(src)?)
}

fn invalid(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Invalid {
        offset,
        message: message.into(),
    }
}

pub fn expect_rational(t: &Tree) -> Result<Rational, ParseError> {
    match t {
        Tree::Num { value, .. } => Ok(value.clone()),
        other => Err(invalid(other.offset(), "expected a rational literal")),
    }
}

pub fn expect_natural(t: &Tree) -> Result<u64, ParseError> {
    let r = expect_rational(t)?;
    if r.is_negative() || !r.is_integer() {
        return Err(invalid(t.offset(), format!("expected a natural number, got {r}")));
    }
    u64::try_from(r.numer().clone()).map_err(|_| invalid(t.offset(), format!("{r} is too large")))
}

fn rational_list(t: &Tree) -> Result<Vec<Rational>, ParseError> {
    match t {
        Tree::List { items, .. } => items.iter().map(expect_rational).collect(),
        other => Err(invalid(other.offset(), "expected a list of rationals")),
    }
}

fn nonempty(t: &Tree, values: Vec<Rational>) -> Result<Vec<Rational>, ParseError> {
    if values.is_empty() {
        Err(invalid(t.offset(), "list must not be empty"))
    } else {
        Ok(values)
    }
}

/// Largest accepted approximation level.
pub const MAX_LEVEL: u64 = 64;

/// Checks arities and argument kinds, producing a typed expression.
pub fn validate(t: &Tree) -> Result<Expr, ParseError> {
    let (name, offset, args) = match t {
        Tree::Num { value, .. } => return Ok(Expr::Rat(value.clone())),
        Tree::Ident { name, .. } => return Ok(Expr::Var(name.clone())),
        Tree::List { offset, .. } => return Err(invalid(*offset, "a list is not an expression")),
        Tree::Call { name, offset, args } => (name.as_str(), *offset, args.as_slice()),
    };
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            let plural = if n == 1 { "" } else { "s" };
            Err(invalid(
                offset,
                format!("`{name}` takes {n} argument{plural}, got {}", args.len()),
            ))
        }
    };
    let sub = |i: usize| validate(&args[i]).map(Box::new);
    Ok(match name {
        "rat" => {
            arity(1)?;
            Expr::Rat(expect_rational(&args[0])?)
        }
        "hat" => {
            arity(1)?;
            Expr::Hat(expect_rational(&args[0])?)
        }
        "bseq" => {
            arity(2)?;
            let source = match &args[0] {
                Tree::Ident { name, offset } => {
                    if !RULES.contains(&name.as_str()) {
                        return Err(invalid(
                            *offset,
                            format!("unknown rule `{name}`; known: {}", RULES.join(", ")),
                        ));
                    }
                    SeqSource::Rule(name.clone())
                }
                other => SeqSource::List(nonempty(other, rational_list(other)?)?),
            };
            Expr::Bseq {
                source,
                bound: expect_rational(&args[1])?,
            }
        }
        "sup" => {
            arity(2)?;
            Expr::Sup {
                values: nonempty(&args[0], rational_list(&args[0])?)?,
                bound: expect_rational(&args[1])?,
            }
        }
        "inf" => {
            arity(1)?;
            Expr::Inf(nonempty(&args[0], rational_list(&args[0])?)?)
        }
        "add" | "mulpos" | "meet" => {
            arity(2)?;
            let (a, b) = (sub(0)?, sub(1)?);
            match name {
                "add" => Expr::Add(a, b),
                "mulpos" => Expr::MulPos(a, b),
                _ => Expr::Meet(a, b),
            }
        }
        "neg" => {
            arity(1)?;
            Expr::Neg(sub(0)?)
        }
        "embed" => {
            arity(1)?;
            Expr::Embed(sub(0)?)
        }
        "approx" => {
            arity(2)?;
            let n = expect_natural(&args[1])?;
            if n > MAX_LEVEL {
                return Err(invalid(args[1].offset(), format!("level {n} exceeds {MAX_LEVEL}")));
            }
            Expr::Approx(sub(0)?, n as u32)
        }
        "phi" => {
            arity(2)?;
            let ds = rational_list(&args[0])?;
            if let Some(i) = ds.windows(2).position(|w| w[0] >= w[1]) {
                let Tree::List { items, .. } = &args[0] else {
                    unreachable!("checked list")
                };
                return Err(invalid(items[i + 1].offset(), "thresholds must be strictly ascending"));
            }
            Expr::Phi(ds, sub(1)?)
        }
        "limit" => {
            arity(2)?;
            let terms = match &args[0] {
                Tree::List { items, .. } if !items.is_empty() => {
                    items.iter().map(validate).collect::<Result<Vec<_>, _>>()?
                }
                other => return Err(invalid(other.offset(), "expected a nonempty list of expressions")),
            };
            Expr::Limit(terms, expect_rational(&args[1])?)
        }
        "shift" => {
            arity(2)?;
            Expr::Shift(sub(0)?, expect_rational(&args[1])?)
        }
        other => return Err(invalid(offset, format!("unknown function `{other}`"))),
    })
}
