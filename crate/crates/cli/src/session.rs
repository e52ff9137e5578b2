//! Command interpreter shared by the REPL and batch mode.

use std::fmt::Write as _;
use std::path::PathBuf;

use orc_core::corpus::{all_pairs, unit_corpus, Sample};
use orc_core::record::{NaturalRecord, RationalRecord, RealRecord};
use orc_core::{
    check_add, check_mul, d_check, eq_o, le, lt, lt_rational, lt_signature, ocp_modulus, oriented_nbhd_member,
    psi_member, psi_separator, totalc_modulus, verify_modulus, verify_totalc, GridProbe, MapDescriptor, OrientedReal,
    Rational, RelationReport, Trilean, WitnessSource,
};
use thiserror::Error;

use crate::eval::{Env, EvalError, Evaluator, Value};
use crate::parse::{expect_natural, expect_rational, parse, parse_tree, validate, ParseError, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub fuel: usize,
    /// Probe grids use step `2⁻ᵍʳⁱᵈ`.
    pub grid: u32,
    pub corpus: Option<PathBuf>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            fuel: 1024,
            grid: 7,
            corpus: None,
            format: Format::Text,
        }
    }
}

/// Seed and size of the corpus used when no corpus file is given.
pub const BUILTIN_CORPUS: (u64, usize) = (2024, 20);

#[derive(Debug, Error)]
pub enum CliError {
    #[error("in `{text}`: {source}")]
    Parse {
        text: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Domain(#[from] orc_core::Error),
    #[error("usage: {0}")]
    Usage(&'static str),
    #[error("unknown command `{0}`; try `help`")]
    UnknownCommand(String),
    #[error("{0}")]
    Io(String),
}

pub enum Outcome {
    Output(String),
    Silent,
    Quit,
}

pub const HELP: &str = "\
commands:
  let <name> = <expr>           bind a value
  sample <expr> <n>             value at index n (all of 0..=n as a record with --format records)
  cmp <expr> <expr>             lt, le and eq verdicts
  member <p/q> <expr>           membership in the cut and in the real cut
  d <expr> <expr> <p/q>         distance below p/q
  sig <expr> [<expr>,...]       signature against a reference list
  nbhd <expr> <expr> [<expr>,...]  whether the first lies in the neighborhood of the second
  sep <expr> <expr>             grid rational separating the real cuts
  rel add|mul <expr> <expr> <expr>  probe the sum or product relation on the grid
  ocp <map>                     modulus of a level-valued map
  verify <map>                  check the modulus on the corpus
  totalc <map> <n>              check continuity at resolution 2^-n on the corpus
  dump <name> <file>            write a sampled record
  set fuel|grid <n>             change a setting
  help, quit
maps: phi([d,...]), level(k), const(c), shift(s), identity, grid(n, <map>)";

pub struct Session {
    pub config: Config,
    env: Env,
    corpus: Option<Vec<Sample>>,
}

/// Splits at whitespace outside brackets.
fn words(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, None);
    for (i, c) in line.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if let Some(s) = start.take() {
                out.push(&line[s..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&line[s..]);
    }
    out
}

fn parse_err(text: &str) -> impl FnOnce(ParseError) -> CliError + '_ {
    move |source| CliError::Parse {
        text: text.to_string(),
        source,
    }
}

fn parse_descriptor_tree(t: &Tree) -> Result<MapDescriptor, ParseError> {
    let invalid = |offset: usize, message: String| ParseError::Invalid { offset, message };
    match t {
        Tree::Ident { name, .. } if name == "identity" => Ok(MapDescriptor::Identity),
        Tree::Call { name, offset, args } => {
            let one = || {
                if args.len() == 1 {
                    Ok(&args[0])
                } else {
                    Err(invalid(*offset, format!("`{name}` takes 1 argument")))
                }
            };
            match name.as_str() {
                "phi" | "threshold" => match one()? {
                    Tree::List { items, .. } => {
                        let ds = items.iter().map(expect_rational).collect::<Result<Vec<_>, _>>()?;
                        MapDescriptor::threshold(ds).map_err(|e| invalid(*offset, e.to_string()))
                    }
                    other => Err(invalid(other.offset(), "expected a list of thresholds".into())),
                },
                "level" => Ok(MapDescriptor::ConstantLevel(expect_natural(one()?)?)),
                "const" => Ok(MapDescriptor::ConstantReal(expect_rational(one()?)?)),
                "shift" => Ok(MapDescriptor::Shift(expect_rational(one()?)?)),
                "grid" => {
                    if args.len() != 2 {
                        return Err(invalid(*offset, "`grid` takes 2 arguments".into()));
                    }
                    let n = expect_natural(&args[0])?;
                    let n = u32::try_from(n).map_err(|_| invalid(args[0].offset(), format!("{n} is too large")))?;
                    let inner = parse_descriptor_tree(&args[1])?;
                    MapDescriptor::grid(n, inner).map_err(|e| invalid(args[1].offset(), e.to_string()))
                }
                other => Err(invalid(*offset, format!("unknown map `{other}`"))),
            }
        }
        other => Err(invalid(other.offset(), "expected a map".into())),
    }
}

pub fn parse_descriptor(src: &str) -> Result<MapDescriptor, ParseError> {
    parse_descriptor_tree(&parse_tree(src)?)
}

fn natural_word(w: &str) -> Result<u64, CliError> {
    expect_natural(&parse_tree(w).map_err(parse_err(w))?).map_err(parse_err(w))
}

fn rational_word(w: &str) -> Result<Rational, CliError> {
    expect_rational(&parse_tree(w).map_err(parse_err(w))?).map_err(parse_err(w))
}

fn verdict_detail(v: Trilean, fuel: usize) -> String {
    match v {
        Trilean::Unknown { .. } => format!("Unknown (fuel {fuel})"),
        v => v.to_string(),
    }
}

impl Session {
    pub fn new(config: Config) -> Self {
        Session {
            config,
            env: Env::new(),
            corpus: None,
        }
    }

    fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            env: &self.env,
            fuel: self.config.fuel,
        }
    }

    fn value(&self, text: &str) -> Result<Value, CliError> {
        let e = parse(text).map_err(parse_err(text))?;
        Ok(self.evaluator().eval(&e)?)
    }

    fn real(&self, text: &str) -> Result<OrientedReal, CliError> {
        let e = parse(text).map_err(parse_err(text))?;
        Ok(self.evaluator().real(&e)?)
    }

    fn real_list(&self, text: &str) -> Result<Vec<OrientedReal>, CliError> {
        match parse_tree(text).map_err(parse_err(text))? {
            Tree::List { items, .. } => items
                .iter()
                .map(|t| {
                    let e = validate(t).map_err(parse_err(text))?;
                    Ok(self.evaluator().real(&e)?)
                })
                .collect(),
            other => Err(parse_err(text)(ParseError::Invalid {
                offset: other.offset(),
                message: "expected a list".into(),
            })),
        }
    }

    fn corpus(&mut self) -> Result<&[Sample], CliError> {
        if self.corpus.is_none() {
            let samples = match &self.config.corpus {
                None => unit_corpus(BUILTIN_CORPUS.0, BUILTIN_CORPUS.1),
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Io(format!("cannot read corpus {}: {e}", path.display())))?;
                    let mut out = Vec::new();
                    for line in text
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    {
                        out.push(Sample {
                            label: line.to_string(),
                            value: self.real(line)?,
                        });
                    }
                    out
                }
            };
            self.corpus = Some(samples);
        }
        Ok(self.corpus.as_deref().expect("just loaded"))
    }

    /// Runs one line. Blank lines and `#` comments are silent.
    pub fn execute(&mut self, line: &str) -> Result<Outcome, CliError> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Outcome::Silent);
        }
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let args = words(rest);
        let fuel = self.config.fuel;
        let out = match (cmd, args.as_slice()) {
            ("help", _) => HELP.to_string(),
            ("quit" | "exit", _) => return Ok(Outcome::Quit),
            ("let", _) => {
                let (name, expr) = rest.split_once('=').ok_or(CliError::Usage("let <name> = <expr>"))?;
                let name = name.trim();
                let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !valid {
                    return Err(CliError::Usage("let <name> = <expr>"));
                }
                let expr = expr.trim();
                let e = parse(expr).map_err(parse_err(expr))?;
                let v = self.evaluator().eval(&e)?;
                let kind = v.kind();
                self.env.insert(name.to_string(), v);
                format!("{name} = {e} : {kind}")
            }
            ("sample", [e, n]) => {
                let n = natural_word(n)? as usize;
                let v = self.value(e)?;
                match (self.config.format, v) {
                    (Format::Text, Value::Rat(r)) => r.to_string(),
                    (Format::Text, Value::Real(x)) => x.sample(n)?.to_string(),
                    (Format::Text, Value::Natural(x)) => x.sample(n)?.to_string(),
                    (Format::Text, Value::Almost(z)) => z.sample(n)?.to_string(),
                    (Format::Records, v) => record(&v, n + 1)?.trim_end().to_string(),
                }
            }
            ("cmp", [a, b]) => {
                let (a, b) = (self.real(a)?, self.real(b)?);
                format!(
                    "lt: {}  le: {}  eq: {}",
                    lt(&a, &b, fuel),
                    le(&a, &b, fuel),
                    eq_o(&a, &b, fuel)
                )
            }
            ("member", [r, e]) => {
                let r = rational_word(r)?;
                let x = self.real(e)?;
                format!("cut: {}  real: {}", lt_rational(&r, &x, fuel), psi_member(&r, &x, fuel))
            }
            ("d", [a, b, q]) => {
                let (a, b, q) = (self.real(a)?, self.real(b)?, rational_word(q)?);
                let c = d_check(&a, &b, &q, fuel)?;
                match (c.witness, c.separator) {
                    (Some(w), _) => {
                        let source = match w.source {
                            WitnessSource::SharedOrigin { k } => format!("same value, k={k}"),
                            WitnessSource::Approximation { k } => format!("approximations, k={k}"),
                            WitnessSource::Constant => "constant".to_string(),
                            WitnessSource::Composed => "composed".to_string(),
                        };
                        format!("Confirmed (witness p={} from {source})", w.p)
                    }
                    (None, Some(r)) => format!("Refuted (separator r={r})"),
                    (None, None) => verdict_detail(c.verdict, fuel),
                }
            }
            ("sig", [e, list]) => {
                let (x, refs) = (self.real(e)?, self.real_list(list)?);
                lt_signature(&x, &refs, fuel).to_string()
            }
            ("nbhd", [b, a, list]) => {
                let (b, a, refs) = (self.real(b)?, self.real(a)?, self.real_list(list)?);
                verdict_detail(oriented_nbhd_member(&b, &a, &refs, fuel), fuel)
            }
            ("sep", [a, b]) => {
                let (a, b) = (self.real(a)?, self.real(b)?);
                let step = Rational::pow2_neg(self.config.grid);
                match psi_separator(&a, &b, &step, fuel) {
                    Some(q) => format!("q={q}"),
                    None => format!("none at step {step} (lt: {})", lt(&a, &b, fuel)),
                }
            }
            ("rel", [op @ ("add" | "mul"), a, b, c]) => {
                let (a, b, c) = (self.real(a)?, self.real(b)?, self.real(c)?);
                let probe = self.probe(&[&a, &b, &c], *op == "mul")?;
                let report = if *op == "add" {
                    check_add(&a, &b, &c, &probe, fuel)
                } else {
                    check_mul(&a, &b, &c, &probe, fuel)
                };
                relation_line(&report)
            }
            ("ocp", [m]) => {
                let phi = parse_descriptor(m).map_err(parse_err(m))?;
                let points = orc_core::continuity::modulus_points(&phi)?;
                let hats: Vec<String> = points.iter().map(|p| format!("hat({p})")).collect();
                format!("E = [{}]", hats.join(","))
            }
            ("verify", [m]) => {
                let phi = parse_descriptor(m).map_err(parse_err(m))?;
                let reference = ocp_modulus(&phi)?;
                let pairs = all_pairs(self.corpus()?);
                verify_modulus(&phi, &reference, &pairs, fuel)?.to_string()
            }
            ("totalc", [m, n]) => {
                let f = parse_descriptor(m).map_err(parse_err(m))?;
                let n = u32::try_from(natural_word(n)?).map_err(|_| CliError::Usage("totalc <map> <n>"))?;
                let reference = totalc_modulus(&f, n)?;
                let pairs = all_pairs(self.corpus()?);
                verify_totalc(&f, n, &reference, &pairs, fuel)?.to_string()
            }
            ("dump", [name, file]) => {
                let v = self
                    .env
                    .get(*name)
                    .ok_or_else(|| EvalError::Unbound(name.to_string()))?;
                let text = record(v, fuel + 1)?;
                std::fs::write(file, text).map_err(|e| CliError::Io(format!("cannot write {file}: {e}")))?;
                format!("wrote {} samples of {name} to {file}", fuel + 1)
            }
            ("set", ["fuel", n]) => {
                self.config.fuel = natural_word(n)? as usize;
                format!("fuel = {}", self.config.fuel)
            }
            ("set", ["grid", k]) => {
                self.config.grid = u32::try_from(natural_word(k)?).map_err(|_| CliError::Usage("set grid <k>"))?;
                format!("grid = {}", self.config.grid)
            }
            (
                "sample" | "cmp" | "member" | "d" | "sig" | "nbhd" | "sep" | "rel" | "ocp" | "verify" | "totalc"
                | "dump" | "set",
                _,
            ) => return Err(CliError::Usage(usage(cmd))),
            (other, _) => return Err(CliError::UnknownCommand(other.to_string())),
        };
        Ok(Outcome::Output(out))
    }

    /// Grid at step `2⁻ᵍʳⁱᵈ` covering the operands' ranges with one unit
    /// of margin; for products, also their product range.
    fn probe(&self, xs: &[&OrientedReal], product: bool) -> Result<GridProbe, CliError> {
        let fuel = self.config.fuel;
        let mut lo = xs.iter().map(|x| x.at(0)).min().expect("operands");
        let mut hi = xs.iter().map(|x| x.upper_evidence(fuel)).max().expect("operands");
        if product {
            let m = lo.abs().max(hi.abs());
            let sq = &m * &m;
            lo = lo.min(-&sq);
            hi = hi.max(sq);
        }
        let lo = Rational::integer(lo.floor_int() - 1);
        let hi = Rational::integer(hi.ceil_int() + 1);
        Ok(GridProbe::new(lo, hi, Rational::pow2_neg(self.config.grid))?)
    }
}

fn usage(cmd: &str) -> &'static str {
    match cmd {
        "sample" => "sample <expr> <n>",
        "cmp" => "cmp <expr> <expr>",
        "member" => "member <p/q> <expr>",
        "d" => "d <expr> <expr> <p/q>",
        "sig" => "sig <expr> [<expr>,...]",
        "nbhd" => "nbhd <expr> <expr> [<expr>,...]",
        "sep" => "sep <expr> <expr>",
        "rel" => "rel add|mul <expr> <expr> <expr>",
        "ocp" => "ocp <map>",
        "verify" => "verify <map>",
        "totalc" => "totalc <map> <n>",
        "dump" => "dump <name> <file>",
        "set" => "set fuel|grid <n>",
        _ => "help",
    }
}

fn relation_line(report: &RelationReport) -> String {
    let mut s = String::new();
    match report.cells.iter().find(|c| c.separates()) {
        Some(c) => write!(s, "Refuted (q={} combined={} claimed={})", c.q, c.combined, c.target),
        None => write!(s, "Unknown (no separating cell among {})", report.cells.len()),
    }
    .expect("write to string");
    s
}

fn record(v: &Value, len: usize) -> Result<String, CliError> {
    Ok(match v {
        Value::Real(x) => RealRecord::capture(x, len)?.to_string(),
        Value::Natural(x) => NaturalRecord::capture(x, len)?.to_string(),
        Value::Almost(z) => RationalRecord::capture(z, len)?.to_string(),
        Value::Rat(r) => {
            return Err(orc_core::Error::Unsupported(format!("no record form for the rational {r}")).into())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &mut Session, line: &str) -> String {
        match s.execute(line) {
            Ok(Outcome::Output(o)) => o,
            Ok(_) => String::new(),
            Err(e) => format!("error: {e}"),
        }
    }

    #[test]
    fn word_splitting_respects_brackets() {
        assert_eq!(
            words("hat(1/2)  [hat(1), hat(2)] 1/4"),
            vec!["hat(1/2)", "[hat(1), hat(2)]", "1/4"]
        );
    }

    #[test]
    fn command_examples() {
        let mut s = Session::new(Config::default());
        assert_eq!(
            run(&mut s, "cmp hat(0/1) hat(1/1)"),
            "lt: Confirmed  le: Confirmed  eq: Refuted"
        );
        assert_eq!(run(&mut s, "sig hat(3/8) [hat(1/4),hat(1/2)]"), "CR");
        assert!(run(&mut s, "d hat(0/1) hat(1/8) 1/4").starts_with("Confirmed (witness p="));
        assert_eq!(
            run(&mut s, "ocp phi([1/4,1/2,3/4])"),
            "E = [hat(1/4),hat(1/2),hat(3/4)]"
        );
    }

    #[test]
    fn bindings_and_samples() {
        let mut s = Session::new(Config::default());
        assert_eq!(
            run(&mut s, "let x = add(hat(1), hat(1))"),
            "x = add(hat(1/1),hat(1/1)) : oriented real"
        );
        assert_eq!(run(&mut s, "sample x 3"), "3/2");
        assert_eq!(run(&mut s, "sample phi([1/4,1/2], hat(1)) 3"), "2");
        assert_eq!(run(&mut s, "sample y 3"), "error: unbound name `y`");
        assert_eq!(run(&mut s, "frob"), "error: unknown command `frob`; try `help`");
        assert_eq!(run(&mut s, "cmp hat(1)"), "error: usage: cmp <expr> <expr>");
        assert_eq!(
            run(&mut s, "sample hat(1/0) 1"),
            "error: in `hat(1/0)`: at offset 4: zero denominator"
        );
    }

    #[test]
    fn records_format() {
        let mut s = Session::new(Config {
            format: Format::Records,
            ..Config::default()
        });
        assert_eq!(
            run(&mut s, "sample hat(1) 2"),
            "oriented-real v1 bound=1/1\n0 0/1\n1 1/2\n2 2/3"
        );
    }

    #[test]
    fn relation_probe() {
        let mut s = Session::new(Config {
            fuel: 32,
            grid: 2,
            ..Config::default()
        });
        assert!(run(&mut s, "rel add hat(1) hat(1) hat(3)").starts_with("Refuted"));
        assert!(run(&mut s, "rel add hat(1) hat(1) hat(2)").starts_with("Unknown"));
    }
}
