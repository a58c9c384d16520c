//! Line-oriented input language for polynomial systems.
//!
//! ```text
//! vars: x y          # optional; inferred from the polynomials otherwise
//! field: 4           # coefficients in Q(zeta_4); default 1
//! poly: x^2*y - z*x + 3/2
//! poly: x^(1,-2) + 1 # tuple exponent: a full monomial
//! ```
//!
//! `z` is `zeta_N` and `zM` is `zeta_M` for `M | N`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::arith::CyclotomicNumber;
use crate::poly::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("zeta_{requested} is not in Q(zeta_{field})")]
    LevelMismatch { requested: u64, field: u64 },
    #[error("{0}")]
    Syntax(String),
    #[error("no `poly:` line in input")]
    MissingPolynomial,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A parsed polynomial system.
#[derive(Clone, Debug)]
pub struct SystemDocument {
    pub variables: Vec<String>,
    pub level: u64,
    pub polys: Vec<LaurentPolynomial>,
}

impl SystemDocument {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
enum Exponent {
    Int(i64),
    Tuple(Vec<i64>),
}

#[derive(Clone, Debug)]
enum Expr {
    Const(BigRational),
    Name(String, Pos),
    Monomial(Vec<i64>, Pos),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, Pos),
}

fn tokenize(text: &str, pos: Pos) -> Result<Vec<(Token, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let here = Pos {
            line: pos.line,
            column: pos.column + i,
        };
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Token::Int(s.parse().expect("digits")), here));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), here));
        } else if "+-*/^(),".contains(c) {
            out.push((Token::Sym(c), here));
            i += 1;
        } else {
            return Err(here.err(ParseErrorKind::Syntax(format!(
                "unexpected character `{c}`"
            ))));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.tokens
            .get(self.at)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self
                .pos()
                .err(ParseErrorKind::Syntax(format!("expected `{c}`"))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Token::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some(&Token::Sym('^')) {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        match self.exponent()? {
            Exponent::Int(k) => Ok(Expr::Pow(Box::new(base), k, pos)),
            Exponent::Tuple(t) => match base {
                Expr::Name(_, p) => Ok(Expr::Monomial(t, p)),
                _ => Err(pos.err(ParseErrorKind::BadExponent(
                    "tuple exponents apply to a bare name".into(),
                ))),
            },
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.at += 1;
                let v: i64 = v.try_into().map_err(|_| {
                    pos.err(ParseErrorKind::BadExponent("exponent too large".into()))
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(pos.err(ParseErrorKind::BadExponent("expected an integer".into()))),
        }
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        if !self.eat('(') {
            return Ok(Exponent::Int(self.int()?));
        }
        let mut items = vec![self.int()?];
        while self.eat(',') {
            items.push(self.int()?);
        }
        self.expect(')')?;
        Ok(if items.len() == 1 {
            Exponent::Int(items[0])
        } else {
            Exponent::Tuple(items)
        })
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.at += 1;
                Ok(Expr::Const(BigRational::from_integer(v)))
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Name(name, pos))
            }
            Some(Token::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Sym(c)) => {
                Err(pos.err(ParseErrorKind::Syntax(format!("unexpected `{c}`"))))
            }
            None => Err(pos.err(ParseErrorKind::Syntax(
                "unexpected end of expression".into(),
            ))),
        }
    }
}

/// `Some(M)` if the name denotes a root of unity (`z` or `zM`).
fn zeta_name(name: &str, field: u64) -> Option<u64> {
    if name == "z" {
        return Some(field);
    }
    let digits = name.strip_prefix('z')?;
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        digits.parse().ok()
    } else {
        None
    }
}

fn collect_names(e: &Expr, names: &mut BTreeSet<String>, tuples: &mut Vec<(usize, Pos)>) {
    match e {
        Expr::Const(_) => {}
        Expr::Name(n, _) => {
            names.insert(n.clone());
        }
        Expr::Monomial(t, p) => tuples.push((t.len(), *p)),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            collect_names(a, names, tuples);
            collect_names(b, names, tuples);
        }
        Expr::Neg(a) | Expr::Pow(a, _, _) => collect_names(a, names, tuples),
    }
}

struct Evaluator<'a> {
    vars: &'a [String],
    field: u64,
}

impl Evaluator<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn eval(&self, e: &Expr) -> Result<LaurentPolynomial, ParseError> {
        let n = self.n();
        Ok(match e {
            Expr::Const(c) => {
                LaurentPolynomial::constant(n, CyclotomicNumber::from_rational(c.clone()))
            }
            Expr::Name(name, pos) => {
                if let Some(i) = self.vars.iter().position(|v| v == name) {
                    LaurentPolynomial::var(n, i)
                } else if let Some(m) = zeta_name(name, self.field) {
                    if m == 0 || !self.field.is_multiple_of(m) {
                        return Err(pos.err(ParseErrorKind::LevelMismatch {
                            requested: m,
                            field: self.field,
                        }));
                    }
                    LaurentPolynomial::constant(n, CyclotomicNumber::zeta(m))
                } else {
                    return Err(pos.err(ParseErrorKind::UnknownVariable(name.clone())));
                }
            }
            Expr::Monomial(t, pos) => {
                if t.len() != n {
                    return Err(pos.err(ParseErrorKind::BadExponent(format!(
                        "tuple has {} entries for {n} variables",
                        t.len()
                    ))));
                }
                LaurentPolynomial::monomial(n, t.clone(), CyclotomicNumber::one())
            }
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Div(a, b, pos) => {
                let d = self.eval(b)?;
                let c = match d.terms().iter().next() {
                    Some((e, c)) if d.num_terms() == 1 && e.iter().all(|x| *x == 0) => c.clone(),
                    _ if d.is_zero() => {
                        return Err(pos.err(ParseErrorKind::Syntax("division by zero".into())));
                    }
                    _ => {
                        return Err(pos.err(ParseErrorKind::Syntax(
                            "only division by constants is supported".into(),
                        )));
                    }
                };
                let inv = c
                    .inv()
                    .map_err(|_| pos.err(ParseErrorKind::Syntax("division by zero".into())))?;
                self.eval(a)?.scale(&inv)
            }
            Expr::Pow(a, k, pos) => {
                let base = self.eval(a)?;
                if *k >= 0 {
                    let k = u32::try_from(*k).map_err(|_| {
                        pos.err(ParseErrorKind::BadExponent("exponent too large".into()))
                    })?;
                    base.pow(k)
                } else if base.is_monomial() {
                    let (e, c) = base.terms().iter().next().expect("monomial");
                    let c = c.pow(*k).map_err(|_| {
                        pos.err(ParseErrorKind::BadExponent(
                            "zero to a negative power".into(),
                        ))
                    })?;
                    LaurentPolynomial::monomial(n, e.iter().map(|x| x * k).collect(), c)
                } else {
                    return Err(pos.err(ParseErrorKind::BadExponent(
                        "negative powers apply to monomials only".into(),
                    )));
                }
            }
        })
    }
}

fn directive<'a>(line: &'a str, key: &str) -> Option<(&'a str, usize)> {
    let t = line.trim_start();
    let rest = t.strip_prefix(key)?.strip_prefix(':')?;
    Some((rest, line.len() - rest.len()))
}

/// Parses the input language into a system.
pub fn parse_system(text: &str) -> Result<SystemDocument, ParseError> {
    let mut declared: Option<(Vec<String>, Pos)> = None;
    let mut field = 1u64;
    let mut exprs: Vec<(Expr, Pos)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let start = |offset: usize| Pos {
            line: line_no,
            column: offset + 1,
        };
        if let Some((rest, off)) = directive(line, "vars") {
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = names.iter().find(|v| !is_identifier(v)) {
                return Err(
                    start(off).err(ParseErrorKind::Syntax(format!("bad variable name `{bad}`")))
                );
            }
            declared = Some((names, start(off)));
        } else if let Some((rest, off)) = directive(line, "field") {
            field = rest
                .trim()
                .parse()
                .ok()
                .filter(|n| *n >= 1)
                .ok_or_else(|| {
                    start(off).err(ParseErrorKind::Syntax(
                        "field level must be a positive integer".into(),
                    ))
                })?;
        } else if let Some((rest, off)) = directive(line, "poly") {
            let pos = start(off);
            let tokens = tokenize(rest, pos)?;
            let end = Pos {
                line: line_no,
                column: raw.chars().count() + 1,
            };
            let mut p = Parser { tokens, at: 0, end };
            let e = p.expr()?;
            if p.at < p.tokens.len() {
                return Err(p
                    .pos()
                    .err(ParseErrorKind::Syntax("unexpected trailing input".into())));
            }
            exprs.push((e, pos));
        } else {
            return Err(start(0).err(ParseErrorKind::Syntax(
                "expected a `vars:`, `field:` or `poly:` line".into(),
            )));
        }
    }
    if exprs.is_empty() {
        return Err(ParseError {
            line: text.lines().count().max(1),
            column: 1,
            kind: ParseErrorKind::MissingPolynomial,
        });
    }
    let variables = match declared {
        Some((v, _)) => v,
        None => infer_variables(&exprs, field)?,
    };
    let ev = Evaluator {
        vars: &variables,
        field,
    };
    let polys = exprs
        .iter()
        .map(|(e, _)| ev.eval(e).map(|p| p.minimize_levels()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SystemDocument {
        variables,
        level: field,
        polys,
    })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Alphabetical variable names, or `x1..xn` when tuple exponents fix `n`.
fn infer_variables(exprs: &[(Expr, Pos)], field: u64) -> Result<Vec<String>, ParseError> {
    let mut names = BTreeSet::new();
    let mut tuples = Vec::new();
    for (e, _) in exprs {
        collect_names(e, &mut names, &mut tuples);
    }
    let plain: Vec<String> = names
        .into_iter()
        .filter(|n| zeta_name(n, field).is_none())
        .collect();
    let Some(&(n, _)) = tuples.first() else {
        return Ok(plain);
    };
    if let Some(&(_, p)) = tuples.iter().find(|(k, _)| *k != n) {
        return Err(p.err(ParseErrorKind::BadExponent(
            "tuple exponents of different lengths".into(),
        )));
    }
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    if let Some(bad) = plain.iter().find(|v| !vars.contains(v)) {
        let p = tuples[0].1;
        return Err(p.err(ParseErrorKind::UnknownVariable(bad.clone())));
    }
    Ok(vars)
}

impl fmt::Display for SystemDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // polynomials print with positional names
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        writeln!(f, "vars: {}", names.join(" "))?;
        writeln!(f, "field: {}", self.level)?;
        for p in &self.polys {
            writeln!(f, "poly: {p}")?;
        }
        Ok(())
    }
}
