//! A small expression language over elements of `G(F)`.
//!
//! Lattice-group mode:
//!
//! ```text
//! expr := term (('+' | 'v' | '^') term)*     precedence ^ > v > +, left-assoc
//! term := INT '*' atom | '-' atom | atom
//! atom := NAME | INT | '(' expr ')'
//! ```
//!
//! Semiring mode reads the same elements as a parasemifield: `+` is the
//! join, `*` is the group addition, `inv(..)` is negation and `1` is the
//! group zero.
//!
//! ```text
//! sum  := prod ('+' prod)*
//! prod := unit ('*' unit)*
//! unit := NAME | '1' | '(' sum ')' | 'inv' '(' sum ')'
//! ```
//!
//! Both modes produce the same [`Expr`] tree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::RootedForest;
use crate::tlex::{ForestRef, TlexElement, TlexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lgroup,
    Semiring,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lgroup => "lgroup",
            Mode::Semiring => "semiring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("operator {op:?} at {pos} is not available in {mode} mode")]
    UnknownOperatorInMode { op: String, pos: usize, mode: Mode },
    #[error("unbound name {0}")]
    UnboundName(String),
    #[error("elements live over different forests")]
    ForestMismatch,
    #[error("the only integer constant is 0, got {0}")]
    NonZeroConstant(BigInt),
    #[error(transparent)]
    Tlex(TlexError),
}

impl From<TlexError> for ExprError {
    fn from(e: TlexError) -> Self {
        match e {
            TlexError::ForestMismatch => ExprError::ForestMismatch,
            other => ExprError::Tlex(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Int(BigInt),
    Add(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Scale(BigInt, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Inv,
    Sym(char),
    End,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Int(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((
                match word.as_str() {
                    "v" => Tok::Sym('v'),
                    "inv" => Tok::Inv,
                    _ => Tok::Name(word),
                },
                pos,
            ));
        } else if "+^*-()".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn wrong_mode<T>(&self, op: &str) -> Result<T, ExprError> {
        Err(ExprError::UnknownOperatorInMode { op: op.to_string(), pos: self.pos(), mode: self.mode })
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {c:?}"))
        }
    }

    /// Precedence climbing over `+` (1), `v` (2), `^` (3).
    fn lg_expr(&mut self, min: u8) -> Result<Expr, ExprError> {
        let mut lhs = self.lg_term()?;
        loop {
            let (prec, op) = match self.peek() {
                Tok::Sym('+') => (1, '+'),
                Tok::Sym('v') => (2, 'v'),
                Tok::Sym('^') => (3, '^'),
                _ => break,
            };
            if prec < min {
                break;
            }
            self.bump();
            let rhs = self.lg_expr(prec + 1)?;
            lhs = match op {
                '+' => Expr::Add(Box::new(lhs), Box::new(rhs)),
                'v' => Expr::Join(Box::new(lhs), Box::new(rhs)),
                _ => Expr::Meet(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn lg_term(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Sym('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.lg_atom()?)))
            }
            Tok::Int(n) if self.toks[self.at + 1].0 == Tok::Sym('*') => {
                self.bump();
                self.bump();
                Ok(Expr::Scale(n, Box::new(self.lg_atom()?)))
            }
            _ => self.lg_atom(),
        }
    }

    fn lg_atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(Expr::Name(n))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.lg_expr(1)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Inv => self.wrong_mode("inv"),
            Tok::Sym('*') => self.wrong_mode("*"),
            Tok::End => self.syntax("unexpected end of input"),
            t => self.syntax(format!("unexpected {t:?}")),
        }
    }

    fn sr_sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.sr_prod()?;
        while *self.peek() == Tok::Sym('+') {
            self.bump();
            lhs = Expr::Join(Box::new(lhs), Box::new(self.sr_prod()?));
        }
        Ok(lhs)
    }

    fn sr_prod(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.sr_unit()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            lhs = Expr::Add(Box::new(lhs), Box::new(self.sr_unit()?));
        }
        Ok(lhs)
    }

    fn sr_unit(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(Expr::Name(n))
            }
            Tok::Int(n) if n == BigInt::from(1) => {
                self.bump();
                Ok(Expr::Int(BigInt::zero()))
            }
            Tok::Int(n) => self.syntax(format!("the only constant is 1, got {n}")),
            Tok::Inv => {
                self.bump();
                self.expect('(')?;
                let e = self.sr_sum()?;
                self.expect(')')?;
                Ok(Expr::Neg(Box::new(e)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.sr_sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c @ ('v' | '^' | '-')) => self.wrong_mode(&c.to_string()),
            Tok::End => self.syntax("unexpected end of input"),
            t => self.syntax(format!("unexpected {t:?}")),
        }
    }
}

pub fn parse(src: &str, mode: Mode) -> Result<Expr, ExprError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, mode };
    let e = match mode {
        Mode::Lgroup => p.lg_expr(1)?,
        Mode::Semiring => p.sr_sum()?,
    };
    if *p.peek() != Tok::End {
        let tok = p.peek().clone();
        return match (mode, tok) {
            (Mode::Lgroup, Tok::Sym('*')) => p.wrong_mode("*"),
            (Mode::Semiring, Tok::Sym(c @ ('v' | '^' | '-'))) => p.wrong_mode(&c.to_string()),
            (_, t) => p.syntax(format!("unexpected {t:?}")),
        };
    }
    Ok(e)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) => 1,
            Expr::Join(..) => 2,
            Expr::Meet(..) => 3,
            Expr::Neg(_) | Expr::Scale(..) => 4,
            Expr::Name(_) | Expr::Int(_) => 5,
        }
    }

    fn write(&self, out: &mut String) {
        let atom = |e: &Expr, out: &mut String| {
            if e.prec() == 5 {
                e.write(out);
            } else {
                out.push('(');
                e.write(out);
                out.push(')');
            }
        };
        let bin = |l: &Expr, op: &str, r: &Expr, p: u8, out: &mut String| {
            if l.prec() >= p {
                l.write(out);
            } else {
                out.push('(');
                l.write(out);
                out.push(')');
            }
            out.push_str(op);
            if r.prec() > p {
                r.write(out);
            } else {
                out.push('(');
                r.write(out);
                out.push(')');
            }
        };
        match self {
            Expr::Name(n) => out.push_str(n),
            Expr::Int(n) if n.sign() == num_bigint::Sign::Minus => {
                out.push('-');
                out.push_str(&(-n).to_string());
            }
            Expr::Int(n) => out.push_str(&n.to_string()),
            Expr::Add(l, r) => bin(l, " + ", r, 1, out),
            Expr::Join(l, r) => bin(l, " v ", r, 2, out),
            Expr::Meet(l, r) => bin(l, " ^ ", r, 3, out),
            Expr::Neg(e) => {
                out.push('-');
                atom(e, out);
            }
            Expr::Scale(n, e) => {
                out.push_str(&n.to_string());
                out.push('*');
                atom(e, out);
            }
        }
    }

    /// Every name occurring in the expression.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                Expr::Name(n) => out.push(n.as_str()),
                Expr::Int(_) => {}
                Expr::Add(l, r) | Expr::Join(l, r) | Expr::Meet(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                Expr::Neg(x) | Expr::Scale(_, x) => stack.push(x),
            }
        }
        out
    }
}

/// Canonical lattice-group syntax with the fewest parentheses that parse
/// back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

/// Evaluates over `forest`; every element of `env` must live there too.
pub fn evaluate(e: &Expr, forest: &Arc<RootedForest>, env: &BTreeMap<String, TlexElement>) -> Result<TlexElement, ExprError> {
    Ok(match e {
        Expr::Name(n) => {
            let x = env.get(n).ok_or_else(|| ExprError::UnboundName(n.clone()))?;
            if !crate::tlex::same_forest(x.forest(), forest) {
                return Err(ExprError::ForestMismatch);
            }
            x.clone()
        }
        Expr::Int(n) if n.is_zero() => TlexElement::zero(forest),
        Expr::Int(n) => return Err(ExprError::NonZeroConstant(n.clone())),
        Expr::Add(l, r) => evaluate(l, forest, env)?.add(&evaluate(r, forest, env)?)?,
        Expr::Join(l, r) => evaluate(l, forest, env)?.join(&evaluate(r, forest, env)?)?,
        Expr::Meet(l, r) => evaluate(l, forest, env)?.meet(&evaluate(r, forest, env)?)?,
        Expr::Neg(x) => evaluate(x, forest, env)?.neg(),
        Expr::Scale(n, x) => evaluate(x, forest, env)?.scale(n),
    })
}

/// Coordinates of one environment element: a map keyed by vertex name, or a
/// list in vertex order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordsJson {
    Map(BTreeMap<String, String>),
    Ints(Vec<i64>),
    Strings(Vec<String>),
}

/// `{"forest": <forest JSON or name>, "elements": {name: coords}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvJson {
    pub forest: ForestRef,
    #[serde(default)]
    pub elements: BTreeMap<String, CoordsJson>,
}

impl EnvJson {
    pub fn load(&self) -> Result<(Arc<RootedForest>, BTreeMap<String, TlexElement>), ExprError> {
        let forest = Arc::new(self.forest.resolve()?);
        let mut env = BTreeMap::new();
        for (name, c) in &self.elements {
            let x = match c {
                CoordsJson::Map(m) => TlexElement::from_coord_map(&forest, m)?,
                CoordsJson::Ints(v) => TlexElement::from_i64s(&forest, v)?,
                CoordsJson::Strings(v) => {
                    let coords = v
                        .iter()
                        .map(|s| s.trim().parse::<BigInt>().map_err(|_| TlexError::BadInteger(s.clone())))
                        .collect::<Result<Vec<_>, _>>()?;
                    TlexElement::new(forest.clone(), coords)?
                }
            };
            env.insert(name.clone(), x);
        }
        Ok((forest, env))
    }
}

/// Random lattice-group expression over `names` with at most `depth` nested
/// operators.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, names: &[&str], depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if names.is_empty() || rng.gen_bool(0.1) {
            Expr::Int(BigInt::zero())
        } else {
            Expr::Name(names[rng.gen_range(0..names.len())].to_string())
        };
    }
    let op = rng.gen_range(0..5);
    let mut sub = || Box::new(random_expr(rng, names, depth - 1));
    match op {
        0 => Expr::Add(sub(), sub()),
        1 => Expr::Join(sub(), sub()),
        2 => Expr::Meet(sub(), sub()),
        3 => Expr::Neg(sub()),
        _ => {
            let s = sub();
            Expr::Scale(BigInt::from(rng.gen_range(0..5)), s)
        }
    }
}

/// Random semiring-mode source text over `names`, with nesting depth at
/// most `depth`.
pub fn random_semiring_src<R: Rng + ?Sized>(rng: &mut R, names: &[&str], depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return if names.is_empty() || rng.gen_bool(0.1) { "1".to_string() } else { names[rng.gen_range(0..names.len())].to_string() };
    }
    let l = random_semiring_src(rng, names, depth - 1);
    let r = random_semiring_src(rng, names, depth - 1);
    match rng.gen_range(0..3) {
        0 => format!("({l} + {r})"),
        1 => format!("({l} * {r})"),
        _ => format!("inv({l})"),
    }
}

/// Rewrites a semiring-mode source string into lattice-group syntax,
/// token by token: `+` to `v`, `*` to `+`, `inv` to `-` and `1` to `0`.
/// The two modes rank `+` and `*` differently, so binary operations in
/// `src` must be parenthesized for the result to mean the same thing.
pub fn semiring_to_lgroup_src(src: &str) -> Result<String, ExprError> {
    let toks = tokenize(src)?;
    let mut out = String::new();
    for (t, _) in &toks {
        match t {
            Tok::Sym('+') => out.push_str(" v "),
            Tok::Sym('*') => out.push_str(" + "),
            Tok::Sym(c) => out.push(*c),
            Tok::Inv => out.push('-'),
            Tok::Int(n) if *n == BigInt::from(1) => out.push('0'),
            Tok::Int(n) => out.push_str(&n.to_string()),
            Tok::Name(n) => out.push_str(n),
            Tok::End => {}
        }
    }
    Ok(out)
}
