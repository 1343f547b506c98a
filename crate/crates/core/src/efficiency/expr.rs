//! Expression trees with their evaluation history.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{pow::Pow, Zero};

use crate::arith::{info_ratio, BigNat};
use crate::error::{Error, Result};

use super::{delta_node, BinaryOp};

pub type Env = BTreeMap<String, BigNat>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(BigNat),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Succ(Box<Expr>),
}

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn constant(v: u64) -> Expr {
        Expr::Const(BigNat::from(v))
    }

    pub fn plus(l: Expr, r: Expr) -> Expr {
        Expr::Add(Box::new(l), Box::new(r))
    }

    pub fn times(l: Expr, r: Expr) -> Expr {
        Expr::Mul(Box::new(l), Box::new(r))
    }

    pub fn pow(base: Expr, exp: u32) -> Expr {
        Expr::Pow(Box::new(base), exp)
    }

    pub fn succ(e: Expr) -> Expr {
        Expr::Succ(Box::new(e))
    }

    pub fn eval(&self, env: &Env) -> Result<BigNat> {
        Ok(match self {
            Expr::Const(v) => v.clone(),
            Expr::Var(name) => env.get(name).cloned().ok_or_else(|| Error::UnboundVariable(name.clone()))?,
            Expr::Add(l, r) => l.eval(env)? + r.eval(env)?,
            Expr::Mul(l, r) => l.eval(env)? * r.eval(env)?,
            Expr::Pow(b, e) => Pow::pow(b.eval(env)?, *e),
            Expr::Succ(c) => c.eval(env)? + 1u32,
        })
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Expr> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Expr>) {
        match self {
            Expr::Const(_) | Expr::Var(_) => out.push(self),
            Expr::Add(l, r) | Expr::Mul(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
            Expr::Pow(c, _) | Expr::Succ(c) => c.collect_leaves(out),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Var(n) => f.write_str(n),
            Expr::Add(l, r) => write!(f, "({l}+{r})"),
            Expr::Mul(l, r) => write!(f, "({l}*{r})"),
            Expr::Pow(b, e) => write!(f, "{b}^{e}"),
            Expr::Succ(c) => write!(f, "S({c})"),
        }
    }
}

/// Grouping-sensitive efficiency of an evaluated expression.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub value: BigNat,
    /// Contribution of the root operation alone.
    pub node_delta: f64,
    /// Sum over every internal node.
    pub history_delta: f64,
    /// Internal nodes in evaluation (post) order.
    pub per_node: Vec<(String, f64)>,
}

/// Evaluates bottom-up, charging every internal node its own δ.
///
/// A binary node whose children are structurally identical subtrees is
/// charged as a same-operand node. Successor costs `I(v+1) - I(v)`;
/// power costs `I(v^e) - I(v)`.
pub fn delta_tree(e: &Expr, env: &Env) -> Result<DeltaReport> {
    let mut per_node = Vec::new();
    let (value, root) = walk(e, env, &mut per_node)?;
    let history_delta = per_node.iter().map(|(_, d)| d).sum();
    Ok(DeltaReport { value, node_delta: root.unwrap_or(0.0), history_delta, per_node })
}

fn walk(e: &Expr, env: &Env, log: &mut Vec<(String, f64)>) -> Result<(BigNat, Option<f64>)> {
    let (value, delta) = match e {
        Expr::Const(_) | Expr::Var(_) => (e.eval(env)?, None),
        Expr::Add(l, r) | Expr::Mul(l, r) => {
            let op = if matches!(e, Expr::Add(..)) { BinaryOp::Add } else { BinaryOp::Mul };
            let (a, _) = walk(l, env, log)?;
            let (b, _) = walk(r, env, log)?;
            let d = delta_node(op, &a, &b, l == r)?;
            (op.apply(&a, &b), Some(d))
        }
        Expr::Pow(base, exp) => {
            let (v, _) = walk(base, env, log)?;
            let out: BigNat = Pow::pow(&v, *exp);
            let d = info_ratio(&out, &v).bits();
            (out, Some(d))
        }
        Expr::Succ(c) => {
            let (v, _) = walk(c, env, log)?;
            let out = &v + 1u32;
            let d = info_ratio(&out, &v).bits();
            (out, Some(d))
        }
    };
    if value.is_zero() {
        return Err(Error::ZeroOperand);
    }
    if let Some(d) = delta {
        log.push((e.to_string(), d));
    }
    Ok((value, delta))
}

impl FromStr for Expr {
    type Err = Error;

    /// Grammar: `+` over `*` over `^`, parentheses, decimal constants,
    /// identifiers, and `S(e)` for successor.
    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of expression", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        while self.eat(b'+') {
            e = Expr::plus(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.power()?;
        while self.eat(b'*') {
            e = Expr::times(e, self.power()?);
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let exp = digits.parse::<u32>().map_err(|_| self.error("expected exponent"))?;
            return Ok(Expr::pow(base, exp));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&c| f(c)) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                Ok(Expr::Const(digits.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_').to_string();
                if name == "S" && self.eat(b'(') {
                    let e = self.sum()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected `)`"));
                    }
                    return Ok(Expr::succ(e));
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.error("expected operand")),
        }
    }
}

/// The five binary groupings of four ordered leaves.
pub fn groupings_of_four(a: &Expr, b: &Expr, c: &Expr, d: &Expr, op: BinaryOp) -> Vec<Expr> {
    let node = |l: Expr, r: Expr| match op {
        BinaryOp::Add => Expr::plus(l, r),
        BinaryOp::Mul => Expr::times(l, r),
    };
    let (a, b, c, d) = (a.clone(), b.clone(), c.clone(), d.clone());
    vec![
        node(node(node(a.clone(), b.clone()), c.clone()), d.clone()),
        node(node(a.clone(), node(b.clone(), c.clone())), d.clone()),
        node(node(a.clone(), b.clone()), node(c.clone(), d.clone())),
        node(a.clone(), node(node(b.clone(), c.clone()), d.clone())),
        node(a, node(b, node(c, d))),
    ]
}
