//! Objective expressions over variables `x1 … xn`.
//!
//! The grammar is documented in `docs/expr_grammar.md`. Precedence from
//! loosest to tightest: `+ -`, `* /`, unary `-`, `^` (right associative).
//! There is no implicit multiplication.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("`{name}` at byte {offset} takes {expected} argument(s), got {got}")]
    ArityError {
        name: String,
        offset: usize,
        expected: &'static str,
        got: usize,
    },
    #[error("evaluation error at byte {offset}: {message}")]
    EvalError { offset: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Abs,
    Min,
    Max,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "abs" => Func::Abs,
            "min" => Func::Min,
            "max" => Func::Max,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    fn variadic(self) -> bool {
        matches!(self, Func::Min | Func::Max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Const(f64),
    /// Zero-based variable index (`x1` is `Var(0)`).
    Var(usize),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Vec<Node>),
}

/// A syntax tree node with the byte offset of the token that produced it.
/// Equality compares structure only.
#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub offset: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExprAst {
    pub root: Node,
    pub n_vars: usize,
}

pub fn parse(src: &str, n_vars: usize) -> Result<ExprAst, ExprError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        n_vars,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let root = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected input"));
    }
    Ok(ExprAst { root, n_vars })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::SyntaxError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let offset = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = binary(op, lhs, rhs, offset);
        }
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            let offset = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs, offset);
        }
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.peek() == Some(b'-') {
            let offset = self.pos;
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Node {
                kind: NodeKind::Neg(Box::new(inner)),
                offset,
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            let offset = self.pos;
            self.pos += 1;
            // The exponent may carry its own sign: `2^-1`.
            let exp = self.unary()?;
            return Ok(binary(BinOp::Pow, base, exp, offset));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Node, ExprError> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.error("malformed number"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = mark;
                return Err(self.error("malformed exponent"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v: f64 = text.parse().map_err(|_| ExprError::SyntaxError {
            offset: start,
            message: "malformed number".into(),
        })?;
        if !v.is_finite() {
            return Err(ExprError::SyntaxError {
                offset: start,
                message: "number out of range".into(),
            });
        }
        Ok(Node {
            kind: NodeKind::Const(v),
            offset: start,
        })
    }

    fn identifier(&mut self) -> Result<Node, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if let Some(f) = Func::lookup(name) {
            if self.peek() != Some(b'(') {
                return Err(self.error(&format!("expected `(` after `{name}`")));
            }
            self.pos += 1;
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            self.expect(b')')?;
            let ok = if f.variadic() { args.len() >= 2 } else { args.len() == 1 };
            if !ok {
                return Err(ExprError::ArityError {
                    name: name.to_string(),
                    offset: start,
                    expected: if f.variadic() { "at least 2" } else { "exactly 1" },
                    got: args.len(),
                });
            }
            return Ok(Node {
                kind: NodeKind::Call(f, args),
                offset: start,
            });
        }
        let index = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && i <= self.n_vars);
        match index {
            Some(i) => Ok(Node {
                kind: NodeKind::Var(i - 1),
                offset: start,
            }),
            None => Err(ExprError::UnknownIdentifier {
                name: name.to_string(),
                offset: start,
            }),
        }
    }
}

fn binary(op: BinOp, lhs: Node, rhs: Node, offset: usize) -> Node {
    Node {
        kind: NodeKind::Binary(op, Box::new(lhs), Box::new(rhs)),
        offset,
    }
}

impl ExprAst {
    /// Evaluates at `x`; division by zero and non-finite intermediate results
    /// are errors located at the offending node.
    pub fn eval(&self, x: &[f64]) -> Result<f64, ExprError> {
        if x.len() != self.n_vars {
            return Err(ExprError::EvalError {
                offset: 0,
                message: format!("expected {} variables, got {}", self.n_vars, x.len()),
            });
        }
        eval_node(&self.root, x)
    }
}

fn eval_node(node: &Node, x: &[f64]) -> Result<f64, ExprError> {
    let fail = |message: &str| ExprError::EvalError {
        offset: node.offset,
        message: message.to_string(),
    };
    let v = match &node.kind {
        NodeKind::Const(c) => *c,
        NodeKind::Var(i) => x[*i],
        NodeKind::Neg(e) => -eval_node(e, x)?,
        NodeKind::Binary(op, l, r) => {
            let a = eval_node(l, x)?;
            let b = eval_node(r, x)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(fail("division by zero"));
                    }
                    a / b
                }
                BinOp::Pow => a.powf(b),
            }
        }
        NodeKind::Call(f, args) => {
            let vals = args.iter().map(|a| eval_node(a, x)).collect::<Result<Vec<_>, _>>()?;
            match f {
                Func::Sin => vals[0].sin(),
                Func::Cos => vals[0].cos(),
                Func::Exp => vals[0].exp(),
                Func::Abs => vals[0].abs(),
                Func::Min => vals.iter().copied().fold(f64::INFINITY, f64::min),
                Func::Max => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        }
    };
    if v.is_nan() {
        return Err(fail("domain error"));
    }
    if !v.is_finite() {
        return Err(fail("overflow"));
    }
    Ok(v)
}

/// Fully parenthesised form; parsing it yields a structurally equal tree.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NodeKind::Const(c) => write!(f, "{c:?}"),
            NodeKind::Var(i) => write!(f, "x{}", i + 1),
            NodeKind::Neg(e) => write!(f, "(-{e})"),
            NodeKind::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            NodeKind::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
