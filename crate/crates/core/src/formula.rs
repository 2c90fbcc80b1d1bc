//! Boolean expressions: parsing, printing and evaluation to truth tables.
//!
//! Grammar, loosest first: `->` (right associative), `+`, `|`, `&` (left
//! associative), prefix `!`. Atoms are `x<i>` with `i >= 1`, `0`, `1`,
//! `maj(e,e,e)`, `minr(e,e,e)`, `tmin(e,e,e)` and parenthesized
//! expressions. `¬ ∧ ∨ →` are accepted for `! & | ->`.

use std::fmt;
use std::str::FromStr;

use crate::boolfn::{builders, compose, TruthTable, MAX_ARITY};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Xor,
    Implies,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TernaryOp {
    Majority,
    Minority,
    TwoThirdsMinority,
}

impl TernaryOp {
    fn name(self) -> &'static str {
        match self {
            TernaryOp::Majority => "maj",
            TernaryOp::Minority => "minr",
            TernaryOp::TwoThirdsMinority => "tmin",
        }
    }

    fn table(self) -> TruthTable {
        match self {
            TernaryOp::Majority => builders::majority(),
            TernaryOp::Minority => builders::minority(),
            TernaryOp::TwoThirdsMinority => builders::two_thirds_minority(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// `x_i`, 1-based.
    Var(usize),
    Const(bool),
    Not(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Ternary(TernaryOp, Box<[Expr; 3]>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0 };
        let e = p.implication()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(e)
    }

    /// Largest variable index referenced, 0 if none.
    pub fn arity(&self) -> usize {
        match self {
            Expr::Var(i) => *i,
            Expr::Const(_) => 0,
            Expr::Not(e) => e.arity(),
            Expr::Binary(_, a, b) => a.arity().max(b.arity()),
            Expr::Ternary(_, args) => args.iter().map(Expr::arity).max().unwrap_or(0),
        }
    }

    /// Truth table at `arity` (default: [`Expr::arity`]).
    pub fn to_table(&self, arity: Option<usize>) -> Result<TruthTable> {
        let n = arity.unwrap_or_else(|| self.arity());
        if n < self.arity() {
            return Err(Error::input(format!("arity {n} is below the largest variable index {}", self.arity())));
        }
        if n > MAX_ARITY {
            return Err(Error::input(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        self.eval(n)
    }

    fn eval(&self, n: usize) -> Result<TruthTable> {
        Ok(match self {
            Expr::Var(i) => TruthTable::projection(n, *i)?,
            Expr::Const(c) => TruthTable::constant(n, *c)?,
            Expr::Not(e) => e.eval(n)?.negate(),
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(n)?, b.eval(n)?);
                match op {
                    BinOp::And => a.and(&b)?,
                    BinOp::Or => a.or(&b)?,
                    BinOp::Xor => a.xor(&b)?,
                    BinOp::Implies => a.implies(&b)?,
                }
            }
            Expr::Ternary(op, args) => {
                let gs = args.iter().map(|e| e.eval(n)).collect::<Result<Vec<_>>>()?;
                compose(&op.table(), &gs)?
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Implies, ..) => 1,
            Expr::Binary(BinOp::Xor, ..) => 2,
            Expr::Binary(BinOp::Or, ..) => 3,
            Expr::Binary(BinOp::And, ..) => 4,
            Expr::Not(_) => 5,
            _ => 6,
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Const(c) => f.write_str(if *c { "1" } else { "0" }),
            Expr::Not(e) => {
                f.write_str("!")?;
                write_operand(f, e, e.precedence() < 5)
            }
            Expr::Binary(op, a, b) => {
                let p = self.precedence();
                let sym = match op {
                    BinOp::And => " & ",
                    BinOp::Or => " | ",
                    BinOp::Xor => " + ",
                    BinOp::Implies => " -> ",
                };
                let right_assoc = *op == BinOp::Implies;
                write_operand(f, a, a.precedence() < p || (right_assoc && a.precedence() == p))?;
                f.write_str(sym)?;
                write_operand(f, b, b.precedence() < p || (!right_assoc && b.precedence() == p))
            }
            Expr::Ternary(op, args) => {
                write!(f, "{}({}, {}, {})", op.name(), args[0], args[1], args[2])
            }
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let n = token.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(token.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn implication(&mut self) -> Result<Expr> {
        let lhs = self.xor()?;
        if self.eat("->") || self.eat("→") {
            let rhs = self.implication()?;
            return Ok(Expr::Binary(BinOp::Implies, Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Expr> {
        let mut e = self.or()?;
        while self.eat("+") {
            e = Expr::Binary(BinOp::Xor, Box::new(e), Box::new(self.or()?));
        }
        Ok(e)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut e = self.and()?;
        while self.eat("|") || self.eat("∨") {
            e = Expr::Binary(BinOp::Or, Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        while self.eat("&") || self.eat("∧") {
            e = Expr::Binary(BinOp::And, Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("!") || self.eat("¬") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.implication()?;
                self.expect(")")?;
                Ok(e)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Expr::Const(false))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Expr::Const(true))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                let op = match word.as_str() {
                    "maj" => Some(TernaryOp::Majority),
                    "minr" => Some(TernaryOp::Minority),
                    "tmin" => Some(TernaryOp::TwoThirdsMinority),
                    _ => None,
                };
                if let Some(op) = op {
                    self.expect("(")?;
                    let a = self.implication()?;
                    self.expect(",")?;
                    let b = self.implication()?;
                    self.expect(",")?;
                    let c = self.implication()?;
                    self.expect(")")?;
                    return Ok(Expr::Ternary(op, Box::new([a, b, c])));
                }
                let digits = word.strip_prefix('x').filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
                match digits.and_then(|d| d.parse::<usize>().ok()) {
                    Some(0) => {
                        Err(Error::Parse { position: start + 1, message: "variable index must be at least 1".into() })
                    }
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(Error::Parse { position: start + 1, message: format!("unknown identifier '{word}'") }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
        }
    }
}
