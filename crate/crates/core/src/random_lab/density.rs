//! Edge-probability schedules `p(n)` written as small arithmetic
//! expressions in `n`: numbers, `n`, `log(...)`, `^`, `*`, `/`, `+`, `-`
//! and parentheses. `log` is the natural logarithm.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("invalid density expression at offset {offset}: {message} (found `{token}`)")]
    Syntax {
        offset: usize,
        token: String,
        message: &'static str,
    },
    #[error("density evaluates to {value} at n = {n}, outside [0, 1]")]
    OutOfRange { n: usize, value: f64 },
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(f64),
    N,
    Log(Box<Expr>),
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    N,
    Log,
    Op(char),
    Open,
    Close,
}

/// A parsed schedule together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySchedule {
    source: String,
    expr: Expr,
}

impl DensitySchedule {
    pub fn parse(text: &str) -> Result<Self, DensityError> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks: &toks, pos: 0, text };
        let expr = p.expr()?;
        if p.pos < toks.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(DensitySchedule {
            source: text.trim().to_string(),
            expr,
        })
    }

    /// Constant schedule.
    pub fn constant(p: f64) -> Self {
        DensitySchedule {
            source: p.to_string(),
            expr: Expr::Num(p),
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `p(n)`; values outside `[0, 1]` (or NaN) are errors, never clamped.
    pub fn eval(&self, n: usize) -> Result<f64, DensityError> {
        let value = eval(&self.expr, n as f64);
        if (0.0..=1.0).contains(&value) {
            Ok(value)
        } else {
            Err(DensityError::OutOfRange { n, value })
        }
    }
}

impl FromStr for DensitySchedule {
    type Err = DensityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for DensitySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn eval(e: &Expr, n: f64) -> f64 {
    match e {
        Expr::Num(v) => *v,
        Expr::N => n,
        Expr::Log(a) => eval(a, n).ln(),
        Expr::Neg(a) => -eval(a, n),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, n), eval(b, n));
            match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
                Op::Div => x / y,
                Op::Pow => x.powf(y),
            }
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, DensityError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' | '.' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                    i += 1;
                }
                // Optional exponent such as 1e-3.
                if i + 1 < chars.len() && matches!(chars[i].1, 'e' | 'E') {
                    let mut j = i + 1;
                    if matches!(chars[j].1, '+' | '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].1.is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].1.is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let end = chars.get(i).map_or(text.len(), |&(o, _)| o);
                let lit = &text[at..end];
                let v: f64 = lit.parse().map_err(|_| DensityError::Syntax {
                    offset: chars[start].0,
                    token: lit.to_string(),
                    message: "malformed number",
                })?;
                out.push((at, Tok::Num(v)));
            }
            'n' if !chars.get(i + 1).is_some_and(|c| c.1.is_alphabetic()) => {
                out.push((at, Tok::N));
                i += 1;
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_alphabetic() {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |&(o, _)| o);
                let word = &text[chars[start].0..end];
                if word != "log" {
                    return Err(DensityError::Syntax {
                        offset: at,
                        token: word.to_string(),
                        message: "unknown identifier; only `n` and `log` are allowed",
                    });
                }
                out.push((at, Tok::Log));
            }
            '+' | '-' | '*' | '/' | '^' | '\u{2212}' => {
                out.push((at, Tok::Op(if c == '\u{2212}' { '-' } else { c })));
                i += 1;
            }
            '(' => {
                out.push((at, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((at, Tok::Close));
                i += 1;
            }
            _ => {
                return Err(DensityError::Syntax {
                    offset: at,
                    token: c.to_string(),
                    message: "unexpected character",
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &'static str) -> DensityError {
        match self.toks.get(self.pos) {
            Some(&(offset, _)) => {
                let token: String = self.text[offset..].chars().take_while(|c| !c.is_whitespace()).collect();
                DensityError::Syntax { offset, token, message }
            }
            None => DensityError::Syntax {
                offset: self.text.len(),
                token: "end of input".to_string(),
                message,
            },
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Tok::Op(c)) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, DensityError> {
        let mut lhs = self.term()?;
        while let Some(c) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if c == '+' { Op::Add } else { Op::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, DensityError> {
        let mut lhs = self.unary()?;
        while let Some(c) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if c == '*' { Op::Mul } else { Op::Div };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DensityError> {
        if self.eat_op(&['-']).is_some() {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exp = self.unary()?;
            return Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, DensityError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::N) => {
                self.pos += 1;
                Ok(Expr::N)
            }
            Some(Tok::Log) => {
                self.pos += 1;
                if self.peek() != Some(&Tok::Open) {
                    return Err(self.error("expected `(` after log"));
                }
                self.pos += 1;
                let inner = self.expr()?;
                self.close()?;
                Ok(Expr::Log(Box::new(inner)))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.close()?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, `n`, `log(` or `(`")),
        }
    }

    fn close(&mut self) -> Result<(), DensityError> {
        if self.peek() == Some(&Tok::Close) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("expected `)`"))
        }
    }
}
