//! Expression grammar shared by scalar and polynomial text forms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/'|<juxtaposition>) unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'|'+'] INT]
//! atom   := INT | 'q' | 'x' INT | '(' expr ')'
//! ```
//!
//! Products are evaluated left to right in the order written, which matters
//! for the skew variables: `x2*x1` is `q^-1 x1*x2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::{Field, Scalar};
use crate::skewalg::{Algebra, SkewPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based column of the offending token.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError { column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Int(digits.parse().unwrap())));
                continue;
            }
            'q' => out.push((col, Tok::Q)),
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(ParseError::new(col, "variable name must be x followed by an index"));
                }
                let idx: usize = chars[start..j].iter().collect::<String>().parse().unwrap();
                if idx == 0 {
                    return Err(ParseError::new(col, "variables are numbered from x1"));
                }
                out.push((col, Tok::Var(idx - 1)));
                i = j;
                continue;
            }
            '+' => out.push((col, Tok::Plus)),
            '-' => out.push((col, Tok::Minus)),
            '*' => out.push((col, Tok::Star)),
            '/' => out.push((col, Tok::Slash)),
            '^' => out.push((col, Tok::Caret)),
            '(' => out.push((col, Tok::LParen)),
            ')' => out.push((col, Tok::RParen)),
            other => return Err(ParseError::new(col, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Var(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let col = self.col();
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), col);
                }
                Some(Tok::Int(_)) | Some(Tok::Q) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        self.bump();
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.bump();
        }
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let e = match self.bump() {
            Some(Tok::Int(v)) => i64::try_from(v).map_err(|_| ParseError::new(col, "exponent too large"))?,
            _ => return Err(ParseError::new(col, "expected an integer exponent after '^'")),
        };
        if paren && self.bump() != Some(Tok::RParen) {
            return Err(ParseError::new(self.col(), "expected ')' after exponent"));
        }
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, col))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Q) => Ok(Expr::Q),
            Some(Tok::Var(i)) => Ok(Expr::Var(i, col)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(ParseError::new(self.col().min(self.end_col), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(ParseError::new(col, format!("unexpected token {t:?}"))),
            None => Err(ParseError::new(col, "unexpected end of input")),
        }
    }
}

/// Parses an expression; columns in errors are 1-based within `s`.
pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, end_col: s.chars().count() + 1 };
    if p.peek().is_none() {
        return Err(ParseError::new(1, "empty expression"));
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::new(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a scalar such as `3/2 q^-1` or `(q + 1)/(q - 1)`.
pub fn parse_scalar(s: &str, field: &Field) -> Result<Scalar, ParseError> {
    eval_scalar(&parse_expr(s)?, field)
}

fn eval_scalar(e: &Expr, field: &Field) -> Result<Scalar, ParseError> {
    Ok(match e {
        Expr::Int(v) => field.from_rational(BigRational::from_integer(v.clone())),
        Expr::Q => field.q(),
        Expr::Var(_, col) => return Err(ParseError::new(*col, "variables are not allowed in a scalar")),
        Expr::Neg(a) => -eval_scalar(a, field)?,
        Expr::Add(a, b) => &eval_scalar(a, field)? + &eval_scalar(b, field)?,
        Expr::Sub(a, b) => &eval_scalar(a, field)? - &eval_scalar(b, field)?,
        Expr::Mul(a, b) => &eval_scalar(a, field)? * &eval_scalar(b, field)?,
        Expr::Div(a, b, col) => {
            let d = eval_scalar(b, field)?;
            if d.is_zero() {
                return Err(ParseError::new(*col, "division by zero"));
            }
            &eval_scalar(a, field)? / &d
        }
        Expr::Pow(a, k, col) => eval_scalar(a, field)?
            .pow(*k)
            .map_err(|_| ParseError::new(*col, "negative power of zero"))?,
    })
}

/// Parses a polynomial such as `q^-1 x1*x2 + 2 x2^2` in the given algebra.
pub fn parse_polynomial(s: &str, alg: &Algebra) -> Result<SkewPolynomial, ParseError> {
    eval_poly(&parse_expr(s)?, alg)
}

fn eval_poly(e: &Expr, alg: &Algebra) -> Result<SkewPolynomial, ParseError> {
    Ok(match e {
        Expr::Int(_) | Expr::Q => alg.constant(eval_scalar(e, alg.field())?),
        Expr::Var(i, col) => {
            if *i >= alg.nvars() {
                return Err(ParseError::new(
                    *col,
                    format!("variable x{} out of range (algebra has x1..x{})", i + 1, alg.nvars()),
                ));
            }
            alg.var(*i)
        }
        Expr::Neg(a) => eval_poly(a, alg)?.neg(),
        Expr::Add(a, b) => eval_poly(a, alg)?.add(&eval_poly(b, alg)?),
        Expr::Sub(a, b) => eval_poly(a, alg)?.sub(&eval_poly(b, alg)?),
        Expr::Mul(a, b) => alg.multiply(&eval_poly(a, alg)?, &eval_poly(b, alg)?).expect("same algebra"),
        Expr::Div(a, b, col) => {
            let d = eval_poly(b, alg)?;
            let c = d
                .as_constant()
                .ok_or_else(|| ParseError::new(*col, "can only divide by a scalar"))?;
            if c.is_zero() {
                return Err(ParseError::new(*col, "division by zero"));
            }
            eval_poly(a, alg)?.scale(&c.inv().unwrap())
        }
        Expr::Pow(a, k, col) => {
            let base = eval_poly(a, alg)?;
            if *k < 0 {
                let c = base
                    .as_constant()
                    .ok_or_else(|| ParseError::new(*col, "negative exponents only apply to scalars"))?;
                let v = c.pow(*k).map_err(|_| ParseError::new(*col, "negative power of zero"))?;
                alg.constant(v)
            } else {
                alg.power(&base, *k as u32)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalars() {
        let f = Field::generic();
        assert_eq!(parse_scalar("3/2 q^1", &f).unwrap().to_string(), "3/2 q");
        assert_eq!(parse_scalar("q^-2", &f).unwrap(), f.q_power(-2));
        assert_eq!(parse_scalar("q^(-2)", &f).unwrap(), f.q_power(-2));
        let r = Field::rationals();
        assert_eq!(parse_scalar("1/2 + 1/3", &r).unwrap().to_string(), "5/6");
        assert!(parse_scalar("x1", &f).is_err());
    }

    #[test]
    fn error_columns() {
        let f = Field::generic();
        let e = parse_scalar("1 + $", &f).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_scalar("1/0", &f).unwrap_err();
        assert_eq!(e.column, 2);
        let e = parse_scalar("(1 + q", &f).unwrap_err();
        assert!(e.message.contains("')'"));
    }
}
