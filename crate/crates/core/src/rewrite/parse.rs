//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Decimal points are rejected: coefficients must be exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{GradedPoly, Var};
use super::RewriteError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, RewriteError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(RewriteError::Parse(format!("floating-point literal at offset {start}; use p/q")));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Int(digits.parse().expect("ascii digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '.' {
            return Err(RewriteError::Parse(format!("floating-point literal at offset {i}; use p/q")));
        } else {
            return Err(RewriteError::Parse(format!("unexpected character {c:?} at offset {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, RewriteError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly, RewriteError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GradedPoly, RewriteError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.at += 1;
                    let e: u32 = e.try_into().map_err(|_| RewriteError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(RewriteError::Parse("expected a non-negative integer exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GradedPoly, RewriteError> {
        match self.peek().cloned() {
            Some(Token::Int(num)) => {
                self.at += 1;
                let mut den = BigInt::one();
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.at += 1;
                            den = d;
                        }
                        _ => return Err(RewriteError::Parse("expected a denominator after '/'".into())),
                    }
                }
                if den.is_zero() {
                    return Err(RewriteError::DivisorZero);
                }
                Ok(GradedPoly::constant(BigRational::new(num, den)))
            }
            Some(Token::Ident(name)) => {
                self.at += 1;
                Var::from_name(&name)
                    .map(GradedPoly::var)
                    .ok_or_else(|| RewriteError::Parse(format!("unknown symbol {name:?}")))
            }
            Some(Token::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(RewriteError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(RewriteError::Parse(format!("unexpected token {t:?}"))),
            None => Err(RewriteError::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses an expression in the grammar above.
pub fn parse_poly(text: &str) -> Result<GradedPoly, RewriteError> {
    let mut parser = Parser { tokens: tokenize(text)?, at: 0 };
    let p = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(RewriteError::Parse(format!("trailing input at {t:?}")));
    }
    Ok(p)
}
