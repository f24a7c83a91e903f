//! Text syntax for Laurent polynomials with rational coefficients.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := power (('*' | '/') power)*
//! power  := atom ['^' ['-'] integer]
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! Numbers are integers or decimals and are kept exact. Multiplication must
//! be written out (`3*x`, not `3x`). Negative powers are allowed on
//! monomials, and `/` only divides by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::LaurentPolynomial;

type Poly = LaurentPolynomial<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let lit = &text[start..i];
            out.push((start, Token::Num(parse_decimal(lit, start)?)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Token::Op(ch)));
            i += 1;
        } else {
            return Err(PolyParseError {
                position: i,
                message: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

fn parse_decimal(lit: &str, position: usize) -> Result<BigRational, PolyParseError> {
    let err = || PolyParseError {
        position,
        message: format!("malformed number {lit:?}"),
    };
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return Err(err());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| err())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(num, den))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyParseError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
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

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let at = self.here();
                let divisor = self.power()?;
                match constant_value(&divisor) {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(PolyParseError {
                            position: at,
                            message: "can only divide by a nonzero constant".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let at = self.here();
        let k = match self.peek() {
            Some(Token::Num(n)) if n.is_integer() => n.to_integer(),
            _ => return self.error("expected an integer exponent"),
        };
        self.pos += 1;
        let k: u32 = u32::try_from(k).map_err(|_| PolyParseError {
            position: at,
            message: "exponent too large".into(),
        })?;
        if !negative {
            return Ok(base.pow(k));
        }
        let mut terms = base.terms();
        match (terms.next(), terms.next()) {
            (Some((e, c)), None) => {
                let inv = LaurentPolynomial::monomial(
                    base.vars().to_vec(),
                    e.iter().map(|x| -x).collect(),
                    c.recip(),
                );
                Ok(inv.pow(k))
            }
            _ => Err(PolyParseError {
                position: at,
                message: "negative powers need a nonzero monomial base".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Vec::new(), n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Poly::var(vec![name], 0))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

fn constant_value(p: &Poly) -> Option<BigRational> {
    if p.is_zero() {
        return Some(BigRational::zero());
    }
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) if e.iter().all(|&k| k == 0) => Some(c.clone()),
        _ => None,
    }
}

/// Parses a Laurent polynomial with rational coefficients. Variables are
/// ordered by first appearance.
pub fn parse_polynomial(text: &str) -> Result<Poly, PolyParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyParseError {
            position: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let mut p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("expected an operator");
    }
    // Order variables by first appearance in the text.
    let mut order: Vec<String> = Vec::new();
    for (_, t) in &parser.tokens {
        if let Token::Ident(name) = t {
            if !order.contains(name) {
                order.push(name.clone());
            }
        }
    }
    if p.vars() != order.as_slice() {
        let index: Vec<usize> = order
            .iter()
            .map(|v| p.vars().iter().position(|w| w == v).expect("seen variable"))
            .collect();
        p = p.map_exponents(order, |e| index.iter().map(|&i| e[i]).collect());
    }
    Ok(p)
}
