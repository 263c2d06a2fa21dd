//! Text grammar for polynomials.
//!
//! ```text
//! expr    := expr ('+' | '-') expr | expr ('*' | '/') expr | ('-' | '+') expr
//!          | atom '^' integer | atom
//! atom    := integer | name | '(' expr ')'
//! ```
//!
//! Usual precedence (`^` > unary sign > `* /` > `+ -`), left associative.
//! Multiplication is always written out: `2*x`, never `2x`. Division is only
//! defined by nonzero constants, so `(1/2)*x^2` and `x/3` parse but `1/x`
//! does not. The printer in [`Polynomial::display`] emits this grammar.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ParseError, ParseErrorKind, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    // positions are reported as 0-based character offsets
    while i < chars.len() {
        let (_, c) = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Int(s.parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    s.push(chars[i].1);
                    i += 1;
                }
                out.push((Tok::Name(s), start));
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '/' => out.push((Tok::Slash, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            other => {
                return Err(ParseError::new(start, ParseErrorKind::UnexpectedChar(other)));
            }
        }
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
}

struct Parser<'a> {
    lex: Lexer,
    vars: &'a [String],
}

fn binding_power(t: &Tok) -> Option<u8> {
    match t {
        Tok::Plus | Tok::Minus => Some(1),
        Tok::Star | Tok::Slash => Some(2),
        _ => None,
    }
}

impl Parser<'_> {
    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self, min_bp: u8) -> Result<Polynomial, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let op = self.lex.peek().clone();
            let Some(bp) = binding_power(&op) else { break };
            if bp < min_bp {
                break;
            }
            let (_, at) = self.lex.bump();
            let rhs = self.expr(bp + 1)?;
            lhs = match op {
                Tok::Plus => lhs + rhs,
                Tok::Minus => lhs - rhs,
                Tok::Star => lhs * rhs,
                Tok::Slash => match rhs.as_constant() {
                    Some(c) if !c.is_zero() => lhs.scale(&(Rational::from_integer(1.into()) / c)),
                    Some(_) => return Err(ParseError::new(at, ParseErrorKind::DivisionByZero)),
                    None => return Err(ParseError::new(at, ParseErrorKind::NonConstantDivisor)),
                },
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    // unary sign binds tighter than `*` and looser than `^`
    fn prefix(&mut self) -> Result<Polynomial, ParseError> {
        match self.lex.peek() {
            Tok::Minus => {
                self.lex.bump();
                Ok(-self.prefix()?)
            }
            Tok::Plus => {
                self.lex.bump();
                self.prefix()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.lex.peek() == Tok::Caret {
            self.lex.bump();
            let at = self.lex.offset();
            match self.lex.bump().0 {
                Tok::Int(e) => {
                    let e = e
                        .to_u32()
                        .ok_or_else(|| ParseError::new(at, ParseErrorKind::ExponentTooLarge))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::new(at, ParseErrorKind::ExpectedExponent)),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let (tok, at) = self.lex.bump();
        match tok {
            Tok::Int(v) => Ok(Polynomial::constant(self.n(), Rational::from_integer(v))),
            Tok::Name(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var(self.n(), i)),
                None => Err(ParseError::new(at, ParseErrorKind::UnknownVariable(name))),
            },
            Tok::LParen => {
                let inner = self.expr(0)?;
                let close = self.lex.offset();
                match self.lex.bump().0 {
                    Tok::RParen => Ok(inner),
                    _ => Err(ParseError::new(close, ParseErrorKind::UnclosedParen)),
                }
            }
            Tok::End => Err(ParseError::new(at, ParseErrorKind::UnexpectedEnd)),
            _ => Err(ParseError::new(at, ParseErrorKind::ExpectedOperand)),
        }
    }
}

/// Parses `text` as a polynomial in the variables `vars` (in order).
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let mut parser = Parser {
        lex: Lexer {
            toks: lex(text)?,
            pos: 0,
        },
        vars,
    };
    let p = parser.expr(0)?;
    match parser.lex.peek() {
        Tok::End => Ok(p),
        _ => Err(ParseError::new(parser.lex.offset(), ParseErrorKind::ExpectedOperator)),
    }
}
