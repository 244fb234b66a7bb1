//! Recursive-descent parser for ring-element expressions entered on the
//! command line, evaluated into `GradedPoly` values over a presentation's
//! alphabet.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' uint)?
//! atom   := rational | ident | '(' expr ')'
//! rational := int ('/' int)?
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*`; `^` is
//! non-associative, so `a^2^3` is a syntax error. Rational literals only form
//! between integer literals and the slash binds tighter than `*`, matching
//! the canonical renderer (`1/2*e`).

use std::sync::Arc;

use num::BigInt;
use thiserror::Error;

use crate::polyring::{GeneratorAlphabet, GradedPoly, PolyError, Rational};

const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("unknown character `{ch}` at byte {offset}")]
    UnknownCharacter { ch: char, offset: usize },
    #[error("unexpected token `{token}` at byte {offset}")]
    UnexpectedToken { token: String, offset: usize },
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("exponent at byte {offset} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { offset: usize },
    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprToken {
    Integer(BigInt),
    Slash,
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl ExprToken {
    fn describe(&self) -> String {
        match self {
            ExprToken::Integer(n) => n.to_string(),
            ExprToken::Slash => "/".into(),
            ExprToken::Ident(s) => s.clone(),
            ExprToken::Plus => "+".into(),
            ExprToken::Minus => "-".into(),
            ExprToken::Star => "*".into(),
            ExprToken::Caret => "^".into(),
            ExprToken::LParen => "(".into(),
            ExprToken::RParen => ")".into(),
        }
    }
}

/// Maximal-munch tokenizer; whitespace is skipped, every token carries its
/// byte offset.
pub fn tokenize(input: &str) -> Result<Vec<(ExprToken, usize)>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' => {
                out.push((ExprToken::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((ExprToken::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((ExprToken::Star, i));
                i += 1;
            }
            b'^' => {
                out.push((ExprToken::Caret, i));
                i += 1;
            }
            b'/' => {
                out.push((ExprToken::Slash, i));
                i += 1;
            }
            b'(' => {
                out.push((ExprToken::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((ExprToken::RParen, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                out.push((ExprToken::Integer(n), start));
            }
            b'p' | b'c' | b'e' => {
                let start = i;
                i += 1;
                if b != b'e' {
                    // p and c idents require digits
                    let digits_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == digits_start {
                        let ch = input[start..].chars().next().unwrap();
                        return Err(ExprError::UnknownCharacter { ch, offset: start });
                    }
                }
                // optional prime marks the second-factor generators of the
                // real oriented presentations
                if i < bytes.len() && bytes[i] == b'\'' {
                    i += 1;
                }
                out.push((ExprToken::Ident(input[start..i].to_string()), start));
            }
            _ => {
                let ch = input[i..].chars().next().unwrap();
                return Err(ExprError::UnknownCharacter { ch, offset: i });
            }
        }
    }
    Ok(out)
}

/// Abstract syntax of an expression; exponents are literal non-negative
/// integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rational),
    Gen(String),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

struct Parser<'a> {
    tokens: &'a [(ExprToken, usize)],
    pos: usize,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a (ExprToken, usize)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a (ExprToken, usize)> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_offset(&self) -> usize {
        self.input_len
    }

    fn unexpected(&self, t: &(ExprToken, usize)) -> ExprError {
        ExprError::UnexpectedToken {
            token: t.0.describe(),
            offset: t.1,
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.0 {
                ExprToken::Plus => {
                    self.next();
                    acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                ExprToken::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = ExprAst::Add(Box::new(acc), Box::new(ExprAst::Neg(Box::new(rhs))));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            if t.0 == ExprToken::Star {
                self.next();
                acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        if let Some((ExprToken::Minus, _)) = self.peek() {
            self.next();
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if let Some((ExprToken::Caret, _)) = self.peek() {
            self.next();
            let t = self.next().ok_or(ExprError::UnexpectedEnd {
                offset: self.end_offset(),
            })?;
            let ExprToken::Integer(n) = &t.0 else {
                return Err(self.unexpected(t));
            };
            let exp: u64 = n
                .try_into()
                .map_err(|_| ExprError::ExponentTooLarge { offset: t.1 })?;
            if exp > MAX_EXPONENT {
                return Err(ExprError::ExponentTooLarge { offset: t.1 });
            }
            return Ok(ExprAst::Pow(Box::new(base), exp as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        let t = self.next().ok_or(ExprError::UnexpectedEnd {
            offset: self.end_offset(),
        })?;
        match &t.0 {
            ExprToken::Integer(n) => {
                // rational literal: int '/' int
                if let Some((ExprToken::Slash, _)) = self.peek() {
                    self.next();
                    let d = self.next().ok_or(ExprError::UnexpectedEnd {
                        offset: self.end_offset(),
                    })?;
                    let ExprToken::Integer(den) = &d.0 else {
                        return Err(self.unexpected(d));
                    };
                    if den == &BigInt::from(0) {
                        return Err(ExprError::ZeroDenominator { offset: d.1 });
                    }
                    return Ok(ExprAst::Num(Rational::new(n.clone(), den.clone())));
                }
                Ok(ExprAst::Num(Rational::from_integer(n.clone())))
            }
            ExprToken::Ident(name) => Ok(ExprAst::Gen(name.clone())),
            ExprToken::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some((ExprToken::RParen, _)) => Ok(inner),
                    Some(t) => Err(self.unexpected(t)),
                    None => Err(ExprError::UnexpectedEnd {
                        offset: self.end_offset(),
                    }),
                }
            }
            _ => Err(self.unexpected(t)),
        }
    }
}

/// Parse a token stream (from [`tokenize`]) into an AST, consuming all
/// input.
pub fn parse_tokens(tokens: &[(ExprToken, usize)], input_len: usize) -> Result<ExprAst, ExprError> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len,
    };
    let ast = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(parser.unexpected(t));
    }
    Ok(ast)
}

/// Tokenize and parse in one step.
pub fn parse(input: &str) -> Result<ExprAst, ExprError> {
    let tokens = tokenize(input)?;
    parse_tokens(&tokens, input.len())
}

/// Evaluate an AST over an alphabet with exact arithmetic; inhomogeneous
/// results are allowed.
pub fn evaluate(ast: &ExprAst, alphabet: &Arc<GeneratorAlphabet>) -> Result<GradedPoly, ExprError> {
    match ast {
        ExprAst::Num(c) => Ok(GradedPoly::constant(alphabet, c.clone())),
        ExprAst::Gen(name) => Ok(GradedPoly::generator(alphabet, name)?),
        ExprAst::Neg(inner) => Ok(evaluate(inner, alphabet)?.negated()),
        ExprAst::Add(a, b) => Ok(evaluate(a, alphabet)?.checked_add(&evaluate(b, alphabet)?)?),
        ExprAst::Mul(a, b) => Ok(evaluate(a, alphabet)?.checked_mul(&evaluate(b, alphabet)?)?),
        ExprAst::Pow(base, t) => Ok(evaluate(base, alphabet)?.pow(*t)),
    }
}

/// Parse and evaluate an input string over an alphabet.
pub fn eval_str(input: &str, alphabet: &Arc<GeneratorAlphabet>) -> Result<GradedPoly, ExprError> {
    evaluate(&parse(input)?, alphabet)
}
