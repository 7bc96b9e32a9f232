//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := signed ('*' signed)*
//! signed := ('+' | '-') signed | factor
//! factor := base ('^' uint)?
//! base   := rational | 'i' | 'x' uint | 't' | '(' expr ')'
//! rational := int ('/' uint)?
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::MPoly;
use crate::scalar::{ComplexField, Rational};

use super::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Rational(Rational),
    ImagUnit,
    /// Zero-based spatial variable index.
    Var(usize),
    Time,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

impl ExprAst {
    pub fn to_poly<S: ComplexField>(&self, n: usize) -> MPoly<S> {
        match self {
            ExprAst::Rational(r) => MPoly::constant(n, S::from_rational(r.clone())),
            ExprAst::ImagUnit => MPoly::constant(n, S::imag_unit()),
            ExprAst::Var(a) => MPoly::var(n, *a),
            ExprAst::Time => MPoly::t_var(n),
            ExprAst::Add(a, b) => a.to_poly(n) + b.to_poly(n),
            ExprAst::Sub(a, b) => a.to_poly(n) - b.to_poly(n),
            ExprAst::Neg(a) => -a.to_poly::<S>(n),
            ExprAst::Mul(a, b) => a.to_poly(n) * b.to_poly(n),
            ExprAst::Pow(a, e) => a.to_poly::<S>(n).pow(*e),
        }
    }
}

/// Exponents above this bound are rejected to keep expansion finite.
const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(ParseError::new(
                        i,
                        "decimal points are not supported; write fractions as num/den",
                    ));
                }
                let text: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(text.parse().expect("digits"))));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError::new(start, format!("unexpected character '{other}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.signed()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.signed()?));
                }
                Some(Tok::Slash) => {
                    return Err(ParseError::new(
                        self.offset(),
                        "division is only allowed inside rational literals; \
                         only polynomial expressions are supported",
                    ));
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return Err(ParseError::new(self.offset(), "expected an operator"));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn signed(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(ExprAst::Neg(Box::new(self.signed()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.signed()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(e)) => {
                let e: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        ParseError::new(at, format!("exponent exceeds {MAX_EXPONENT}"))
                    })?;
                if self.peek() == Some(&Tok::Slash) {
                    return Err(ParseError::new(
                        self.offset(),
                        "fractional exponents are not supported",
                    ));
                }
                Ok(ExprAst::Pow(Box::new(base), e))
            }
            Some(Tok::Minus) => Err(ParseError::new(
                at,
                "negative exponents are not supported; only polynomial expressions are allowed",
            )),
            _ => Err(ParseError::new(at, "exponent must be a nonnegative integer literal")),
        }
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(num)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump() {
                        Some(Tok::Int(den)) => {
                            if den.is_zero() {
                                return Err(ParseError::new(den_at, "division by zero"));
                            }
                            Ok(ExprAst::Rational(Rational::new(num, den)))
                        }
                        _ => Err(ParseError::new(
                            den_at,
                            "division is only allowed inside rational literals; \
                             only polynomial expressions are supported",
                        )),
                    }
                } else {
                    Ok(ExprAst::Rational(Rational::from_integer(num)))
                }
            }
            Some(Tok::Ident(name)) => self.ident(at, &name),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::new(at, "unbalanced parenthesis")),
                }
            }
            Some(Tok::RParen) => Err(ParseError::new(at, "unexpected ')'")),
            Some(_) => Err(ParseError::new(at, "expected a number, variable or '('")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }

    fn ident(&mut self, at: usize, name: &str) -> Result<ExprAst, ParseError> {
        match name {
            "i" => return Ok(ExprAst::ImagUnit),
            "t" => return Ok(ExprAst::Time),
            _ => {}
        }
        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                let k: usize = digits.parse().map_err(|_| {
                    ParseError::new(at, format!("variable index in '{name}' is too large"))
                })?;
                if k == 0 || k > self.n {
                    return Err(ParseError::new(
                        at,
                        format!("variable '{name}' out of range: dimension is {}", self.n),
                    ));
                }
                return Ok(ExprAst::Var(k - 1));
            }
        }
        if self.peek() == Some(&Tok::LParen) {
            return Err(ParseError::new(
                at,
                format!("function '{name}' is not supported; only polynomial expressions are allowed"),
            ));
        }
        Err(ParseError::new(
            at,
            format!("unknown identifier '{name}'; expected x1..x{}, t or i", self.n),
        ))
    }
}

pub fn parse_expr(src: &str, n: usize) -> Result<ExprAst, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count(),
        n,
    };
    let ast = p.expr()?;
    if p.pos < p.toks.len() {
        let msg = match p.peek() {
            Some(Tok::RParen) => "unexpected ')'",
            _ => "unexpected trailing input",
        };
        return Err(ParseError::new(p.offset(), msg));
    }
    Ok(ast)
}

/// Parses an expression over `x1..xn`, `t` and `i` into its expanded polynomial.
pub fn parse_poly<S: ComplexField>(src: &str, n: usize) -> Result<MPoly<S>, ParseError> {
    Ok(parse_expr(src, n)?.to_poly(n))
}
