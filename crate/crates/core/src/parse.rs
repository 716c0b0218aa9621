//! Expression input for operators and commutative polynomials.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "-" factor | base ("^" nat)?
//! base   := "a" | "ad" | "h" | "t" | ident | rational | "(" expr ")"
//! rational := int ("/" nat)?
//! ```
//!
//! `^` binds tighter than unary minus, so `-a^2` is `-(a^2)`. Products are
//! explicit and keep their written order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{HbarScalar, MultiPoly, Rational, VarList};
use crate::heisenberg::QOperator;

pub const MAX_EXPONENT: u32 = 256;
pub const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    NegativeExponent,
    ExponentTooLarge,
    ZeroDenominator,
    TooDeep,
    UnknownIdentifier(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "syntax error: unexpected character {c:?}"),
            Self::UnexpectedToken(t) => write!(f, "syntax error: unexpected {t}"),
            Self::UnexpectedEnd => write!(f, "syntax error: unexpected end of input"),
            Self::NegativeExponent => write!(f, "negative exponent"),
            Self::ExponentTooLarge => write!(f, "exponent exceeds {MAX_EXPONENT}"),
            Self::ZeroDenominator => write!(f, "zero denominator"),
            Self::TooDeep => write!(f, "nesting deeper than {MAX_DEPTH}"),
            Self::UnknownIdentifier(s) => write!(f, "unknown identifier {s:?}"),
        }
    }
}

fn err<T>(offset: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { offset, kind })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut end = pos;
                while let Some(&(p, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = p + 1;
                    chars.next();
                }
                out.push((pos, Tok::Int(text[pos..end].parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = pos;
                while let Some(&(p, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    end = p + 1;
                    chars.next();
                }
                out.push((pos, Tok::Ident(text[pos..end].to_string())));
                continue;
            }
            c => return err(pos, ParseErrorKind::UnexpectedChar(c)),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `a`
    Annihilation,
    /// `ad`
    Creation,
    /// `h`
    Hbar,
    /// `t`
    Deformation,
    Var(String),
}

impl Atom {
    pub fn name(&self) -> &str {
        match self {
            Atom::Annihilation => "a",
            Atom::Creation => "ad",
            Atom::Hbar => "h",
            Atom::Deformation => "t",
            Atom::Var(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Num(Rational),
    /// Atom with the byte offset where it was written.
    Atom(Atom, usize),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => err(self.offset(), ParseErrorKind::UnexpectedToken(t.to_string())),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return err(self.offset(), ParseErrorKind::TooDeep);
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        self.descend()?;
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
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            self.descend()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(ExprAst::Neg(Box::new(inner)));
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let e = self.exponent()?;
            return Ok(ExprAst::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    /// A natural number, optionally parenthesized; a sign is reported as a
    /// negative exponent.
    fn exponent(&mut self) -> Result<u32, ParseError> {
        let at = self.offset();
        let parenthesized = matches!(self.peek(), Some(Tok::LParen));
        if parenthesized {
            self.bump();
        }
        let value = match self.bump() {
            Some((o, Tok::Minus)) => return err(o, ParseErrorKind::NegativeExponent),
            Some((o, Tok::Int(n))) => match n.to_u32() {
                Some(v) if v <= MAX_EXPONENT => v,
                _ => return err(o, ParseErrorKind::ExponentTooLarge),
            },
            Some(_) => {
                self.pos -= 1;
                return self.unexpected();
            }
            None => return err(self.end.max(at), ParseErrorKind::UnexpectedEnd),
        };
        if parenthesized {
            match self.peek() {
                Some(Tok::RParen) => {
                    self.bump();
                }
                _ => return self.unexpected(),
            }
        }
        Ok(value)
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        match self.bump() {
            Some((_, Tok::Int(n))) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some((o, Tok::Int(d))) => {
                            if d.is_zero() {
                                return err(o, ParseErrorKind::ZeroDenominator);
                            }
                            Ok(ExprAst::Num(Rational::new(n, d)))
                        }
                        Some(_) => {
                            self.pos -= 1;
                            self.unexpected()
                        }
                        None => err(self.end, ParseErrorKind::UnexpectedEnd),
                    }
                } else {
                    Ok(ExprAst::Num(Rational::from_integer(n)))
                }
            }
            Some((o, Tok::Ident(s))) => {
                let atom = match s.as_str() {
                    "a" => Atom::Annihilation,
                    "ad" => Atom::Creation,
                    "h" => Atom::Hbar,
                    "t" => Atom::Deformation,
                    _ => Atom::Var(s),
                };
                Ok(ExprAst::Atom(atom, o))
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some(_) => {
                        self.pos -= 1;
                        self.unexpected()
                    }
                    None => err(self.end, ParseErrorKind::UnexpectedEnd),
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.unexpected()
            }
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let ast = p.expr()?;
    if p.peek().is_some() {
        return p.unexpected();
    }
    Ok(ast)
}

/// Folds an AST into a ring given the interpretation of atoms.
fn eval<T, F>(ast: &ExprAst, atom: &F, ring: &Ring<T>) -> Result<T, ParseError>
where
    F: Fn(&Atom, usize) -> Result<T, ParseError>,
{
    Ok(match ast {
        ExprAst::Num(q) => (ring.num)(q),
        ExprAst::Atom(a, o) => atom(a, *o)?,
        ExprAst::Neg(x) => (ring.neg)(&eval(x, atom, ring)?),
        ExprAst::Add(x, y) => (ring.add)(&eval(x, atom, ring)?, &eval(y, atom, ring)?),
        ExprAst::Sub(x, y) => (ring.sub)(&eval(x, atom, ring)?, &eval(y, atom, ring)?),
        ExprAst::Mul(x, y) => (ring.mul)(&eval(x, atom, ring)?, &eval(y, atom, ring)?),
        ExprAst::Pow(x, e) => (ring.pow)(&eval(x, atom, ring)?, *e),
    })
}

struct Ring<T> {
    num: Box<dyn Fn(&Rational) -> T>,
    neg: fn(&T) -> T,
    add: fn(&T, &T) -> T,
    sub: fn(&T, &T) -> T,
    mul: fn(&T, &T) -> T,
    pow: fn(&T, u32) -> T,
}

/// Parses and normal-orders an operator in `a`, `ad` and `h`.
pub fn parse_operator_expr(text: &str) -> Result<QOperator, ParseError> {
    let ast = parse_expr(text)?;
    let ring = Ring {
        num: Box::new(|q: &Rational| QOperator::scalar(HbarScalar::constant(q.clone()))),
        neg: |x| -x,
        add: |x, y| x + y,
        sub: |x, y| x - y,
        mul: |x, y| x * y,
        pow: |x, e| x.pow(e),
    };
    eval(
        &ast,
        &|atom: &Atom, offset| match atom {
            Atom::Annihilation => Ok(QOperator::a()),
            Atom::Creation => Ok(QOperator::ad()),
            Atom::Hbar => Ok(QOperator::hbar()),
            other => err(offset, ParseErrorKind::UnknownIdentifier(other.name().to_string())),
        },
        &ring,
    )
}

/// Parses a commutative polynomial over the declared variables.
pub fn parse_commutative_poly(text: &str, vars: &VarList) -> Result<MultiPoly, ParseError> {
    let ast = parse_expr(text)?;
    let v = vars.clone();
    let ring = Ring {
        num: Box::new(move |q: &Rational| MultiPoly::constant(&v, q.clone())),
        neg: |x| -x,
        add: |x, y| x + y,
        sub: |x, y| x - y,
        mul: |x, y| x * y,
        pow: |x, e| x.pow(e),
    };
    eval(
        &ast,
        &|atom: &Atom, offset| {
            MultiPoly::var_named(vars, atom.name()).ok_or_else(|| ParseError {
                offset,
                kind: ParseErrorKind::UnknownIdentifier(atom.name().to_string()),
            })
        },
        &ring,
    )
}
