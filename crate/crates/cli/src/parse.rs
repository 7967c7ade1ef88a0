//! Polynomial expressions in `t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 't' | '(' expr ')'
//! ```
//!
//! `-t^2` is `-(t^2)`. Division is only by nonzero constants, and `2t` is an
//! error rather than a product.

use std::fmt;

use galois_core::field::{Field, PrimeField, Rationals};
use galois_core::numbers::Rational;
use galois_core::poly::{Poly, PolyRing};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Deepest nesting of parentheses and unary signs.
pub const MAX_DEPTH: usize = 256;
/// Largest exponent after `^`.
pub const MAX_EXPONENT: u64 = 4096;
/// Largest degree of any intermediate polynomial.
pub const MAX_DEGREE: usize = 4096;
/// Largest coefficient size, in bits, of any intermediate polynomial.
pub const MAX_COEFF_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected {
        expected: Vec<&'static str>,
        found: String,
    },
    NonConstantDivisor,
    DivisionByZero,
    TooDeep,
    TooLarge(&'static str),
}

/// Failure with a byte offset into the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: ", self.position + 1)?;
        match &self.kind {
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::NonConstantDivisor => {
                write!(f, "division is only allowed by a nonzero constant")
            }
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::TooDeep => write!(f, "nesting deeper than {MAX_DEPTH}"),
            ParseErrorKind::TooLarge(what) => write!(f, "{what} too large"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Coefficient fields the parser can target.
pub trait Scalar: Field {
    /// Storage size of a coefficient, for the growth guard.
    fn bits(&self, a: &Self::Elem) -> u64;
}

impl Scalar for Rationals {
    fn bits(&self, a: &Rational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
}

impl Scalar for PrimeField {
    fn bits(&self, _: &u64) -> u64 {
        64
    }
}

pub fn parse_poly<F: Scalar>(src: &str, field: &F) -> Result<Poly<F::Elem>, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        depth: 0,
        ring: PolyRing::new(field.clone()),
    };
    let f = p.expr()?;
    p.expect_end()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {n}"),
            Tok::T => "'t'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["integer", "'t'", "'('", "'-'", "'+'"];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b't' => Tok::T,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::Unexpected {
                        expected: OPERAND.to_vec(),
                        found: format!("{ch:?}"),
                    },
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<F: Scalar> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    depth: usize,
    ring: PolyRing<F>,
}

impl<F: Scalar> Parser<F> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            position: self.offset(),
            kind: ParseErrorKind::Unexpected {
                expected: expected.to_vec(),
                found: self.peek().describe(),
            },
        }
    }

    fn error(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { position: at, kind }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(self.offset(), ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn guard(&self, f: Poly<F::Elem>, at: usize) -> Result<Poly<F::Elem>, ParseError> {
        if f.deg().unwrap_or(0) > MAX_DEGREE {
            return Err(self.error(at, ParseErrorKind::TooLarge("degree")));
        }
        if max_bits(&self.ring, &f) > MAX_COEFF_BITS {
            return Err(self.error(at, ParseErrorKind::TooLarge("coefficient")));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.guard(self.ring.add(&acc, &rhs), at)?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.guard(self.ring.sub(&acc, &rhs), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    if acc.deg().unwrap_or(0) + rhs.deg().unwrap_or(0) > MAX_DEGREE {
                        return Err(self.error(at, ParseErrorKind::TooLarge("degree")));
                    }
                    acc = self.guard(self.ring.mul(&acc, &rhs), at)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs_at = self.offset();
                    let rhs = self.unary()?;
                    let k = self.ring.base();
                    let c = match rhs.deg() {
                        None => return Err(self.error(rhs_at, ParseErrorKind::DivisionByZero)),
                        Some(0) => rhs.coeffs()[0].clone(),
                        Some(_) => {
                            return Err(self.error(rhs_at, ParseErrorKind::NonConstantDivisor))
                        }
                    };
                    let inv = k
                        .inv(&c)
                        .ok_or_else(|| self.error(rhs_at, ParseErrorKind::DivisionByZero))?;
                    acc = self.guard(self.ring.scale(&acc, &inv), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        match self.peek() {
            Tok::Minus | Tok::Plus => {
                let neg = self.bump() == Tok::Minus;
                self.enter()?;
                let f = self.unary()?;
                self.depth -= 1;
                Ok(if neg { self.ring.neg(&f) } else { f })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.bump();
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                let e_at = self.offset();
                self.bump();
                match n.to_u64() {
                    Some(e) if e <= MAX_EXPONENT => e,
                    _ => return Err(self.error(e_at, ParseErrorKind::TooLarge("exponent"))),
                }
            }
            _ => return Err(self.unexpected(&["nonnegative integer exponent"])),
        };
        let d = base.deg().unwrap_or(0) as u64;
        if d * e > MAX_DEGREE as u64 {
            return Err(self.error(at, ParseErrorKind::TooLarge("degree")));
        }
        // coefficients of f^e take at most e·(bits + log2(deg f + 1)) bits
        let b = max_bits(&self.ring, &base) + (64 - (d + 1).leading_zeros()) as u64;
        if b.saturating_mul(e) > MAX_COEFF_BITS {
            return Err(self.error(at, ParseErrorKind::TooLarge("coefficient")));
        }
        Ok(self.ring.pow(&base, e))
    }

    fn atom(&mut self) -> Result<Poly<F::Elem>, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let c = self.ring.base().from_int(&n);
                self.guard(self.ring.constant(c), at)
            }
            Tok::T => {
                self.bump();
                Ok(self.ring.var())
            }
            Tok::LParen => {
                self.bump();
                self.enter()?;
                let f = self.expr()?;
                self.depth -= 1;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "'+'", "'-'", "'*'", "'/'", "'^'"]));
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.unexpected(&["integer", "'t'", "'('"])),
        }
    }
}

fn max_bits<F: Scalar>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> u64 {
    f.coeffs()
        .iter()
        .map(|c| ring.base().bits(c))
        .max()
        .unwrap_or(0)
}
