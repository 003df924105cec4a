//! Text format for rings, elements and generator lists.
//!
//! ```text
//! ring := term ( "x" term )*                      product, left-associative
//! term := "Z/" nat [ "[x]/(" poly ")" ] | "(" ring ")"
//! poly := mono ( "+" mono )*
//! mono := nat | [ nat "*" ] "x" [ "^" nat ]
//! ```
//!
//! Whitespace between tokens is ignored. The letter `x` is a single token; at
//! ring level, between two terms, it is the product separator, and inside the
//! parentheses after `[x]/` it is the indeterminate.
//!
//! Element literals follow the ring's shape: a natural number for `Z/n`
//! (reduced mod `n`), a `poly` for a quotient (reduced by the modulus), and
//! `(left,right)` for a product. Generator lists are comma-separated element
//! literals; the empty string is the empty list.

use std::fmt;

use crate::error::Error;
use crate::ring::{Element, Ring, RingDescriptor, Value};

/// Byte offsets into the input, `start <= end <= input.len()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    ModulusTooSmall,
    NonMonicModulus,
    DegreeZeroModulus,
    ShapeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
    /// Tokens that would have been accepted at `span`, for syntax errors.
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}..{}", self.message, self.span.start, self.span.end)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Z,
    X,
    Nat(u64),
    Slash,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Plus,
    Star,
    Caret,
    Comma,
    Eof,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Z => "'Z'".into(),
            Tok::X => "'x'".into(),
            Tok::Nat(n) => format!("number {n}"),
            Tok::Slash => "'/'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Comma => "','".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'Z' => Tok::Z,
            b'x' => Tok::X,
            b'/' => Tok::Slash,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let span = SourceSpan { start, end: i };
                let n = text[start..i].parse::<u64>().map_err(|_| ParseError {
                    kind: ParseErrorKind::Syntax,
                    message: "number too large".into(),
                    span,
                    expected: Vec::new(),
                })?;
                out.push(Token { tok: Tok::Nat(n), span });
                continue;
            }
            _ => {
                let len = text[i..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax,
                    message: format!("unexpected character {:?}", &text[i..i + len]),
                    span: SourceSpan { start, end: i + len },
                    expected: Vec::new(),
                });
            }
        };
        i += 1;
        out.push(Token {
            tok,
            span: SourceSpan { start, end: i },
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan {
            start: text.len(),
            end: text.len(),
        },
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Token {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos];
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let t = self.peek();
        ParseError {
            kind: ParseErrorKind::Syntax,
            message: format!("unexpected {}", t.tok.describe()),
            span: t.span,
            expected: expected.to_vec(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn nat(&mut self) -> Result<(u64, SourceSpan), ParseError> {
        match self.peek().tok {
            Tok::Nat(n) => Ok((n, self.bump().span)),
            _ => Err(self.unexpected(&["number"])),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    fn ring(&mut self) -> Result<RingDescriptor, ParseError> {
        let mut acc = self.term()?;
        while self.eat(Tok::X) {
            let rhs = self.term()?;
            acc = RingDescriptor::product(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingDescriptor, ParseError> {
        match self.peek().tok {
            Tok::LParen => {
                self.bump();
                let r = self.ring()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(r)
            }
            Tok::Z => {
                self.bump();
                self.expect(Tok::Slash, "'/'")?;
                let (n, n_span) = self.nat()?;
                if n < 2 {
                    return Err(ParseError {
                        kind: ParseErrorKind::ModulusTooSmall,
                        message: format!("modulus {n} is too small, need n >= 2"),
                        span: n_span,
                        expected: Vec::new(),
                    });
                }
                if !self.eat(Tok::LBracket) {
                    return Ok(RingDescriptor::Zmod(n));
                }
                self.expect(Tok::X, "'x'")?;
                self.expect(Tok::RBracket, "']'")?;
                self.expect(Tok::Slash, "'/'")?;
                self.expect(Tok::LParen, "'('")?;
                let (coeffs, poly_span) = self.poly(n)?;
                self.expect(Tok::RParen, "')'")?;
                let desc = RingDescriptor::quotient(n, coeffs);
                desc.canonicalize().map_err(|e| {
                    let kind = match e {
                        Error::DegreeZeroModulus => ParseErrorKind::DegreeZeroModulus,
                        _ => ParseErrorKind::NonMonicModulus,
                    };
                    ParseError {
                        kind,
                        message: e.to_string(),
                        span: poly_span,
                        expected: Vec::new(),
                    }
                })
            }
            _ => Err(self.unexpected(&["'Z'", "'('"])),
        }
    }

    /// Coefficients (constant term first) reduced mod `n`.
    fn poly(&mut self, n: u64) -> Result<(Vec<u64>, SourceSpan), ParseError> {
        let start = self.peek().span.start;
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (c, deg) = self.mono()?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] = ((coeffs[deg] as u128 + c as u128) % n as u128) as u64;
            if !self.eat(Tok::Plus) {
                break;
            }
        }
        let end = self.tokens[self.pos.saturating_sub(1)].span.end;
        Ok((coeffs, SourceSpan { start, end }))
    }

    fn mono(&mut self) -> Result<(u64, usize), ParseError> {
        let coeff = match self.peek().tok {
            Tok::Nat(c) => {
                self.bump();
                if !self.eat(Tok::Star) {
                    return Ok((c, 0));
                }
                c
            }
            Tok::X => 1,
            _ => return Err(self.unexpected(&["number", "'x'"])),
        };
        self.expect(Tok::X, "'x'")?;
        let deg = if self.eat(Tok::Caret) {
            let (d, span) = self.nat()?;
            // Exponents beyond this are never needed for rings under the size cap.
            usize::try_from(d).ok().filter(|&d| d <= 4096).ok_or(ParseError {
                kind: ParseErrorKind::Syntax,
                message: format!("exponent {d} is too large"),
                span,
                expected: Vec::new(),
            })?
        } else {
            1
        };
        Ok((coeff, deg))
    }

    fn element(&mut self, desc: &RingDescriptor) -> Result<Value, ParseError> {
        let start = self.peek();
        let shape_error = |found: &str| ParseError {
            kind: ParseErrorKind::ShapeMismatch,
            message: format!("{found} literal does not fit ring {desc}"),
            span: start.span,
            expected: Vec::new(),
        };
        match desc {
            RingDescriptor::Zmod(_) => match start.tok {
                Tok::Nat(n) => {
                    self.bump();
                    Ok(Value::Residue(n))
                }
                Tok::LParen => Err(shape_error("pair")),
                Tok::X => Err(shape_error("polynomial")),
                _ => Err(self.unexpected(&["number"])),
            },
            RingDescriptor::Quotient { base, .. } => match start.tok {
                Tok::Nat(_) | Tok::X => Ok(Value::Poly(self.poly(*base)?.0)),
                Tok::LParen => Err(shape_error("pair")),
                _ => Err(self.unexpected(&["number", "'x'"])),
            },
            RingDescriptor::Product(l, r) => match start.tok {
                Tok::LParen => {
                    self.bump();
                    let a = self.element(l)?;
                    self.expect(Tok::Comma, "','")?;
                    let b = self.element(r)?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Value::pair(a, b))
                }
                Tok::Nat(_) | Tok::X => Err(shape_error("scalar")),
                _ => Err(self.unexpected(&["'('"])),
            },
        }
    }
}

pub fn parse_ring(text: &str) -> Result<RingDescriptor, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

/// Parses the ring and builds it. Size limits surface as a parse error on the whole input.
pub fn parse_and_make_ring(text: &str) -> Result<Ring, ParseError> {
    let desc = parse_ring(text)?;
    Ring::new(&desc).map_err(|e| ParseError {
        kind: ParseErrorKind::Syntax,
        message: e.to_string(),
        span: SourceSpan {
            start: 0,
            end: text.len(),
        },
        expected: Vec::new(),
    })
}

fn to_element(ring: &Ring, value: &Value, span: SourceSpan) -> Result<Element, ParseError> {
    ring.from_value(value).map_err(|e| ParseError {
        kind: ParseErrorKind::ShapeMismatch,
        message: e.to_string(),
        span,
        expected: Vec::new(),
    })
}

pub fn parse_element(text: &str, ring: &Ring) -> Result<Element, ParseError> {
    let mut p = Parser::new(text)?;
    let start = p.peek().span.start;
    let v = p.element(ring.descriptor())?;
    p.finish()?;
    to_element(ring, &v, SourceSpan { start, end: text.len() })
}

pub fn parse_generators(text: &str, ring: &Ring) -> Result<Vec<Element>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.peek().tok == Tok::Eof {
        return Ok(out);
    }
    loop {
        let start = p.peek().span.start;
        let v = p.element(ring.descriptor())?;
        let end = p.tokens[p.pos - 1].span.end;
        out.push(to_element(ring, &v, SourceSpan { start, end })?);
        if !p.eat(Tok::Comma) {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}
