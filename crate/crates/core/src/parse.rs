//! Text syntax for polynomials, lines and points.
//!
//! Polynomials use integer or rational coefficients, the variables `x`, `y`,
//! `z`, the operators `+ - * / ^` and parentheses. Whitespace is ignored and
//! juxtaposition multiplies, so `2x^2y - 3/4 z^3` is accepted. Division is only
//! allowed by nonzero constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{HomogeneousPoly, Monomial};

type Terms = BTreeMap<Monomial, BigRational>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
                continue;
            }
            'x' | 'X' => Tok::Var(0),
            'y' | 'Y' => Tok::Var(1),
            'z' | 'Z' => Tok::Var(2),
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' | '[' => Tok::LParen,
            ')' | ']' => Tok::RParen,
            other => {
                return Err(Error::Syntax {
                    position: i,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn add_into(acc: &mut Terms, other: Terms, sign: i32) {
    for (m, c) in other {
        let e = acc.entry(m).or_insert_with(BigRational::zero);
        if sign < 0 {
            *e -= c;
        } else {
            *e += c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut r = Terms::new();
    for (m1, c1) in a {
        for (m2, c2) in b {
            *r.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
        }
    }
    r.retain(|_, c| !c.is_zero());
    r
}

fn constant(c: BigRational) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert(Monomial::ONE, c);
    }
    t
}

fn as_constant(t: &Terms) -> Option<BigRational> {
    match t.len() {
        0 => Some(BigRational::zero()),
        1 => t.get(&Monomial::ONE).cloned(),
        _ => None,
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.position(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            let sign = match t {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            add_into(&mut acc, rhs, sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = mul_terms(&acc, &rhs);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.position();
                    let rhs = self.factor()?;
                    match as_constant(&rhs) {
                        Some(c) if !c.is_zero() => {
                            acc = mul_terms(&acc, &constant(BigRational::one() / c));
                        }
                        Some(_) => {
                            return Err(Error::Syntax {
                                position: at,
                                message: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Syntax {
                                position: at,
                                message: "division by a non-constant".into(),
                            })
                        }
                    }
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = mul_terms(&acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let inner = self.factor()?;
                Ok(mul_terms(&inner, &constant(-BigRational::one())))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let Ok(e) = u32::try_from(&n) else {
                return self.err("exponent too large");
            };
            if e > 200 {
                return self.err("exponent too large");
            }
            self.pos += 1;
            let mut acc = constant(BigRational::one());
            for _ in 0..e {
                acc = mul_terms(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Terms> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                let mut t = Terms::new();
                t.insert(Monomial::var(i), BigRational::one());
                Ok(t)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_terms(text: &str) -> Result<Terms> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            position: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let t = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses a homogeneous polynomial.
pub fn parse_poly(text: &str) -> Result<HomogeneousPoly> {
    HomogeneousPoly::from_terms(parse_terms(text)?, None)
}

/// Parses a curve: a nonzero homogeneous polynomial of degree at least 2.
pub fn parse_curve(text: &str) -> Result<HomogeneousPoly> {
    let f = parse_poly(text)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial is not a curve".into()));
    }
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall(f.degree()));
    }
    Ok(f)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = parse_terms(s)?;
    as_constant(&t).ok_or_else(|| Error::InvalidInput(format!("'{s}' is not a number")))
}

/// Splits on `,`, `:` and whitespace, ignoring one pair of enclosing brackets.
fn split_numbers(s: &str) -> Vec<String> {
    let s = s.trim();
    let s = s
        .strip_prefix(['(', '['])
        .and_then(|r| r.strip_suffix([')', ']']))
        .unwrap_or(s);
    s.split(|c: char| c == ',' || c == ':' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

/// A line given as a linear form or as a coefficient triple such as `1 -2 0`
/// or `(1, -2, 0)`.
pub fn parse_line(text: &str) -> Result<HomogeneousPoly> {
    let parts = split_numbers(text);
    if parts.len() == 3 && parts.iter().all(|p| !p.contains(['x', 'y', 'z', 'X', 'Y', 'Z'])) {
        let c: Vec<BigRational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
        let mut f = HomogeneousPoly::zero(1);
        for (i, v) in c.into_iter().enumerate() {
            f = f.add(&HomogeneousPoly::monomial(Monomial::var(i), v));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("the zero triple is not a line".into()));
        }
        return Ok(f);
    }
    let f = parse_poly(text)?;
    if f.degree() != 1 || f.is_zero() {
        return Err(Error::InvalidInput(format!("'{}' is not a linear form", text.trim())));
    }
    Ok(f)
}

/// One line per row of text (rows may also be separated by `;`); blank rows
/// and rows starting with `#` are skipped.
pub fn parse_arrangement(text: &str) -> Result<Vec<HomogeneousPoly>> {
    text.split(['\n', ';'])
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_line)
        .collect()
}

/// A projective point such as `(1:0:-2)`, `1,0,-2` or `1 0 -2`, with integer
/// or rational coordinates, normalized to primitive integers.
pub fn parse_point(text: &str) -> Result<[BigInt; 3]> {
    let parts = split_numbers(text);
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "'{}' is not a point with three coordinates",
            text.trim()
        )));
    }
    let c: Vec<BigRational> = parts.iter().map(|p| parse_rational(p)).collect::<Result<_>>()?;
    let ints = crate::linalg::clear_denominators(&c);
    crate::poly::pencil::normalize_point(&[ints[0].clone(), ints[1].clone(), ints[2].clone()])
}

/// Points separated by `;` or by closing parentheses.
pub fn parse_points(text: &str) -> Result<Vec<[BigInt; 3]>> {
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        if chunk.contains(')') {
            for piece in chunk.split_inclusive(')') {
                let piece = piece.trim().trim_start_matches(',').trim();
                if !piece.is_empty() {
                    out.push(parse_point(piece)?);
                }
            }
        } else {
            out.push(parse_point(chunk)?);
        }
    }
    Ok(out)
}
