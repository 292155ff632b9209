//! Text forms of field elements.
//!
//! Polynomials and rational functions are written as ordinary expressions in `x`, with
//! coefficients that are integers (reduced mod p) or parenthesised expressions in the
//! extension generator `t`:
//!
//! ```text
//! x^2 + (t+1)*x + 1        1/(x^3 + x + 1)        x^-2 + 2*x^-3
//! ```
//!
//! Truncated series use the literal `{floor: -12, top: -1, coeffs: [..]}` with coefficients
//! listed from `x^top` down to `x^floor`; an optional `exact: true` marks a Laurent polynomial.

use super::field::{FieldRef, Fq};
use super::kinf::KInf;
use super::poly::Poly;
use super::rational::RationalFunc;
use super::series::LaurentSeries;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| format!("number too large: {s}"))?));
            }
            'x' => out.push(Tok::X),
            't' => out.push(Tok::T),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => return Err(format!("unexpected character '{other}'")),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a FieldRef,
    toks: Vec<Tok>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, String>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> PResult<RationalFunc> {
        let mut acc = self.product()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<RationalFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| "division by zero".to_string())?;
                }
                // juxtaposition: 3x, (t+1)x
                Some(Tok::Num(_) | Tok::X | Tok::T | Tok::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<RationalFunc> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn exponent(&mut self) -> PResult<i64> {
        match self.next() {
            Some(Tok::Minus) => Ok(-self.exponent()?),
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| "exponent too large".to_string()),
            Some(Tok::LParen) => {
                let e = self.exponent()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err("expected ')' after exponent".into()),
                }
            }
            other => Err(format!("expected integer exponent, found {other:?}")),
        }
    }

    fn power(&mut self) -> PResult<RationalFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        if e.unsigned_abs() > 4096 {
            return Err(format!("exponent {e} out of range"));
        }
        let mut acc = RationalFunc::one(self.field);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        if e < 0 {
            acc = acc.inv().map_err(|_| "negative power of zero".to_string())?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<RationalFunc> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let c = self.field.from_int((n % self.field.p() as u64) as i64);
                Ok(RationalFunc::constant(self.field, c))
            }
            Some(Tok::X) => Ok(RationalFunc::x_pow(self.field, 1)),
            Some(Tok::T) => {
                let t = self
                    .field
                    .generator()
                    .map_err(|_| "'t' used over a prime field".to_string())?;
                Ok(RationalFunc::constant(self.field, t))
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err("unbalanced parentheses".into()),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parse a rational-function expression.
pub fn parse_rational(field: &FieldRef, src: &str) -> Result<RationalFunc> {
    let toks = tokenize(src).map_err(|m| Error::parse(src, m))?;
    if toks.is_empty() {
        return Err(Error::parse(src, "empty expression"));
    }
    let mut p = Parser { field, toks, pos: 0 };
    let v = p.sum().map_err(|m| Error::parse(src, m))?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(src, format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

/// Parse a polynomial expression (must have no denominator).
pub fn parse_poly(field: &FieldRef, src: &str) -> Result<Poly> {
    let r = parse_rational(field, src)?;
    if !r.is_poly() {
        return Err(Error::parse(src, "expected a polynomial"));
    }
    Ok(r.num().clone())
}

/// Parse an element of F_q (an integer or an expression in `t`).
pub fn parse_constant(field: &FieldRef, src: &str) -> Result<Fq> {
    let r = parse_rational(field, src)?;
    match (r.is_poly(), r.num().degree()) {
        (true, None) => Ok(Fq::ZERO),
        (true, Some(0)) => Ok(r.num().coeff(0)),
        _ => Err(Error::parse(src, "expected a constant")),
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parse the series literal `{floor: F, top: T, coeffs: [c_T, ..., c_F]}`.
pub fn parse_series(field: &FieldRef, src: &str) -> Result<LaurentSeries> {
    let s = src.trim();
    let body = s
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| Error::parse(src, "series literal must be enclosed in braces"))?;
    let mut floor = None;
    let mut top = None;
    let mut coeffs = None;
    let mut exact = false;
    for part in split_top_level(body) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| Error::parse(src, format!("expected key: value, got '{part}'")))?;
        let value = value.trim();
        match key.trim() {
            "floor" => {
                floor = Some(value.parse::<i64>().map_err(|e| Error::parse(src, format!("floor: {e}")))?)
            }
            "top" => top = Some(value.parse::<i64>().map_err(|e| Error::parse(src, format!("top: {e}")))?),
            "exact" => {
                exact = value
                    .parse::<bool>()
                    .map_err(|e| Error::parse(src, format!("exact: {e}")))?
            }
            "coeffs" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(src, "coeffs must be a [..] list"))?;
                let list = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    split_top_level(inner)
                        .into_iter()
                        .map(|c| parse_constant(field, c.trim()))
                        .collect::<Result<Vec<_>>>()?
                };
                coeffs = Some(list);
            }
            other => return Err(Error::parse(src, format!("unknown series key '{other}'"))),
        }
    }
    let floor = floor.ok_or_else(|| Error::parse(src, "missing floor"))?;
    let top = top.ok_or_else(|| Error::parse(src, "missing top"))?;
    let coeffs = coeffs.ok_or_else(|| Error::parse(src, "missing coeffs"))?;
    if top < floor - 1 || coeffs.len() as i64 != top - floor + 1 {
        return Err(Error::parse(
            src,
            format!("expected {} coefficients for top {top} .. floor {floor}, got {}", top - floor + 1, coeffs.len()),
        ));
    }
    Ok(LaurentSeries::from_top_down(field, top, coeffs, exact))
}

/// Parse either a series literal or a rational-function expression.
pub fn parse_element(field: &FieldRef, src: &str) -> Result<KInf> {
    if src.trim_start().starts_with('{') {
        Ok(KInf::from_series(parse_series(field, src)?))
    } else {
        Ok(KInf::Exact(parse_rational(field, src)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;

    #[test]
    fn parses_polynomials() {
        let f = Field::prime(2).unwrap();
        let p = parse_poly(&f, "x^2 + 1").unwrap();
        assert_eq!(p, Poly::from_ints(&f, &[1, 0, 1]));
        let p = parse_poly(&f, "x*x + x + 1 + 1").unwrap();
        assert_eq!(p, Poly::from_ints(&f, &[0, 1, 1]));
    }

    #[test]
    fn parses_extension_coefficients() {
        let f = Field::with_order(4).unwrap();
        let p = parse_poly(&f, "x^2 + (t+1)*x + 1").unwrap();
        assert_eq!(p.to_string(), "x^2 + (t+1)*x + 1");
        assert!(parse_poly(&Field::prime(3).unwrap(), "t*x").is_err());
    }

    #[test]
    fn parses_rationals_and_laurent_terms() {
        let f = Field::prime(3).unwrap();
        let r = parse_rational(&f, "1/(x^3 + 2*x + 1)").unwrap();
        assert_eq!(r.den(), &Poly::from_ints(&f, &[1, 2, 0, 1]));
        let l = parse_rational(&f, "x^-2 + 2*x^-3").unwrap();
        assert_eq!(l.to_string(), "x^-2 + 2*x^-3");
        assert_eq!(parse_rational(&f, &l.to_string()).unwrap(), l);
        assert_eq!(parse_rational(&f, "-1").unwrap(), RationalFunc::constant(&f, f.from_int(2)));
    }

    #[test]
    fn rejects_garbage() {
        let f = Field::prime(2).unwrap();
        assert!(parse_rational(&f, "x +").is_err());
        assert!(parse_rational(&f, "1/0").is_err());
        assert!(parse_rational(&f, "y").is_err());
        assert!(parse_rational(&f, "(x").is_err());
        assert!(parse_rational(&f, "").is_err());
    }

    #[test]
    fn series_literal() {
        let f = Field::prime(2).unwrap();
        let s = parse_series(&f, "{floor: -4, top: -1, coeffs: [1, 0, 1, 1]}").unwrap();
        assert_eq!(s.floor(), -4);
        assert!(!s.is_exact());
        assert_eq!(s.coeff(-2).unwrap(), Fq::ZERO);
        assert_eq!(s.coeff(-3).unwrap(), Fq::ONE);
        assert_eq!(parse_series(&f, &s.to_string()).unwrap(), s);
        assert!(parse_series(&f, "{floor: -4, top: -1, coeffs: [1]}").is_err());
        let e = parse_element(&f, "{floor: -2, top: -1, coeffs: [1, 1], exact: true}").unwrap();
        assert!(e.is_exact());
    }
}
