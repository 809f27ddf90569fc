//! Recursive-descent parser for the expression text format.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/'|<juxtaposition>) power)*
//! power  := unary ('^' ['-'|'+'] int)?
//! unary  := '-' unary | atom
//! atom   := int | 'q' | generator | '(' expr ')'
//! ```
//!
//! Generator names are taken from the alphabet; names with an index such as
//! `xp(-1)` or `a(2)` are recognized when the whole token is declared.
//! Division is only by scalars; negative powers are allowed on scalars and on
//! generators that belong to an inverse pair.

use crate::error::{QavError, Result};
use crate::freealg::{Alphabet, NCPoly, Word};
use crate::scalars::QRat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str, alpha: &Alphabet) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => lx.push(i, Tok::Plus, &mut i),
                '-' => lx.push(i, Tok::Minus, &mut i),
                '*' => lx.push(i, Tok::Star, &mut i),
                '/' => lx.push(i, Tok::Slash, &mut i),
                '^' => lx.push(i, Tok::Caret, &mut i),
                '(' => lx.push(i, Tok::LParen, &mut i),
                ')' => lx.push(i, Tok::RParen, &mut i),
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n = src[start..i].parse::<i64>().map_err(|e| QavError::Parse {
                        pos: start,
                        msg: e.to_string(),
                    })?;
                    lx.toks.push((start, Tok::Int(n)));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    let mut end = i;
                    // indexed generator names: `xp(-1)`
                    if i < bytes.len() && bytes[i] == b'(' {
                        if let Some(close) = src[i..].find(')') {
                            let cand: String =
                                src[start..i + close + 1].chars().filter(|c| !c.is_whitespace()).collect();
                            let cand_primed = primes_after(src, i + close + 1);
                            let full = format!("{cand}{}", "'".repeat(cand_primed));
                            if alpha.id(&full).is_some() {
                                end = i + close + 1 + cand_primed;
                                lx.toks.push((start, Tok::Ident(full)));
                                i = end;
                                continue;
                            }
                        }
                    }
                    let primes = primes_after(src, end);
                    end += primes;
                    i = end;
                    lx.toks.push((start, Tok::Ident(src[start..end].to_string())));
                }
                _ => {
                    return Err(QavError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
                }
            }
        }
        let _ = lx.src;
        Ok(lx.toks)
    }

    fn push(&mut self, pos: usize, t: Tok, i: &mut usize) {
        self.toks.push((pos, t));
        *i += 1;
    }
}

fn primes_after(src: &str, at: usize) -> usize {
    src[at..].bytes().take_while(|&b| b == b'\'').count()
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    alpha: &'a Alphabet,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(QavError::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.term()?.neg()
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.power()?);
            } else if self.eat(&Tok::Slash) {
                let at = self.offset();
                let d = self.power()?;
                let Some(s) = d.as_scalar() else {
                    return Err(QavError::Parse { pos: at, msg: "division by a non-scalar".into() });
                };
                if s.is_zero() {
                    return Err(QavError::Parse { pos: at, msg: "division by zero".into() });
                }
                acc = acc.scale(&s.inv());
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base_at = self.offset();
        let (base, letter) = self.unary()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected integer exponent");
        };
        self.pos += 1;
        if !neg {
            return Ok(base.pow(n as u32));
        }
        if let Some(s) = base.as_scalar() {
            if s.is_zero() {
                return Err(QavError::Parse { pos: base_at, msg: "zero to a negative power".into() });
            }
            return Ok(NCPoly::scalar(s.pow(-n)));
        }
        if let Some(g) = letter {
            if let Some(inv) = self.alpha.generator(g).inverse {
                return Ok(NCPoly::gen(inv).pow(n as u32));
            }
        }
        Err(QavError::Parse { pos: base_at, msg: "negative power of a non-invertible factor".into() })
    }

    /// Returns the parsed value and, for a bare generator, its id.
    fn unary(&mut self) -> Result<(NCPoly, Option<u16>)> {
        if self.eat(&Tok::Minus) {
            let (v, _) = self.unary()?;
            return Ok((v.neg(), None));
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok((NCPoly::scalar(QRat::from(n)), None))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                if let Some(g) = self.alpha.id(&name) {
                    Ok((NCPoly::word(Word::letter(g)), Some(g)))
                } else if name == "q" {
                    Ok((NCPoly::scalar(QRat::q()), None))
                } else {
                    Err(QavError::Parse { pos: at, msg: format!("unknown generator `{name}`") })
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok((v, None))
            }
            _ => self.err("expected a number, `q`, a generator or `(`"),
        }
    }
}

/// Parses an element of the free algebra on `alpha`.
pub fn parse_poly(src: &str, alpha: &Alphabet) -> Result<NCPoly> {
    let toks = Lexer::run(src, alpha)?;
    if toks.is_empty() {
        return Err(QavError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, alpha, end: src.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses a scalar in `Q(q)`, e.g. `(q - q^-1)^-1`.
pub fn parse_scalar(src: &str) -> Result<QRat> {
    let empty = Alphabet::new::<&str>(&[]);
    let v = parse_poly(src, &empty)?;
    v.as_scalar().ok_or(QavError::Parse { pos: 0, msg: "not a scalar".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_minus_qinv;

    fn alpha() -> Alphabet {
        Alphabet::new(&["f2", "f1", "k2inv", "k2", "k1inv", "k1", "e1", "e2", "xp(-1)", "xp(1)"])
            .with_inverse_pair("k1", "k1inv")
            .with_inverse_pair("k2", "k2inv")
    }

    #[test]
    fn scalar_syntax() {
        assert_eq!(parse_scalar("(q - q^-1)^-1").unwrap(), q_minus_qinv().inv());
        assert_eq!(parse_scalar("q^2 + 1 + q^-2").unwrap(), QRat::laurent(-2, &[1, 0, 1, 0, 1]));
        assert_eq!(parse_scalar("-3/6").unwrap(), QRat::ratio(-1, 2));
        assert_eq!(parse_scalar("2q").unwrap(), &QRat::from(2) * &QRat::q());
    }

    #[test]
    fn poly_syntax() {
        let a = alpha();
        let p = parse_poly("e1*f1 - f1*e1 - (k1 - k1^-1)/(q - q^-1)", &a).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(parse_poly("k1^-2", &a).unwrap(), NCPoly::monomial(&[4, 4]));
        assert_eq!(parse_poly("e1 e2", &a).unwrap(), NCPoly::monomial(&[6, 7]));
        assert_eq!(parse_poly("xp(-1)*xp(1)", &a).unwrap(), NCPoly::monomial(&[8, 9]));
    }

    #[test]
    fn errors_carry_positions() {
        let a = alpha();
        match parse_poly("e1 + foo", &a) {
            Err(QavError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("e1 / f1", &a).is_err());
        assert!(parse_poly("e1^-1", &a).is_err());
        assert!(parse_poly("(e1", &a).is_err());
    }

    #[test]
    fn printed_forms_reparse() {
        let a = alpha();
        for src in [
            "e1*f1 - f1*e1 - (k1 - k1^-1)/(q - q^-1)",
            "(1 - q^2 - q^-2)*e1^2*e2*e1 + e2*e1^3/(q + q^-1)",
            "-q^-2*k2^-1*f2 + 7/3*e2",
        ] {
            let p = parse_poly(src, &a).unwrap();
            let printed = p.to_string_in(&a);
            assert_eq!(parse_poly(&printed, &a).unwrap(), p, "{src} -> {printed}");
        }
    }
}
