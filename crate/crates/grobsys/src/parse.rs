//! Parser for the polynomial text syntax: `+ - * ^`, integer and rational
//! literals (`3/4`), parenthesised subexpressions, names matching
//! `[a-zA-Z][a-zA-Z0-9_]*`.  Implicit multiplication is rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{Context, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {col}: {msg}")]
pub struct PolyParseError {
    pub col: usize,
    pub msg: String,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T, PolyParseError> {
    Err(PolyParseError {
        col,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, PolyParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((col, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((col, Tok::Caret));
                i += 1;
            }
            '/' => {
                toks.push((col, Tok::Slash));
                i += 1;
            }
            '(' => {
                toks.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((col, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                toks.push((col, Tok::Int(lit.parse().unwrap())));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                toks.push((col, Tok::Name(name)));
            }
            _ => return err(col, format!("unexpected character `{}`", c)),
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.toks.last().map(|(c, _)| c + 1).unwrap_or(1)
    }
}

/// Parses a polynomial over the given context.
pub fn parse_poly(ctx: &Arc<Context>, text: &str) -> Result<Poly, PolyParseError> {
    let mut lx = lex(text)?;
    if lx.toks.is_empty() {
        return err(1, "empty polynomial");
    }
    let p = parse_expr(ctx, &mut lx)?;
    if let Some((col, t)) = lx.peek() {
        return err(*col, format!("unexpected token `{:?}`", t));
    }
    Ok(p)
}

fn parse_expr(ctx: &Arc<Context>, lx: &mut Lexer) -> Result<Poly, PolyParseError> {
    let mut negate = false;
    if let Some((_, Tok::Plus)) = lx.peek() {
        lx.next();
    } else if let Some((_, Tok::Minus)) = lx.peek() {
        lx.next();
        negate = true;
    }
    let mut acc = parse_term(ctx, lx)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match lx.peek() {
            Some((_, Tok::Plus)) => {
                lx.next();
                let t = parse_term(ctx, lx)?;
                acc = acc.add(&t);
            }
            Some((_, Tok::Minus)) => {
                lx.next();
                let t = parse_term(ctx, lx)?;
                acc = acc.sub(&t);
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(ctx: &Arc<Context>, lx: &mut Lexer) -> Result<Poly, PolyParseError> {
    let mut acc = parse_factor(ctx, lx)?;
    loop {
        match lx.peek() {
            Some((_, Tok::Star)) => {
                lx.next();
                let f = parse_factor(ctx, lx)?;
                acc = acc.mul(&f);
            }
            // An atom directly after another atom means implicit
            // multiplication, which the syntax forbids.
            Some((col, Tok::Name(_))) | Some((col, Tok::Int(_))) | Some((col, Tok::LParen)) => {
                return err(*col, "missing `*` (implicit multiplication not allowed)");
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_factor(ctx: &Arc<Context>, lx: &mut Lexer) -> Result<Poly, PolyParseError> {
    let (col, tok) = match lx.next() {
        Some(t) => t,
        None => return err(lx.end_col(), "expected a factor"),
    };
    let base = match tok {
        Tok::Name(name) => {
            if ctx.index_of(&name).is_none() {
                return err(col, format!("unknown name `{}`", name));
            }
            Poly::var(ctx, &name)
        }
        Tok::Int(n) => {
            // Rational literal: integer immediately followed by `/ integer`.
            if let Some((_, Tok::Slash)) = lx.peek() {
                lx.next();
                match lx.next() {
                    Some((dcol, Tok::Int(d))) => {
                        if d.is_zero() {
                            return err(dcol, "zero denominator");
                        }
                        Poly::constant(ctx, Rat::new(n, d))
                    }
                    Some((dcol, t)) => {
                        return err(dcol, format!("expected denominator, found `{:?}`", t))
                    }
                    None => return err(lx.end_col(), "expected denominator"),
                }
            } else {
                Poly::constant(ctx, Rat::from_integer(n))
            }
        }
        Tok::LParen => {
            let inner = parse_expr(ctx, lx)?;
            match lx.next() {
                Some((_, Tok::RParen)) => inner,
                Some((c, t)) => return err(c, format!("expected `)`, found `{:?}`", t)),
                None => return err(lx.end_col(), "unclosed parenthesis"),
            }
        }
        t => return err(col, format!("expected a factor, found `{:?}`", t)),
    };
    // Optional exponent.
    if let Some((_, Tok::Caret)) = lx.peek() {
        lx.next();
        match lx.next() {
            Some((_, Tok::Int(e))) => {
                let e: u32 = e
                    .try_into()
                    .map_err(|_| PolyParseError {
                        col,
                        msg: "exponent too large".into(),
                    })?;
                Ok(base.pow(e))
            }
            Some((c, t)) => err(c, format!("expected exponent, found `{:?}`", t)),
            None => err(lx.end_col(), "expected exponent"),
        }
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_parens() {
        let ctx = Context::lex(&["x"], &["a"]);
        let p = parse_poly(&ctx, "3/4*(x + a)^2 - x").unwrap();
        let q = parse_poly(&ctx, "3/4*x^2 + 3/2*x*a + 3/4*a^2 - x").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_double_caret() {
        let ctx = Context::lex(&["x"], &[]);
        let e = parse_poly(&ctx, "x^^2").unwrap_err();
        assert_eq!(e.col, 3);
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let ctx = Context::lex(&["x"], &["a"]);
        assert!(parse_poly(&ctx, "2x").is_err());
        assert!(parse_poly(&ctx, "a x").is_err());
    }

    #[test]
    fn reports_unknown_names() {
        let ctx = Context::lex(&["x"], &[]);
        let e = parse_poly(&ctx, "x + q").unwrap_err();
        assert_eq!(e.col, 5);
        assert!(e.msg.contains("unknown name"));
    }

    #[test]
    fn round_trips_canonical_printing(){
        let ctx = Context::lex(&["x", "y"], &["a"]);
        for text in ["x^2*a - 3*y + 1/2", "-x + y - a", "0", "5"] {
            let p = parse_poly(&ctx, text).unwrap();
            let q = parse_poly(&ctx, &p.to_string()).unwrap();
            assert_eq!(p, q);
        }
    }
}
