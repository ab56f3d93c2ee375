//! Tiny arithmetic grammar for angle literals such as `pi/100`, `2pi/5`,
//! `-e+3` or `1.5e-3`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor | factor)*   // juxtaposition multiplies
//! factor := ('+' | '-') factor | atom
//! atom   := number | "pi" | "e" | '(' expr ')'
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Token {
    Num(f64),
    Pi,
    E,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn invalid(src: &str, why: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("cannot parse `{src}`: {why}"))
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'(' | b')' => {
                out.push(match c {
                    b'+' => Token::Plus,
                    b'-' => Token::Minus,
                    b'*' => Token::Star,
                    b'/' => Token::Slash,
                    b'(' => Token::Open,
                    _ => Token::Close,
                });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent only when digits follow, so `2e` reads as 2 * e
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lexeme = &src[start..i];
                let v: f64 = lexeme
                    .parse()
                    .map_err(|_| invalid(src, format!("bad number `{lexeme}`")))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                match src[start..i].to_ascii_lowercase().as_str() {
                    "pi" => out.push(Token::Pi),
                    "e" => out.push(Token::E),
                    other => return Err(invalid(src, format!("unknown name `{other}`"))),
                }
            }
            _ => {
                return Err(invalid(
                    src,
                    format!("unexpected character `{}`", c as char),
                ))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<f64> {
        let mut v = self.term()?;
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == Token::Plus { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<f64> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    v *= self.factor()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    v /= self.factor()?;
                }
                Some(Token::Num(_) | Token::Pi | Token::E | Token::Open) => v *= self.atom()?,
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<f64> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<f64> {
        match self.next() {
            Some(Token::Num(v)) => Ok(v),
            Some(Token::Pi) => Ok(std::f64::consts::PI),
            Some(Token::E) => Ok(std::f64::consts::E),
            Some(Token::Open) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(v),
                    _ => Err(invalid(self.src, "missing `)`")),
                }
            }
            Some(t) => Err(invalid(self.src, format!("unexpected {t:?}"))),
            None => Err(invalid(self.src, "unexpected end of input")),
        }
    }
}

/// Evaluates one angle literal; the result must be finite.
pub fn parse_angle(src: &str) -> Result<f64> {
    let mut p = Parser {
        src,
        tokens: tokenize(src)?,
        pos: 0,
    };
    if p.tokens.is_empty() {
        return Err(invalid(src, "empty expression"));
    }
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(invalid(src, "trailing input"));
    }
    if !v.is_finite() {
        return Err(invalid(src, "value is not finite"));
    }
    Ok(v)
}

/// Three comma-separated literals.
pub fn parse_triple(src: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected three comma-separated values, got `{src}`"
        )));
    }
    Ok([
        parse_angle(parts[0])?,
        parse_angle(parts[1])?,
        parse_angle(parts[2])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn literals() {
        let cases = [
            ("pi", PI),
            ("e", E),
            ("PI", PI),
            ("pi/100", PI / 100.0),
            ("2pi/5", 2.0 * PI / 5.0),
            ("2*pi/5", 2.0 * PI / 5.0),
            ("-pi", -PI),
            ("e+3", E + 3.0),
            ("0.2", 0.2),
            ("1.5e-3", 1.5e-3),
            ("2e", 2.0 * E),
            ("(1+2)*3", 9.0),
            ("1 - 2 - 3", -4.0),
            ("8/4/2", 1.0),
            ("3pi(1+1)", 6.0 * PI),
            (" 1 ", 1.0),
        ];
        for (src, want) in cases {
            assert_eq!(parse_angle(src).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for src in ["", "pie", "1+", "(1", "1)", "1/0", "2..3", "x", "1,2", "--"] {
            assert!(parse_angle(src).is_err(), "{src}");
        }
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("pi,e,3").unwrap(), [PI, E, 3.0]);
        assert_eq!(parse_triple("1,0,0").unwrap(), [1.0, 0.0, 0.0]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,2,3,4").is_err());
        assert!(parse_triple("1,,3").is_err());
    }
}
