//! Text format for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' digits)? | '-' factor
//! atom   := number | number 'i' | 'i' | 'z' digits | '(' expr ')'
//! ```
//!
//! Numbers are decimal literals with an optional exponent (`0.5`, `3`,
//! `1e-7`). A trailing `i` with no space makes an imaginary literal (`2i`); a
//! bare `i` is the imaginary unit. Unary minus negates the whole factor, so
//! `-z1^2` is `-(z1^2)`. There is no implicit multiplication: `2z1` is an
//! error, write `2*z1`.

use std::fmt;

use num_complex::Complex64;

use crate::poly::{Monomial, MultiPoly};

/// Largest exponent literal accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;
/// Largest variable index accepted in `z<digits>`.
pub const MAX_VARIABLE: usize = 1024;
const MAX_DEPTH: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TokenKind {
    Number(f64),
    Imaginary(f64),
    Variable(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub position: usize,
    /// Source text of the token.
    pub text: String,
}

/// Parse failure with the byte offset of the offending token (equal to the
/// input length when the input ended early).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

fn error(message: impl Into<String>, offset: usize, expected: &str) -> ParseError {
    ParseError {
        message: message.into(),
        offset,
        expected: expected.to_string(),
    }
}

/// Splits `text` into tokens, ending with a single [`TokenKind::End`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let simple = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'i' => Some(TokenKind::Imaginary(1.0)),
            _ => None,
        };
        if let Some(kind) = simple {
            pos += 1;
            tokens.push(Token {
                kind,
                position: start,
                text: text[start..pos].to_string(),
            });
            continue;
        }
        if b == b'z' {
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start + 1 {
                return Err(error("variable name needs an index", start, "z<digits>"));
            }
            let index = text[start + 1..pos]
                .parse::<usize>()
                .ok()
                .filter(|&i| i <= MAX_VARIABLE)
                .ok_or_else(|| error("variable index too large", start, ""))?;
            if index == 0 {
                return Err(error(
                    "variable index must be at least 1",
                    start,
                    "z1, z2, ...",
                ));
            }
            tokens.push(Token {
                kind: TokenKind::Variable(index),
                position: start,
                text: text[start..pos].to_string(),
            });
            continue;
        }
        if b.is_ascii_digit() || b == b'.' {
            let digits = |pos: &mut usize| {
                let s = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                *pos - s
            };
            let mut count = digits(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'.' {
                pos += 1;
                count += digits(&mut pos);
            }
            if count == 0 {
                return Err(error("malformed number", start, "digits"));
            }
            if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
                pos += 1;
                if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                    pos += 1;
                }
                if digits(&mut pos) == 0 {
                    return Err(error("malformed exponent in number", start, "digits"));
                }
            }
            let value: f64 = text[start..pos]
                .parse()
                .map_err(|_| error("malformed number", start, "number"))?;
            if !value.is_finite() {
                return Err(error("number out of range", start, "finite number"));
            }
            let kind = if pos < bytes.len() && bytes[pos] == b'i' {
                pos += 1;
                TokenKind::Imaginary(value)
            } else {
                TokenKind::Number(value)
            };
            tokens.push(Token {
                kind,
                position: start,
                text: text[start..pos].to_string(),
            });
            continue;
        }
        return Err(error(
            "unknown token",
            start,
            "number, i, variable, operator or parenthesis",
        ));
    }
    tokens.push(Token {
        kind: TokenKind::End,
        position: text.len(),
        text: String::new(),
    });
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    num_vars: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if t.kind != TokenKind::End {
            self.pos += 1;
        }
        t
    }

    fn constant(&self, c: Complex64) -> MultiPoly {
        MultiPoly::constant(self.num_vars, c)
    }

    fn checked(
        &self,
        result: Result<MultiPoly, crate::PolyError>,
        at: usize,
    ) -> Result<MultiPoly, ParseError> {
        match result {
            Ok(p) if p.is_canonical() => Ok(p),
            Ok(_) => Err(error("coefficient overflow", at, "")),
            Err(e) => Err(error(format!("cannot expand: {e}"), at, "")),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(error(
                "expression nested too deeply",
                self.peek().position,
                "",
            ));
        }
        let mut acc = self.term()?;
        loop {
            let tok = self.peek().clone();
            match tok.kind {
                TokenKind::Plus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = self.checked(acc.add(&rhs), tok.position)?;
                }
                TokenKind::Minus => {
                    self.next();
                    let rhs = self.term()?;
                    acc = self.checked(acc.sub(&rhs), tok.position)?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().kind == TokenKind::Star {
            let at = self.next().position;
            let rhs = self.factor()?;
            acc = self.checked(acc.mul(&rhs), at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.next();
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(error(
                    "expression nested too deeply",
                    self.peek().position,
                    "",
                ));
            }
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(inner.neg());
        }
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        let at = self.next().position;
        let tok = self.next().clone();
        let exponent = match tok.kind {
            TokenKind::Number(_) if tok.text.bytes().all(|b| b.is_ascii_digit()) => tok
                .text
                .parse::<u32>()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| error("exponent too large", tok.position, ""))?,
            _ => {
                return Err(error(
                    "exponent must be a nonnegative integer literal",
                    tok.position,
                    "nonnegative integer",
                ))
            }
        };
        self.checked(base.pow(exponent), at)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let tok = self.next().clone();
        match tok.kind {
            TokenKind::Number(v) => Ok(self.constant(Complex64::new(v, 0.0))),
            TokenKind::Imaginary(v) => Ok(self.constant(Complex64::new(0.0, v))),
            TokenKind::Variable(k) => {
                Ok(MultiPoly::var(self.num_vars, k).expect("num_vars covers every variable token"))
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.kind != TokenKind::RParen {
                    return Err(error("unbalanced parentheses", close.position, "')'"));
                }
                Ok(inner)
            }
            TokenKind::End => Err(error(
                "unexpected end of input",
                tok.position,
                "number, i, variable or '('",
            )),
            _ => Err(error(
                format!("unexpected '{}'", tok.text),
                tok.position,
                "number, i, variable or '('",
            )),
        }
    }
}

/// Parses a polynomial expression into canonical form.
///
/// The variable count is the largest index that occurs (at least 1), or
/// `expected_vars` when given, which must cover every occurring index.
pub fn parse_poly(text: &str, expected_vars: Option<usize>) -> Result<MultiPoly, ParseError> {
    let tokens = tokenize(text)?;
    let mut max_index = 0;
    let mut max_at = 0;
    for t in &tokens {
        if let TokenKind::Variable(k) = t.kind {
            if k > max_index {
                max_index = k;
                max_at = t.position;
            }
        }
    }
    let num_vars = match expected_vars {
        Some(0) => return Err(error("variable count must be positive", 0, "")),
        Some(m) if m < max_index => {
            return Err(error(
                format!("variable z{max_index} exceeds the declared count {m}"),
                max_at,
                "",
            ))
        }
        Some(m) => m,
        None => max_index.max(1),
    };
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        num_vars,
        depth: 0,
    };
    let p = parser.expr()?;
    let tail = parser.peek();
    match tail.kind {
        TokenKind::End => Ok(p),
        TokenKind::RParen => Err(error(
            "unbalanced parentheses",
            tail.position,
            "operator or end",
        )),
        _ => Err(error(
            format!("unexpected '{}'", tail.text),
            tail.position,
            "'+', '-', '*', '^' or end",
        )),
    }
}

/// Shortest round-trip rendering of a nonnegative finite number.
fn format_number(x: f64) -> String {
    if x == 0.0 || (1e-5..1e16).contains(&x) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_monomial(m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("z{}", i + 1)
            } else {
                format!("z{}^{}", i + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders `p` in descending graded-lex order. The output parses back to
/// exactly the same term map.
pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_null() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let mono = format_monomial(m);
        let (negative, body) = if c.im == 0.0 {
            let mag = c.re.abs();
            let body = match (mono.is_empty(), mag == 1.0) {
                (true, _) => format_number(mag),
                (false, true) => mono,
                (false, false) => format!("{}*{}", format_number(mag), mono),
            };
            (c.re < 0.0, body)
        } else if c.re == 0.0 {
            let mag = c.im.abs();
            let unit = if mag == 1.0 {
                "i".to_string()
            } else {
                format!("{}i", format_number(mag))
            };
            let body = if mono.is_empty() {
                unit
            } else {
                format!("{unit}*{mono}")
            };
            (c.im < 0.0, body)
        } else {
            let re = if c.re < 0.0 {
                format!("-{}", format_number(-c.re))
            } else {
                format_number(c.re)
            };
            let sign = if c.im < 0.0 { '-' } else { '+' };
            let coeff = format!("({re}{sign}{}i)", format_number(c.im.abs()));
            let body = if mono.is_empty() {
                coeff
            } else {
                format!("{coeff}*{mono}")
            };
            (false, body)
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn example_cubic() {
        let p = parse_poly("(z1-2)*(z1^2+1)", None).unwrap();
        let expected = MultiPoly::from_terms(
            1,
            [
                (vec![3], c(1.0, 0.0)),
                (vec![2], c(-2.0, 0.0)),
                (vec![1], c(1.0, 0.0)),
                (vec![0], c(-2.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn two_variable_product() {
        let p = parse_poly("z1*z2 - 1", None).unwrap();
        assert_eq!(p.num_vars(), 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&[1, 1]), c(1.0, 0.0));
        assert_eq!(p.coefficient(&[0, 0]), c(-1.0, 0.0));
    }

    #[test]
    fn negative_exponent_rejected_at_minus() {
        let err = parse_poly("z1^-1", None).unwrap_err();
        assert_eq!(err.offset, 3);
    }

    #[test]
    fn grammar_errors() {
        for (text, offset) in [
            ("2z1", 1),
            ("z0", 0),
            ("(z1+1", 5),
            ("z1+1)", 4),
            ("z1^2.5", 3),
            ("z1 $ 2", 3),
            ("", 0),
            ("z1 z2", 3),
            ("2 i", 2),
        ] {
            let err = parse_poly(text, None).unwrap_err();
            assert_eq!(err.offset, offset, "{text}: {err}");
        }
        assert!(parse_poly("z3", Some(2)).is_err());
        assert!(parse_poly("1e400", None).is_err());
    }

    #[test]
    fn complex_constants() {
        let p = parse_poly("2+1i", None).unwrap();
        assert_eq!(p.coefficient(&[0]), c(2.0, 1.0));
        assert_eq!(
            parse_poly("3i", None).unwrap().coefficient(&[0]),
            c(0.0, 3.0)
        );
        assert_eq!(
            parse_poly("i*i", None).unwrap().coefficient(&[0]),
            c(-1.0, 0.0)
        );
        assert_eq!(
            parse_poly("1.5e-3", None).unwrap().coefficient(&[0]),
            c(1.5e-3, 0.0)
        );
    }

    #[test]
    fn precedence() {
        let p = parse_poly("z1+z2*z1", None).unwrap();
        assert_eq!(p.coefficient(&[1, 0]), c(1.0, 0.0));
        assert_eq!(p.coefficient(&[1, 1]), c(1.0, 0.0));
        let q = parse_poly("2*z1^2", None).unwrap();
        assert_eq!(q.coefficient(&[2]), c(2.0, 0.0));
        let r = parse_poly("-z1^2", None).unwrap();
        assert_eq!(r.coefficient(&[2]), c(-1.0, 0.0));
        let s = parse_poly("(-z1)^2", None).unwrap();
        assert_eq!(s.coefficient(&[2]), c(1.0, 0.0));
    }

    #[test]
    fn expected_vars_pads() {
        let p = parse_poly("z1 + 1", Some(3)).unwrap();
        assert_eq!(p.num_vars(), 3);
        assert_eq!(parse_poly("5", None).unwrap().num_vars(), 1);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_poly(&MultiPoly::zero(2)), "0");
        assert_eq!(
            format_poly(&parse_poly("z1^2 - 1", None).unwrap()),
            "z1^2 - 1"
        );
        assert_eq!(
            format_poly(&parse_poly("(z1-2)*(z1^2+1)", None).unwrap()),
            "z1^3 - 2*z1^2 + z1 - 2"
        );
        assert_eq!(
            format_poly(&parse_poly("-i*z1*z2 + (2-3i)*z2 + 1e-9", None).unwrap()),
            "-i*z1*z2 + (2-3i)*z2 + 1e-9"
        );
    }
}
