//! Recursive-descent parser for the manifest expression grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?        int := '-'? digits | '(' '-'? digits ')'
//! atom  := digits | ident | '(' expr ')'
//! ```
//!
//! Identifiers must be declared symbols, except `u` and `tau`, which denote
//! the formal variables when they are not declared.

use num_bigint::BigInt;

use super::expr::ScalarExpr;
use super::poly::{Symbol, Q};
use crate::error::{Error, Result};

pub fn parse_expr(text: &str, symbols: &[Symbol]) -> Result<ScalarExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, symbols };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    symbols: &'a [Symbol],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.mul(&d.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ScalarExpr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<ScalarExpr> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.signed_int()?;
            self.expect(b')')?;
            e
        } else {
            self.signed_int()?
        };
        if e < 0 && base.is_zero() {
            return Err(Error::Syntax { pos: at, msg: "division by zero".into() });
        }
        base.pow(e)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = s
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "exponent too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = s.parse().expect("digits");
                Ok(ScalarExpr::constant(Q::from_bigint(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(s) = self.symbols.iter().find(|s| s.as_str() == name) {
                    return Ok(ScalarExpr::var(*s));
                }
                match name {
                    "u" => Ok(ScalarExpr::u()),
                    "tau" => Ok(ScalarExpr::tau()),
                    _ => Err(Error::UnknownIdentifier { name: name.to_string(), pos: start }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(v: &[&str]) -> Vec<Symbol> {
        v.iter().map(|s| Symbol::new(s)).collect()
    }

    #[test]
    fn precedence() {
        let s = syms(&["x"]);
        let a = parse_expr("-x^2", &s).unwrap();
        let b = parse_expr("0 - x*x", &s).unwrap();
        assert_eq!(a, b);
        let c = parse_expr("2^-1", &s).unwrap();
        assert_eq!(c.to_string(), "1/2");
    }

    #[test]
    fn errors() {
        let s = syms(&["z"]);
        assert!(matches!(parse_expr("z +", &s), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(
            parse_expr("z + w", &s),
            Err(Error::UnknownIdentifier { pos: 4, .. })
        ));
        assert!(matches!(parse_expr("1/(z-z)", &s), Err(Error::Syntax { .. })));
    }
}
