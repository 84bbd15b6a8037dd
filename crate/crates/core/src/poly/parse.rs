//! Text grammar for polynomials in `x` and `t`:
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' uint)?
//! var      := 'x' | 't'
//! ```
//!
//! Whitespace is insignificant and multiplication is always explicit.
//! Positions in errors are 1-based character columns.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::{fmt_rat, BiPoly, Rat, UniPoly};

/// Result of parsing: univariate in `x` when `t` does not occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Uni(UniPoly),
    Bi(BiPoly),
}

impl Parsed {
    pub fn into_bi(self) -> BiPoly {
        match self {
            Parsed::Uni(p) => BiPoly::from_uni(&p),
            Parsed::Bi(p) => p,
        }
    }

    /// The univariate polynomial in `x`, if `t` does not occur.
    pub fn into_x_poly(self) -> Option<UniPoly> {
        match self {
            Parsed::Uni(p) => Some(p),
            Parsed::Bi(p) => p.as_x_poly(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

/// Parses a polynomial. See the module docs for the grammar.
pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(match poly.as_x_poly() {
        Some(u) => Parsed::Uni(u),
        None => Parsed::Bi(poly),
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => alloc::format!("'{c}'"),
            None => String::from("end of input"),
        };
        ParseError {
            column: self.pos + 1,
            expected: expected.to_vec(),
            found,
        }
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let exp = self.uint()?;
            let exp = u32::try_from(&exp).map_err(|_| ParseError {
                column: self.pos,
                expected: alloc::vec!["exponent below 2^32"],
                found: alloc::format!("{exp}"),
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(BiPoly::x())
            }
            Some('t') => {
                self.pos += 1;
                Ok(BiPoly::t())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error(&["')'"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut value = Rat::from_integer(num.into());
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let col = self.pos + 1;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(ParseError {
                            column: col,
                            expected: alloc::vec!["nonzero denominator"],
                            found: String::from("'0'"),
                        });
                    }
                    value /= Rat::from_integer(den.into());
                }
                Ok(BiPoly::constant(value))
            }
            _ => Err(self.error(&["integer", "'x'", "'t'", "'('"])),
        }
    }

    fn uint(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(BigUint::parse_bytes(digits.as_bytes(), 10).expect("ascii digits"))
    }
}

/// Writes a sum of monomials in the grammar above: `3*x^2*t - t^3`.
pub(crate) fn write_terms<'a, I, const N: usize>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Rat, [(char, u32); N])>,
{
    let mut first = true;
    for (c, vars) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mut parts: Vec<String> = Vec::new();
        let has_vars = vars.iter().any(|&(_, e)| e > 0);
        if !mag.is_one() || !has_vars {
            parts.push(fmt_rat(&mag));
        }
        for (sym, e) in vars {
            match e {
                0 => {}
                1 => parts.push(alloc::format!("{sym}")),
                _ => parts.push(alloc::format!("{sym}^{e}")),
            }
        }
        f.write_str(&parts.join("*"))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
