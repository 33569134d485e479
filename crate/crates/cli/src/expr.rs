//! Closed-form numeric expressions such as `atanh(sqrt(3)/2)` or `pi/6`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     = product (('+' | '-') product)*
//! product = unary (('*' | '/') unary)*
//! unary   = '-' unary | power
//! power   = atom ('^' unary)?
//! atom    = number | 'pi' | 'e' | ident '(' sum ')' | '(' sum ')'
//! ```

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

type Function = (&'static str, fn(f64) -> f64);

const FUNCTIONS: &[Function] = &[
    ("sqrt", f64::sqrt),
    ("exp", f64::exp),
    ("ln", f64::ln),
    ("sin", f64::sin),
    ("cos", f64::cos),
    ("tan", f64::tan),
    ("atan", f64::atan),
    ("sinh", f64::sinh),
    ("cosh", f64::cosh),
    ("tanh", f64::tanh),
    ("asinh", f64::asinh),
    ("acosh", f64::acosh),
    ("atanh", f64::atanh),
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc += self.product()?;
            } else if self.eat('-') {
                acc -= self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<f64, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc *= self.unary()?;
            } else if self.eat('/') {
                acc /= self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, ParseError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<f64, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(base.powf(self.unary()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<f64, ParseError> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        if self.eat('(') {
            let v = self.sum()?;
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            return Ok(v);
        }
        let rest = &self.src[start..];
        let c = rest.chars().next().unwrap_or(' ');
        if c.is_ascii_digit() || c == '.' {
            let len = number_len(rest);
            self.pos += len;
            return rest[..len]
                .parse()
                .or_else(|_| self.err(start, format!("malformed number `{}`", &rest[..len])));
        }
        if c.is_ascii_alphabetic() {
            let len = rest
                .find(|c: char| !c.is_ascii_alphanumeric())
                .unwrap_or(rest.len());
            let name = &rest[..len];
            self.pos += len;
            return match name {
                "pi" => Ok(std::f64::consts::PI),
                "e" => Ok(std::f64::consts::E),
                _ => {
                    let Some(&(_, f)) = FUNCTIONS.iter().find(|(n, _)| *n == name) else {
                        return self.err(start, format!("unknown name `{name}`"));
                    };
                    if !self.eat('(') {
                        return self.err(self.pos, format!("expected `(` after `{name}`"));
                    }
                    let arg = self.sum()?;
                    if !self.eat(')') {
                        return self.err(self.pos, "expected `)`");
                    }
                    Ok(f(arg))
                }
            };
        }
        self.err(start, format!("unexpected `{c}`"))
    }
}

/// Length of the numeric literal at the start of `s` (digits, one dot,
/// optional exponent).
fn number_len(s: &str) -> usize {
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
        i += 1;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

/// Evaluates `src`; the result must be finite.
pub fn eval(src: &str) -> Result<f64, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let v = p.sum()?;
    if p.peek().is_some() {
        return p.err(p.pos, "trailing input");
    }
    if !v.is_finite() {
        return p.err(0, format!("`{src}` is not finite"));
    }
    Ok(v)
}
