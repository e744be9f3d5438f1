//! Tokenizer shared by the scalar and expression grammars, and the scalar
//! literal parser (`3`, `-1/2`, `a1^2 - (a2 + 1)/3`, ...).

use num_bigint::BigInt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer {}", n),
            Tok::Ident(s) => format!("'{}'", s),
            Tok::Sym(c) => format!("'{}'", c),
            Tok::End => "end of input".into(),
        }
    }
}

/// A token stream with byte positions for error reporting.
#[derive(Clone, Debug)]
pub struct Lexer {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

const SYMBOLS: &str = "+-*/^()[],";

impl Lexer {
    pub fn new(src: &str) -> Result<Self> {
        let bytes: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                toks.push((start, Tok::Int(s.parse().expect("digits"))));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(bytes[start..i].iter().collect())));
            } else if SYMBOLS.contains(c) {
                toks.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                return Err(Error::Parse {
                    pos: i,
                    expected: "a token".into(),
                    found: format!("'{}'", c),
                });
            }
        }
        toks.push((bytes.len(), Tok::End));
        Ok(Lexer { toks, at: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    pub fn next(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn error(&self, expected: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("'{}'", c)))
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.peek() == &Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// An optionally signed integer, as used in exponents.
    pub fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.next() {
            Tok::Int(n) => {
                let v: i64 = n.try_into().map_err(|_| self.error("a small integer"))?;
                Ok(if neg { -v } else { v })
            }
            _ => {
                self.at -= 1;
                Err(self.error("an integer"))
            }
        }
    }
}

/// Parses a parameter name `a<k>` (one-based) into a zero-based index.
pub fn param_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('a')?;
    let k: usize = rest.parse().ok()?;
    (k >= 1).then(|| k - 1)
}

/// Parses a scalar literal. When `nparams` is given, parameters beyond it are
/// rejected.
pub fn parse_scalar(src: &str, nparams: Option<usize>) -> Result<Scalar> {
    let mut lx = Lexer::new(src)?;
    let s = scalar_expr(&mut lx, nparams)?;
    lx.expect_end()?;
    Ok(s)
}

/// Parses a comma-separated list of scalar literals.
pub fn parse_scalar_list(src: &str, nparams: Option<usize>) -> Result<Vec<Scalar>> {
    let mut lx = Lexer::new(src)?;
    let mut out = vec![scalar_expr(&mut lx, nparams)?];
    while lx.eat(',') {
        out.push(scalar_expr(&mut lx, nparams)?);
    }
    lx.expect_end()?;
    Ok(out)
}

pub(crate) fn scalar_expr(lx: &mut Lexer, np: Option<usize>) -> Result<Scalar> {
    let mut acc = scalar_term(lx, np)?;
    loop {
        if lx.eat('+') {
            acc = &acc + &scalar_term(lx, np)?;
        } else if lx.eat('-') {
            acc = &acc - &scalar_term(lx, np)?;
        } else {
            return Ok(acc);
        }
    }
}

fn scalar_term(lx: &mut Lexer, np: Option<usize>) -> Result<Scalar> {
    let mut acc = scalar_factor(lx, np)?;
    loop {
        if lx.eat('*') {
            acc = &acc * &scalar_factor(lx, np)?;
        } else if matches!(lx.peek(), Tok::Sym('/')) {
            let pos = lx.pos();
            lx.next();
            let d = scalar_factor(lx, np)?;
            acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                pos,
                expected: "a nonzero divisor".into(),
                found: "zero".into(),
            })?;
        } else {
            return Ok(acc);
        }
    }
}

pub(crate) fn scalar_factor(lx: &mut Lexer, np: Option<usize>) -> Result<Scalar> {
    if lx.eat('-') {
        return Ok(-scalar_factor(lx, np)?);
    }
    let base = scalar_atom(lx, np)?;
    if lx.eat('^') {
        let pos = lx.pos();
        let k = lx.signed_int()?;
        return base.pow(k).map_err(|_| Error::Parse {
            pos,
            expected: "a nonnegative exponent of zero".into(),
            found: k.to_string(),
        });
    }
    Ok(base)
}

fn scalar_atom(lx: &mut Lexer, np: Option<usize>) -> Result<Scalar> {
    match lx.peek().clone() {
        Tok::Int(n) => {
            lx.next();
            Ok(Scalar::big(n))
        }
        Tok::Ident(name) => {
            let Some(v) = param_index(&name) else {
                return Err(lx.error("a parameter a1, a2, ..."));
            };
            if let Some(p) = np {
                if v >= p {
                    return Err(lx.error(format!("a parameter among a1..a{}", p)));
                }
            }
            lx.next();
            Ok(Scalar::param(v))
        }
        Tok::Sym('(') => {
            lx.next();
            let s = scalar_expr(lx, np)?;
            lx.expect(')')?;
            Ok(s)
        }
        _ => Err(lx.error("a scalar")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("1/2 + 1/3", None).unwrap(), Scalar::ratio(5, 6));
        assert_eq!(parse_scalar("-7/2", None).unwrap(), Scalar::ratio(-7, 2));
        let s = parse_scalar("(a1^2 - 1)/(a1 - 1)", None).unwrap();
        assert_eq!(s, parse_scalar("a1 + 1", None).unwrap());
    }

    #[test]
    fn display_round_trip() {
        for src in ["a1 + 1/2", "(a1 - a2)/(a1^2 + 3)", "-2/3*a2", "5"] {
            let s = parse_scalar(src, None).unwrap();
            assert_eq!(parse_scalar(&s.to_string(), None).unwrap(), s);
        }
    }

    #[test]
    fn errors_carry_position() {
        match parse_scalar("1 + * 2", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{:?}", other),
        }
        assert!(parse_scalar("a3", Some(2)).is_err());
        assert!(parse_scalar("1/0", None).is_err());
    }

    #[test]
    fn lists() {
        let v = parse_scalar_list("a1 + 1/2, a1", Some(1)).unwrap();
        assert_eq!(v.len(), 2);
    }
}
