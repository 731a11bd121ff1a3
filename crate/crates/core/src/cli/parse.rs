//! Recursive-descent parser for field and envelope expressions.
//!
//! ```text
//! field  := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' int)?
//! base   := int | 'x' int | 'y' | 'e[' word ']' | '(' field ')' | '{' field ',' field '}'
//!
//! env    := eterm (('+' | '-') eterm)*
//! eterm  := efactor ('*' efactor)*
//! efactor:= '-' efactor | eatom ('^' uint)?
//! eatom  := 'h(' field ')' | 'h[' word ']' | '(' field ')' | '(' env ')' | base
//! ```
//!
//! `y` is only accepted where the caller enables it and stands for the last
//! letter of the alphabet. Envelope products are noncommutative and are
//! evaluated left to right.

use num_bigint::BigInt;

use crate::env_algebra::{h_of, EnvElement};
use crate::error::{Error, Result};
use crate::lie_basis::{is_lyndon, LyndonWord};
use crate::poisson_field::PoissonFrac;
use crate::word::{parse_letters, Letter, Word};
use crate::Rational;

/// Parses a field expression over the alphabet `x1..xn`.
pub fn parse_field(src: &str, n: usize) -> Result<PoissonFrac> {
    Parser::new(src, n, false).finish(Parser::field)
}

/// Like [`parse_field`], additionally reading `y` as `x_n`.
pub fn parse_field_with_y(src: &str, n: usize) -> Result<PoissonFrac> {
    Parser::new(src, n, true).finish(Parser::field)
}

/// Parses an envelope expression over the alphabet `x1..xn`.
pub fn parse_env(src: &str, n: usize) -> Result<EnvElement> {
    Parser::new(src, n, false).finish(Parser::env)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    allow_y: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize, allow_y: bool) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            n,
            allow_y,
        }
    }

    fn finish<T>(mut self, rule: fn(&mut Self) -> Result<T>) -> Result<T> {
        if self.n == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "alphabet size must be at least 1".into(),
            });
        }
        let value = rule(&mut self)?;
        self.skip_ws();
        match self.peek() {
            None => Ok(value),
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(d) => {
                    Err(self.error(format!("expected '{}', found '{}'", c as char, d as char)))
                }
                None => Err(self.error(format!("expected '{}', found end of input", c as char))),
            }
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        Ok(self.digits()?.parse().expect("ascii digits"))
    }

    fn exponent(&mut self, allow_negative: bool) -> Result<i64> {
        let start = self.pos;
        let negative = self.eat(b'-');
        if negative && !allow_negative {
            self.pos = start;
            return Err(self.error("negative exponents are not allowed in envelope expressions"));
        }
        let d = self.digits()?;
        let k: i64 = d
            .parse()
            .map_err(|_| self.error(format!("exponent {d} is too large")))?;
        Ok(if negative { -k } else { k })
    }

    /// The index after `x`, checked against the alphabet.
    fn letter(&mut self) -> Result<Letter> {
        let start = self.pos;
        let d = self.digits()?;
        let i: usize = d.parse().unwrap_or(usize::MAX);
        if i == 0 || i > self.n {
            self.pos = start;
            return Err(self.error(format!("variable index {d} is outside 1..={}", self.n)));
        }
        Ok(i as Letter)
    }

    /// The contents of `[...]`, after the opening bracket.
    fn bracketed_word(&mut self) -> Result<(usize, Vec<Letter>)> {
        let start = self.pos;
        let Some(len) = self.src[start..].iter().position(|&c| c == b']') else {
            return Err(self.error("unterminated '['"));
        };
        let text = std::str::from_utf8(&self.src[start..start + len])
            .map_err(|_| self.error("invalid word"))?;
        let letters = parse_letters(text, self.n).map_err(|e| match e {
            Error::LetterOutOfRange { letter, n } => Error::Parse {
                pos: start,
                msg: format!("letter {letter} is outside 1..={n}"),
            },
            Error::Parse { msg, .. } => Error::Parse { pos: start, msg },
            other => other,
        })?;
        self.pos = start + len + 1;
        Ok((start, letters))
    }

    fn field(&mut self) -> Result<PoissonFrac> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PoissonFrac> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<PoissonFrac> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            let k = self.exponent(true)?;
            return base.pow(k).map_err(|e| Error::Parse {
                pos: at,
                msg: e.to_string(),
            });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PoissonFrac> {
        let n = self.n;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(PoissonFrac::constant(
                Rational::from_integer(self.integer()?),
                n,
            )),
            Some(b'x') => {
                self.pos += 1;
                Ok(PoissonFrac::generator(self.letter()?, n))
            }
            Some(b'y') if self.allow_y => {
                self.pos += 1;
                Ok(PoissonFrac::generator(n as Letter, n))
            }
            Some(b'e') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b'[') {
                    return Err(self.error("expected '[' after 'e'"));
                }
                self.pos += 1;
                let (at, letters) = self.bracketed_word()?;
                if letters.is_empty() || !is_lyndon(&letters) {
                    let w = Word::new(letters).display(n);
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("\"{w}\" is not a Lyndon word"),
                    });
                }
                Ok(PoissonFrac::var(
                    LyndonWord::new(letters).expect("checked Lyndon"),
                    n,
                ))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.field()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'{') => {
                self.pos += 1;
                let a = self.field()?;
                self.expect(b',')?;
                let b = self.field()?;
                self.expect(b'}')?;
                Ok(a.bracket(&b))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn env(&mut self) -> Result<EnvElement> {
        let mut acc = self.eterm()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.eterm()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.eterm()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn eterm(&mut self) -> Result<EnvElement> {
        let mut acc = self.efactor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.efactor()?;
            } else if self.peek() == Some(b'/') {
                return Err(self.error("division is not allowed in envelope expressions"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn efactor(&mut self) -> Result<EnvElement> {
        if self.eat(b'-') {
            return Ok(-&self.efactor()?);
        }
        let base = self.eatom()?;
        if self.eat(b'^') {
            let k = self.exponent(false)?;
            let mut out = EnvElement::one(self.n);
            for _ in 0..k {
                out = &out * &base;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn eatom(&mut self) -> Result<EnvElement> {
        match self.peek() {
            Some(b'h') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b'(') => {
                        self.pos += 1;
                        let q = self.field()?;
                        self.expect(b')')?;
                        Ok(h_of(&q))
                    }
                    Some(b'[') => {
                        self.pos += 1;
                        let (_, letters) = self.bracketed_word()?;
                        Ok(EnvElement::word(Word::new(letters), self.n))
                    }
                    _ => Err(self.error("expected '(' or '[' after 'h'")),
                }
            }
            Some(b'(') => {
                // a parenthesized field is a scalar; otherwise reparse as an envelope
                let open = self.pos;
                self.pos += 1;
                let scalar = self.field().and_then(|q| self.expect(b')').map(|_| q));
                match scalar {
                    Ok(q) => Ok(EnvElement::scalar(q)),
                    Err(_) => {
                        self.pos = open + 1;
                        let v = self.env()?;
                        self.expect(b')')?;
                        Ok(v)
                    }
                }
            }
            _ => {
                let q = self.base()?;
                if self.peek() == Some(b'^') {
                    // field powers bind to the atom so `x1^2*h[1]` reads naturally
                    self.pos += 1;
                    let k = self.exponent(false)?;
                    return Ok(EnvElement::scalar(q.pow(k).expect("nonnegative power")));
                }
                Ok(EnvElement::scalar(q))
            }
        }
    }
}
