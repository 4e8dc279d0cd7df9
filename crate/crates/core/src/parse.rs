//! Hand-written recursive-descent parser for the word and formal-sum syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*  |  '0'
//! term   := [coeff '*'] word  |  coeff
//! coeff  := INT ['/' INT]
//! word   := factor ('.' factor)*
//! factor := 'x' INT ['^' INT]
//! ```
//!
//! A bare coefficient is only accepted when it is zero (the zero sum).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::word::{Letter, Word};

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u64> {
        let d = self
            .digits()
            .ok_or_else(|| self.error(format!("expected {what}")))?;
        d.parse::<u64>()
            .map_err(|_| self.error(format!("{what} out of range")))
    }

    fn factor(&mut self, out: &mut Vec<Letter>) -> Result<()> {
        self.skip_ws();
        if !self.eat(b'x') {
            return Err(self.error("expected letter 'x<k>'"));
        }
        let k = self.small_int("letter index")?;
        if k == 0 || k > Letter::MAX as u64 {
            return Err(self.error(format!("letter index {k} out of range 1..=255")));
        }
        let mut e = 1;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            e = self.small_int("exponent")?;
            if e == 0 {
                return Err(self.error("exponent must be positive"));
            }
            if e > 4096 {
                return Err(self.error("exponent too large"));
            }
        }
        out.extend(std::iter::repeat_n(k as Letter, e as usize));
        Ok(())
    }

    pub(crate) fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        self.factor(&mut letters)?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.eat(b'.') {
                self.factor(&mut letters)?;
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(Word::from_vec_unchecked(letters))
    }

    fn coeff(&mut self) -> Result<Coeff> {
        let n: BigInt = self
            .digits()
            .ok_or_else(|| self.error("expected integer"))?
            .parse()
            .map_err(|_| self.error("bad integer"))?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let d: BigInt = self
                .digits()
                .ok_or_else(|| self.error("expected denominator"))?
                .parse()
                .map_err(|_| self.error("bad integer"))?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Coeff::new(n, d))
        } else {
            Ok(Coeff::from_integer(n))
        }
    }

    /// One signed term; `None` word means a bare (zero) coefficient.
    fn term(&mut self, negative: bool) -> Result<(Coeff, Option<Word>)> {
        self.skip_ws();
        let mut c = Coeff::one();
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            c = self.coeff()?;
            self.skip_ws();
            if !self.eat(b'*') {
                if c.is_zero() {
                    return Ok((c, None));
                }
                return Err(self.error("expected '*' after coefficient"));
            }
        }
        let w = self.word()?;
        if negative {
            c = -c;
        }
        Ok((c, Some(w)))
    }

    pub(crate) fn sum_terms(&mut self) -> Result<Vec<(Coeff, Word)>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if self.eat(b'-') {
            negative = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let (c, w) = self.term(negative)?;
            if let Some(w) = w {
                terms.push((c, w));
            }
            self.skip_ws();
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if !self.at_end() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(terms)
    }
}
