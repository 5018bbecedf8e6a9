//! A small cursor for the element grammars, reporting byte positions.

use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    pub fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    pub fn eat(&mut self, token: &str) -> bool {
        if self.peek(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            let found: String = self.rest().chars().take(8).collect();
            parse_err(self.pos, format!("expected `{token}`, found {found:?}"))
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            parse_err(self.pos, format!("trailing input {:?}", self.rest()))
        }
    }

    /// Consumes characters while `f` holds.
    fn take_while(&mut self, f: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let r = self.rest();
        let len = r.find(|c| !f(c)).unwrap_or(r.len());
        self.pos += len;
        (start, &r[..len])
    }

    /// A word over letters `< k`, with `e` for the empty word.
    pub fn word(&mut self, k: u8) -> Result<Word> {
        let (start, tok) = self.take_while(|c| c.is_ascii_digit() || c == 'e' || c == 'ε');
        let w = Word::from_str(tok).map_err(|e| shift_pos(e, start))?;
        if w.max_letter().is_some_and(|c| c >= k) {
            return parse_err(start, format!("letter out of range for alphabet of size {k}"));
        }
        Ok(w)
    }

    /// A parenthesised scalar such as `(1/2-3i)`.
    pub fn scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        self.expect("(")?;
        let (_, body) = self.take_while(|c| c != ')');
        self.expect(")")?;
        Scalar::from_str(&format!("({body})")).map_err(|e| shift_pos(e, start))
    }
}

pub(crate) fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}
