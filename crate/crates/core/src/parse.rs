//! Byte cursor shared by the textual grammars (Z[tau] literals, trees, words).

use crate::error::ParseError;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub(crate) fn error(&self, expected: &str) -> ParseError {
        ParseError::new(self.pos, expected, self.peek())
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// Unsigned decimal digits.
    pub(crate) fn digits(&mut self, what: &str) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error(what));
        }
        Ok(&self.src[start..self.pos])
    }

    pub(crate) fn signed_i64(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let digits = self.digits("an integer")?;
        let text = if neg {
            format!("-{digits}")
        } else {
            digits.to_string()
        };
        text.parse()
            .map_err(|_| ParseError::new(start, "an integer that fits in 64 bits", None))
    }
}
