//! Small hand-rolled scanner shared by the element and equation parsers.

use crate::error::ParseError;

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
    col0: usize,
    line: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Self {
        Cursor::at(src, 1, 1)
    }

    /// A cursor whose first character sits at `line`, `col`.
    pub fn at(src: &str, line: usize, col: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            col0: col,
            line,
        }
    }

    pub fn column(&self) -> usize {
        self.col0 + self.pos
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.column(), msg)
    }

    /// An error at an earlier column of the current line.
    pub fn error_at(&self, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(column, msg).at_line(self.line)
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    /// Next non-space character, without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    /// Next character, whitespace included.
    pub fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            })
        }
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    /// Unsigned decimal literal.
    pub fn uint(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| {
            let mut e = self.error("integer out of range");
            e.column = self.col0 + start;
            e
        })
    }

    /// Optionally signed decimal literal.
    pub fn int(&mut self) -> Result<i64, ParseError> {
        if self.eat('-') {
            Ok(-self.uint()?)
        } else {
            self.eat('+');
            self.uint()
        }
    }

    /// Comma separated integers between parentheses, e.g. `(1,-2)` or `()`.
    pub fn int_tuple(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// Identifier `[A-Za-z_][A-Za-z0-9_]*`.
    pub fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek_raw().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        while self.peek_raw().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }
}
