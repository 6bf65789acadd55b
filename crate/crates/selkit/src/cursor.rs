//! Character cursor over a single line, shared by the file readers.

use crate::error::Error;

pub(crate) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    /// `text` is one line with any `#` comment already removed.
    pub fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    pub fn column(&self) -> usize {
        self.column_at(self.pos)
    }

    pub fn column_at(&self, pos: usize) -> usize {
        self.text[..pos].chars().count() + 1
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.column(), message)
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.column_at(pos), message)
    }

    pub fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// Consumes `token` if the remaining input starts with it.
    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<(), Error> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`, found {}", self.describe())))
        }
    }

    /// Consumes the longest run of characters accepted by `accept`, returning
    /// it with its start offset; the run may be empty.
    pub fn run(&mut self, accept: impl Fn(char) -> bool) -> (&'a str, usize) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .char_indices()
            .find(|&(_, c)| !accept(c))
            .map_or(self.text.len() - start, |(i, _)| i);
        self.pos += len;
        (&self.text[start..start + len], start)
    }

    pub fn describe(&self) -> String {
        match self.text[self.pos..].trim_start().chars().next() {
            None => "end of line".to_string(),
            Some(c) => format!("`{c}`"),
        }
    }

    pub fn finish(&mut self) -> Result<(), Error> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {} after the end of the entry", self.describe())))
        }
    }
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into numbered lines with comments removed.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_once('#').map_or(l, |(before, _)| before)))
}
