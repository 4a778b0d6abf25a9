use num::BigInt;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    pub(crate) fn error(self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, msg: msg.into() }
    }
}

/// Character cursor that skips whitespace and `#` comments before tokens.
pub(crate) struct Cursor<'a> {
    rest: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Cursor { rest: s, line: 1, col: 1 }
    }

    fn bump(&mut self, n: usize) {
        for ch in self.rest[..n].chars() {
            if ch == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        self.rest = &self.rest[n..];
    }

    fn skip(&mut self) {
        loop {
            let t = self.rest.trim_start();
            let n = self.rest.len() - t.len();
            self.bump(n);
            if self.rest.starts_with('#') {
                let n = self.rest.find('\n').unwrap_or(self.rest.len());
                self.bump(n);
            } else {
                break;
            }
        }
    }

    pub(crate) fn pos(&mut self) -> Pos {
        self.skip();
        Pos { line: self.line, col: self.col }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip();
        self.rest.is_empty()
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            let found = self.rest.chars().next().unwrap_or(' ');
            Err(self.pos().error(format!("unexpected `{found}`")))
        }
    }

    pub(crate) fn peek(&mut self, tok: &str) -> bool {
        self.skip();
        self.rest.starts_with(tok)
    }

    pub(crate) fn eat(&mut self, tok: &str) -> bool {
        if self.peek(tok) {
            self.bump(tok.len());
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            let found: String = self.rest.chars().take(8).collect();
            Err(self.pos().error(if found.is_empty() {
                format!("expected `{tok}`, found end of input")
            } else {
                format!("expected `{tok}`, found `{found}`")
            }))
        }
    }

    fn word_len(&self) -> usize {
        self.rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(self.rest.len())
    }

    /// An identifier: letters, digits and `_`, starting with a letter.
    pub(crate) fn word(&mut self) -> Result<String, ParseError> {
        self.skip();
        if !self.rest.starts_with(|ch: char| ch.is_ascii_alphabetic()) {
            return Err(self.pos().error("expected a name"));
        }
        let n = self.word_len();
        let w = self.rest[..n].to_string();
        self.bump(n);
        Ok(w)
    }

    pub(crate) fn eat_word(&mut self, w: &str) -> bool {
        self.skip();
        let boundary = !self.rest[w.len().min(self.rest.len())..].starts_with(|ch: char| ch.is_ascii_alphanumeric() || ch == '_');
        if self.rest.starts_with(w) && boundary {
            self.bump(w.len());
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.pos().error(format!("expected `{w}`")))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let n = self.rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(self.rest.len());
        if n == 0 {
            return None;
        }
        let d = &self.rest[..n];
        self.bump(n);
        Some(d)
    }

    pub(crate) fn uint(&mut self) -> Result<u64, ParseError> {
        let at = self.pos();
        let d = self.digits().ok_or_else(|| at.error("expected a nonnegative integer"))?;
        d.parse().map_err(|_| at.error("integer too large"))
    }

    pub(crate) fn peek_rational_start(&mut self) -> bool {
        self.skip();
        let mut it = self.rest.chars();
        match it.next() {
            Some(ch) if ch.is_ascii_digit() => true,
            Some('-') => it.next().is_some_and(|ch| ch.is_ascii_digit()),
            _ => false,
        }
    }

    /// `-?digits(/digits)?`.
    pub(crate) fn rational(&mut self) -> Result<Rational, ParseError> {
        let at = self.pos();
        let neg = self.rest.starts_with('-');
        if neg {
            self.bump(1);
        }
        let num: BigInt = self.digits().ok_or_else(|| at.error("expected a rational number"))?.parse().expect("digits");
        let den: BigInt = if self.rest.starts_with('/') {
            self.bump(1);
            self.digits().ok_or_else(|| at.error("expected a denominator"))?.parse().expect("digits")
        } else {
            1.into()
        };
        if den == 0.into() {
            return Err(at.error("zero denominator"));
        }
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    /// Raw text up to (not including) one of `stops`.
    pub(crate) fn until(&mut self, stops: &[char]) -> Result<&'a str, ParseError> {
        let n = self.rest.find(|ch| stops.contains(&ch)).ok_or_else(|| self.pos().error(format!("expected one of {stops:?}")))?;
        let s = &self.rest[..n];
        self.bump(n);
        Ok(s)
    }
}
