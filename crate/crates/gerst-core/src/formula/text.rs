use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::Formula;
use crate::error::{Error, Result};

// formula := atom ('*' atom)* ; atom := sym | sym '(' formula (',' formula)* ')'
// sym := [1-9][0-9]* | '_' | 'e'

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    seen: Vec<usize>,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut factors = alloc::vec![self.atom()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.atom()?);
        }
        Ok(Formula::cup(factors))
    }

    fn atom(&mut self) -> Result<Formula> {
        let head = match self.peek() {
            Some(b'_') => {
                self.pos += 1;
                if self.peek() == Some(b'(') {
                    return self.err("`_` takes no entries");
                }
                return Ok(Formula::Id);
            }
            Some(b'e') => {
                self.pos += 1;
                None
            }
            Some(b'1'..=b'9') => {
                let mut i: usize = 0;
                let digits = self.pos;
                while let Some(c @ b'0'..=b'9') = self.text.get(self.pos).copied() {
                    i = match i.checked_mul(10).and_then(|i| i.checked_add(usize::from(c - b'0'))) {
                        Some(i) => i,
                        None => {
                            self.pos = digits;
                            return self.err("symbol too large");
                        }
                    };
                    self.pos += 1;
                }
                if self.seen.contains(&i) {
                    self.pos = digits;
                    return self.err(format!("symbol {i} repeated"));
                }
                self.seen.push(i);
                Some(i)
            }
            Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            None => return self.err("unexpected end of input"),
        };
        let mut entries = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            entries.push(self.formula()?);
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        entries.push(self.formula()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return self.err(format!("expected `,` or `)`, found `{}`", c as char)),
                    None => return self.err("unclosed `(`"),
                }
            }
        }
        Ok(match head {
            Some(i) => Formula::Sym(i, entries),
            None => Formula::Eps(entries),
        })
    }
}

/// Parses the text form; whitespace is ignored.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, seen: Vec::new() };
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(f)
}

impl core::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}

fn write_entries(f: &mut fmt::Formatter<'_>, es: &[Formula]) -> fmt::Result {
    if es.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (k, e) in es.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Sym(i, es) => {
                write!(f, "{i}")?;
                write_entries(f, es)
            }
            Formula::Id => f.write_str("_"),
            Formula::Eps(es) => {
                f.write_str("e")?;
                write_entries(f, es)
            }
            Formula::Cup(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}
