//! Presentation grammar: `M(e; a/b, ...)` and the pretzel shorthand
//! `P(s1, ..., sk)`. Spaces are allowed between tokens.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::montesinos::{pretzel_to_montesinos, MontesinosPresentation, TanglePair};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        self.pos += sign + digits;
        Ok(rest[..sign + digits].parse().expect("validated digits"))
    }

    fn small_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        i64::try_from(&v).map_err(|_| Error::Parse {
            pos: start,
            msg: "pretzel parameter out of range".into(),
        })
    }

    fn pair(&mut self) -> Result<TanglePair> {
        self.skip_ws();
        let start = self.pos;
        let alpha = self.int()?;
        self.expect('/')?;
        let beta = self.int()?;
        TanglePair::new(alpha, beta).map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("trailing input"),
        }
    }
}

/// Parses `M(e; a/b, ...)` or `P(s1, ..., sk)`.
pub fn parse_presentation(text: &str) -> Result<MontesinosPresentation> {
    let mut cur = Cursor { text, pos: 0 };
    let head = cur.peek();
    let p = match head {
        Some('M') => {
            cur.pos += 1;
            cur.expect('(')?;
            let e = cur.int()?;
            cur.expect(';')?;
            let mut tangles = vec![cur.pair()?];
            while cur.peek() == Some(',') {
                cur.pos += 1;
                tangles.push(cur.pair()?);
            }
            cur.expect(')')?;
            MontesinosPresentation { e, tangles }
        }
        Some('P') => {
            cur.pos += 1;
            cur.expect('(')?;
            let mut params = Vec::new();
            loop {
                cur.skip_ws();
                let start = cur.pos;
                let s = cur.small_int()?;
                if s == 0 {
                    cur.pos = start;
                    return cur.err("pretzel parameters are nonzero");
                }
                params.push(s);
                if cur.peek() != Some(',') {
                    break;
                }
                cur.pos += 1;
            }
            cur.expect(')')?;
            pretzel_to_montesinos(&params)?
        }
        _ => return cur.err("expected 'M(' or 'P('"),
    };
    cur.finish()?;
    Ok(p)
}

/// Parses a slope written `beta/alpha`.
pub fn parse_fraction(text: &str) -> Result<(BigInt, BigInt)> {
    let mut cur = Cursor { text, pos: 0 };
    let num = cur.int()?;
    cur.expect('/')?;
    let den = cur.int()?;
    cur.finish()?;
    Ok((num, den))
}
