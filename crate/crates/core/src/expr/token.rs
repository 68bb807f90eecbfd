//! Lexer. Positions in errors are 0-based byte offsets into the source.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at position {pos}")]
    Lex { pos: usize, ch: char },
    #[error("number literal out of range at position {pos}")]
    BadNumber { pos: usize },
    #[error("expected {expected} at position {pos}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("`{name}` takes {takes} argument(s), got {got} (at position {pos})")]
    Arity {
        pos: usize,
        name: String,
        takes: usize,
        got: usize,
    },
    #[error("unknown function `{name}` at position {pos}")]
    UnknownFunction { pos: usize, name: String },
}

impl ParseError {
    /// Byte offset the error points at, for caret diagnostics.
    pub fn position(&self) -> usize {
        match self {
            ParseError::Lex { pos, .. }
            | ParseError::BadNumber { pos }
            | ParseError::Syntax { pos, .. }
            | ParseError::Arity { pos, .. }
            | ParseError::UnknownFunction { pos, .. } => *pos,
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => push_sym(&mut toks, Tok::Plus, &mut i),
            b'-' => push_sym(&mut toks, Tok::Minus, &mut i),
            b'*' => push_sym(&mut toks, Tok::Star, &mut i),
            b'/' => push_sym(&mut toks, Tok::Slash, &mut i),
            b'^' => push_sym(&mut toks, Tok::Caret, &mut i),
            b'(' => push_sym(&mut toks, Tok::LParen, &mut i),
            b')' => push_sym(&mut toks, Tok::RParen, &mut i),
            b',' => push_sym(&mut toks, Tok::Comma, &mut i),
            b'0'..=b'9' => {
                let start = i;
                i = scan_number(bytes, i);
                // `2x` is not implicit multiplication; make the boundary a
                // hard error where the stray identifier begins.
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(ParseError::Lex {
                        pos: i,
                        ch: bytes[i] as char,
                    });
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError::BadNumber { pos: start })?;
                if !value.is_finite() {
                    return Err(ParseError::BadNumber { pos: start });
                }
                toks.push(Spanned {
                    tok: Tok::Num(value),
                    pos: start,
                });
            }
            b'.' => {
                // Require a leading digit so `.5` does not silently differ
                // from `0.5` in error positions.
                return Err(ParseError::Lex { pos: i, ch: '.' });
            }
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push(Spanned {
                    tok: Tok::Ident(src[start..i].to_string()),
                    pos: start,
                });
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Lex { pos: i, ch });
            }
        }
    }
    Ok(toks)
}

fn push_sym(toks: &mut Vec<Spanned>, tok: Tok, i: &mut usize) {
    toks.push(Spanned { tok, pos: *i });
    *i += 1;
}

/// digits [ '.' digits* ] [ ('e'|'E') ('+'|'-')? digits ]
fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            i = j;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        // Otherwise the `e` is the start of an identifier and the boundary
        // check in the caller rejects it.
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_and_idents() {
        let toks = lex("2.5e-3 * foo_1").unwrap();
        assert_eq!(toks[0].tok, Tok::Num(2.5e-3));
        assert_eq!(toks[0].pos, 0);
        assert_eq!(toks[1].tok, Tok::Star);
        assert_eq!(toks[2].tok, Tok::Ident("foo_1".into()));
        assert_eq!(toks[2].pos, 9);
    }

    #[test]
    fn implicit_multiplication_is_a_lex_error() {
        let err = lex("2x").unwrap_err();
        assert_eq!(err, ParseError::Lex { pos: 1, ch: 'x' });
        let err = lex("1 + 3y^2").unwrap_err();
        assert_eq!(err, ParseError::Lex { pos: 5, ch: 'y' });
    }

    #[test]
    fn exponent_without_digits_is_an_ident_boundary() {
        // `2e` scans as the number `2` followed by the letter `e`.
        let err = lex("2e").unwrap_err();
        assert_eq!(err, ParseError::Lex { pos: 1, ch: 'e' });
    }

    #[test]
    fn stray_characters_are_positioned() {
        let err = lex("x + $y").unwrap_err();
        assert_eq!(err, ParseError::Lex { pos: 4, ch: '$' });
        let err = lex(".5").unwrap_err();
        assert_eq!(err.position(), 0);
    }

    #[test]
    fn overflowing_literal_rejected() {
        let err = lex("1e999").unwrap_err();
        assert_eq!(err, ParseError::BadNumber { pos: 0 });
    }
}
