//! Tokens shared by the expression parsers.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while i < cs.len() && cs[i].is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(cs[i] as i64 - '0' as i64))
                    .ok_or_else(|| Error::Parse("number too large".into()))?;
                i += 1;
            }
            out.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let mut id = String::new();
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                id.push(cs[i]);
                i += 1;
            }
            out.push(Tok::Ident(id));
        } else if "()+-*/^{}".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}
