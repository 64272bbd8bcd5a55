//! Plain-text witness blocks:
//!
//! ```text
//! begin certificate
//! a = plmap{(0,1/2)}
//! x_a = (1/2,3/4)
//! end certificate
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Block {
    pub fn new(kind: &str) -> Self {
        Block { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::CertificateMismatch(format!("{} block has no `{key}` line", self.kind)))
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "begin {}", self.kind)?;
        for (k, v) in &self.fields {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(f, "end {}", self.kind)
    }
}

pub fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    let mut current: Option<Block> = None;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim();
        let err = |msg: &str| Error::Parse {
            input: raw.trim_end().to_string(),
            position: line_start,
            message: msg.to_string(),
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(kind) = line.strip_prefix("begin ") {
            if current.is_some() {
                return Err(err("nested block"));
            }
            current = Some(Block::new(kind.trim()));
            continue;
        }
        if let Some(kind) = line.strip_prefix("end ") {
            match current.take() {
                Some(b) if b.kind == kind.trim() => out.push(b),
                _ => return Err(err("unmatched end")),
            }
            continue;
        }
        let block = current.as_mut().ok_or_else(|| err("line outside a block"))?;
        let (k, v) = line.split_once('=').ok_or_else(|| err("expected `key = value`"))?;
        block.fields.push((k.trim().to_string(), v.trim().to_string()));
    }
    if current.is_some() {
        return Err(Error::Parse {
            input: String::new(),
            position: text.len(),
            message: "unterminated block".into(),
        });
    }
    Ok(out)
}
