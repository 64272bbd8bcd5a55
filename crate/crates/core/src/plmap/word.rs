//! Generator words such as `g1 x1^-2 r` and the builtin elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::plmap::PlMap;

/// `x0`: `2t` on `[0,1/4]`, `t + 1/4` on `[1/4,1/2]`, `t/2 + 1/2` on `[1/2,1]`.
pub fn x0() -> PlMap {
    PlMap::from_pairs(&[(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(1, 2)), (rat(1, 2), rat(3, 4))])
        .unwrap()
}

/// `x1`: the copy of `x0` rescaled into `[1/2, 1]`, identity on `[0, 1/2]`.
pub fn x1() -> PlMap {
    PlMap::from_pairs(&[
        (rat(0, 1), rat(0, 1)),
        (rat(1, 2), rat(1, 2)),
        (rat(5, 8), rat(3, 4)),
        (rat(3, 4), rat(7, 8)),
    ])
    .unwrap()
}

/// `x2`: the copy of `x0` rescaled into `[3/4, 1]`, identity on `[0, 3/4]`.
pub fn x2() -> PlMap {
    PlMap::from_pairs(&[
        (rat(0, 1), rat(0, 1)),
        (rat(3, 4), rat(3, 4)),
        (rat(13, 16), rat(7, 8)),
        (rat(7, 8), rat(15, 16)),
    ])
    .unwrap()
}

/// Rotation by one half.
pub fn r() -> PlMap {
    PlMap::rotation(&rat(1, 2))
}

/// `g1 = r x1 r⁻¹`, supported on `(0, 1/2)`.
pub fn g1() -> PlMap {
    x1().conjugate(&r())
}

/// `g2 = r x2 r⁻¹`, supported on `(1/4, 1/2)`.
pub fn g2() -> PlMap {
    x2().conjugate(&r())
}

/// Name-to-element bindings used when evaluating words.
#[derive(Clone, Debug)]
pub struct Bindings {
    names: BTreeMap<String, PlMap>,
}

impl Default for Bindings {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Bindings {
    /// `e`, `x0`, `x1`, `x2`, `g1`, `g2`, `r`.
    pub fn builtin() -> Self {
        let mut names = BTreeMap::new();
        names.insert("e".to_string(), PlMap::identity());
        names.insert("x0".to_string(), x0());
        names.insert("x1".to_string(), x1());
        names.insert("x2".to_string(), x2());
        names.insert("g1".to_string(), g1());
        names.insert("g2".to_string(), g2());
        names.insert("r".to_string(), r());
        Bindings { names }
    }

    pub fn empty() -> Self {
        Bindings { names: BTreeMap::new() }
    }

    pub fn bind(&mut self, name: &str, map: PlMap) -> &mut Self {
        self.names.insert(name.to_string(), map);
        self
    }

    pub fn get(&self, name: &str) -> Option<&PlMap> {
        self.names.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.keys().map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub name: String,
    pub exponent: i64,
}

/// A normalized word: non-zero exponents, no two adjacent tokens with the
/// same name.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorWord {
    tokens: Vec<Token>,
}

impl GeneratorWord {
    pub fn new(tokens: Vec<Token>) -> Self {
        let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
        for t in tokens {
            if t.exponent == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.name == t.name => {
                    last.exponent += t.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        GeneratorWord { tokens: out }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            input: text.to_string(),
            position: pos,
            message: msg.to_string(),
        };
        let bytes = text.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
                continue;
            }
            if !(c.is_ascii_alphabetic() || c == '_') {
                return Err(err(i, "expected a generator name"));
            }
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = text[start..i].to_string();
            let mut exponent = 1i64;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                    i += 1;
                }
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(es, "expected an integer exponent"));
                }
                exponent = text[es..i]
                    .parse()
                    .map_err(|_| err(es, "exponent out of range"))?;
            }
            if i < bytes.len() && !(bytes[i] as char).is_whitespace() && bytes[i] != b'*' && bytes[i] != b'.' {
                return Err(err(i, "unexpected character"));
            }
            tokens.push(Token { name, exponent });
        }
        Ok(GeneratorWord::new(tokens))
    }

    /// The product as a left action: `"a b"` is `x -> a(b(x))`.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<PlMap> {
        let mut acc = PlMap::identity();
        for t in &self.tokens {
            let g = bindings
                .get(&t.name)
                .ok_or_else(|| Error::UnboundName(t.name.clone()))?;
            acc = acc.compose(&g.power(t.exponent));
        }
        Ok(acc)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("e");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if t.exponent == 1 {
                write!(f, "{}", t.name)?;
            } else {
                write!(f, "{}^{}", t.name, t.exponent)?;
            }
        }
        Ok(())
    }
}

/// A word of `len` letters `name^±1` drawn uniformly, then freely reduced.
pub fn random_word<R: rand::Rng>(rng: &mut R, names: &[&str], len: usize) -> GeneratorWord {
    let tokens = (0..len)
        .map(|_| Token {
            name: names[rng.gen_range(0..names.len())].to_string(),
            exponent: if rng.gen_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    GeneratorWord::new(tokens)
}

/// Parses a word and evaluates it against `bindings`.
pub fn parse_word(text: &str, bindings: &Bindings) -> Result<PlMap> {
    GeneratorWord::parse(text)?.evaluate(bindings)
}

/// Accepts either a `plmap{...}` literal or a generator word.
pub fn parse_element(text: &str, bindings: &Bindings) -> Result<PlMap> {
    if text.trim_start().starts_with("plmap{") {
        text.parse()
    } else {
        parse_word(text, bindings)
    }
}
