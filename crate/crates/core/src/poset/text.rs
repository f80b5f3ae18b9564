//! Text format:
//!
//! ```text
//! # comment
//! poset B 2
//! 0 < -2
//! -2 < 1
//! ```
//!
//! Type B files list one relation per mirror pair; closure adds the rest.
//! Printing emits the Hasse diagram, so `parse(print(p)) == p`.

use std::fmt;

use crate::error::{Error, Result};

use super::{BPoset, Poset};

/// Either kind of poset, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPoset {
    A(Poset),
    B(BPoset),
}

impl AnyPoset {
    pub fn n(&self) -> usize {
        match self {
            AnyPoset::A(p) => p.n(),
            AnyPoset::B(p) => p.n(),
        }
    }
}

impl From<Poset> for AnyPoset {
    fn from(p: Poset) -> Self {
        AnyPoset::A(p)
    }
}

impl From<BPoset> for AnyPoset {
    fn from(p: BPoset) -> Self {
        AnyPoset::B(p)
    }
}

pub fn parse_poset(text: &str) -> Result<AnyPoset> {
    let mut header: Option<(char, usize)> = None;
    let mut covers: Vec<(i32, i32)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}: {raw:?}", lineno + 1));
        match header {
            None => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                let [kw, kind, n] = parts.as_slice() else {
                    return Err(bad("expected `poset A|B <n>`"));
                };
                if *kw != "poset" {
                    return Err(bad("expected `poset A|B <n>`"));
                }
                let kind = match *kind {
                    "A" | "a" => 'A',
                    "B" | "b" => 'B',
                    _ => return Err(bad("kind must be A or B")),
                };
                let n: usize = n.parse().map_err(|_| bad("bad size"))?;
                header = Some((kind, n));
            }
            Some(_) => {
                let (a, b) = line
                    .split_once('<')
                    .ok_or_else(|| bad("expected `a < b`"))?;
                let a: i32 = a.trim().parse().map_err(|_| bad("bad label"))?;
                let b: i32 = b.trim().parse().map_err(|_| bad("bad label"))?;
                covers.push((a, b));
            }
        }
    }
    match header {
        None => Err(Error::Parse("missing `poset` header".into())),
        Some(('A', n)) => {
            let covers = covers
                .into_iter()
                .map(|(a, b)| {
                    if a < 1 || b < 1 {
                        Err(Error::InvalidArgument(format!(
                            "type A labels must be positive: {a} < {b}"
                        )))
                    } else {
                        Ok((a as usize, b as usize))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPoset::A(Poset::from_covers(n, &covers)?))
        }
        Some((_, n)) => Ok(AnyPoset::B(BPoset::from_covers(n, &covers)?)),
    }
}

impl fmt::Display for AnyPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPoset::A(p) => {
                writeln!(f, "poset A {}", p.n())?;
                for (a, b) in p.covers() {
                    writeln!(f, "{a} < {b}")?;
                }
            }
            AnyPoset::B(p) => {
                writeln!(f, "poset B {}", p.n())?;
                for (a, b) in p.covers() {
                    writeln!(f, "{a} < {b}")?;
                }
            }
        }
        Ok(())
    }
}
