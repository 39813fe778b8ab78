//! Words over named generators and their evaluation in concrete groups.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupOps;

/// A generator symbol or its formal inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: String,
    pub inv: bool,
}

impl Letter {
    pub fn new(sym: impl Into<String>, inv: bool) -> Self {
        Letter {
            sym: sym.into(),
            inv,
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            sym: self.sym.clone(),
            inv: !self.inv,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inv {
            write!(f, "{}^-1", self.sym)
        } else {
            write!(f, "{}", self.sym)
        }
    }
}

// A positive letter is a bare string, an inverse one `{"sym": .., "inv": true}`.
impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Obj<'a> {
            sym: &'a str,
            inv: bool,
        }
        if self.inv {
            Obj {
                sym: &self.sym,
                inv: true,
            }
            .serialize(s)
        } else {
            s.serialize_str(&self.sym)
        }
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bare(String),
            Obj {
                sym: String,
                #[serde(default)]
                inv: bool,
            },
        }
        match Raw::deserialize(d)? {
            Raw::Bare(s) if !s.is_empty() => Ok(Letter::new(s, false)),
            Raw::Bare(_) => Err(de::Error::custom("empty generator symbol")),
            Raw::Obj { sym, inv } => Ok(Letter::new(sym, inv)),
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| *last == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn gen(sym: &str) -> Self {
        Word(vec![Letter::new(sym, false)])
    }

    /// Parses whitespace-separated letters, `x^-1` for inverses and `x^k`
    /// for powers.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (sym, exp) = match tok.split_once('^') {
                Some((sym, e)) => (
                    sym,
                    e.parse::<i64>().map_err(|_| Error::Parse {
                        path: tok.into(),
                        reason: "bad exponent".into(),
                    })?,
                ),
                None => (tok, 1),
            };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(sym, exp < 0));
            }
        }
        Ok(Word::new(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn pow(&self, k: u32) -> Word {
        Word::new((0..k).flat_map(|_| self.0.iter().cloned()))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// `g x g⁻¹`.
    pub fn conjugate(x: &Word, g: &Word) -> Word {
        g.concat(x).concat(&g.inverse())
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|l| l.sym.as_str())
    }

    /// Renames every symbol through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(f(&l.sym), l.inv))
                .collect(),
        )
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Word::new(Vec::<Letter>::deserialize(d)?))
    }
}

impl fmt::Display for Word {
    /// Compact form with run-length exponents: `a^2 b a^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if self.0[i].inv { -run } else { run };
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if exp == 1 {
                write!(f, "{}", self.0[i].sym)?;
            } else {
                write!(f, "{}^{}", self.0[i].sym, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Values for generator symbols, plus the identity of the target group so
/// the empty word has a value.
#[derive(Clone, Debug)]
pub struct Assignment<E> {
    pub identity: E,
    pub values: BTreeMap<String, E>,
}

impl<E: GroupOps> Assignment<E> {
    pub fn new(identity: E) -> Self {
        Assignment {
            identity,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, sym: impl Into<String>, value: E) -> Self {
        self.values.insert(sym.into(), value);
        self
    }

    pub fn insert(&mut self, sym: impl Into<String>, value: E) {
        self.values.insert(sym.into(), value);
    }
}

/// Product of the assigned values in word order.
pub fn evaluate_word<E: GroupOps>(word: &Word, assignment: &Assignment<E>) -> Result<E> {
    let mut acc = assignment.identity.clone();
    for l in word.letters() {
        let v = assignment
            .values
            .get(&l.sym)
            .ok_or_else(|| Error::UnboundSymbol(l.sym.clone()))?;
        acc = if l.inv {
            acc.try_mul(&v.inverse())?
        } else {
            acc.try_mul(v)?
        };
    }
    Ok(acc)
}
