//! Group presentations: a JSON format, standard presentations of the
//! concrete groups, the finite-generation and finite-presentation criteria
//! for permutational wreath products, and synthesis of a finite presentation
//! of `W ≀_X G` whose relators can be checked in a concrete model.

mod criteria;
mod standard;
mod synth;
mod verify;

pub use criteria::{
    check_fg_criteria, check_fp_criteria, CriteriaFlags, FgVerdict, Flag, FpCriteriaInput,
    FpVerdict, OrbitCount, RepresentativeList,
};
pub use standard::standard_presentation;
pub use synth::{
    finite_wreath_instance, synthesize_wreath_presentation, truncated_pres1, FiniteWreathInstance,
    Pres1Input,
};
pub use verify::{generated_order, verify_relators, RelatorCheck, RelatorReport};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Which family a relator belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RelatorFamily {
    /// A defining relator of a named concrete group.
    Standard { group: String },
    /// `[x, y]` between generators of two direct factors.
    FactorsCommute { left: usize, right: usize },
    /// A relator of the acting group `G`.
    Base,
    /// A relator of the copy `W_i` attached to orbit `i`.
    Fiber { orbit: usize },
    /// `[h, w]` with `h` a generator of `H_i` and `w` of `W_i`.
    StabilizerCommutes { orbit: usize, stabilizer_generator: Word },
    /// `[w, g w′ g⁻¹]` with `w` in `W_i`, `w′` in `W_j` and `g` representing
    /// a double coset `H_i g H_j`.
    ConjugatesCommute {
        orbit: usize,
        other: usize,
        representative: Word,
    },
}

/// `⟨generators | relators⟩`, with an optional provenance tag per relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<RelatorFamily>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>) -> Self {
        GroupPresentation {
            generators,
            relators: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn push(&mut self, relator: Word, family: RelatorFamily) {
        self.relators.push(relator);
        self.provenance.push(family);
    }

    /// Relators tagged with `family`, or all of them when untagged.
    pub fn family(&self, pred: impl Fn(&RelatorFamily) -> bool) -> impl Iterator<Item = &Word> {
        self.relators
            .iter()
            .zip(&self.provenance)
            .filter(move |(_, f)| pred(f))
            .map(|(w, _)| w)
    }

    /// Generators are distinct, every relator symbol is a generator, and
    /// provenance is either absent or one tag per relator.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
                return Err(Error::Parse {
                    path: "generators".into(),
                    reason: format!("`{g}` is not a valid generator symbol"),
                });
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::SymbolClash(g.clone()));
            }
        }
        for r in &self.relators {
            if let Some(s) = r.symbols().find(|s| !seen.contains(s)) {
                return Err(Error::UnboundSymbol(s.to_string()));
            }
        }
        if !self.provenance.is_empty() && self.provenance.len() != self.relators.len() {
            return Err(Error::Parse {
                path: "provenance".into(),
                reason: format!(
                    "{} tags for {} relators",
                    self.provenance.len(),
                    self.relators.len()
                ),
            });
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let p: GroupPresentation = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            path: e.path().to_string(),
            reason: e.inner().to_string(),
        })?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentations serialize")
    }

    /// Renames every generator through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> GroupPresentation {
        GroupPresentation {
            generators: self.generators.iter().map(|g| f(g)).collect(),
            relators: self.relators.iter().map(|r| r.rename(&f)).collect(),
            provenance: self.provenance.clone(),
        }
    }

    /// Same relators, every tag replaced by `family`.
    pub fn retagged(&self, family: RelatorFamily) -> GroupPresentation {
        GroupPresentation {
            generators: self.generators.clone(),
            relators: self.relators.clone(),
            provenance: vec![family; self.relators.len()],
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}
