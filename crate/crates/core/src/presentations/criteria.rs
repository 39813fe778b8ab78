use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupPresentation;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Yes,
    No,
    #[default]
    Unknown,
}

impl Flag {
    /// `self` unless unknown, then `fallback`.
    fn or(self, fallback: Flag) -> Flag {
        if self == Flag::Unknown {
            fallback
        } else {
            self
        }
    }
}

/// Number of `G`-orbits on `X`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitCount {
    Finite(usize),
    Infinite,
    #[default]
    Unknown,
}

/// Representatives `g` of the double cosets `H_orbit g H_other`. For
/// `orbit == other` the class of `H` itself must be given by the empty
/// word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeList {
    pub orbit: usize,
    pub other: usize,
    pub words: Vec<Word>,
}

/// Asserted facts that cannot be read off the rest of the input, typically
/// certified by a separate computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CriteriaFlags {
    pub g_finitely_generated: Flag,
    pub g_finitely_presented: Flag,
    pub w_finitely_generated: Flag,
    pub w_finitely_presented: Flag,
    pub stabilizers_finitely_generated: Flag,
    pub pair_orbits_finite: Flag,
    pub simply_transitive: Flag,
    pub domain_finite: Flag,
}

/// Everything the criteria and the synthesis look at. Missing pieces are
/// `None` and fall back to the flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FpCriteriaInput {
    pub g: Option<GroupPresentation>,
    pub w: Option<GroupPresentation>,
    pub orbits: OrbitCount,
    /// Generators of `H_i` as words in `G`, one list per orbit.
    pub stabilizers: Option<Vec<Vec<Word>>>,
    pub representatives: Option<Vec<RepresentativeList>>,
    pub flags: CriteriaFlags,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FgVerdict {
    Fg,
    NotFg { clause: String, reason: String },
    Unknown { clause: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FpVerdict {
    Fp,
    NotFp { clause: String, reason: String },
    Unknown { clause: String, reason: String },
}

impl fmt::Display for FgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FgVerdict::Fg => write!(f, "FG"),
            FgVerdict::NotFg { clause, reason } => write!(f, "NotFG [{clause}] {reason}"),
            FgVerdict::Unknown { clause, reason } => write!(f, "Unknown [{clause}] {reason}"),
        }
    }
}

impl fmt::Display for FpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpVerdict::Fp => write!(f, "FP"),
            FpVerdict::NotFp { clause, reason } => write!(f, "NotFP [{clause}] {reason}"),
            FpVerdict::Unknown { clause, reason } => write!(f, "Unknown [{clause}] {reason}"),
        }
    }
}

struct Clause {
    name: &'static str,
    value: Flag,
    reason: String,
}

impl FpCriteriaInput {
    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        let input: FpCriteriaInput =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
                path: e.path().to_string(),
                reason: e.inner().to_string(),
            })?;
        input.validate()?;
        Ok(input)
    }

    pub fn validate(&self) -> Result<()> {
        let contradiction = |field: &str, p: &str| Error::Parse {
            path: format!("flags.{field}"),
            reason: format!("`no` contradicts the finite presentation given for {p}"),
        };
        if let Some(g) = &self.g {
            g.validate()?;
            if self.flags.g_finitely_generated == Flag::No {
                return Err(contradiction("g_finitely_generated", "G"));
            }
            if self.flags.g_finitely_presented == Flag::No {
                return Err(contradiction("g_finitely_presented", "G"));
            }
        }
        if let Some(w) = &self.w {
            w.validate()?;
            if self.flags.w_finitely_generated == Flag::No {
                return Err(contradiction("w_finitely_generated", "W"));
            }
            if self.flags.w_finitely_presented == Flag::No {
                return Err(contradiction("w_finitely_presented", "W"));
            }
        }
        let n = self.orbit_count();
        if let (Some(n), Some(st)) = (n, &self.stabilizers) {
            if st.len() != n {
                return Err(Error::Parse {
                    path: "stabilizers".into(),
                    reason: format!("{} stabilizer lists for {n} orbits", st.len()),
                });
            }
        }
        if let Some(reps) = &self.representatives {
            let bound = n.or(self.stabilizers.as_ref().map(Vec::len));
            for (k, r) in reps.iter().enumerate() {
                if bound.is_some_and(|b| r.orbit >= b || r.other >= b) {
                    return Err(Error::Parse {
                        path: format!("representatives[{k}]"),
                        reason: format!("orbit pair ({}, {}) out of range", r.orbit, r.other),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn orbit_count(&self) -> Option<usize> {
        match self.orbits {
            OrbitCount::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Representatives for the ordered pair `(i, j)`, if listed.
    pub fn representatives_for(&self, i: usize, j: usize) -> Option<&[Word]> {
        self.representatives
            .as_ref()?
            .iter()
            .find(|r| r.orbit == i && r.other == j)
            .map(|r| r.words.as_slice())
    }

    fn w_trivial(&self) -> bool {
        self.w.as_ref().is_some_and(|w| w.generators.is_empty())
    }

    fn given(p: &Option<GroupPresentation>) -> Flag {
        if p.is_some() {
            Flag::Yes
        } else {
            Flag::Unknown
        }
    }

    fn orbits_finite(&self) -> Flag {
        match self.orbits {
            OrbitCount::Finite(_) => Flag::Yes,
            OrbitCount::Infinite => Flag::No,
            OrbitCount::Unknown => Flag::Unknown,
        }
    }

    fn stabilizers_fg(&self) -> Flag {
        self.flags.stabilizers_finitely_generated.or(match (&self.stabilizers, self.orbit_count()) {
            (Some(st), Some(n)) if st.len() == n => Flag::Yes,
            _ => Flag::Unknown,
        })
    }

    fn representatives_complete(&self) -> bool {
        self.orbit_count().is_some_and(|n| {
            (0..n).all(|i| (0..n).all(|j| self.representatives_for(i, j).is_some()))
        })
    }

    /// Clause (iii) and why.
    fn pair_orbits(&self) -> (Flag, String) {
        if self.orbits == OrbitCount::Infinite {
            return (
                Flag::No,
                "infinitely many orbits on X, hence on X²".into(),
            );
        }
        if self.flags.simply_transitive == Flag::Yes && self.flags.domain_finite == Flag::No {
            return (
                Flag::No,
                "G acts simply transitively on an infinite X; finitely many orbits on X² would force X to be finite".into(),
            );
        }
        match self.flags.pair_orbits_finite {
            Flag::Yes => (Flag::Yes, "certified finite".into()),
            Flag::No => (Flag::No, "the product action on X² has infinitely many orbits".into()),
            Flag::Unknown if self.representatives_complete() => {
                (Flag::Yes, "finite double coset representatives are listed for every orbit pair".into())
            }
            Flag::Unknown => (Flag::Unknown, "number of orbits on X² not established".into()),
        }
    }
}

fn decide(clauses: Vec<Clause>) -> Option<(Flag, &'static str, String)> {
    let failing = clauses.iter().find(|c| c.value == Flag::No);
    let unknown = clauses.iter().find(|c| c.value == Flag::Unknown);
    failing
        .or(unknown)
        .map(|c| (c.value, c.name, c.reason.clone()))
}

/// Finite generation of `W ≀_X G`: `G` and `W` finitely generated and
/// finitely many orbits on `X` (assumed non-empty).
pub fn check_fg_criteria(input: &FpCriteriaInput) -> FgVerdict {
    let clauses = vec![
        Clause {
            name: "G finitely generated",
            value: input.flags.g_finitely_generated.or(FpCriteriaInput::given(&input.g)),
            reason: "G is a quotient of the wreath product".into(),
        },
        Clause {
            name: "W finitely generated",
            value: input.flags.w_finitely_generated.or(FpCriteriaInput::given(&input.w)),
            reason: "otherwise the product is a strictly increasing union of the W_n ≀ G".into(),
        },
        Clause {
            name: "finitely many orbits on X",
            value: input.orbits_finite(),
            reason: "one copy of W is needed per orbit".into(),
        },
    ];
    match decide(clauses) {
        None => FgVerdict::Fg,
        Some((Flag::No, clause, reason)) => FgVerdict::NotFg {
            clause: clause.into(),
            reason,
        },
        Some((_, clause, reason)) => FgVerdict::Unknown {
            clause: clause.into(),
            reason,
        },
    }
}

/// Finite presentation of `W ≀_X G` with `W` nontrivial: (i) `G` and `W`
/// finitely presented, (ii) finitely generated stabilizers, (iii) finitely
/// many orbits on `X²`. A trivial `W` reduces the question to `G`.
pub fn check_fp_criteria(input: &FpCriteriaInput) -> FpVerdict {
    let g_fp = input.flags.g_finitely_presented.or(FpCriteriaInput::given(&input.g));
    let mut clauses = vec![Clause {
        name: "(i) G finitely presented",
        value: g_fp,
        reason: "G is a retract of the wreath product".into(),
    }];
    if !input.w_trivial() {
        let (pairs, why) = input.pair_orbits();
        clauses.extend([
            Clause {
                name: "(i) W finitely presented",
                value: input.flags.w_finitely_presented.or(FpCriteriaInput::given(&input.w)),
                reason: "W is a retract of the wreath product".into(),
            },
            Clause {
                name: "(ii) stabilizers finitely generated",
                value: input.stabilizers_fg(),
                reason: "[H_i, W_i] must reduce to finitely many relators".into(),
            },
            Clause {
                name: "(iii) finitely many orbits on X²",
                value: pairs,
                reason: why,
            },
        ]);
    }
    match decide(clauses) {
        None => FpVerdict::Fp,
        Some((Flag::No, clause, reason)) => FpVerdict::NotFp {
            clause: clause.into(),
            reason,
        },
        Some((_, clause, reason)) => FpVerdict::Unknown {
            clause: clause.into(),
            reason,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupDescriptor;
    use crate::presentations::standard_presentation;

    fn pres(d: GroupDescriptor) -> Option<GroupPresentation> {
        Some(standard_presentation(&d).unwrap())
    }

    fn c2_sym3() -> FpCriteriaInput {
        FpCriteriaInput {
            g: pres(GroupDescriptor::Sym { n: 3 }),
            w: pres(GroupDescriptor::Cyclic { n: 2 }),
            orbits: OrbitCount::Finite(1),
            stabilizers: Some(vec![vec![Word::parse("b a b^-1").unwrap()]]),
            representatives: Some(vec![RepresentativeList {
                orbit: 0,
                other: 0,
                words: vec![Word::empty(), Word::parse("a").unwrap()],
            }]),
            flags: CriteriaFlags::default(),
        }
    }

    #[test]
    fn finite_instance_is_fg_and_fp() {
        let input = c2_sym3();
        input.validate().unwrap();
        assert_eq!(check_fg_criteria(&input), FgVerdict::Fg);
        assert_eq!(check_fp_criteria(&input), FpVerdict::Fp);
    }

    #[test]
    fn infinitely_many_orbits() {
        let mut input = c2_sym3();
        input.orbits = OrbitCount::Infinite;
        input.stabilizers = None;
        input.representatives = None;
        match check_fg_criteria(&input) {
            FgVerdict::NotFg { clause, .. } => assert_eq!(clause, "finitely many orbits on X"),
            v => panic!("{v:?}"),
        }
        assert!(matches!(check_fp_criteria(&input), FpVerdict::NotFp { .. }));
    }

    #[test]
    fn w_not_finitely_generated() {
        let mut input = c2_sym3();
        input.w = None;
        input.flags.w_finitely_generated = Flag::No;
        match check_fg_criteria(&input) {
            FgVerdict::NotFg { clause, .. } => assert_eq!(clause, "W finitely generated"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn standard_wreath_over_z() {
        let input = FpCriteriaInput {
            g: pres(GroupDescriptor::Int),
            w: pres(GroupDescriptor::Cyclic { n: 2 }),
            orbits: OrbitCount::Finite(1),
            stabilizers: Some(vec![vec![]]),
            representatives: None,
            flags: CriteriaFlags {
                simply_transitive: Flag::Yes,
                domain_finite: Flag::No,
                ..Default::default()
            },
        };
        assert_eq!(check_fg_criteria(&input), FgVerdict::Fg);
        match check_fp_criteria(&input) {
            FpVerdict::NotFp { clause, reason } => {
                assert!(clause.starts_with("(iii)"));
                assert!(reason.contains("simply transitively"));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn thompson_with_certified_inputs() {
        let input = FpCriteriaInput {
            g: pres(GroupDescriptor::ThompsonF),
            w: pres(GroupDescriptor::Int),
            orbits: OrbitCount::Finite(1),
            flags: CriteriaFlags {
                stabilizers_finitely_generated: Flag::Yes,
                pair_orbits_finite: Flag::Yes,
                ..Default::default()
            },
            ..Default::default()
        };
        assert_eq!(check_fp_criteria(&input), FpVerdict::Fp);
        let mut unsure = input.clone();
        unsure.flags.pair_orbits_finite = Flag::Unknown;
        assert!(matches!(check_fp_criteria(&unsure), FpVerdict::Unknown { .. }));
    }

    #[test]
    fn trivial_fiber_reduces_to_g() {
        let mut input = FpCriteriaInput {
            g: pres(GroupDescriptor::Int),
            w: pres(GroupDescriptor::Cyclic { n: 1 }),
            orbits: OrbitCount::Infinite,
            ..Default::default()
        };
        assert_eq!(check_fp_criteria(&input), FpVerdict::Fp);
        input.w = pres(GroupDescriptor::Cyclic { n: 2 });
        assert!(matches!(check_fp_criteria(&input), FpVerdict::NotFp { .. }));
    }

    #[test]
    fn json_input() {
        let s = r#"{
            "g": {"generators": ["z"], "relators": []},
            "w": {"generators": ["t"], "relators": [["t","t"]]},
            "orbits": {"finite": 2},
            "stabilizers": [[]]
        }"#;
        match FpCriteriaInput::from_json(s).unwrap_err() {
            Error::Parse { path, .. } => assert_eq!(path, "stabilizers"),
            e => panic!("{e:?}"),
        }
        let s = r#"{"orbits": "infinite", "flags": {"g_finitely_generated": "yes"}}"#;
        let input = FpCriteriaInput::from_json(s).unwrap();
        assert!(matches!(check_fg_criteria(&input), FgVerdict::NotFg { .. }));
    }
}
