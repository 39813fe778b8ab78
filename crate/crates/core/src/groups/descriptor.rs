use serde::{Deserialize, Serialize};

use super::element::{GroupElement, GroupOps};
use super::houghton::{HoughtonElement, RayPoint};
use super::perm::Perm;
use super::thompson::PlMap;
use crate::error::{Error, Result};

/// Names one of the concrete groups. Read from JSON as
/// `{"kind": "sym", "n": 3}`, `{"kind": "thompson_f"}`, and so on, or as a
/// shorthand string such as `"sym3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(remote = "Self", tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    /// Symmetric group on `0..n`, generated by `a = (0 1)` and
    /// `b = (0 1 .. n-1)`.
    Sym { n: usize },
    /// Cyclic group of order `n`, generator `t`.
    Cyclic { n: u64 },
    /// The integers, generator `z`.
    Int,
    /// Infinite dihedral group `<a, b | a², b²>`.
    DihedralInf,
    /// Dihedral group of order `2n` acting on `0..n`, generators `r`, `s`.
    Dihedral { n: usize },
    /// Thompson's group F, generators `x0`, `x1`.
    ThompsonF,
    /// Houghton group `H_n`, `n >= 2`.
    Houghton { n: usize },
    /// Direct product; factor generators get the factor number appended.
    Product { factors: Vec<GroupDescriptor> },
    /// Permutation group on `0..degree` with explicit generators `g1, g2, ..`.
    Perm {
        degree: usize,
        generators: Vec<Perm>,
    },
}

// The derive above is `remote = "Self"`, so these wrap its inherent
// functions: serialization is unchanged, deserialization also takes names.
impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupDescriptor::serialize(self, s)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl<'de> serde::de::Visitor<'de> for Visitor {
            type Value = GroupDescriptor;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a group shorthand or a descriptor object")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                GroupDescriptor::from_shorthand(v).map_err(E::custom)
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(self, map: A) -> std::result::Result<Self::Value, A::Error> {
                GroupDescriptor::deserialize(serde::de::value::MapAccessDeserializer::new(map))
            }
        }
        d.deserialize_any(Visitor)
    }
}

impl GroupDescriptor {
    /// Parses names such as `sym3`, `c2`, `z`, `dinf`, `d4`, `f`,
    /// `houghton3`, `c2xc2`.
    pub fn from_shorthand(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::Parse {
            path: s.clone(),
            reason: "unknown group name".into(),
        };
        if s.contains('x') && !s.starts_with("houghton") {
            let factors = s
                .split('x')
                .map(GroupDescriptor::from_shorthand)
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupDescriptor::Product { factors });
        }
        let num = |prefix: &str| -> Option<u64> { s.strip_prefix(prefix)?.parse().ok() };
        Ok(match s.as_str() {
            "z" | "int" => GroupDescriptor::Int,
            "dinf" | "dihedral_inf" => GroupDescriptor::DihedralInf,
            "f" | "thompson" | "thompson_f" => GroupDescriptor::ThompsonF,
            _ => {
                if let Some(n) = num("sym").or_else(|| num("s")) {
                    GroupDescriptor::Sym { n: n as usize }
                } else if let Some(n) = num("houghton").or_else(|| num("h")) {
                    GroupDescriptor::Houghton { n: n as usize }
                } else if let Some(n) = num("c") {
                    GroupDescriptor::Cyclic { n }
                } else if let Some(n) = num("d") {
                    GroupDescriptor::Dihedral { n: n as usize }
                } else {
                    return Err(bad());
                }
            }
        })
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| {
            Err(Error::Parse {
                path: "kind".into(),
                reason: why.into(),
            })
        };
        match self {
            GroupDescriptor::Sym { n } if *n == 0 => bad("sym needs n >= 1"),
            GroupDescriptor::Cyclic { n } if *n == 0 => bad("cyclic needs n >= 1"),
            GroupDescriptor::Dihedral { n } if *n < 3 => bad("dihedral needs n >= 3"),
            GroupDescriptor::Houghton { n } if *n < 2 => bad("houghton needs n >= 2"),
            GroupDescriptor::Product { factors } if factors.is_empty() => {
                bad("product needs at least one factor")
            }
            GroupDescriptor::Product { factors } => factors.iter().try_for_each(|f| f.validate()),
            GroupDescriptor::Perm { degree, generators } => {
                if generators.iter().any(|g| g.degree() != *degree) {
                    bad("generator degree mismatch")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Sym { n } => GroupElement::Perm(Perm::identity(*n)),
            GroupDescriptor::Cyclic { n } => GroupElement::cyclic(0, *n),
            GroupDescriptor::Int => GroupElement::Int(0),
            GroupDescriptor::DihedralInf => GroupElement::Dihedral {
                reflect: false,
                shift: 0,
            },
            GroupDescriptor::Dihedral { n } => GroupElement::Perm(Perm::identity(*n)),
            GroupDescriptor::ThompsonF => GroupElement::Thompson(PlMap::identity()),
            GroupDescriptor::Houghton { n } => {
                GroupElement::Houghton(HoughtonElement::identity(*n))
            }
            GroupDescriptor::Product { factors } => {
                GroupElement::Product(factors.iter().map(|f| f.identity()).collect())
            }
            GroupDescriptor::Perm { degree, .. } => GroupElement::Perm(Perm::identity(*degree)),
        }
    }

    /// The standard generators, without inverses.
    pub fn generators(&self) -> Result<Vec<(String, GroupElement)>> {
        self.validate()?;
        let gens = match self {
            GroupDescriptor::Sym { n } => {
                let n = *n;
                if n < 2 {
                    vec![]
                } else {
                    let a = Perm::from_cycles(n, &[&[0, 1]])?;
                    let cycle: Vec<usize> = (0..n).collect();
                    let b = Perm::from_cycles(n, &[&cycle])?;
                    if n == 2 {
                        vec![("a".into(), GroupElement::Perm(a))]
                    } else {
                        vec![
                            ("a".into(), GroupElement::Perm(a)),
                            ("b".into(), GroupElement::Perm(b)),
                        ]
                    }
                }
            }
            GroupDescriptor::Cyclic { n } => {
                if *n < 2 {
                    vec![]
                } else {
                    vec![("t".into(), GroupElement::cyclic(1, *n))]
                }
            }
            GroupDescriptor::Int => vec![("z".into(), GroupElement::Int(1))],
            GroupDescriptor::DihedralInf => vec![
                ("a".into(), GroupElement::dihedral_a()),
                ("b".into(), GroupElement::dihedral_b()),
            ],
            GroupDescriptor::Dihedral { n } => {
                let n = *n;
                let r = Perm::new((0..n).map(|i| (i + 1) % n).collect())?;
                let s = Perm::new((0..n).map(|i| (n - i) % n).collect())?;
                vec![
                    ("r".into(), GroupElement::Perm(r)),
                    ("s".into(), GroupElement::Perm(s)),
                ]
            }
            GroupDescriptor::ThompsonF => vec![
                ("x0".into(), GroupElement::Thompson(PlMap::x0())),
                ("x1".into(), GroupElement::Thompson(PlMap::x1())),
            ],
            GroupDescriptor::Houghton { n } => {
                let n = *n;
                let mut gens = Vec::new();
                for i in 1..=n as u32 {
                    for j in i + 1..=n as u32 {
                        gens.push((
                            format!("g{i}{j}"),
                            GroupElement::Houghton(HoughtonElement::translation(n, i, j)?),
                        ));
                    }
                }
                if n == 2 {
                    gens.push((
                        "s".into(),
                        GroupElement::Houghton(HoughtonElement::transposition(
                            n,
                            RayPoint::new(1, 0),
                            RayPoint::new(2, 0),
                        )?),
                    ));
                }
                gens
            }
            GroupDescriptor::Product { factors } => {
                let ids: Vec<GroupElement> = factors.iter().map(|f| f.identity()).collect();
                let mut gens = Vec::new();
                for (k, f) in factors.iter().enumerate() {
                    for (name, g) in f.generators()? {
                        let mut coords = ids.clone();
                        coords[k] = g;
                        gens.push((format!("{name}{}", k + 1), GroupElement::Product(coords)));
                    }
                }
                gens
            }
            GroupDescriptor::Perm { generators, .. } => generators
                .iter()
                .enumerate()
                .map(|(k, p)| (format!("g{}", k + 1), GroupElement::Perm(p.clone())))
                .collect(),
        };
        Ok(gens)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupDescriptor::Sym { .. }
            | GroupDescriptor::Cyclic { .. }
            | GroupDescriptor::Dihedral { .. }
            | GroupDescriptor::Perm { .. } => true,
            GroupDescriptor::Product { factors } => factors.iter().all(|f| f.is_finite()),
            _ => false,
        }
    }

    /// Short display name.
    pub fn name(&self) -> String {
        match self {
            GroupDescriptor::Sym { n } => format!("Sym({n})"),
            GroupDescriptor::Cyclic { n } => format!("C{n}"),
            GroupDescriptor::Int => "Z".into(),
            GroupDescriptor::DihedralInf => "D∞".into(),
            GroupDescriptor::Dihedral { n } => format!("D{n}"),
            GroupDescriptor::ThompsonF => "F".into(),
            GroupDescriptor::Houghton { n } => format!("H{n}"),
            GroupDescriptor::Product { factors } => factors
                .iter()
                .map(|f| f.name())
                .collect::<Vec<_>>()
                .join("×"),
            GroupDescriptor::Perm { degree, generators } => {
                format!("<{} perms of degree {degree}>", generators.len())
            }
        }
    }
}

/// Adds inverses of the given generators, naming them `x^-1`. Identity
/// generators and repeated elements are dropped.
pub fn symmetric_closure(gens: &[(String, GroupElement)]) -> Vec<(String, GroupElement)> {
    let mut out: Vec<(String, GroupElement)> = Vec::new();
    let push = |name: String, g: GroupElement, out: &mut Vec<(String, GroupElement)>| {
        if !g.is_identity() && !out.iter().any(|(_, h)| *h == g) {
            out.push((name, g));
        }
    };
    for (name, g) in gens {
        push(name.clone(), g.clone(), &mut out);
        push(format!("{name}^-1"), g.inverse(), &mut out);
    }
    out
}
