use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::dyadic::Dyadic;
use super::houghton::{HoughtonElement, RayPoint};
use super::perm::Perm;
use super::thompson::PlMap;
use crate::error::{Error, Result};

/// Minimal group interface shared by every element type in the crate:
/// concrete group elements, wreath elements and free-product words.
pub trait GroupOps: Clone + Eq + Hash + Ord + Debug {
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn inverse(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// The identity of the ambient group of `self`.
    fn identity_like(&self) -> Self;
}

/// An element of one of the concrete groups, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupElement {
    /// A permutation of `0..n`.
    Perm(Perm),
    /// An integer, for `Z`.
    Int(i64),
    /// `x ↦ ±x + shift` on `Z`: the infinite dihedral group.
    Dihedral { reflect: bool, shift: i64 },
    /// `residue` in `Z / modulus`.
    Cyclic { residue: u64, modulus: u64 },
    Thompson(PlMap),
    Houghton(HoughtonElement),
    Product(Vec<GroupElement>),
}

impl GroupElement {
    /// Reflection `a: x ↦ -x` in D∞.
    pub fn dihedral_a() -> Self {
        GroupElement::Dihedral {
            reflect: true,
            shift: 0,
        }
    }

    /// Reflection `b: x ↦ -x - 1` in D∞, chosen so that `ab` is `x ↦ x + 1`.
    pub fn dihedral_b() -> Self {
        GroupElement::Dihedral {
            reflect: true,
            shift: -1,
        }
    }

    pub fn cyclic(residue: i64, modulus: u64) -> Self {
        GroupElement::Cyclic {
            residue: residue.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            GroupElement::Perm(p) => format!("Sym({})", p.degree()),
            GroupElement::Int(_) => "Z".into(),
            GroupElement::Dihedral { .. } => "D∞".into(),
            GroupElement::Cyclic { modulus, .. } => format!("C{modulus}"),
            GroupElement::Thompson(_) => "F".into(),
            GroupElement::Houghton(h) => format!("H_{}", h.rays()),
            GroupElement::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.kind()).collect();
                parts.join("×")
            }
        }
    }

    /// Checks the canonical-form invariants that the type system does not
    /// enforce (used after deserialisation).
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupElement::Cyclic { residue, modulus } => {
                if *modulus == 0 || residue >= modulus {
                    return Err(Error::InvalidElement(format!(
                        "cyclic residue {residue} mod {modulus}"
                    )));
                }
                Ok(())
            }
            GroupElement::Product(fs) => fs.iter().try_for_each(|f| f.validate()),
            _ => Ok(()),
        }
    }

    /// Power `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = self.identity_like();
        for _ in 0..k.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Order of the element if it is finite and at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.try_mul(self).ok()?;
        }
        None
    }

    fn mixed(&self, other: &Self) -> Error {
        Error::MixedGroupKinds(self.kind(), other.kind())
    }
}

impl GroupOps for GroupElement {
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        use GroupElement::*;
        Ok(match (self, rhs) {
            (Perm(a), Perm(b)) if a.degree() == b.degree() => Perm(a.compose(b)),
            (Int(a), Int(b)) => Int(a + b),
            (
                Dihedral {
                    reflect: r1,
                    shift: n1,
                },
                Dihedral {
                    reflect: r2,
                    shift: n2,
                },
            ) => {
                // x ↦ s1 (s2 x + n2) + n1
                let n2 = if *r1 { -n2 } else { *n2 };
                Dihedral {
                    reflect: r1 ^ r2,
                    shift: n1 + n2,
                }
            }
            (
                Cyclic {
                    residue: a,
                    modulus: m,
                },
                Cyclic {
                    residue: b,
                    modulus: m2,
                },
            ) if m == m2 => Cyclic {
                residue: (a + b) % m,
                modulus: *m,
            },
            (Thompson(a), Thompson(b)) => Thompson(a.compose(b)),
            (Houghton(a), Houghton(b)) if a.rays() == b.rays() => Houghton(a.compose(b)),
            (Product(a), Product(b)) if a.len() == b.len() => Product(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.try_mul(y))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(self.mixed(rhs)),
        })
    }

    fn inverse(&self) -> Self {
        use GroupElement::*;
        match self {
            Perm(p) => Perm(p.inverse()),
            Int(n) => Int(-n),
            Dihedral { reflect, shift } => {
                if *reflect {
                    self.clone()
                } else {
                    Dihedral {
                        reflect: false,
                        shift: -shift,
                    }
                }
            }
            Cyclic { residue, modulus } => Cyclic {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
            Thompson(f) => Thompson(f.inverse()),
            Houghton(h) => Houghton(h.inverse()),
            Product(fs) => Product(fs.iter().map(|f| f.inverse()).collect()),
        }
    }

    fn is_identity(&self) -> bool {
        use GroupElement::*;
        match self {
            Perm(p) => p.is_identity(),
            Int(n) => *n == 0,
            Dihedral { reflect, shift } => !reflect && *shift == 0,
            Cyclic { residue, .. } => *residue == 0,
            Thompson(f) => f.is_identity(),
            Houghton(h) => h.is_identity(),
            Product(fs) => fs.iter().all(|f| f.is_identity()),
        }
    }

    fn identity_like(&self) -> Self {
        use GroupElement::*;
        match self {
            Perm(p) => Perm(super::perm::Perm::identity(p.degree())),
            Int(_) => Int(0),
            Dihedral { .. } => Dihedral {
                reflect: false,
                shift: 0,
            },
            Cyclic { modulus, .. } => Cyclic {
                residue: 0,
                modulus: *modulus,
            },
            Thompson(_) => Thompson(PlMap::identity()),
            Houghton(h) => Houghton(HoughtonElement::identity(h.rays())),
            Product(fs) => Product(fs.iter().map(|f| f.identity_like()).collect()),
        }
    }
}

impl Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupElement::*;
        match self {
            Perm(p) => write!(f, "{p:?}"),
            Int(n) => write!(f, "{n}"),
            Dihedral { reflect, shift } => {
                if *reflect {
                    write!(f, "x↦-x{shift:+}")
                } else {
                    write!(f, "x↦x{shift:+}")
                }
            }
            Cyclic { residue, modulus } => write!(f, "{residue} mod {modulus}"),
            Thompson(m) => write!(f, "PL{:?}", m.breakpoints()),
            Houghton(h) => write!(f, "{h:?}"),
            Product(fs) => f.debug_tuple("").field(fs).finish(),
        }
    }
}

/// A point of some G-set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    /// A point of a finite set `0..n`.
    Finite(usize),
    /// An integer, for the actions of `Z` and D∞ on `Z`.
    Int(i64),
    /// A point of `Ω_n`.
    Ray(RayPoint),
    /// A dyadic point of `[0, 1]`.
    Dyadic(Dyadic),
    /// A group element, for the left-regular action.
    Element(GroupElement),
}

impl Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(i) => write!(f, "{i}"),
            Point::Int(n) => write!(f, "{n}"),
            Point::Ray(p) => write!(f, "{p:?}"),
            Point::Dyadic(d) => write!(f, "{d}"),
            Point::Element(g) => write!(f, "[{g:?}]"),
        }
    }
}

/// The left action `g · x`, determined by the element and point kinds:
/// permutations and cyclic rotations on finite sets, translations and
/// reflections on `Z`, PL maps on dyadics, Houghton elements on `Ω_n`, and
/// any group on its own elements by left multiplication.
pub fn act(g: &GroupElement, x: &Point) -> Result<Point> {
    let out_of_domain = || Error::PointOutOfDomain {
        point: format!("{x:?}"),
        group: g.kind(),
    };
    match (g, x) {
        (GroupElement::Perm(p), Point::Finite(i)) if *i < p.degree() => {
            Ok(Point::Finite(p.apply(*i)))
        }
        (GroupElement::Cyclic { residue, modulus }, Point::Finite(i)) if (*i as u64) < *modulus => {
            Ok(Point::Finite(((*i as u64 + residue) % modulus) as usize))
        }
        (GroupElement::Int(n), Point::Int(k)) => Ok(Point::Int(k + n)),
        (GroupElement::Dihedral { reflect, shift }, Point::Int(k)) => {
            Ok(Point::Int(if *reflect { -k } else { *k } + shift))
        }
        (GroupElement::Thompson(m), Point::Dyadic(d)) => Ok(Point::Dyadic(m.eval(*d)?)),
        (GroupElement::Houghton(h), Point::Ray(p)) => Ok(Point::Ray(h.apply(*p)?)),
        (g, Point::Element(h)) => Ok(Point::Element(
            g.try_mul(h).map_err(|_| out_of_domain())?,
        )),
        _ => Err(out_of_domain()),
    }
}
