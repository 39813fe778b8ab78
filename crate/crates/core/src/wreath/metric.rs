use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::geodesic::{cover_walk_length, explore, CoverWalkProblem, SchreierFragment};
use crate::groups::{symmetric_closure, GroupAction, GroupDescriptor, GroupElement, GroupOps, Point, Window};

use super::element::WreathElement;

/// Largest fiber ball tabulated by breadth-first search.
const FIBER_TABLE_LIMIT: usize = 200_000;

/// The standard generating set of `W ≀_X G`: lamps `(δ_{x₀}(t), 1)` for
/// `t ∈ T` and cursor moves `(0, s)` for `s ∈ S`.
#[derive(Clone, Debug)]
pub struct WreathGenerators {
    /// `T`, closed under inverses.
    pub fiber: Vec<(String, GroupElement)>,
    /// `S`, closed under inverses.
    pub base: Vec<(String, GroupElement)>,
    pub fiber_identity: GroupElement,
    pub base_identity: GroupElement,
    pub base_point: Point,
}

fn check_symmetric(gens: &[(String, GroupElement)], which: &str) -> Result<()> {
    for (name, g) in gens {
        let inv = g.inverse();
        if !gens.iter().any(|(_, h)| *h == inv) {
            return Err(Error::InvalidElement(format!(
                "{which} generating set lacks the inverse of `{name}`"
            )));
        }
    }
    Ok(())
}

impl WreathGenerators {
    pub fn new(
        fiber: Vec<(String, GroupElement)>,
        base: Vec<(String, GroupElement)>,
        fiber_identity: GroupElement,
        base_identity: GroupElement,
        base_point: Point,
    ) -> Result<Self> {
        check_symmetric(&fiber, "fiber")?;
        check_symmetric(&base, "base")?;
        Ok(WreathGenerators {
            fiber,
            base,
            fiber_identity,
            base_identity,
            base_point,
        })
    }

    /// Standard generators of the fiber group and of the acting group,
    /// closed under inverses, at the action's first base point.
    pub fn standard(fiber: &GroupDescriptor, action: &GroupAction) -> Result<Self> {
        WreathGenerators::new(
            symmetric_closure(&fiber.generators()?),
            action.generators.clone(),
            fiber.identity(),
            action.group.identity(),
            action.base_point().clone(),
        )
    }

    /// The generators as wreath elements, lamps first.
    pub fn elements(&self) -> Result<Vec<WreathElement>> {
        let mut out = Vec::with_capacity(self.fiber.len() + self.base.len());
        for (_, t) in &self.fiber {
            out.push(WreathElement::lamp(
                self.base_point.clone(),
                t.clone(),
                self.base_identity.clone(),
            )?);
        }
        for (_, s) in &self.base {
            out.push(WreathElement::cursor(s.clone()));
        }
        Ok(out)
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::identity(self.base_identity.clone())
    }
}

/// Word length in the fiber group over `T`.
#[derive(Clone, Debug)]
pub enum FiberMetric {
    /// `|n|` for `Z` over `{±1}`.
    IntAbs,
    /// D∞ over `{a, b}`: translations by `n` cost `2|n|`, the reflection
    /// `x ↦ -x + m` costs `2m + 1` for `m >= 0` and `2|m| - 1` otherwise.
    DihedralAlternating,
    /// Breadth-first table; complete when the group is finite.
    Table {
        lengths: HashMap<GroupElement, usize>,
        complete: bool,
        radius: usize,
    },
}

impl FiberMetric {
    /// Picks the closed form when `T` is one of the recognised generating
    /// sets, otherwise tabulates a ball of the given radius.
    pub fn for_generators(
        identity: &GroupElement,
        gens: &[(String, GroupElement)],
        radius: usize,
    ) -> Result<Self> {
        let mut set: Vec<&GroupElement> = gens.iter().map(|(_, g)| g).collect();
        set.sort();
        set.dedup();
        if matches!(identity, GroupElement::Int(_))
            && set == [&GroupElement::Int(-1), &GroupElement::Int(1)]
        {
            return Ok(FiberMetric::IntAbs);
        }
        let (a, b) = (GroupElement::dihedral_a(), GroupElement::dihedral_b());
        if matches!(identity, GroupElement::Dihedral { .. }) {
            let mut ab = vec![&a, &b];
            ab.sort();
            if set == ab {
                return Ok(FiberMetric::DihedralAlternating);
            }
        }
        FiberMetric::table(identity, gens, radius)
    }

    /// Tabulates lengths by breadth-first search up to `radius`.
    pub fn table(
        identity: &GroupElement,
        gens: &[(String, GroupElement)],
        radius: usize,
    ) -> Result<Self> {
        let mut lengths = HashMap::from([(identity.clone(), 0usize)]);
        let mut queue = VecDeque::from([identity.clone()]);
        let mut complete = true;
        while let Some(g) = queue.pop_front() {
            let d = lengths[&g];
            for (_, t) in gens {
                let h = g.try_mul(t)?;
                if lengths.contains_key(&h) {
                    continue;
                }
                if d >= radius || lengths.len() >= FIBER_TABLE_LIMIT {
                    complete = false;
                    continue;
                }
                lengths.insert(h.clone(), d + 1);
                queue.push_back(h);
            }
        }
        Ok(FiberMetric::Table {
            lengths,
            complete,
            radius,
        })
    }

    pub fn length(&self, w: &GroupElement) -> Result<usize> {
        match (self, w) {
            (FiberMetric::IntAbs, GroupElement::Int(n)) => Ok(n.unsigned_abs() as usize),
            (FiberMetric::DihedralAlternating, GroupElement::Dihedral { reflect, shift }) => {
                let m = shift.unsigned_abs() as usize;
                Ok(match (reflect, *shift >= 0) {
                    (false, _) => 2 * m,
                    (true, true) => 2 * m + 1,
                    (true, false) => 2 * m - 1,
                })
            }
            (
                FiberMetric::Table {
                    lengths,
                    complete,
                    radius,
                },
                w,
            ) => match lengths.get(w) {
                Some(&d) => Ok(d),
                None if *complete => Err(Error::InvalidElement(format!(
                    "{w:?} is not in the fiber group"
                ))),
                None => Err(Error::RadiusBudgetExceeded { budget: *radius }),
            },
            (_, w) => Err(Error::MixedGroupKinds(
                match self {
                    FiberMetric::IntAbs => "int".into(),
                    _ => "dihedral".into(),
                },
                w.kind(),
            )),
        }
    }
}

/// Exact word length in `W ≀_X G` via `|(f, c)| = K(supp f, c) + Σ |f(x)|_T`.
#[derive(Clone, Debug)]
pub struct WreathMetric {
    gens: WreathGenerators,
    fiber: FiberMetric,
    fragment: SchreierFragment,
}

impl WreathMetric {
    /// Explores `G` to `radius` for the covering walks and tabulates the
    /// fiber to the same radius when no closed form applies.
    pub fn new(gens: WreathGenerators, radius: usize, window: Window) -> Result<Self> {
        let fiber = FiberMetric::for_generators(&gens.fiber_identity, &gens.fiber, radius)?;
        let fragment = explore(
            &gens.base_identity,
            &gens.base,
            &gens.base_point,
            radius,
            window,
        )?;
        Ok(WreathMetric {
            gens,
            fiber,
            fragment,
        })
    }

    pub fn generators(&self) -> &WreathGenerators {
        &self.gens
    }

    pub fn fiber_metric(&self) -> &FiberMetric {
        &self.fiber
    }

    pub fn fragment(&self) -> &SchreierFragment {
        &self.fragment
    }

    /// Sum of the fiber lengths of the values of `f`.
    pub fn fiber_length(&self, a: &WreathElement) -> Result<usize> {
        a.function()
            .entries()
            .map(|(_, w)| self.fiber.length(w))
            .sum()
    }

    /// `K(supp f, c)` over the explored fragment.
    pub fn travel_length(&self, a: &WreathElement) -> Result<usize> {
        let problem = CoverWalkProblem::new(
            a.function().support().cloned().collect(),
            a.cursor_element().clone(),
        );
        cover_walk_length(&problem, &self.fragment)
    }

    pub fn word_length(&self, a: &WreathElement) -> Result<usize> {
        Ok(self.travel_length(a)? + self.fiber_length(a)?)
    }
}
