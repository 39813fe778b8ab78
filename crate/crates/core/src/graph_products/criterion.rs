use std::fmt;

use serde::Serialize;

use super::free_product::{ball_sizes, FreeProductElement};
use super::graph::{VertexGraph, VertexLabel};
use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement, GroupOps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessCase {
    /// A complement component of size ≥ 2 has a label other than `C₂`.
    A,
    /// A complement component of size ≥ 3, all labels `C₂`.
    B,
}

/// Two elements of the kernel that freely generate a free group, inside a
/// free product of vertex groups that embeds in the graph product.
#[derive(Clone, Debug, Serialize)]
pub struct FreeWitness {
    pub case: WitnessCase,
    /// The offending component of the complement graph.
    pub component: Vec<usize>,
    /// `(i, j)` for case a; `(i, j, k)` for case b, with `k` adjacent to
    /// `i` and `j` in the complement.
    pub vertices: Vec<usize>,
    /// Names of the free factors, in factor order.
    pub factors: Vec<String>,
    pub generators: [FreeProductElement; 2],
}

impl FreeWitness {
    /// Ball sizes of the subgroup the two generators span, in the free
    /// product normal form.
    pub fn ball_sizes(&self, radius: usize) -> Result<Vec<usize>> {
        ball_sizes(&FreeProductElement::identity(), &self.generators, radius)
    }

    pub fn generators_in_kernel(&self) -> Result<bool> {
        let n = self.factors.len();
        Ok(self.generators[0].in_kernel(n)? && self.generators[1].in_kernel(n)?)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KernelVerdict {
    /// The kernel is free abelian on one generator per two-vertex
    /// component of the complement.
    NoFreeSubgroup { components: Vec<Vec<usize>> },
    ContainsF2 { witness: FreeWitness },
}

impl fmt::Display for KernelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelVerdict::NoFreeSubgroup { .. } => write!(f, "NoFreeSubgroup"),
            KernelVerdict::ContainsF2 { witness } => match witness.case {
                WitnessCase::A => write!(f, "ContainsF2(a)"),
                WitnessCase::B => write!(f, "ContainsF2(b)"),
            },
        }
    }
}

/// Nontrivial generators of a vertex group.
fn generators_of(label: &VertexLabel) -> Result<Vec<GroupElement>> {
    Ok(label
        .group
        .generators()?
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| !g.is_identity())
        .collect())
}

/// Two distinct nontrivial elements of a group with at least 3 elements.
fn two_elements(label: &VertexLabel) -> Result<(GroupElement, GroupElement)> {
    let gens = generators_of(label)?;
    let s = gens
        .first()
        .ok_or_else(|| Error::InvariantViolated(format!("{label} has no generators")))?;
    let s2 = s.try_mul(s)?;
    if !s2.is_identity() {
        return Ok((s.clone(), s2));
    }
    gens.get(1)
        .map(|t| (s.clone(), t.clone()))
        .ok_or_else(|| Error::InvariantViolated(format!("{label} has fewer than 3 elements")))
}

fn first_generator(label: &VertexLabel) -> Result<GroupElement> {
    generators_of(label)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvariantViolated(format!("{label} has no generators")))
}

/// `[a, b]` with `a` in factor `fa`, `b` in factor `fb`.
fn bracket(fa: usize, a: &GroupElement, fb: usize, b: &GroupElement) -> Result<FreeProductElement> {
    FreeProductElement::commutator(
        &FreeProductElement::letter(fa, a.clone()),
        &FreeProductElement::letter(fb, b.clone()),
    )
}

/// Decides whether the kernel of the graph product onto the direct sum of
/// the vertex groups contains a free group of rank 2.
///
/// It does not exactly when every component of the complement graph has at
/// most two vertices and both labels of each two-vertex component are
/// `C₂`. Otherwise the witness is a pair of commutators `[a₁, b]`,
/// `[a₂, b]` with `a₁ ≠ a₂` nontrivial in one free factor and `b`
/// nontrivial in the other; such commutators are part of a free basis of
/// the kernel of a free product of two groups onto their direct product.
pub fn kernel_free_subgroup_criterion(g: &VertexGraph) -> Result<KernelVerdict> {
    let labels = g.labels();
    if labels.len() != g.vertices() {
        return Err(Error::Parse {
            path: "labels".into(),
            reason: "the criterion needs a group on every vertex".into(),
        });
    }
    if let Some(v) = labels.iter().position(VertexLabel::is_trivial) {
        return Err(Error::TrivialLabel(v));
    }
    let op = g.complement();
    let components = op.components();

    for comp in components.iter().filter(|c| c.len() >= 2) {
        if let Some(&i) = comp.iter().find(|&&i| !labels[i].is_c2()) {
            let j = op.neighbours(i).next().expect("component of size >= 2");
            let (a1, a2) = two_elements(&labels[i])?;
            let b = first_generator(&labels[j])?;
            return Ok(KernelVerdict::ContainsF2 {
                witness: FreeWitness {
                    case: WitnessCase::A,
                    component: comp.clone(),
                    vertices: vec![i, j],
                    factors: vec![labels[i].name.clone(), labels[j].name.clone()],
                    generators: [bracket(0, &a1, 1, &b)?, bracket(0, &a2, 1, &b)?],
                },
            });
        }
    }

    for comp in components.iter().filter(|c| c.len() >= 3) {
        let k = *comp
            .iter()
            .find(|&&k| op.degree(k) >= 2)
            .expect("a connected graph on 3 or more vertices has a vertex of degree 2");
        let mut nb = op.neighbours(k);
        let (i, j) = (nb.next().unwrap(), nb.next().unwrap());
        let (x, y, z) = (
            first_generator(&labels[i])?,
            first_generator(&labels[j])?,
            first_generator(&labels[k])?,
        );
        let witness = if g.has_edge(i, j) {
            // W_i and W_j commute: (W_i × W_j) * W_k
            let pair = |p: GroupElement, q: GroupElement| GroupElement::Product(vec![p, q]);
            let (xi, yj) = (x.identity_like(), y.identity_like());
            let product = GroupDescriptor::Product {
                factors: vec![labels[i].group.clone(), labels[j].group.clone()],
            };
            FreeWitness {
                case: WitnessCase::B,
                component: comp.clone(),
                vertices: vec![i, j, k],
                factors: vec![product.name(), labels[k].name.clone()],
                generators: [
                    bracket(0, &pair(x, yj), 1, &z)?,
                    bracket(0, &pair(xi, y), 1, &z)?,
                ],
            }
        } else {
            FreeWitness {
                case: WitnessCase::B,
                component: comp.clone(),
                vertices: vec![i, j, k],
                factors: vec![
                    labels[i].name.clone(),
                    labels[j].name.clone(),
                    labels[k].name.clone(),
                ],
                generators: [bracket(0, &x, 2, &z)?, bracket(1, &y, 2, &z)?],
            }
        };
        return Ok(KernelVerdict::ContainsF2 { witness });
    }

    Ok(KernelVerdict::NoFreeSubgroup { components })
}
