//! Minimal covering walks `K(F, c)`: the shortest generator path from `1`
//! to `c` in `G` whose visited points `g_i · x₀` include every point of `F`.
//!
//! Paths move by right multiplication, `g_{i+1} = g_i s`. This is the
//! convention under which `(f, c)(0, s) = (f, cs)` and the lamp written by
//! `(t, 1)` sits at `c · x₀`, so it is the one that makes the wreath length
//! formula hold for non-abelian `G`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{act, GroupAction, GroupElement, GroupOps, Point, Window};

/// Default bitmask width for target sets.
pub const DEFAULT_MASK_WIDTH: usize = 24;

/// A labelled Schreier-graph edge `to = s · from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SchreierEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// Radius-bounded exploration of `G` (Cayley ball) together with the orbit
/// points `g · x₀` it reaches.
#[derive(Clone, Debug)]
pub struct SchreierFragment {
    radius: usize,
    base_point: Point,
    generators: Vec<(String, GroupElement)>,
    inverse_of: Vec<usize>,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    index: HashMap<GroupElement, usize>,
    /// `right[i][k]` = index of `elements[i] * s_k`, when inside the ball.
    right: Vec<Vec<Option<u32>>>,
    element_point: Vec<usize>,
    points: Vec<Point>,
    point_index: HashMap<Point, usize>,
    point_depth: Vec<usize>,
    edges: Vec<SchreierEdge>,
    complete: bool,
}

/// Explores every element of word length `<= radius` over the symmetric
/// generating set, and the points they move `base_point` to.
pub fn explore(
    identity: &GroupElement,
    generators: &[(String, GroupElement)],
    base_point: &Point,
    radius: usize,
    window: Window,
) -> Result<SchreierFragment> {
    let inverse_of = generators
        .iter()
        .map(|(name, s)| {
            let inv = s.inverse();
            generators
                .iter()
                .position(|(_, t)| *t == inv)
                .ok_or_else(|| {
                    Error::InvalidElement(format!("generating set lacks the inverse of `{name}`"))
                })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut elements = vec![identity.clone()];
    let mut lengths = vec![0usize];
    let mut index = HashMap::from([(identity.clone(), 0usize)]);
    let mut right: Vec<Vec<Option<u32>>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (_, s) in generators {
            let h = elements[i].try_mul(s)?;
            let j = match index.get(&h) {
                Some(&j) => Some(j as u32),
                None if lengths[i] < radius => {
                    let j = elements.len();
                    index.insert(h.clone(), j);
                    elements.push(h);
                    lengths.push(lengths[i] + 1);
                    Some(j as u32)
                }
                None => None,
            };
            row.push(j);
        }
        right.push(row);
        i += 1;
    }

    let mut points = Vec::new();
    let mut point_index: HashMap<Point, usize> = HashMap::new();
    let mut point_depth = Vec::new();
    let mut element_point = Vec::with_capacity(elements.len());
    for (g, &len) in elements.iter().zip(&lengths) {
        let p = act(g, base_point)?;
        if !window.contains(&p) {
            return Err(Error::TruncationEscape {
                point: format!("{p:?}"),
                window: window.to_string(),
            });
        }
        let k = *point_index.entry(p.clone()).or_insert_with(|| {
            points.push(p);
            point_depth.push(len);
            points.len() - 1
        });
        element_point.push(k);
    }
    let mut edges = Vec::new();
    for (from, p) in points.iter().enumerate() {
        for (label, (_, s)) in generators.iter().enumerate() {
            if let Some(&to) = point_index.get(&act(s, p)?) {
                edges.push(SchreierEdge { from, to, label });
            }
        }
    }

    let complete = right.iter().flatten().all(Option::is_some);
    Ok(SchreierFragment {
        complete,
        radius,
        base_point: base_point.clone(),
        generators: generators.to_vec(),
        inverse_of,
        elements,
        lengths,
        index,
        right,
        element_point,
        points,
        point_index,
        point_depth,
        edges,
    })
}

/// [`explore`] for a declared action, from its first base point.
pub fn explore_action(
    action: &GroupAction,
    radius: usize,
    window: Window,
) -> Result<SchreierFragment> {
    explore(
        &action.group.identity(),
        &action.generators,
        action.base_point(),
        radius,
        window,
    )
}

impl SchreierFragment {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn base_point(&self) -> &Point {
        &self.base_point
    }

    pub fn generators(&self) -> &[(String, GroupElement)] {
        &self.generators
    }

    /// Group elements in breadth-first order with their word lengths.
    pub fn walk(&self) -> impl Iterator<Item = (&GroupElement, usize)> {
        self.elements.iter().zip(self.lengths.iter().copied())
    }

    /// True when the ball is the whole (finite) group.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn walk_size(&self) -> usize {
        self.elements.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn edges(&self) -> &[SchreierEdge] {
        &self.edges
    }

    /// Index of the generator inverse to generator `k`.
    pub fn inverse_label(&self, k: usize) -> usize {
        self.inverse_of[k]
    }

    pub fn element_length(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| self.lengths[i])
    }

    /// Schreier distance from the base point.
    pub fn point_depth(&self, p: &Point) -> Option<usize> {
        self.point_index.get(p).map(|&i| self.point_depth[i])
    }
}

/// An instance of `K(F, c)`.
#[derive(Clone, Debug)]
pub struct CoverWalkProblem {
    pub targets: Vec<Point>,
    pub terminal: GroupElement,
    /// Longest walk considered; `None` means the fragment radius.
    pub budget: Option<usize>,
    pub mask_width: usize,
}

impl CoverWalkProblem {
    pub fn new(targets: Vec<Point>, terminal: GroupElement) -> Self {
        CoverWalkProblem {
            targets,
            terminal,
            budget: None,
            mask_width: DEFAULT_MASK_WIDTH,
        }
    }
}

/// Exact `K(F, c)` by breadth-first search over states
/// `(group element, covered subset of F)`.
///
/// A walk of length `d` only visits elements of length `<= d`, so every
/// walk up to the effective budget `min(budget, radius)` lies inside the
/// fragment and the first accepting layer is optimal. When the fragment is
/// the whole group the radius cap is dropped: the state space is finite.
/// If no walk is found within the budget the answer is not certified and an
/// error is returned.
pub fn cover_walk_length(problem: &CoverWalkProblem, frag: &SchreierFragment) -> Result<usize> {
    let mut targets = problem.targets.clone();
    targets.sort();
    targets.dedup();
    if targets.len() > problem.mask_width.min(32) {
        return Err(Error::MaskWidthExceeded {
            size: targets.len(),
            width: problem.mask_width.min(32),
        });
    }
    let limit = match (frag.complete, problem.budget) {
        (true, b) => b.unwrap_or(usize::MAX),
        (false, b) => b.unwrap_or(frag.radius).min(frag.radius),
    };
    let exceeded = Error::RadiusBudgetExceeded { budget: limit };

    // bit mask of targets covered at each fragment point
    let mut point_bits = vec![0u32; frag.points.len()];
    for (bit, t) in targets.iter().enumerate() {
        match frag.point_index.get(t) {
            Some(&p) if frag.point_depth[p] <= limit => point_bits[p] |= 1 << bit,
            _ => return Err(exceeded),
        }
    }
    let full: u32 = if targets.is_empty() {
        0
    } else {
        u32::MAX >> (32 - targets.len())
    };
    let goal = match frag.index.get(&problem.terminal) {
        Some(&g) if frag.lengths[g] <= limit => g as u32,
        _ => return Err(exceeded),
    };

    let bits_of = |e: u32| point_bits[frag.element_point[e as usize]];
    let start = (0u32, bits_of(0));
    let key = |(e, m): (u32, u32)| ((e as u64) << 32) | m as u64;
    let mut seen: HashSet<u64> = HashSet::from([key(start)]);
    let mut layer = vec![start];
    for depth in 0..=limit {
        if layer.iter().any(|&(e, m)| e == goal && m == full) {
            return Ok(depth);
        }
        if depth == limit {
            break;
        }
        let mut next = Vec::new();
        for &(e, m) in &layer {
            for h in frag.right[e as usize].iter().flatten() {
                let state = (*h, m | bits_of(*h));
                if seen.insert(key(state)) {
                    next.push(state);
                }
            }
        }
        if next.is_empty() {
            // finite group fully explored and no walk exists
            break;
        }
        layer = next;
    }
    Err(exceeded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Domain, GroupDescriptor};

    fn z_regular(radius: usize) -> SchreierFragment {
        let action = GroupAction::new(GroupDescriptor::Int, Domain::Natural).unwrap();
        explore_action(&action, radius, Window::Unbounded).unwrap()
    }

    #[test]
    fn explore_radius_zero_and_z() {
        let f = z_regular(0);
        assert_eq!(f.walk_size(), 1);
        assert_eq!(f.points(), &[Point::Int(0)]);
        let f = z_regular(3);
        assert_eq!(f.walk_size(), 7);
        assert_eq!(f.point_depth(&Point::Int(-3)), Some(3));
    }

    #[test]
    fn explore_sym3_regular() {
        let action = GroupAction::new(GroupDescriptor::Sym { n: 3 }, Domain::Regular).unwrap();
        let f = explore_action(&action, 10, Window::Unbounded).unwrap();
        assert_eq!(f.points().len(), 6);
        assert_eq!(f.walk_size(), 6);
        assert!(f.is_complete());
    }

    #[test]
    fn complete_fragment_allows_long_walks() {
        // visiting all 3 points of Sym(3) and coming home needs more steps
        // than the diameter of the group
        let action = GroupAction::new(GroupDescriptor::Sym { n: 3 }, Domain::Natural).unwrap();
        let f = explore_action(&action, 2, Window::Unbounded).unwrap();
        let id = action.group.identity();
        let p = CoverWalkProblem::new((0..3).map(Point::Finite).collect(), id);
        let k = cover_walk_length(&p, &f).unwrap();
        assert!(k > 2, "{k}");
    }

    #[test]
    fn edge_labels_invertible() {
        let action = GroupAction::new(GroupDescriptor::Sym { n: 4 }, Domain::Natural).unwrap();
        let f = explore_action(&action, 6, Window::Unbounded).unwrap();
        let set: HashSet<SchreierEdge> = f.edges().iter().copied().collect();
        for e in f.edges() {
            assert!(set.contains(&SchreierEdge {
                from: e.to,
                to: e.from,
                label: f.inverse_label(e.label)
            }));
        }
    }

    #[test]
    fn small_cover_walks() {
        let f = z_regular(10);
        let k = |targets: Vec<i64>, c: i64| {
            let p = CoverWalkProblem::new(
                targets.into_iter().map(Point::Int).collect(),
                GroupElement::Int(c),
            );
            cover_walk_length(&p, &f)
        };
        assert_eq!(k(vec![], 0).unwrap(), 0);
        assert_eq!(k(vec![2], 2).unwrap(), 2);
        assert_eq!(k(vec![-1, 2], 0).unwrap(), 6);
        assert_eq!(k(vec![0], 0).unwrap(), 0);
        assert!(matches!(
            k(vec![-6, 6], 0),
            Err(Error::RadiusBudgetExceeded { .. })
        ));
    }

    #[test]
    fn mask_width_enforced() {
        let f = z_regular(30);
        let mut p = CoverWalkProblem::new((0..5).map(Point::Int).collect(), GroupElement::Int(0));
        p.mask_width = 4;
        assert_eq!(
            cover_walk_length(&p, &f),
            Err(Error::MaskWidthExceeded { size: 5, width: 4 })
        );
    }

    #[test]
    fn window_escape() {
        let action = GroupAction::new(GroupDescriptor::Int, Domain::Natural).unwrap();
        let err = explore_action(&action, 5, Window::Size(3)).unwrap_err();
        assert!(matches!(err, Error::TruncationEscape { .. }));
    }
}
