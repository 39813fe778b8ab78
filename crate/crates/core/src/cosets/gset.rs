use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groups::{act, Domain, ElemSet, FiniteGroup, GroupAction, Point, Window};

/// A finite group acting on a finite set, fully tabulated: orbits, one base
/// point `x_i` per orbit, and the stabilizers `H_i`.
#[derive(Clone, Debug)]
pub struct FiniteGSet {
    group: FiniteGroup,
    points: Vec<Point>,
    point_index: HashMap<Point, usize>,
    /// `images[g][p]` = index of `g · p`.
    images: Vec<Vec<u32>>,
    orbit_of: Vec<usize>,
    bases: Vec<usize>,
    stabilizers: Vec<ElemSet>,
}

impl FiniteGSet {
    /// Tabulates a finite action. The action's base points are used first,
    /// in order; orbits they miss get their smallest point appended.
    pub fn from_action(action: &GroupAction, budget: usize) -> Result<Self> {
        if !action.group.is_finite() {
            return Err(Error::NotFullyEnumerable { budget });
        }
        let group = FiniteGroup::from_descriptor(&action.group, budget)?;
        let points = match action.domain {
            Domain::Regular => group.elements().iter().cloned().map(Point::Element).collect(),
            Domain::Natural => action.window_points(Window::Unbounded, budget)?,
        };
        FiniteGSet::new(group, points, &action.base_points)
    }

    pub fn new(group: FiniteGroup, points: Vec<Point>, base_points: &[Point]) -> Result<Self> {
        let point_index: HashMap<Point, usize> =
            points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lookup = |p: &Point| -> Result<usize> {
            point_index.get(p).copied().ok_or_else(|| Error::PointOutOfDomain {
                point: format!("{p:?}"),
                group: "finite G-set".into(),
            })
        };
        let mut images = Vec::with_capacity(group.order());
        for g in group.elements() {
            let row = points
                .iter()
                .map(|p| lookup(&act(g, p)?).map(|i| i as u32))
                .collect::<Result<Vec<_>>>()?;
            images.push(row);
        }

        let mut orbit_of = vec![usize::MAX; points.len()];
        let mut bases = Vec::new();
        let label = |start: usize, orbit_of: &mut Vec<usize>, bases: &mut Vec<usize>| {
            let k = bases.len();
            bases.push(start);
            for row in &images {
                orbit_of[row[start] as usize] = k;
            }
        };
        for b in base_points {
            let i = lookup(b)?;
            if orbit_of[i] != usize::MAX {
                return Err(Error::InvalidElement(format!(
                    "base point {b:?} lies in the orbit of an earlier base point"
                )));
            }
            label(i, &mut orbit_of, &mut bases);
        }
        for i in 0..points.len() {
            if orbit_of[i] == usize::MAX {
                label(i, &mut orbit_of, &mut bases);
            }
        }
        let stabilizers = bases
            .iter()
            .map(|&x| group.set_of((0..group.order()).filter(|&g| images[g][x] as usize == x)))
            .collect();
        Ok(FiniteGSet {
            group,
            points,
            point_index,
            images,
            orbit_of,
            bases,
            stabilizers,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, p: usize) -> &Point {
        &self.points[p]
    }

    pub fn point_index(&self, p: &Point) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    /// Index of `g · p`.
    pub fn image(&self, g: usize, p: usize) -> usize {
        self.images[g][p] as usize
    }

    pub fn orbit_count(&self) -> usize {
        self.bases.len()
    }

    pub fn orbit_of(&self, p: usize) -> usize {
        self.orbit_of[p]
    }

    /// Point index of the base point `x_i`.
    pub fn base(&self, i: usize) -> usize {
        self.bases[i]
    }

    /// `H_i`, the stabilizer of `x_i`.
    pub fn stabilizer(&self, i: usize) -> &ElemSet {
        &self.stabilizers[i]
    }

    pub fn orbit_points(&self, i: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.orbit_of[p] == i).collect()
    }

    /// Some `g` with `g · x_i = p`.
    pub fn transporter(&self, i: usize, p: usize) -> Option<usize> {
        let x = self.bases[i];
        (0..self.group.order()).find(|&g| self.image(g, x) == p)
    }

    /// Whether every element fixing all points is trivial.
    pub fn is_faithful(&self) -> bool {
        (1..self.group.order()).all(|g| (0..self.points.len()).any(|p| self.image(g, p) != p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupDescriptor, Perm};

    #[test]
    fn sym3_natural() {
        let a = GroupAction::new(GroupDescriptor::Sym { n: 3 }, Domain::Natural).unwrap();
        let x = FiniteGSet::from_action(&a, 100).unwrap();
        assert_eq!(x.orbit_count(), 1);
        assert_eq!(x.stabilizer(0).count_ones(..), 2);
        assert!(x.is_faithful());
    }

    #[test]
    fn two_orbits_get_base_points() {
        let g = GroupDescriptor::Perm {
            degree: 5,
            generators: vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1], &[3, 4]]).unwrap(),
            ],
        };
        let a = GroupAction::new(g, Domain::Natural).unwrap();
        let x = FiniteGSet::from_action(&a, 100).unwrap();
        assert_eq!(x.orbit_count(), 2);
        assert_eq!(x.point(x.base(1)), &Point::Finite(3));
        assert_eq!(x.orbit_points(1).len(), 2);
        assert_eq!(x.stabilizer(1).count_ones(..), 3);
    }

    #[test]
    fn regular_action_has_trivial_stabilizer() {
        let a = GroupAction::new(GroupDescriptor::Dihedral { n: 4 }, Domain::Regular).unwrap();
        let x = FiniteGSet::from_action(&a, 100).unwrap();
        assert_eq!(x.points().len(), 8);
        assert_eq!(x.stabilizer(0).count_ones(..), 1);
    }
}
