use serde::{Deserialize, Serialize};

use super::descriptor::{symmetric_closure, GroupDescriptor};
use super::dyadic::{unit_interval_window, Dyadic};
use super::element::{act, GroupElement, Point};
use super::finite::FiniteGroup;
use super::houghton::RayPoint;
use crate::error::{Error, Result};

/// Which G-set a group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// The defining action: `0..n` for permutation and cyclic groups, `Z`
    /// for `Z` and D∞, dyadics of `[0,1]` for F, `Ω_n` for `H_n`.
    #[default]
    Natural,
    /// The group acting on itself by left multiplication.
    Regular,
}

/// Truncation of an infinite point domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    Unbounded,
    /// Integers with `|k| <= m`, dyadics with exponent `<= m`, ray points
    /// with position `<= m`. Finite domains are never truncated.
    Size(u64),
}

impl Window {
    pub fn contains(&self, p: &Point) -> bool {
        let m = match self {
            Window::Unbounded => return true,
            Window::Size(m) => *m,
        };
        match p {
            Point::Finite(_) => true,
            Point::Int(k) => k.unsigned_abs() <= m,
            Point::Dyadic(d) => (d.exponent() as u64) <= m,
            Point::Ray(r) => r.pos <= m,
            Point::Element(GroupElement::Int(k)) => k.unsigned_abs() <= m,
            Point::Element(GroupElement::Dihedral { shift, .. }) => shift.unsigned_abs() <= m,
            Point::Element(_) => true,
        }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Window::Unbounded => write!(f, "unbounded"),
            Window::Size(m) => write!(f, "size {m}"),
        }
    }
}

/// A group acting on a set, with a symmetric generating set and one base
/// point per declared orbit.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: GroupDescriptor,
    pub domain: Domain,
    /// Symmetric: closed under inverses.
    pub generators: Vec<(String, GroupElement)>,
    pub base_points: Vec<Point>,
}

impl GroupAction {
    pub fn new(group: GroupDescriptor, domain: Domain) -> Result<Self> {
        let generators = symmetric_closure(&group.generators()?);
        let base = Self::default_base_point(&group, domain)?;
        Ok(GroupAction {
            group,
            domain,
            generators,
            base_points: vec![base],
        })
    }

    pub fn with_base_points(mut self, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            self.check_point(p)?;
        }
        self.base_points = points;
        Ok(self)
    }

    pub fn base_point(&self) -> &Point {
        &self.base_points[0]
    }

    fn default_base_point(group: &GroupDescriptor, domain: Domain) -> Result<Point> {
        if domain == Domain::Regular {
            return Ok(Point::Element(group.identity()));
        }
        Ok(match group {
            GroupDescriptor::Sym { .. }
            | GroupDescriptor::Cyclic { .. }
            | GroupDescriptor::Dihedral { .. }
            | GroupDescriptor::Perm { .. } => Point::Finite(0),
            GroupDescriptor::Int | GroupDescriptor::DihedralInf => Point::Int(0),
            GroupDescriptor::ThompsonF => Point::Dyadic(Dyadic::new(1, 1)),
            GroupDescriptor::Houghton { .. } => Point::Ray(RayPoint::new(1, 0)),
            GroupDescriptor::Product { .. } => {
                return Err(Error::InvalidElement(
                    "direct products only act regularly here".into(),
                ))
            }
        })
    }

    /// Size of the natural finite domain, if it is finite.
    pub fn finite_degree(&self) -> Option<usize> {
        if self.domain == Domain::Regular {
            return None;
        }
        match &self.group {
            GroupDescriptor::Sym { n } | GroupDescriptor::Dihedral { n } => Some(*n),
            GroupDescriptor::Perm { degree, .. } => Some(*degree),
            GroupDescriptor::Cyclic { n } => Some(*n as usize),
            _ => None,
        }
    }

    /// Errors unless `p` lies in the domain of this action.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        let ok = match (self.domain, p) {
            (Domain::Regular, Point::Element(g)) => {
                g.validate().is_ok() && g.kind() == self.group.identity().kind()
            }
            (Domain::Natural, Point::Finite(i)) => self.finite_degree().is_some_and(|n| *i < n),
            (Domain::Natural, Point::Int(_)) => matches!(
                self.group,
                GroupDescriptor::Int | GroupDescriptor::DihedralInf
            ),
            (Domain::Natural, Point::Dyadic(d)) => {
                self.group == GroupDescriptor::ThompsonF
                    && *d >= Dyadic::ZERO
                    && *d <= Dyadic::ONE
            }
            (Domain::Natural, Point::Ray(r)) => match self.group {
                GroupDescriptor::Houghton { n } => r.ray >= 1 && r.ray as usize <= n,
                _ => false,
            },
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PointOutOfDomain {
                point: format!("{p:?}"),
                group: self.group.name(),
            })
        }
    }

    pub fn act(&self, g: &GroupElement, x: &Point) -> Result<Point> {
        self.check_point(x)?;
        act(g, x)
    }

    /// Lists the points of the domain inside the window. Fails when the
    /// list would exceed `limit` points or the domain cannot be truncated.
    pub fn window_points(&self, window: Window, limit: usize) -> Result<Vec<Point>> {
        let too_many = |size: usize| Error::BudgetExceeded {
            size,
            budget: limit,
        };
        if let Some(n) = self.finite_degree() {
            if n > limit {
                return Err(too_many(n));
            }
            return Ok((0..n).map(Point::Finite).collect());
        }
        if self.domain == Domain::Regular && self.group.is_finite() {
            let g = FiniteGroup::from_descriptor(&self.group, limit)?;
            return Ok(g.elements().iter().cloned().map(Point::Element).collect());
        }
        let m = match window {
            Window::Size(m) => m,
            Window::Unbounded => {
                return Err(Error::TruncationEscape {
                    point: "<domain>".into(),
                    window: "unbounded".into(),
                })
            }
        };
        let check = |size: u128| -> Result<()> {
            if size > limit as u128 {
                Err(too_many(size.min(usize::MAX as u128) as usize))
            } else {
                Ok(())
            }
        };
        let m_i = m as i64;
        match (&self.group, self.domain) {
            (GroupDescriptor::Int | GroupDescriptor::DihedralInf, Domain::Natural) => {
                check(2 * m as u128 + 1)?;
                Ok((-m_i..=m_i).map(Point::Int).collect())
            }
            (GroupDescriptor::Int, Domain::Regular) => {
                check(2 * m as u128 + 1)?;
                Ok((-m_i..=m_i)
                    .map(|k| Point::Element(GroupElement::Int(k)))
                    .collect())
            }
            (GroupDescriptor::ThompsonF, Domain::Natural) => {
                if m >= 64 {
                    return Err(too_many(usize::MAX));
                }
                check((1u128 << m) - 1)?;
                Ok(unit_interval_window(m as u32)
                    .into_iter()
                    .map(Point::Dyadic)
                    .collect())
            }
            (GroupDescriptor::Houghton { n }, Domain::Natural) => {
                check(*n as u128 * (m as u128 + 1))?;
                Ok((1..=*n as u32)
                    .flat_map(|ray| (0..=m).map(move |pos| Point::Ray(RayPoint::new(ray, pos))))
                    .collect())
            }
            _ => Err(Error::InvalidElement(format!(
                "no truncation window for {} acting {:?}",
                self.group.name(),
                self.domain
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_base_points() {
        let f = GroupAction::new(GroupDescriptor::ThompsonF, Domain::Natural).unwrap();
        assert_eq!(f.base_point(), &Point::Dyadic("1/2".parse().unwrap()));
        let z = GroupAction::new(GroupDescriptor::Int, Domain::Regular).unwrap();
        assert_eq!(z.base_point(), &Point::Element(GroupElement::Int(0)));
    }

    #[test]
    fn domain_checks() {
        let s3 = GroupAction::new(GroupDescriptor::Sym { n: 3 }, Domain::Natural).unwrap();
        assert!(s3.check_point(&Point::Finite(2)).is_ok());
        assert!(matches!(
            s3.check_point(&Point::Finite(3)),
            Err(Error::PointOutOfDomain { .. })
        ));
        assert!(s3.check_point(&Point::Int(0)).is_err());
    }

    #[test]
    fn windows() {
        let f = GroupAction::new(GroupDescriptor::ThompsonF, Domain::Natural).unwrap();
        assert_eq!(f.window_points(Window::Size(6), 1000).unwrap().len(), 63);
        assert!(f.window_points(Window::Size(20), 1000).is_err());
        let h = GroupAction::new(GroupDescriptor::Houghton { n: 3 }, Domain::Natural).unwrap();
        assert_eq!(h.window_points(Window::Size(20), 1000).unwrap().len(), 63);
        let s3 = GroupAction::new(GroupDescriptor::Sym { n: 3 }, Domain::Regular).unwrap();
        assert_eq!(s3.window_points(Window::Unbounded, 100).unwrap().len(), 6);
    }
}
