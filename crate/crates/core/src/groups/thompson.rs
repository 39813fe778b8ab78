//! Thompson's group F as piecewise-linear homeomorphisms of `[0, 1]`.

use serde::{Deserialize, Serialize};

use super::dyadic::Dyadic;
use crate::error::{Error, Result};

/// An element of F given by its breakpoints `(x, f(x))`, from `(0,0)` to
/// `(1,1)`. Canonical: every interior breakpoint is a genuine change of
/// slope, so structural equality is equality of maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<(Dyadic, Dyadic)>", into = "Vec<(Dyadic, Dyadic)>")]
pub struct PlMap {
    points: Vec<(Dyadic, Dyadic)>,
}

impl PlMap {
    /// Validates the breakpoint list and removes redundant breakpoints.
    pub fn new(points: Vec<(Dyadic, Dyadic)>) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidElement(format!("PL map: {why}")));
        if points.len() < 2 {
            return bad("needs at least the endpoints");
        }
        if points[0] != (Dyadic::ZERO, Dyadic::ZERO)
            || points[points.len() - 1] != (Dyadic::ONE, Dyadic::ONE)
        {
            return bad("must fix 0 and 1");
        }
        for w in points.windows(2) {
            let dx = w[1].0 - w[0].0;
            let dy = w[1].1 - w[0].1;
            if !dx.is_positive() || !dy.is_positive() {
                return bad("breakpoints must be strictly increasing");
            }
            if dy.log2_ratio(&dx).is_none() {
                return bad("slope is not a power of two");
            }
        }
        let mut map = PlMap { points };
        map.drop_redundant();
        Ok(map)
    }

    pub fn identity() -> Self {
        PlMap {
            points: vec![(Dyadic::ZERO, Dyadic::ZERO), (Dyadic::ONE, Dyadic::ONE)],
        }
    }

    /// The generator `x0`: `t/2` on `[0,1/2]`, `t - 1/4` on `[1/2,3/4]`,
    /// `2t - 1` on `[3/4,1]`.
    pub fn x0() -> Self {
        PlMap::new(vec![
            (Dyadic::ZERO, Dyadic::ZERO),
            (Dyadic::new(1, 1), Dyadic::new(1, 2)),
            (Dyadic::new(3, 2), Dyadic::new(1, 1)),
            (Dyadic::ONE, Dyadic::ONE),
        ])
        .expect("x0 is a valid PL map")
    }

    /// The generator `x1`: identity on `[0,1/2]`, a half-scale copy of `x0`
    /// on `[1/2,1]`.
    pub fn x1() -> Self {
        PlMap::new(vec![
            (Dyadic::ZERO, Dyadic::ZERO),
            (Dyadic::new(1, 1), Dyadic::new(1, 1)),
            (Dyadic::new(3, 2), Dyadic::new(5, 3)),
            (Dyadic::new(7, 3), Dyadic::new(3, 2)),
            (Dyadic::ONE, Dyadic::ONE),
        ])
        .expect("x1 is a valid PL map")
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    fn slope_exp(a: &(Dyadic, Dyadic), b: &(Dyadic, Dyadic)) -> i32 {
        (b.1 - a.1)
            .log2_ratio(&(b.0 - a.0))
            .expect("validated slope")
    }

    fn drop_redundant(&mut self) {
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            while out.len() >= 2 {
                let n = out.len();
                if Self::slope_exp(&out[n - 2], &out[n - 1]) == Self::slope_exp(&out[n - 1], &p) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        self.points = out;
    }

    /// Evaluates the map at a point of `[0, 1]`.
    pub fn eval(&self, x: Dyadic) -> Result<Dyadic> {
        if x < Dyadic::ZERO || x > Dyadic::ONE {
            return Err(Error::PointOutOfDomain {
                point: x.to_string(),
                group: "Thompson F".into(),
            });
        }
        // last breakpoint with abscissa <= x
        let i = self.points.partition_point(|p| p.0 <= x) - 1;
        if i == self.points.len() - 1 {
            return Ok(self.points[i].1);
        }
        let k = Self::slope_exp(&self.points[i], &self.points[i + 1]);
        Ok(self.points[i].1 + (x - self.points[i].0).mul_pow2(k))
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PlMap) -> PlMap {
        let other_inv = other.inverse();
        let mut xs: Vec<Dyadic> = other.points.iter().map(|p| p.0).collect();
        xs.extend(
            self.points
                .iter()
                .map(|p| other_inv.eval(p.0).expect("breakpoints lie in [0,1]")),
        );
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self
                    .eval(other.eval(x).expect("in domain"))
                    .expect("in domain");
                (x, y)
            })
            .collect();
        let mut map = PlMap { points };
        map.drop_redundant();
        map
    }
}

impl TryFrom<Vec<(Dyadic, Dyadic)>> for PlMap {
    type Error = String;
    fn try_from(v: Vec<(Dyadic, Dyadic)>) -> std::result::Result<Self, String> {
        PlMap::new(v).map_err(|e| e.to_string())
    }
}

impl From<PlMap> for Vec<(Dyadic, Dyadic)> {
    fn from(m: PlMap) -> Self {
        m.points
    }
}
