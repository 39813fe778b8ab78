//! Houghton groups `H_n`: permutations of `n` rays of naturals that are
//! eventually a translation on each ray.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Ω_n`: `ray` in `1..=n`, `pos` a natural number.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RayPoint {
    pub ray: u32,
    pub pos: u64,
}

impl RayPoint {
    pub fn new(ray: u32, pos: u64) -> Self {
        RayPoint { ray, pos }
    }
}

impl fmt::Debug for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ray {})", self.pos, self.ray)
    }
}

/// Canonical Houghton element.
///
/// On ray `i`, every position `k >= cutoffs[i]` maps to `k + offsets[i]` on
/// the same ray. Positions below the cutoff are listed in `exceptions`,
/// sorted by source. Cutoffs are minimal, so two elements are equal as
/// permutations iff they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawHoughton", into = "RawHoughton")]
pub struct HoughtonElement {
    offsets: Vec<i64>,
    cutoffs: Vec<u64>,
    exceptions: Vec<(RayPoint, RayPoint)>,
}

#[derive(Serialize, Deserialize)]
struct RawHoughton {
    offsets: Vec<i64>,
    cutoffs: Vec<u64>,
    exceptions: Vec<(RayPoint, RayPoint)>,
}

impl HoughtonElement {
    pub fn from_parts(
        offsets: Vec<i64>,
        cutoffs: Vec<u64>,
        mut exceptions: Vec<(RayPoint, RayPoint)>,
    ) -> Result<Self> {
        let n = offsets.len();
        let bad = |why: String| Err(Error::InvalidElement(format!("Houghton element: {why}")));
        if n == 0 || cutoffs.len() != n {
            return bad("offsets and cutoffs must have the same positive length".into());
        }
        if offsets.iter().sum::<i64>() != 0 {
            return bad("ray offsets must sum to zero".into());
        }
        for i in 0..n {
            if (cutoffs[i] as i64) + offsets[i] < 0 {
                return bad(format!("cutoff on ray {} too small for its offset", i + 1));
            }
        }
        exceptions.sort();
        let sources: Vec<RayPoint> = exceptions.iter().map(|e| e.0).collect();
        let expected_sources: Vec<RayPoint> = (0..n)
            .flat_map(|i| (0..cutoffs[i]).map(move |k| RayPoint::new(i as u32 + 1, k)))
            .collect();
        if sources != expected_sources {
            return bad("exceptions must list exactly the points below the cutoffs".into());
        }
        let mut targets: Vec<RayPoint> = exceptions.iter().map(|e| e.1).collect();
        targets.sort();
        let expected_targets: Vec<RayPoint> = (0..n)
            .flat_map(|i| {
                let top = (cutoffs[i] as i64 + offsets[i]) as u64;
                (0..top).map(move |k| RayPoint::new(i as u32 + 1, k))
            })
            .collect();
        if targets != expected_targets {
            return bad("exceptions do not complete the translations to a bijection".into());
        }
        let mut h = HoughtonElement {
            offsets,
            cutoffs,
            exceptions,
        };
        h.shrink();
        Ok(h)
    }

    /// Builds the element agreeing with `rule` everywhere, given offsets
    /// and cutoffs beyond which `rule` is the translation.
    fn from_rule(
        offsets: Vec<i64>,
        cutoffs: Vec<u64>,
        rule: impl Fn(RayPoint) -> RayPoint,
    ) -> Result<Self> {
        let exceptions = cutoffs
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| (0..c).map(move |k| RayPoint::new(i as u32 + 1, k)))
            .map(|p| (p, rule(p)))
            .collect();
        HoughtonElement::from_parts(offsets, cutoffs, exceptions)
    }

    fn shrink(&mut self) {
        for i in 0..self.offsets.len() {
            let ray = i as u32 + 1;
            while self.cutoffs[i] > 0 {
                let k = self.cutoffs[i] - 1;
                let target = k as i64 + self.offsets[i];
                if target < 0 {
                    break;
                }
                let p = RayPoint::new(ray, k);
                let idx = self
                    .exceptions
                    .binary_search_by(|e| e.0.cmp(&p))
                    .expect("point below cutoff is listed");
                if self.exceptions[idx].1 != RayPoint::new(ray, target as u64) {
                    break;
                }
                self.exceptions.remove(idx);
                self.cutoffs[i] = k;
            }
        }
    }

    pub fn identity(n: usize) -> Self {
        HoughtonElement {
            offsets: vec![0; n],
            cutoffs: vec![0; n],
            exceptions: Vec::new(),
        }
    }

    /// The translation pushing points from ray `from` onto ray `to` along the
    /// line through the origin: ray `to` shifts by +1, ray `from` by -1, and
    /// `(0, from)` lands on `(0, to)`.
    pub fn translation(n: usize, to: u32, from: u32) -> Result<Self> {
        if to == from || to == 0 || from == 0 || to as usize > n || from as usize > n {
            return Err(Error::InvalidElement(format!(
                "translation between rays {to} and {from} in H_{n}"
            )));
        }
        let mut offsets = vec![0; n];
        let mut cutoffs = vec![0; n];
        offsets[to as usize - 1] = 1;
        offsets[from as usize - 1] = -1;
        cutoffs[from as usize - 1] = 1;
        HoughtonElement::from_parts(
            offsets,
            cutoffs,
            vec![(RayPoint::new(from, 0), RayPoint::new(to, 0))],
        )
    }

    /// A transposition of two points, finitary.
    pub fn transposition(n: usize, a: RayPoint, b: RayPoint) -> Result<Self> {
        let mut cutoffs = vec![0u64; n];
        for p in [a, b] {
            if p.ray == 0 || p.ray as usize > n {
                return Err(Error::InvalidElement(format!("{p:?} not in Ω_{n}")));
            }
            let c = &mut cutoffs[p.ray as usize - 1];
            *c = (*c).max(p.pos + 1);
        }
        HoughtonElement::from_rule(vec![0; n], cutoffs, |p| {
            if p == a {
                b
            } else if p == b {
                a
            } else {
                p
            }
        })
    }

    pub fn rays(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn cutoffs(&self) -> &[u64] {
        &self.cutoffs
    }

    pub fn exceptions(&self) -> &[(RayPoint, RayPoint)] {
        &self.exceptions
    }

    pub fn is_identity(&self) -> bool {
        self.exceptions.is_empty() && self.offsets.iter().all(|&t| t == 0)
    }

    pub fn apply(&self, p: RayPoint) -> Result<RayPoint> {
        let n = self.rays();
        if p.ray == 0 || p.ray as usize > n {
            return Err(Error::PointOutOfDomain {
                point: format!("{p:?}"),
                group: format!("H_{n}"),
            });
        }
        let i = p.ray as usize - 1;
        if p.pos >= self.cutoffs[i] {
            return Ok(RayPoint::new(p.ray, (p.pos as i64 + self.offsets[i]) as u64));
        }
        let idx = self
            .exceptions
            .binary_search_by(|e| e.0.cmp(&p))
            .expect("point below cutoff is listed");
        Ok(self.exceptions[idx].1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HoughtonElement) -> HoughtonElement {
        let n = self.rays();
        let offsets: Vec<i64> = (0..n).map(|i| self.offsets[i] + other.offsets[i]).collect();
        // beyond these cutoffs both factors act as translations
        let cutoffs: Vec<u64> = (0..n)
            .map(|i| {
                let c = (self.cutoffs[i] as i64 - other.offsets[i])
                    .max(other.cutoffs[i] as i64)
                    .max(-offsets[i])
                    .max(0);
                c as u64
            })
            .collect();
        HoughtonElement::from_rule(offsets, cutoffs, |p| {
            self.apply(other.apply(p).expect("in domain"))
                .expect("in domain")
        })
        .expect("composition of bijections")
    }

    pub fn inverse(&self) -> HoughtonElement {
        let n = self.rays();
        let offsets: Vec<i64> = self.offsets.iter().map(|t| -t).collect();
        let cutoffs: Vec<u64> = (0..n)
            .map(|i| (self.cutoffs[i] as i64 + self.offsets[i]) as u64)
            .collect();
        let exceptions = self.exceptions.iter().map(|&(a, b)| (b, a)).collect();
        HoughtonElement::from_parts(offsets, cutoffs, exceptions).expect("inverse of a bijection")
    }
}

impl TryFrom<RawHoughton> for HoughtonElement {
    type Error = String;
    fn try_from(r: RawHoughton) -> std::result::Result<Self, String> {
        HoughtonElement::from_parts(r.offsets, r.cutoffs, r.exceptions).map_err(|e| e.to_string())
    }
}

impl From<HoughtonElement> for RawHoughton {
    fn from(h: HoughtonElement) -> Self {
        RawHoughton {
            offsets: h.offsets,
            cutoffs: h.cutoffs,
            exceptions: h.exceptions,
        }
    }
}
