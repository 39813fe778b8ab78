use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::GroupElement;

use super::ball::BallEntry;
use super::element::WreathElement;
use super::metric::WreathMetric;

/// A length-bi-Lipschitz bijection between two fiber groups, with its
/// declared constant.
#[derive(Clone, Copy, Debug)]
pub struct FiberMap {
    pub name: &'static str,
    pub constant: u64,
    map: fn(&GroupElement) -> Result<GroupElement>,
}

impl FiberMap {
    pub fn new(
        name: &'static str,
        constant: u64,
        map: fn(&GroupElement) -> Result<GroupElement>,
    ) -> Self {
        FiberMap {
            name,
            constant,
            map,
        }
    }

    /// `Z → D∞`, `n ↦ (ab)ⁿ`, constant 2.
    pub fn int_to_dihedral() -> Self {
        fn map(g: &GroupElement) -> Result<GroupElement> {
            match g {
                GroupElement::Int(n) => Ok(GroupElement::Dihedral {
                    reflect: false,
                    shift: *n,
                }),
                other => Err(Error::MixedGroupKinds("int".into(), other.kind())),
            }
        }
        FiberMap::new("n -> (ab)^n", 2, map)
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        (self.map)(g)
    }

    /// `(f, c) ↦ (φ ∘ f, c)`.
    pub fn lift(&self, e: &WreathElement) -> Result<WreathElement> {
        WreathElement::new(
            e.function().map_values(|w| self.apply(w))?,
            e.cursor_element().clone(),
        )
    }
}

fn ratio_str<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// A pair whose length ratio fell outside `[1/L, L]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistortionViolation {
    pub element: WreathElement,
    pub len_source: usize,
    pub len_image: usize,
}

/// Length ratios `|image| / |source|` across a set of elements.
#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub fiber_map: &'static str,
    pub constant: u64,
    /// Nonidentity elements compared.
    pub compared: usize,
    /// Identity elements, both lengths 0, excluded from the ratios.
    pub identities: usize,
    #[serde(serialize_with = "ratio_str")]
    pub max_ratio: Option<Ratio<u64>>,
    #[serde(serialize_with = "ratio_str")]
    pub min_ratio: Option<Ratio<u64>>,
    pub max_witness: Option<WreathElement>,
    pub min_witness: Option<WreathElement>,
    pub violations: Vec<DistortionViolation>,
}

impl DistortionReport {
    pub fn within_bounds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares word lengths in the source wreath product with those of the
/// images under the lifted fiber map.
pub fn bilipschitz_compare(
    ball: &[BallEntry],
    fiber_map: &FiberMap,
    source: &WreathMetric,
    image: &WreathMetric,
) -> Result<DistortionReport> {
    let l = Ratio::from_integer(fiber_map.constant);
    let mut report = DistortionReport {
        fiber_map: fiber_map.name,
        constant: fiber_map.constant,
        compared: 0,
        identities: 0,
        max_ratio: None,
        min_ratio: None,
        max_witness: None,
        min_witness: None,
        violations: Vec::new(),
    };
    for entry in ball {
        let e = entry.element();
        let a = source.word_length(&e)?;
        let b = image.word_length(&fiber_map.lift(&e)?)?;
        if a == 0 || b == 0 {
            if a == b {
                report.identities += 1;
            } else {
                report.violations.push(DistortionViolation {
                    element: e,
                    len_source: a,
                    len_image: b,
                });
            }
            continue;
        }
        report.compared += 1;
        let r = Ratio::new(b as u64, a as u64);
        if report.max_ratio.map_or(true, |m| r > m) {
            report.max_ratio = Some(r);
            report.max_witness = Some(e.clone());
        }
        if report.min_ratio.map_or(true, |m| r < m) {
            report.min_ratio = Some(r);
            report.min_witness = Some(e.clone());
        }
        if r > l || r * l < Ratio::from_integer(1) {
            report.violations.push(DistortionViolation {
                element: e,
                len_source: a,
                len_image: b,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Domain, GroupAction, GroupDescriptor, Point, Window};
    use crate::wreath::{wr_ball, FinSupportFunction, WreathGenerators};

    fn metrics(radius: usize) -> (WreathMetric, WreathMetric) {
        let z = GroupAction::new(GroupDescriptor::Int, Domain::Natural).unwrap();
        let a = WreathGenerators::standard(&GroupDescriptor::Int, &z).unwrap();
        let b = WreathGenerators::standard(&GroupDescriptor::DihedralInf, &z).unwrap();
        (
            WreathMetric::new(a, radius, Window::Unbounded).unwrap(),
            WreathMetric::new(b, radius, Window::Unbounded).unwrap(),
        )
    }

    #[test]
    fn single_lamp_doubles() {
        let (ma, mb) = metrics(6);
        let e = WreathElement::new(
            FinSupportFunction::delta(Point::Int(0), GroupElement::Int(3)),
            GroupElement::Int(0),
        )
        .unwrap();
        let phi = FiberMap::int_to_dihedral();
        assert_eq!(ma.word_length(&e).unwrap(), 3);
        assert_eq!(mb.word_length(&phi.lift(&e).unwrap()).unwrap(), 6);
    }

    #[test]
    fn small_ball_within_constant() {
        let (ma, mb) = metrics(6);
        let ball = wr_ball(ma.generators(), 3, Window::Unbounded).unwrap();
        let r = bilipschitz_compare(&ball, &FiberMap::int_to_dihedral(), &ma, &mb).unwrap();
        assert_eq!(r.identities, 1);
        assert_eq!(r.compared, ball.len() - 1);
        assert!(r.within_bounds());
        assert_eq!(r.max_ratio, Some(Ratio::new(2, 1)));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["max_ratio"], "2");
    }
}
