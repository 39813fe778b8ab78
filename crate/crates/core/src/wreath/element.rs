use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groups::{act, GroupElement, GroupOps, Point};

/// A finitely supported function `X → W`. Points that are absent map to
/// the identity of `W`; identity values are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSupportFunction(BTreeMap<Point, GroupElement>);

impl FinSupportFunction {
    pub fn new() -> Self {
        FinSupportFunction(BTreeMap::new())
    }

    /// Builds from pairs. Repeated points are multiplied together in order.
    pub fn from_entries(entries: impl IntoIterator<Item = (Point, GroupElement)>) -> Result<Self> {
        let mut f = FinSupportFunction::new();
        for (x, w) in entries {
            f = f.pointwise_mul(&FinSupportFunction::delta(x, w))?;
        }
        Ok(f)
    }

    /// `δ_x(w)`: the function with value `w` at `x` only.
    pub fn delta(x: Point, w: GroupElement) -> Self {
        let mut m = BTreeMap::new();
        if !w.is_identity() {
            m.insert(x, w);
        }
        FinSupportFunction(m)
    }

    /// Value at `x`, or `None` for the identity.
    pub fn get(&self, x: &Point) -> Option<&GroupElement> {
        self.0.get(x)
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.0.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Point, &GroupElement)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise product `f · g`.
    pub fn pointwise_mul(&self, other: &FinSupportFunction) -> Result<Self> {
        let mut m = self.0.clone();
        for (x, w) in &other.0 {
            match m.get(x) {
                Some(v) => {
                    let p = v.try_mul(w)?;
                    if p.is_identity() {
                        m.remove(x);
                    } else {
                        m.insert(x.clone(), p);
                    }
                }
                None => {
                    m.insert(x.clone(), w.clone());
                }
            }
        }
        Ok(FinSupportFunction(m))
    }

    /// `c · f`, that is `x ↦ f(c⁻¹ x)`: the value at `p` moves to `c · p`.
    pub fn translate(&self, c: &GroupElement) -> Result<Self> {
        if c.is_identity() {
            return Ok(self.clone());
        }
        let mut m = BTreeMap::new();
        for (x, w) in &self.0 {
            m.insert(act(c, x)?, w.clone());
        }
        Ok(FinSupportFunction(m))
    }

    pub fn pointwise_inverse(&self) -> Self {
        FinSupportFunction(self.0.iter().map(|(x, w)| (x.clone(), w.inverse())).collect())
    }

    /// Applies `phi` to every value. `phi` must send exactly the identity to
    /// the identity; other identity images are dropped.
    pub fn map_values(&self, phi: impl Fn(&GroupElement) -> Result<GroupElement>) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (x, w) in &self.0 {
            let v = phi(w)?;
            if !v.is_identity() {
                m.insert(x.clone(), v);
            }
        }
        Ok(FinSupportFunction(m))
    }
}

impl std::fmt::Debug for FinSupportFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

// JSON keys must be strings, so the function travels as a list of pairs.
impl Serialize for FinSupportFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

impl<'de> Deserialize<'de> for FinSupportFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(Point, GroupElement)>::deserialize(d)?;
        FinSupportFunction::from_entries(pairs).map_err(serde::de::Error::custom)
    }
}

/// An element `(f, c)` of `W ≀_X G`, written multiplicatively:
/// `(f₁, c₁)(f₂, c₂) = (f₁ · c₁f₂, c₁c₂)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WreathElement {
    f: FinSupportFunction,
    c: GroupElement,
}

impl WreathElement {
    /// Checks that every support point lies in a domain `c` acts on.
    pub fn new(f: FinSupportFunction, c: GroupElement) -> Result<Self> {
        for x in f.support() {
            act(&c, x)?;
        }
        Ok(WreathElement { f, c })
    }

    /// `(0, 1)`, given the identity of `G`.
    pub fn identity(base_identity: GroupElement) -> Self {
        WreathElement {
            f: FinSupportFunction::new(),
            c: base_identity,
        }
    }

    /// `(δ_x(w), 1)`.
    pub fn lamp(x: Point, w: GroupElement, base_identity: GroupElement) -> Result<Self> {
        WreathElement::new(FinSupportFunction::delta(x, w), base_identity)
    }

    /// `(0, c)`.
    pub fn cursor(c: GroupElement) -> Self {
        WreathElement {
            f: FinSupportFunction::new(),
            c,
        }
    }

    pub fn function(&self) -> &FinSupportFunction {
        &self.f
    }

    pub fn cursor_element(&self) -> &GroupElement {
        &self.c
    }
}

impl<'de> Deserialize<'de> for WreathElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            f: FinSupportFunction,
            c: GroupElement,
        }
        let raw = Raw::deserialize(d)?;
        WreathElement::new(raw.f, raw.c).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.f, self.c)
    }
}

impl GroupOps for WreathElement {
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let c = self.c.try_mul(&rhs.c)?;
        let moved = rhs.f.translate(&self.c)?;
        Ok(WreathElement {
            f: self.f.pointwise_mul(&moved)?,
            c,
        })
    }

    /// `(f, c)⁻¹ = (c⁻¹ · f⁻¹, c⁻¹)`.
    fn inverse(&self) -> Self {
        let c_inv = self.c.inverse();
        let f = self
            .f
            .pointwise_inverse()
            .translate(&c_inv)
            .expect("support points lie in the domain of the cursor group");
        WreathElement { f, c: c_inv }
    }

    fn is_identity(&self) -> bool {
        self.f.is_empty() && self.c.is_identity()
    }

    fn identity_like(&self) -> Self {
        WreathElement::identity(self.c.identity_like())
    }
}

/// Returns an error unless `a` and `b` share a cursor group kind.
pub fn same_ambient(a: &WreathElement, b: &WreathElement) -> Result<()> {
    if a.c.kind() == b.c.kind() {
        Ok(())
    } else {
        Err(Error::MixedGroupKinds(a.c.kind(), b.c.kind()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lamplighter(lamps: &[i64], c: i64) -> WreathElement {
        let f = FinSupportFunction::from_entries(
            lamps.iter().map(|&x| (Point::Int(x), GroupElement::cyclic(1, 2))),
        )
        .unwrap();
        WreathElement::new(f, GroupElement::Int(c)).unwrap()
    }

    #[test]
    fn lamplighter_product() {
        let a = lamplighter(&[0], 1);
        let b = lamplighter(&[0], -1);
        assert_eq!(a.try_mul(&b).unwrap(), lamplighter(&[0, 1], 0));
    }

    #[test]
    fn identity_and_inverse() {
        let a = lamplighter(&[-2, 0, 3], 5);
        let e = a.identity_like();
        assert_eq!(e.try_mul(&a).unwrap(), a);
        assert_eq!(a.try_mul(&e).unwrap(), a);
        assert!(a.try_mul(&a.inverse()).unwrap().is_identity());
        assert!(a.inverse().try_mul(&a).unwrap().is_identity());
    }

    #[test]
    fn mixed_cursor_kinds() {
        let a = lamplighter(&[], 1);
        let b = WreathElement::identity(GroupElement::cyclic(0, 3));
        assert!(matches!(a.try_mul(&b), Err(Error::MixedGroupKinds(..))));
        assert!(same_ambient(&a, &b).is_err());
    }

    #[test]
    fn support_stays_exact() {
        let t = GroupElement::cyclic(1, 2);
        let f = FinSupportFunction::from_entries([
            (Point::Int(1), t.clone()),
            (Point::Int(1), t.clone()),
        ])
        .unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn rejects_points_outside_domain() {
        let f = FinSupportFunction::delta(Point::Finite(0), GroupElement::cyclic(1, 2));
        assert!(WreathElement::new(f, GroupElement::Int(0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = lamplighter(&[0, 2], -1);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"f":[[{"int":0},{"cyclic":{"residue":1,"modulus":2}}],[{"int":2},{"cyclic":{"residue":1,"modulus":2}}]],"c":{"int":-1}}"#
        );
        let back: WreathElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
