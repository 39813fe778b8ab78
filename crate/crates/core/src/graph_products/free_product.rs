use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::groups::{GroupElement, GroupOps};

/// A nontrivial element of free factor `factor`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Syllable {
    pub factor: usize,
    pub element: GroupElement,
}

/// An element of a free product of concrete groups in normal form:
/// nontrivial syllables, adjacent ones from different factors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct FreeProductElement(Vec<Syllable>);

impl FreeProductElement {
    pub fn identity() -> Self {
        FreeProductElement(Vec::new())
    }

    pub fn letter(factor: usize, element: GroupElement) -> Self {
        let mut out = FreeProductElement::identity();
        out.push(Syllable { factor, element })
            .expect("a single syllable multiplies with nothing");
        out
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    fn push(&mut self, s: Syllable) -> Result<()> {
        match self.0.last() {
            Some(last) if last.factor == s.factor => {
                let merged = last.element.try_mul(&s.element)?;
                self.0.pop();
                if !merged.is_identity() {
                    self.0.push(Syllable {
                        factor: s.factor,
                        element: merged,
                    });
                }
            }
            _ if s.element.is_identity() => {}
            _ => self.0.push(s),
        }
        Ok(())
    }

    /// Image in the direct product of the factors: the product of each
    /// factor's syllables in order, `None` where that is trivial.
    pub fn abelian_image(&self, factors: usize) -> Result<Vec<Option<GroupElement>>> {
        let mut image: Vec<Option<GroupElement>> = vec![None; factors];
        for s in &self.0 {
            let slot = &mut image[s.factor];
            *slot = Some(match slot.take() {
                Some(acc) => acc.try_mul(&s.element)?,
                None => s.element.clone(),
            });
        }
        Ok(image
            .into_iter()
            .map(|g| g.filter(|g| !g.is_identity()))
            .collect())
    }

    /// Whether the element dies in the direct product of the factors.
    pub fn in_kernel(&self, factors: usize) -> Result<bool> {
        Ok(self.abelian_image(factors)?.iter().all(Option::is_none))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Self, y: &Self) -> Result<Self> {
        x.try_mul(y)?.try_mul(&x.inverse())?.try_mul(&y.inverse())
    }
}

impl GroupOps for FreeProductElement {
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        for s in &rhs.0 {
            out.push(s.clone())?;
        }
        Ok(out)
    }

    fn inverse(&self) -> Self {
        FreeProductElement(
            self.0
                .iter()
                .rev()
                .map(|s| Syllable {
                    factor: s.factor,
                    element: s.element.inverse(),
                })
                .collect(),
        )
    }

    fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    fn identity_like(&self) -> Self {
        FreeProductElement::identity()
    }
}

impl fmt::Debug for FreeProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| format!("{:?}@{}", s.element, s.factor))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Cumulative ball sizes `|B(0)|, .., |B(radius)|` of the subgroup
/// generated by `gens` and their inverses.
pub fn ball_sizes<E: GroupOps>(identity: &E, gens: &[E], radius: usize) -> Result<Vec<usize>> {
    let mut letters: Vec<E> = Vec::new();
    for g in gens {
        for x in [g.clone(), g.inverse()] {
            if !letters.contains(&x) {
                letters.push(x);
            }
        }
    }
    let mut seen = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity.clone()];
    let mut sizes = vec![1];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &letters {
                let y = x.try_mul(s)?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
        sizes.push(seen.len());
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(r: i64, n: u64) -> GroupElement {
        GroupElement::cyclic(r, n)
    }

    #[test]
    fn normal_form_cancels() {
        let a = FreeProductElement::letter(0, c(1, 2));
        let b = FreeProductElement::letter(1, c(1, 2));
        let ab = a.try_mul(&b).unwrap();
        assert_eq!(ab.syllables().len(), 2);
        assert!(ab.try_mul(&ab.inverse()).unwrap().is_identity());
        assert!(a.try_mul(&a).unwrap().is_identity());
        let x = FreeProductElement::letter(0, c(1, 3));
        let xbx = x.try_mul(&b).unwrap().try_mul(&x).unwrap();
        assert_eq!(xbx.syllables().len(), 3);
    }

    #[test]
    fn infinite_dihedral_kernel_is_abelian() {
        // C2 * C2 = D∞; the kernel of D∞ -> C2 × C2 is <(ab)²>
        let a = FreeProductElement::letter(0, c(1, 2));
        let b = FreeProductElement::letter(1, c(1, 2));
        let ab = a.try_mul(&b).unwrap();
        let abab = ab.try_mul(&ab).unwrap();
        assert!(abab.in_kernel(2).unwrap());
        assert!(!ab.in_kernel(2).unwrap());
        // every kernel element of the radius-8 ball commutes with (ab)²
        let id = FreeProductElement::identity();
        let mut ball = vec![id.clone()];
        for _ in 0..8 {
            let mut next = ball.clone();
            for x in &ball {
                for s in [&a, &b] {
                    let y = x.try_mul(s).unwrap();
                    if !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
            ball = next;
        }
        assert_eq!(ball.len(), 17);
        let kernel: Vec<_> = ball.iter().filter(|x| x.in_kernel(2).unwrap()).collect();
        assert_eq!(kernel.len(), 5);
        for x in &kernel {
            for y in &kernel {
                assert!(FreeProductElement::commutator(x, y).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn ball_of_integers() {
        let sizes = ball_sizes(&GroupElement::Int(0), &[GroupElement::Int(1)], 4).unwrap();
        assert_eq!(sizes, vec![1, 3, 5, 7, 9]);
    }
}
