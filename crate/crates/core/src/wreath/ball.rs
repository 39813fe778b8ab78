use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{act, GroupOps, Window};

use super::element::{FinSupportFunction, WreathElement};
use super::metric::WreathGenerators;

/// One element of a Cayley ball with its distance from the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallEntry {
    pub f: FinSupportFunction,
    pub c: crate::groups::GroupElement,
    pub len: usize,
}

impl BallEntry {
    pub fn element(&self) -> WreathElement {
        WreathElement::new(self.f.clone(), self.c.clone())
            .expect("ball entries come from valid elements")
    }
}

/// All elements of `W ≀_X G` within `radius` of the identity in the Cayley
/// graph of the standard generators, in breadth-first order.
///
/// Fails with `TruncationEscape` when a lamp or the cursor's image of the
/// base point leaves `window`.
pub fn wr_ball(gens: &WreathGenerators, radius: usize, window: Window) -> Result<Vec<BallEntry>> {
    let steps = gens.elements()?;
    let check = |e: &WreathElement| -> Result<()> {
        let cursor_point = act(e.cursor_element(), &gens.base_point)?;
        for p in e.function().support().chain(std::iter::once(&cursor_point)) {
            if !window.contains(p) {
                return Err(Error::TruncationEscape {
                    point: format!("{p:?}"),
                    window: window.to_string(),
                });
            }
        }
        Ok(())
    };

    let start = gens.identity();
    let mut seen: HashSet<WreathElement> = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    let mut out = Vec::new();
    for len in 0..=radius {
        let mut next = Vec::new();
        for e in &layer {
            if len < radius {
                for s in &steps {
                    let h = e.try_mul(s)?;
                    if !seen.contains(&h) {
                        check(&h)?;
                        seen.insert(h.clone());
                        next.push(h);
                    }
                }
            }
        }
        out.extend(layer.into_iter().map(|e| BallEntry {
            f: e.function().clone(),
            c: e.cursor_element().clone(),
            len,
        }));
        layer = next;
    }
    Ok(out)
}
