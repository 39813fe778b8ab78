//! Orbits on `X` and `X²`, double cosets, overgroup counts and the
//! correspondence between invariant graphs on `X` and families of unions of
//! double cosets.

mod double;
mod edges;
mod gset;
pub mod hereditary;
mod orbits;

pub use double::{
    almost_maximal_check, biindex, double_cosets_finite, double_cosets_generated,
    AlmostMaximalReport, DoubleCosetTable,
};
pub use edges::{cosets_from_edges, edges_from_cosets, invariant_edge_sets, CosetFamily, EdgeSet};
pub use gset::FiniteGSet;
pub use orbits::{
    orbits_on_pairs, orbits_on_set, InvariantClassifier, OrbitClass, OrbitPartition,
    PairOrbitReport, DEFAULT_MARGIN, DEFAULT_POINT_LIMIT,
};

use serde::Serialize;

use crate::error::Result;
use crate::groups::{GroupAction, Window};

/// Summary of an action: orbit and pair-orbit counts in a window and, for
/// finite groups, the biindex of the first point stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub orbits: usize,
    pub pair_orbits: usize,
    pub biindex: Option<usize>,
    pub window: Window,
    pub margin: u64,
    pub flags: Vec<String>,
}

pub fn coset_report(
    action: &GroupAction,
    window: Window,
    margin: u64,
    classifier: Option<&InvariantClassifier>,
    budget: usize,
) -> Result<CosetReport> {
    let set = orbits_on_set(action, window, margin)?;
    let pairs = orbits_on_pairs(action, window, margin, classifier)?;
    let mut flags = Vec::new();
    if set.boundary_classes() > 0 {
        flags.push(format!("{} orbit classes touch the window boundary", set.boundary_classes()));
    }
    if pairs.boundary_classes > 0 {
        flags.push(format!(
            "{} pair classes touch the window boundary",
            pairs.boundary_classes
        ));
    }
    let biindex = if action.group.is_finite() {
        let x = FiniteGSet::from_action(action, budget)?;
        Some(double::biindex(x.group(), x.stabilizer(0))?)
    } else {
        None
    };
    if let (Some(labels), Some(c)) = (&pairs.realized_labels, classifier) {
        flags.push(format!("classifier {} realises {} labels", c.name, labels.len()));
    }
    Ok(CosetReport {
        orbits: set.len(),
        pair_orbits: pairs.classes,
        biindex,
        window,
        margin,
        flags,
    })
}
