use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{ElemSet, FiniteGroup};

/// The double cosets `H₁ g H₂` of a finite group.
#[derive(Clone, Debug)]
pub struct DoubleCosetTable {
    left: ElemSet,
    right: ElemSet,
    /// Smallest element index of each double coset, in increasing order.
    representatives: Vec<usize>,
    /// Double coset index of every element.
    membership: Vec<usize>,
}

impl DoubleCosetTable {
    pub fn left(&self) -> &ElemSet {
        &self.left
    }

    pub fn right(&self) -> &ElemSet {
        &self.right
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the double coset containing `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.membership[g]
    }

    /// Elements of double coset `k`.
    pub fn members(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.membership
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == k)
            .map(|(g, _)| g)
    }

    /// Union of the double cosets containing the given elements.
    pub fn union_of(&self, elems: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut classes = vec![false; self.len()];
        for g in elems {
            classes[self.membership[g]] = true;
        }
        let mut set = ElemSet::with_capacity(self.membership.len());
        for (g, &c) in self.membership.iter().enumerate() {
            if classes[c] {
                set.insert(g);
            }
        }
        set
    }
}

/// `H₁ \ G / H₂`. Both sets must be subgroups of `g`.
pub fn double_cosets_finite(g: &FiniteGroup, h1: &ElemSet, h2: &ElemSet) -> Result<DoubleCosetTable> {
    for (name, h) in [("left", h1), ("right", h2)] {
        if !g.is_subgroup(h) {
            return Err(Error::InvalidElement(format!("{name} set is not a subgroup")));
        }
    }
    let n = g.order();
    let mut membership = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    let left: Vec<usize> = h1.ones().collect();
    let right: Vec<usize> = h2.ones().collect();
    for x in 0..n {
        if membership[x] != usize::MAX {
            continue;
        }
        let k = representatives.len();
        representatives.push(x);
        for &a in &left {
            let ax = g.mul(a, x);
            for &b in &right {
                membership[g.mul(ax, b)] = k;
            }
        }
    }
    Ok(DoubleCosetTable {
        left: h1.clone(),
        right: h2.clone(),
        representatives,
        membership,
    })
}

/// Double cosets for subgroups given by generating elements.
pub fn double_cosets_generated(
    g: &FiniteGroup,
    h1_gens: &[usize],
    h2_gens: &[usize],
) -> Result<DoubleCosetTable> {
    double_cosets_finite(g, &g.closure(h1_gens), &g.closure(h2_gens))
}

/// Biindex `|H \ G / H|`.
pub fn biindex(g: &FiniteGroup, h: &ElemSet) -> Result<usize> {
    Ok(double_cosets_finite(g, h, h)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostMaximalReport {
    /// Subgroups `K` with `H <= K <= G`.
    pub intermediate: usize,
    pub biindex: usize,
}

/// Counts the subgroups containing `h`. Every such subgroup is a union of
/// `(H, H)`-double cosets, so the search closes `K ∪ HgH` over double coset
/// representatives `g`, starting from `K = H`. The count is checked against
/// the bound `2^biindex`.
pub fn almost_maximal_check(g: &FiniteGroup, h: &ElemSet) -> Result<AlmostMaximalReport> {
    let table = double_cosets_finite(g, h, h)?;
    let found = g.subgroups_containing(h, table.representatives());
    let m = table.len();
    let report = AlmostMaximalReport {
        intermediate: found.len(),
        biindex: m,
    };
    if m < usize::BITS as usize && found.len() > 1usize << m {
        return Err(Error::InvariantViolated(format!(
            "{} overgroups exceed 2^{m}",
            found.len()
        )));
    }
    Ok(report)
}
