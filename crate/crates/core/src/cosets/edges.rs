use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::groups::ElemSet;

use super::gset::FiniteGSet;

/// Ordered point-index pairs; a graph on `X` stores both orientations.
pub type EdgeSet = BTreeSet<(usize, usize)>;

/// A family of subsets `B_ij ⊆ G`, one per ordered pair of orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetFamily {
    orbits: usize,
    sets: Vec<ElemSet>,
}

impl CosetFamily {
    pub fn empty(gset: &FiniteGSet) -> Self {
        let k = gset.orbit_count();
        CosetFamily {
            orbits: k,
            sets: vec![gset.group().empty_set(); k * k],
        }
    }

    /// `B_ij = ⋃ H_i r H_j` over the given representatives `r`.
    /// Pairs that are not listed stay empty.
    pub fn from_representatives(
        gset: &FiniteGSet,
        reps: &BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Self> {
        let mut fam = CosetFamily::empty(gset);
        let g = gset.group();
        for (&(i, j), rs) in reps {
            if i >= fam.orbits || j >= fam.orbits {
                return Err(Error::InvalidElement(format!("no orbit pair ({i}, {j})")));
            }
            let mut set = g.empty_set();
            for &r in rs {
                for a in gset.stabilizer(i).ones() {
                    let ar = g.mul(a, r);
                    for b in gset.stabilizer(j).ones() {
                        set.insert(g.mul(ar, b));
                    }
                }
            }
            fam.set(i, j, set);
        }
        Ok(fam)
    }

    pub fn orbits(&self) -> usize {
        self.orbits
    }

    pub fn get(&self, i: usize, j: usize) -> &ElemSet {
        &self.sets[i * self.orbits + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: ElemSet) {
        self.sets[i * self.orbits + j] = b;
    }

    /// Checks `B_ij⁻¹ = B_ji`, `H_i B_ij H_j = B_ij` and `H_i ∩ B_ii = ∅`.
    pub fn check(&self, gset: &FiniteGSet) -> Result<()> {
        let g = gset.group();
        let violated = |condition: &str, witness: String| Error::ConditionViolated {
            condition: condition.into(),
            witness,
        };
        for i in 0..self.orbits {
            for j in 0..self.orbits {
                let b = self.get(i, j);
                let back = self.get(j, i);
                for x in b.ones() {
                    if !back.contains(g.inv(x)) {
                        return Err(violated(
                            "inverse symmetry",
                            format!("{:?} in B_{i}{j} but its inverse is not in B_{j}{i}", g.element(x)),
                        ));
                    }
                    for h in gset.stabilizer(i).ones() {
                        if !b.contains(g.mul(h, x)) {
                            return Err(violated(
                                "stabilizer invariance",
                                format!("{:?} · {:?} leaves B_{i}{j}", g.element(h), g.element(x)),
                            ));
                        }
                    }
                    for h in gset.stabilizer(j).ones() {
                        if !b.contains(g.mul(x, h)) {
                            return Err(violated(
                                "stabilizer invariance",
                                format!("{:?} · {:?} leaves B_{i}{j}", g.element(x), g.element(h)),
                            ));
                        }
                    }
                }
            }
            if let Some(h) = self.get(i, i).intersection(gset.stabilizer(i)).next() {
                return Err(violated(
                    "irreflexivity",
                    format!("{:?} lies in both H_{i} and B_{i}{i}", g.element(h)),
                ));
            }
        }
        Ok(())
    }
}

/// The edge set `{(g x_i, g' x_j) : g⁻¹ g' ∈ B_ij}` of a valid family.
pub fn edges_from_cosets(gset: &FiniteGSet, family: &CosetFamily) -> Result<EdgeSet> {
    family.check(gset)?;
    let g = gset.group();
    let mut edges = EdgeSet::new();
    for i in 0..family.orbits() {
        for j in 0..family.orbits() {
            let (xi, xj) = (gset.base(i), gset.base(j));
            for b in family.get(i, j).ones() {
                for h in 0..g.order() {
                    edges.insert((gset.image(h, xi), gset.image(g.mul(h, b), xj)));
                }
            }
        }
    }
    Ok(edges)
}

/// `B_ij = {g : (x_i, g x_j) ∈ E}` for a symmetric, irreflexive,
/// G-invariant edge set.
pub fn cosets_from_edges(gset: &FiniteGSet, edges: &EdgeSet) -> Result<CosetFamily> {
    let g = gset.group();
    for &(p, q) in edges {
        if p == q {
            return Err(Error::ConditionViolated {
                condition: "irreflexivity".into(),
                witness: format!("loop at {:?}", gset.point(p)),
            });
        }
        if !edges.contains(&(q, p)) {
            return Err(Error::ConditionViolated {
                condition: "symmetry".into(),
                witness: format!("({:?}, {:?}) without its reverse", gset.point(p), gset.point(q)),
            });
        }
        for (name, gen) in g.generators() {
            let s = g.index_of(gen).expect("generator enumerated");
            let moved = (gset.image(s, p), gset.image(s, q));
            if !edges.contains(&moved) {
                return Err(Error::NotInvariant {
                    witness: format!(
                        "{name} maps ({:?}, {:?}) to the non-edge ({:?}, {:?})",
                        gset.point(p),
                        gset.point(q),
                        gset.point(moved.0),
                        gset.point(moved.1)
                    ),
                });
            }
        }
    }
    let mut fam = CosetFamily::empty(gset);
    for i in 0..gset.orbit_count() {
        for j in 0..gset.orbit_count() {
            let xi = gset.base(i);
            let xj = gset.base(j);
            let b = g.set_of((0..g.order()).filter(|&h| edges.contains(&(xi, gset.image(h, xj)))));
            fam.set(i, j, b);
        }
    }
    Ok(fam)
}

/// Every symmetric, irreflexive, G-invariant edge set: unions of the
/// symmetrised orbits of `G` on off-diagonal pairs. Fails when there are
/// more than `2^max_orbitals` of them.
pub fn invariant_edge_sets(gset: &FiniteGSet, max_orbitals: u32) -> Result<Vec<EdgeSet>> {
    let n = gset.points().len();
    let g = gset.group();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut orbitals: Vec<EdgeSet> = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if p == q || seen.contains(&(p, q)) {
                continue;
            }
            let mut orbital = EdgeSet::new();
            for h in 0..g.order() {
                let (a, b) = (gset.image(h, p), gset.image(h, q));
                orbital.insert((a, b));
                orbital.insert((b, a));
            }
            seen.extend(orbital.iter().copied());
            orbitals.push(orbital);
        }
    }
    if orbitals.len() > max_orbitals as usize {
        return Err(Error::BudgetExceeded {
            size: orbitals.len(),
            budget: max_orbitals as usize,
        });
    }
    Ok((0u64..1 << orbitals.len())
        .map(|mask| {
            orbitals
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .flat_map(|(_, o)| o.iter().copied())
                .collect()
        })
        .collect())
}
