//! Fibre products `G₁ ×_Q G₂` of finite groups: the bijection between
//! subgroups of `G₁ × G₂` containing the fibre product and normal
//! subgroups of `Q`, and the count of its double cosets.

mod spec;

pub use spec::{enumerate_surjections, FibreProductSpec, GeneratorImages};

use serde::Serialize;

use crate::cosets::double_cosets_finite;
use crate::error::{Error, Result};
use crate::groups::{ElemSet, FiniteGroup, GroupDescriptor, GroupElement};

pub const DEFAULT_FIBRE_BUDGET: usize = 2500;

/// A validated spec with everything tabulated: both surjections, the
/// product `G = G₁ × G₂` and `H = G₁ ×_Q G₂` inside it.
#[derive(Clone, Debug)]
pub struct FibreContext {
    pub spec: FibreProductSpec,
    g1: FiniteGroup,
    g2: FiniteGroup,
    q: FiniteGroup,
    p1: Vec<usize>,
    p2: Vec<usize>,
    g: FiniteGroup,
    coords: Vec<(usize, usize)>,
    pair_index: Vec<usize>,
    h: ElemSet,
}

impl FibreContext {
    pub fn new(spec: &FibreProductSpec, budget: usize) -> Result<Self> {
        let g1 = FiniteGroup::from_descriptor(&spec.g1, budget)?;
        let g2 = FiniteGroup::from_descriptor(&spec.g2, budget)?;
        let size = g1.order() * g2.order();
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let q = FiniteGroup::from_descriptor(&spec.q, budget)?;
        let p1 = spec::surjection_table(&spec.g1, &g1, &q, &spec.p1)?;
        let p2 = spec::surjection_table(&spec.g2, &g2, &q, &spec.p2)?;
        let g = FiniteGroup::from_descriptor(
            &GroupDescriptor::Product {
                factors: vec![spec.g1.clone(), spec.g2.clone()],
            },
            budget,
        )?;
        let mut coords = Vec::with_capacity(g.order());
        let mut pair_index = vec![usize::MAX; size];
        for (i, e) in g.elements().iter().enumerate() {
            let GroupElement::Product(v) = e else {
                return Err(Error::InvariantViolated("product element expected".into()));
            };
            let x = g1.index_of(&v[0]).expect("first coordinate in G1");
            let y = g2.index_of(&v[1]).expect("second coordinate in G2");
            coords.push((x, y));
            pair_index[x * g2.order() + y] = i;
        }
        let h = g.set_of((0..g.order()).filter(|&i| {
            let (x, y) = coords[i];
            p1[x] == p2[y]
        }));
        Ok(FibreContext {
            spec: spec.clone(),
            g1,
            g2,
            q,
            p1,
            p2,
            g,
            coords,
            pair_index,
            h,
        })
    }

    /// `G₁ × G₂`.
    pub fn product(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.q
    }

    /// `H = G₁ ×_Q G₂` as a subset of `G₁ × G₂`.
    pub fn fibre_product(&self) -> &ElemSet {
        &self.h
    }

    /// Index in `G₁ × G₂` of `(x, y)`.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        self.pair_index[x * self.g2.order() + y]
    }

    /// `u(K) = p₁(K ∩ (G₁ × {1}))`, normal in `Q`.
    pub fn lattice_map_u(&self, k: &ElemSet) -> Result<ElemSet> {
        if !self.g.is_subgroup(k) {
            return Err(Error::InvalidElement("u needs a subgroup of G1 × G2".into()));
        }
        if !self.h.is_subset(k) {
            return Err(Error::DoesNotContainH);
        }
        let u = self.q.set_of(
            (0..self.g1.order())
                .filter(|&x| k.contains(self.pair(x, 0)))
                .map(|x| self.p1[x]),
        );
        if !self.q.is_normal(&u) {
            return Err(Error::InvariantViolated(format!(
                "u(K) of order {} is not normal in Q",
                u.count_ones(..)
            )));
        }
        Ok(u)
    }

    /// `v(N) = G₁ ×_{Q/N} G₂ = {(x, y) : p₁(x) N = p₂(y) N}`.
    pub fn lattice_map_v(&self, n: &ElemSet) -> Result<ElemSet> {
        if !self.q.is_subgroup(n) || !self.q.is_normal(n) {
            return Err(Error::NotNormal(format!(
                "subset of order {} in Q",
                n.count_ones(..)
            )));
        }
        Ok(self.g.set_of((0..self.g.order()).filter(|&i| {
            let (x, y) = self.coords[i];
            n.contains(self.q.mul(self.q.inv(self.p1[x]), self.p2[y]))
        })))
    }

    fn normal_subgroups(&self) -> Vec<ElemSet> {
        self.q
            .all_subgroups()
            .into_iter()
            .filter(|n| self.q.is_normal(n))
            .collect()
    }
}

/// Pairs `(x, y)` of `G₁ × G₂` with `p₁(x) = p₂(y)`.
pub fn fibre_product(spec: &FibreProductSpec, budget: usize) -> Result<Vec<(GroupElement, GroupElement)>> {
    let ctx = FibreContext::new(spec, budget)?;
    Ok(ctx
        .h
        .ones()
        .map(|i| {
            let (x, y) = ctx.coords[i];
            (ctx.g1.element(x).clone(), ctx.g2.element(y).clone())
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub intermediate_subgroups: usize,
    pub normal_subgroups: usize,
    pub u_normal: bool,
    pub u_then_v_identity: bool,
    pub v_then_u_identity: bool,
    pub order_preserving: bool,
    /// `|v(N)| = |G₁| |G₂| / [Q : N]` for every `N`.
    pub index_formula: bool,
    pub passed: bool,
}

/// Enumerates every subgroup between `H` and `G₁ × G₂` and every normal
/// subgroup of `Q`, and checks that `u` and `v` are mutually inverse and
/// order preserving. In a finite group every subgroup has finite index, so
/// the finite-index refinement is the same statement.
pub fn verify_lattice_bijection(ctx: &FibreContext) -> Result<LatticeReport> {
    let all: Vec<usize> = (0..ctx.g.order()).collect();
    let ks = ctx.g.subgroups_containing(&ctx.h, &all);
    let ns = ctx.normal_subgroups();
    let mut u_normal = true;
    let mut us = Vec::with_capacity(ks.len());
    for k in &ks {
        match ctx.lattice_map_u(k) {
            Ok(u) => us.push(u),
            Err(Error::InvariantViolated(_)) => {
                u_normal = false;
                us.push(ctx.q.empty_set());
            }
            Err(e) => return Err(e),
        }
    }
    let vs = ns
        .iter()
        .map(|n| ctx.lattice_map_v(n))
        .collect::<Result<Vec<_>>>()?;

    let v_then_u_identity = ks
        .iter()
        .zip(&us)
        .map(|(k, u)| Ok(&ctx.lattice_map_v(u)? == k))
        .collect::<Result<Vec<bool>>>()
        .map(|v| u_normal && v.into_iter().all(|b| b))
        .unwrap_or(false);
    let u_then_v_identity = ns
        .iter()
        .zip(&vs)
        .map(|(n, v)| Ok(&ctx.lattice_map_u(v)? == n))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let order_preserving = (0..ks.len()).all(|a| {
        (0..ks.len()).all(|b| ks[a].is_subset(&ks[b]) == us[a].is_subset(&us[b]))
    }) && (0..ns.len()).all(|a| {
        (0..ns.len()).all(|b| ns[a].is_subset(&ns[b]) == vs[a].is_subset(&vs[b]))
    });
    let full = ctx.g1.order() * ctx.g2.order();
    let index_formula = ns
        .iter()
        .zip(&vs)
        .all(|(n, v)| v.count_ones(..) * ctx.q.order() == full * n.count_ones(..));
    let passed = u_normal
        && u_then_v_identity
        && v_then_u_identity
        && order_preserving
        && index_formula
        && ks.len() == ns.len();
    Ok(LatticeReport {
        intermediate_subgroups: ks.len(),
        normal_subgroups: ns.len(),
        u_normal,
        u_then_v_identity,
        v_then_u_identity,
        order_preserving,
        index_formula,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BiindexReport {
    pub double_cosets: usize,
    pub conjugacy_classes: usize,
    /// Every `H`-double coset meets `G₁ × {1}`.
    pub classes_meet_first_factor: bool,
    /// `(x, 1)` and `(y, 1)` share a double coset exactly when `p₁(x)` and
    /// `p₁(y)` are conjugate in `Q`.
    pub conjugacy_claim: bool,
    pub passed: bool,
}

pub fn biindex_vs_conjclasses(ctx: &FibreContext) -> Result<BiindexReport> {
    let table = double_cosets_finite(&ctx.g, &ctx.h, &ctx.h)?;
    let classes = ctx.q.conjugacy_classes();
    let mut class_of = vec![0; ctx.q.order()];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    let classes_meet_first_factor = (0..table.len()).all(|k| {
        table
            .members(k)
            .any(|i| ctx.coords[i].1 == 0)
    });
    let n1 = ctx.g1.order();
    let conjugacy_claim = (0..n1).all(|x| {
        (0..n1).all(|y| {
            let same_coset = table.class_of(ctx.pair(x, 0)) == table.class_of(ctx.pair(y, 0));
            same_coset == (class_of[ctx.p1[x]] == class_of[ctx.p1[y]])
        })
    });
    Ok(BiindexReport {
        double_cosets: table.len(),
        conjugacy_classes: classes.len(),
        classes_meet_first_factor,
        conjugacy_claim,
        passed: table.len() == classes.len() && classes_meet_first_factor && conjugacy_claim,
    })
}
