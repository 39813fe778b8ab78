//! Count inequalities relating biindices and overgroup counts along
//! subgroup inclusions and quotients, checked on finite groups.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::groups::{ElemSet, FiniteGroup, GroupDescriptor, GroupElement, Perm};

use super::double::{almost_maximal_check, double_cosets_finite};

/// One checked inequality `lhs <= rhs` (or equality, when `exact`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub lemma: &'static str,
    pub statement: &'static str,
    pub lhs: usize,
    pub rhs: usize,
    pub exact: bool,
}

impl CountCheck {
    fn at_most(lemma: &'static str, statement: &'static str, lhs: usize, rhs: usize) -> Self {
        CountCheck {
            lemma,
            statement,
            lhs,
            rhs,
            exact: false,
        }
    }

    fn equal(lemma: &'static str, statement: &'static str, lhs: usize, rhs: usize) -> Self {
        CountCheck {
            lemma,
            statement,
            lhs,
            rhs,
            exact: true,
        }
    }

    pub fn holds(&self) -> bool {
        if self.exact {
            self.lhs == self.rhs
        } else {
            self.lhs <= self.rhs
        }
    }
}

fn subset(a: &ElemSet, b: &ElemSet) -> bool {
    a.is_subset(b)
}

/// Subgroup `H` of `G` re-enumerated as a group in its own right, with the
/// index map back into `G`.
fn as_group(g: &FiniteGroup, h: &ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
    let gens: Vec<(String, GroupElement)> = g
        .generating_subset(h)
        .into_iter()
        .enumerate()
        .map(|(k, x)| (format!("h{}", k + 1), g.element(x).clone()))
        .collect();
    let sub = FiniteGroup::generate(g.element(0).clone(), gens, g.order().max(1))?;
    let back = sub
        .elements()
        .iter()
        .map(|e| g.index_of(e).expect("subgroup element lies in G"))
        .collect();
    Ok((sub, back))
}

/// For `H₁ ≤ H₂ ≤ G`: `H₂` is the union of the `H₁`-double cosets meeting
/// it; the biindex and the overgroup count can only drop from `H₁` to `H₂`,
/// and `H₁` inside `H₂` is no worse than inside `G`.
pub fn check_dicho(g: &FiniteGroup, h1: &ElemSet, h2: &ElemSet) -> Result<Vec<CountCheck>> {
    const L: &str = "dicho";
    let t1 = double_cosets_finite(g, h1, h1)?;
    let t2 = double_cosets_finite(g, h2, h2)?;
    let meeting: Vec<usize> = h2.ones().collect();
    let union = t1.union_of(meeting.iter().copied());
    let inside: std::collections::BTreeSet<usize> =
        meeting.iter().map(|&x| t1.class_of(x)).collect();

    let (sub, back) = as_group(g, h2)?;
    let h1_in_sub = sub.set_of(
        (0..sub.order()).filter(|&k| h1.contains(back[k])),
    );
    let inner_biindex = double_cosets_finite(&sub, &h1_in_sub, &h1_in_sub)?.len();
    let am1 = almost_maximal_check(g, h1)?.intermediate;
    let am2 = almost_maximal_check(g, h2)?.intermediate;
    let inner_am = almost_maximal_check(&sub, &h1_in_sub)?.intermediate;
    Ok(vec![
        CountCheck::equal(
            L,
            "|H2| = size of the union of H1-double cosets meeting H2",
            h2.count_ones(..),
            if union == *h2 { union.count_ones(..) } else { usize::MAX },
        ),
        CountCheck::equal(
            L,
            "H1-double cosets inside H2 = biindex of H1 in H2",
            inside.len(),
            inner_biindex,
        ),
        CountCheck::at_most(L, "biindex of H2 in G <= biindex of H1 in G", t2.len(), t1.len()),
        CountCheck::at_most(L, "biindex of H1 in H2 <= biindex of H1 in G", inner_biindex, t1.len()),
        CountCheck::at_most(L, "overgroups of H2 <= overgroups of H1", am2, am1),
        CountCheck::at_most(L, "subgroups between H1 and H2 <= overgroups of H1", inner_am, am1),
    ])
}

/// For `H₁ ≤ H₂ ≤ G`: `|H₁\G/H₁| <= [H₂:H₁]² · |H₂\G/H₂|`.
pub fn check_fibas(g: &FiniteGroup, h1: &ElemSet, h2: &ElemSet) -> Result<Vec<CountCheck>> {
    let b1 = double_cosets_finite(g, h1, h1)?.len();
    let b2 = double_cosets_finite(g, h2, h2)?.len();
    let index = h2.count_ones(..) / h1.count_ones(..).max(1);
    Ok(vec![CountCheck::at_most(
        "fibas",
        "biindex of H1 <= [H2:H1]^2 * biindex of H2",
        b1,
        index * index * b2,
    )])
}

/// For `N` normal in `G`: the image of `H` in `G/N` has no more double
/// cosets and no more overgroups than `H` has in `G`.
pub fn check_quotient(g: &FiniteGroup, h: &ElemSet, n: &ElemSet) -> Result<Vec<CountCheck>> {
    const L: &str = "quotient";
    let (q, proj) = g.quotient(n)?;
    let image = q.set_of(h.ones().map(|x| proj[x]));
    let bq = double_cosets_finite(&q, &image, &image)?.len();
    let bg = double_cosets_finite(g, h, h)?.len();
    let aq = almost_maximal_check(&q, &image)?.intermediate;
    let ag = almost_maximal_check(g, h)?.intermediate;
    Ok(vec![
        CountCheck::at_most(L, "biindex of HN/N in G/N <= biindex of H in G", bq, bg),
        CountCheck::at_most(L, "overgroups of HN/N in G/N <= overgroups of H in G", aq, ag),
    ])
}

/// For `N` normal in `G`: subgroups between `N` and `G` correspond to the
/// subgroups of `G/N`.
pub fn check_caracfini(g: &FiniteGroup, n: &ElemSet) -> Result<Vec<CountCheck>> {
    let (q, _) = g.quotient(n)?;
    let over = almost_maximal_check(g, n)?.intermediate;
    Ok(vec![CountCheck::equal(
        "caracfini",
        "subgroups between N and G = subgroups of G/N",
        over,
        q.all_subgroups().len(),
    )])
}

/// A sampled configuration `H₁ ≤ H₂ ≤ G`, `N` normal in `G`.
#[derive(Clone, Debug)]
pub struct HereditaryInstance {
    pub name: String,
    pub group: std::rc::Rc<FiniteGroup>,
    pub h1: ElemSet,
    pub h2: ElemSet,
    pub normal: ElemSet,
}

impl HereditaryInstance {
    /// All four lemma checks on this instance.
    pub fn checks(&self) -> Result<Vec<CountCheck>> {
        let g = &self.group;
        let mut out = check_dicho(g, &self.h1, &self.h2)?;
        out.extend(check_fibas(g, &self.h1, &self.h2)?);
        out.extend(check_quotient(g, &self.h1, &self.normal)?);
        Ok(out)
    }
}

/// Groups of order at most 48 used for sampling.
pub fn sample_pool() -> Vec<GroupDescriptor> {
    let sh = |s: &str| GroupDescriptor::from_shorthand(s).expect("valid shorthand");
    let mut pool: Vec<GroupDescriptor> = [
        "sym3", "sym4", "c2", "c3", "c4", "c6", "c8", "c12", "d4", "d5", "d6", "d8", "c2xc2",
        "c2xc4", "c2xc2xc2", "c4xc4", "sym3xc2", "sym3xc3", "d4xc2", "d6xc2", "sym4xc2",
        "sym3xsym3",
    ]
    .iter()
    .map(|s| sh(s))
    .collect();
    // A4 and the affine group AGL(1,5)
    pool.push(GroupDescriptor::Perm {
        degree: 4,
        generators: vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]).expect("valid"),
            Perm::from_cycles(4, &[&[1, 2, 3]]).expect("valid"),
        ],
    });
    pool.push(GroupDescriptor::Perm {
        degree: 5,
        generators: vec![
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).expect("valid"),
            Perm::from_cycles(5, &[&[1, 2, 4, 3]]).expect("valid"),
        ],
    });
    pool
}

/// `count` instances drawn with a seeded ChaCha generator. Groups come
/// from [`sample_pool`] filtered to order `<= max_order`; `H₂` is a uniform
/// subgroup, `H₁` a uniform subgroup of `H₂`, `N` a uniform normal subgroup.
pub fn sample_instances(seed: u64, count: usize, max_order: usize) -> Result<Vec<HereditaryInstance>> {
    struct Entry {
        name: String,
        group: std::rc::Rc<FiniteGroup>,
        subgroups: Vec<ElemSet>,
        normals: Vec<ElemSet>,
    }
    let mut entries = Vec::new();
    for desc in sample_pool() {
        let g = FiniteGroup::from_descriptor(&desc, max_order.max(1))
            .ok()
            .filter(|g| g.order() <= max_order);
        let Some(g) = g else { continue };
        let subgroups = g.all_subgroups();
        let normals = subgroups.iter().filter(|s| g.is_normal(s)).cloned().collect();
        entries.push(Entry {
            name: desc.name(),
            group: std::rc::Rc::new(g),
            subgroups,
            normals,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let Some(e) = entries.choose(&mut rng) else { break };
        let h2 = e.subgroups.choose(&mut rng).expect("trivial subgroup exists").clone();
        let inside: Vec<&ElemSet> = e.subgroups.iter().filter(|s| subset(s, &h2)).collect();
        let h1 = (*inside.choose(&mut rng).expect("trivial subgroup is inside")).clone();
        let normal = e.normals.choose(&mut rng).expect("trivial subgroup is normal").clone();
        out.push(HereditaryInstance {
            name: e.name.clone(),
            group: e.group.clone(),
            h1,
            h2,
            normal,
        });
    }
    Ok(out)
}
