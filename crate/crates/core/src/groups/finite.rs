//! Fully enumerated finite groups with a multiplication table.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::descriptor::GroupDescriptor;
use super::element::{GroupElement, GroupOps};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// A set of element indices of a [`FiniteGroup`].
pub type ElemSet = FixedBitSet;

/// Default cap on enumerated group orders.
pub const DEFAULT_BUDGET: usize = 5000;

/// A finite group enumerated by breadth-first search from its generators.
/// Element `0` is the identity and every element carries a shortest word in
/// the generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    generators: Vec<(String, GroupElement)>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    words: Vec<Word>,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn generate(
        identity: GroupElement,
        generators: Vec<(String, GroupElement)>,
        budget: usize,
    ) -> Result<Self> {
        let mut letters: Vec<(Letter, GroupElement)> = Vec::new();
        for (name, g) in &generators {
            letters.push((Letter::new(name.clone(), false), g.clone()));
            letters.push((Letter::new(name.clone(), true), g.inverse()));
        }
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut words = vec![Word::empty()];
        // parent[i] = (j, k): elements[i] = elements[j] * letters[k]
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(letters.len());
            for (k, (letter, g)) in letters.iter().enumerate() {
                let h = elements[i].try_mul(g)?;
                let j = match index.get(&h) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= budget {
                            return Err(Error::NotFullyEnumerable { budget });
                        }
                        let j = elements.len();
                        index.insert(h.clone(), j);
                        elements.push(h);
                        let mut w = words[i].letters().to_vec();
                        w.push(letter.clone());
                        words.push(Word::new(w));
                        parent.push(Some((i, k)));
                        j
                    }
                };
                row.push(j as u32);
            }
            right.push(row);
            i += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            // elements are in BFS order, so parents come first
            for b in 1..n {
                let (p, k) = parent[b].expect("non-identity has a parent");
                let ap = table[a * n + p] as usize;
                table[a * n + b] = right[ap][k];
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a * n + b] == 0)
                    .expect("every element has an inverse")
            })
            .collect();
        Ok(FiniteGroup {
            generators,
            elements,
            index,
            words,
            table,
            inverses,
        })
    }

    pub fn from_descriptor(desc: &GroupDescriptor, budget: usize) -> Result<Self> {
        if !desc.is_finite() {
            return Err(Error::NotFullyEnumerable { budget });
        }
        FiniteGroup::generate(desc.identity(), desc.generators()?, budget)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[(String, GroupElement)] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Shortest word for element `i`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn whole(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn trivial(&self) -> ElemSet {
        let mut s = self.empty_set();
        s.insert(0);
        s
    }

    pub fn set_of(&self, elems: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut s = self.empty_set();
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, seeds: &[usize]) -> ElemSet {
        let mut set = self.trivial();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !set.put(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// `<set ∪ {extra}>`, given that `set` is already a subgroup.
    pub fn extend_subgroup(&self, set: &ElemSet, extra: usize) -> ElemSet {
        let mut seeds: Vec<usize> = self.generating_subset(set);
        seeds.push(extra);
        self.closure(&seeds)
    }

    /// A small generating subset of a subgroup, chosen greedily.
    pub fn generating_subset(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for x in set.ones() {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .ones()
                .all(|a| set.ones().all(|b| set.contains(self.mul(a, self.inv(b)))))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_normal(&self, set: &ElemSet) -> bool {
        let gens: Vec<usize> = (0..self.generators.len())
            .map(|k| self.index_of(&self.generators[k].1).expect("generator enumerated"))
            .collect();
        set.ones()
            .all(|x| gens.iter().all(|&g| set.contains(self.conjugate(g, x))))
    }

    /// Smallest normal subgroup containing the seeds.
    pub fn normal_closure(&self, seeds: &[usize]) -> ElemSet {
        let conjugates: HashSet<usize> = seeds
            .iter()
            .flat_map(|&s| (0..self.order()).map(move |g| (g, s)))
            .map(|(g, s)| self.conjugate(g, s))
            .collect();
        let mut c: Vec<usize> = conjugates.into_iter().collect();
        c.sort_unstable();
        self.closure(&c)
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = self.empty_set();
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if seen.contains(x) {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order()).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen.insert(c);
            }
            classes.push(class);
        }
        classes
    }

    /// All subgroups `K` with `base <= K`, found by closing `K ∪ {c}` for
    /// candidate elements `c` until nothing new appears. Candidates must
    /// contain a representative of every `base`-double coset for the search
    /// to be complete; the whole group always suffices.
    pub fn subgroups_containing(&self, base: &ElemSet, candidates: &[usize]) -> Vec<ElemSet> {
        let mut found: Vec<ElemSet> = vec![base.clone()];
        let mut seen: HashSet<ElemSet> = HashSet::from([base.clone()]);
        let mut i = 0;
        while i < found.len() {
            let k = found[i].clone();
            for &c in candidates {
                if k.contains(c) {
                    continue;
                }
                let next = self.extend_subgroup(&k, c);
                if seen.insert(next.clone()) {
                    found.push(next);
                }
            }
            i += 1;
        }
        found.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        found
    }

    pub fn all_subgroups(&self) -> Vec<ElemSet> {
        let all: Vec<usize> = (0..self.order()).collect();
        self.subgroups_containing(&self.trivial(), &all)
    }

    /// Left cosets `gN`: returns the coset id of every element.
    pub fn left_coset_ids(&self, sub: &ElemSet) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.order()];
        let mut next = 0;
        for g in 0..self.order() {
            if id[g] != usize::MAX {
                continue;
            }
            for n in sub.ones() {
                id[self.mul(g, n)] = next;
            }
            next += 1;
        }
        id
    }

    /// The quotient by a normal subgroup, realised as the permutation group
    /// induced on left cosets, with the projection of every element.
    pub fn quotient(&self, normal: &ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::NotNormal("quotient by a non-normal subset".into()));
        }
        let ids = self.left_coset_ids(normal);
        let cosets = ids.iter().max().map_or(0, |m| m + 1);
        let mut reps = vec![0; cosets];
        for (g, &c) in ids.iter().enumerate().rev() {
            reps[c] = g;
        }
        let image = |g: usize| -> GroupElement {
            let images: Vec<usize> = reps.iter().map(|&r| ids[self.mul(g, r)]).collect();
            GroupElement::Perm(Perm::new(images).expect("coset action is a permutation"))
        };
        let gens: Vec<(String, GroupElement)> = self
            .generators
            .iter()
            .map(|(name, g)| (name.clone(), image(self.index_of(g).expect("enumerated"))))
            .collect();
        let q = FiniteGroup::generate(
            GroupElement::Perm(Perm::identity(cosets)),
            gens,
            self.order().max(1),
        )?;
        let proj = (0..self.order())
            .map(|g| q.index_of(&image(g)).expect("image lies in the quotient"))
            .collect();
        Ok((q, proj))
    }
}
