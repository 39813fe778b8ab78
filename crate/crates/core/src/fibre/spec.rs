use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{ElemSet, FiniteGroup, GroupDescriptor, GroupElement};
use crate::presentations::{standard_presentation, verify_relators};
use crate::word::{evaluate_word, Assignment, Word};

/// Images of the generators of a source group, as words in the generators
/// of `Q`.
pub type GeneratorImages = BTreeMap<String, Word>;

/// Two finite groups with surjections onto a common quotient `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreProductSpec {
    pub g1: GroupDescriptor,
    pub g2: GroupDescriptor,
    pub q: GroupDescriptor,
    pub p1: GeneratorImages,
    pub p2: GeneratorImages,
}

impl FibreProductSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            path: e.path().to_string(),
            reason: e.inner().to_string(),
        })
    }
}

fn q_assignment(q: &FiniteGroup) -> Assignment<GroupElement> {
    let mut a = Assignment::new(q.element(0).clone());
    for (name, g) in q.generators() {
        a.insert(name.clone(), g.clone());
    }
    a
}

/// Tabulates `p : G → Q` from generator images and checks that it is a
/// surjective homomorphism: the relators of `G` must map to the identity
/// and the table must respect products.
pub(crate) fn surjection_table(
    g_desc: &GroupDescriptor,
    g: &FiniteGroup,
    q: &FiniteGroup,
    images: &GeneratorImages,
) -> Result<Vec<usize>> {
    let qa = q_assignment(q);
    let mut values = Assignment::new(q.element(0).clone());
    for (name, _) in g.generators() {
        let w = images
            .get(name)
            .ok_or_else(|| Error::NotHomomorphism(format!("no image for generator `{name}`")))?;
        values.insert(name.clone(), evaluate_word(w, &qa)?);
    }
    if let Some(extra) = images.keys().find(|k| !values.values.contains_key(*k)) {
        return Err(Error::UnboundSymbol(extra.clone()));
    }
    let report = verify_relators(&standard_presentation(g_desc)?, &values)?;
    if let Some(bad) = report.failures().next() {
        return Err(Error::NotHomomorphism(format!(
            "relator {} of {} maps to {}",
            bad.relator,
            g_desc.name(),
            bad.witness.as_deref().unwrap_or("?")
        )));
    }
    let table = (0..g.order())
        .map(|x| {
            let v = evaluate_word(g.word(x), &values)?;
            q.index_of(&v)
                .ok_or_else(|| Error::InvalidElement(format!("{v:?} is not in {}", "Q")))
        })
        .collect::<Result<Vec<usize>>>()?;
    for a in 0..g.order() {
        for b in 0..g.order() {
            if table[g.mul(a, b)] != q.mul(table[a], table[b]) {
                return Err(Error::NotHomomorphism(format!(
                    "images of {} and {} do not multiply",
                    g.word(a),
                    g.word(b)
                )));
            }
        }
    }
    let mut image: ElemSet = q.empty_set();
    for &t in &table {
        image.insert(t);
    }
    let size = image.count_ones(..);
    if size != q.order() {
        return Err(Error::NotSurjective {
            image: size,
            target: q.order(),
        });
    }
    Ok(table)
}

/// Every surjection `G → Q`, as generator images in shortest words of `Q`.
pub fn enumerate_surjections(
    g: &GroupDescriptor,
    q: &GroupDescriptor,
    budget: usize,
) -> Result<Vec<GeneratorImages>> {
    let gg = FiniteGroup::from_descriptor(g, budget)?;
    let qq = FiniteGroup::from_descriptor(q, budget)?;
    let names: Vec<String> = gg.generators().iter().map(|(n, _)| n.clone()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; names.len()];
    loop {
        let images: GeneratorImages = names
            .iter()
            .zip(&choice)
            .map(|(n, &c)| (n.clone(), qq.word(c).clone()))
            .collect();
        match surjection_table(g, &gg, &qq, &images) {
            Ok(_) => out.push(images),
            Err(Error::NotHomomorphism(_) | Error::NotSurjective { .. }) => {}
            Err(e) => return Err(e),
        }
        // odometer over Q^(generators)
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < qq.order() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GroupDescriptor {
        GroupDescriptor::from_shorthand(s).unwrap()
    }

    #[test]
    fn surjection_counts() {
        // |Aut(Sym3)| = 6, |Aut(D4)| = 8, three index-2 subgroups in D4
        assert_eq!(enumerate_surjections(&d("sym3"), &d("sym3"), 100).unwrap().len(), 6);
        assert_eq!(enumerate_surjections(&d("d4"), &d("d4"), 100).unwrap().len(), 8);
        assert_eq!(enumerate_surjections(&d("d4"), &d("c2"), 100).unwrap().len(), 3);
        assert_eq!(enumerate_surjections(&d("c4"), &d("c2"), 100).unwrap().len(), 1);
        assert_eq!(enumerate_surjections(&d("c2xc2"), &d("c2xc2"), 100).unwrap().len(), 6);
        assert_eq!(enumerate_surjections(&d("sym3"), &d("c1"), 100).unwrap().len(), 1);
        assert!(enumerate_surjections(&d("c4"), &d("c2xc2"), 100).unwrap().is_empty());
    }

    #[test]
    fn bad_maps() {
        let (g, q) = (d("c4"), d("c2"));
        let gg = FiniteGroup::from_descriptor(&g, 100).unwrap();
        let qq = FiniteGroup::from_descriptor(&q, 100).unwrap();
        let trivial = GeneratorImages::from([("t".to_string(), Word::empty())]);
        assert_eq!(
            surjection_table(&g, &gg, &qq, &trivial).unwrap_err(),
            Error::NotSurjective { image: 1, target: 2 }
        );
        let (g, q) = (d("c2"), d("c3"));
        let gg = FiniteGroup::from_descriptor(&g, 100).unwrap();
        let qq = FiniteGroup::from_descriptor(&q, 100).unwrap();
        let onto = GeneratorImages::from([("t".to_string(), Word::gen("t"))]);
        assert!(matches!(
            surjection_table(&g, &gg, &qq, &onto),
            Err(Error::NotHomomorphism(_))
        ));
    }
}
