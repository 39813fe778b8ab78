use super::{GroupPresentation, RelatorFamily};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupDescriptor, DEFAULT_BUDGET};
use crate::word::{Letter, Word};

fn w(s: &str) -> Word {
    Word::parse(s).expect("literal relator")
}

/// A finite presentation of a concrete group on its descriptor's generator
/// symbols.
///
/// Permutation groups given by generators get the presentation read off
/// their Cayley graph: one relator `u s v⁻¹` per element `u` and generator
/// `s`, where `u`, `v` are the spanning-tree words of `u` and `us`.
/// Houghton groups have no presentation here.
pub fn standard_presentation(desc: &GroupDescriptor) -> Result<GroupPresentation> {
    let gens: Vec<String> = desc.generators()?.into_iter().map(|(n, _)| n).collect();
    let tag = RelatorFamily::Standard { group: desc.name() };
    let rels: Vec<Word> = match desc {
        GroupDescriptor::Sym { n } => match *n {
            0 | 1 => vec![],
            2 => vec![w("a^2")],
            3 => vec![w("a^2"), w("b^3"), w("a b").pow(2)],
            4 => vec![w("a^2"), w("b^4"), w("a b").pow(3)],
            n => {
                // transposition a = (0 1), long cycle b
                let mut r = vec![
                    w("a^2"),
                    w(&format!("b^{n}")),
                    w("a b").pow(n as u32 - 1),
                    w("a b^-1 a b").pow(3),
                ];
                for j in 2..=n - 2 {
                    r.push(w(&format!("a b^-{j} a b^{j}")).pow(2));
                }
                r
            }
        },
        GroupDescriptor::Cyclic { n } if *n < 2 => vec![],
        GroupDescriptor::Cyclic { n } => vec![w(&format!("t^{n}"))],
        GroupDescriptor::Int => vec![],
        GroupDescriptor::DihedralInf => vec![w("a^2"), w("b^2")],
        GroupDescriptor::Dihedral { n } => {
            vec![w(&format!("r^{n}")), w("s^2"), w("s r").pow(2)]
        }
        GroupDescriptor::ThompsonF => {
            let u = w("x0 x1^-1");
            vec![
                Word::commutator(&u, &w("x0^-1 x1 x0")),
                Word::commutator(&u, &w("x0^-2 x1 x0^2")),
            ]
        }
        GroupDescriptor::Houghton { n } => {
            return Err(Error::Unsupported(format!(
                "no built-in presentation for the Houghton group H{n}"
            )))
        }
        GroupDescriptor::Product { factors } => return product_presentation(factors),
        GroupDescriptor::Perm { .. } => {
            let g = FiniteGroup::from_descriptor(desc, DEFAULT_BUDGET)?;
            return Ok(cayley_presentation(&g, tag));
        }
    };
    let mut p = GroupPresentation::new(gens);
    for r in rels {
        p.push(r, tag.clone());
    }
    Ok(p)
}

fn product_presentation(factors: &[GroupDescriptor]) -> Result<GroupPresentation> {
    let parts = factors
        .iter()
        .enumerate()
        .map(|(k, f)| Ok(standard_presentation(f)?.rename(|s| format!("{s}{}", k + 1))))
        .collect::<Result<Vec<_>>>()?;
    let mut p = GroupPresentation::new(parts.iter().flat_map(|q| q.generators.clone()).collect());
    for q in &parts {
        for (r, f) in q.relators.iter().zip(&q.provenance) {
            p.push(r.clone(), f.clone());
        }
    }
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            for x in &parts[a].generators {
                for y in &parts[b].generators {
                    p.push(
                        Word::commutator(&Word::gen(x), &Word::gen(y)),
                        RelatorFamily::FactorsCommute { left: a, right: b },
                    );
                }
            }
        }
    }
    Ok(p)
}

/// Presentation of a finite group from its Cayley graph. The stored
/// shortest words are prefix-closed, so they form a spanning tree.
fn cayley_presentation(g: &FiniteGroup, tag: RelatorFamily) -> GroupPresentation {
    let mut p = GroupPresentation::new(g.generators().iter().map(|(n, _)| n.clone()).collect());
    for (name, s) in g.generators() {
        let sk = g.index_of(s).expect("generator lies in the group");
        for u in 0..g.order() {
            let v = g.mul(u, sk);
            let r = g
                .word(u)
                .concat(&Word::new([Letter::new(name.clone(), false)]))
                .concat(&g.word(v).inverse());
            if !r.is_empty() && !p.relators.contains(&r) {
                p.push(r, tag.clone());
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupElement, GroupOps, Perm};
    use crate::presentations::verify_relators;
    use crate::word::Assignment;

    fn assignment(desc: &GroupDescriptor) -> Assignment<GroupElement> {
        let mut a = Assignment::new(desc.identity());
        for (n, g) in desc.generators().unwrap() {
            a.insert(n, g);
        }
        a
    }

    fn sound(desc: GroupDescriptor) {
        let p = standard_presentation(&desc).unwrap();
        p.validate().unwrap();
        let report = verify_relators(&p, &assignment(&desc)).unwrap();
        assert!(report.passed, "{}: {:?}", desc.name(), report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn standard_relators_hold() {
        for n in 1..=7 {
            sound(GroupDescriptor::Sym { n });
        }
        for n in 1..=6 {
            sound(GroupDescriptor::Cyclic { n });
        }
        for n in 3..=6 {
            sound(GroupDescriptor::Dihedral { n });
        }
        sound(GroupDescriptor::Int);
        sound(GroupDescriptor::DihedralInf);
        sound(GroupDescriptor::ThompsonF);
        sound(GroupDescriptor::Product {
            factors: vec![GroupDescriptor::Sym { n: 3 }, GroupDescriptor::Cyclic { n: 4 }],
        });
    }

    #[test]
    fn cayley_presentation_of_perm_group() {
        let desc = GroupDescriptor::Perm {
            degree: 4,
            generators: vec![
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 2]]).unwrap(),
            ],
        };
        let p = standard_presentation(&desc).unwrap();
        assert_eq!(p.generators, vec!["g1", "g2"]);
        // 8 elements, 2 generators, 7 tree edges
        assert_eq!(p.relators.len(), 8 * 2 - 7);
        sound(desc);
    }

    #[test]
    fn wrong_relator_is_caught() {
        let desc = GroupDescriptor::ThompsonF;
        let a = assignment(&desc);
        let bogus = Word::commutator(&w("x0"), &w("x1"));
        let v = crate::word::evaluate_word(&bogus, &a).unwrap();
        assert!(!v.is_identity());
    }

    #[test]
    fn houghton_unsupported() {
        assert!(matches!(
            standard_presentation(&GroupDescriptor::Houghton { n: 3 }),
            Err(Error::Unsupported(_))
        ));
    }
}
