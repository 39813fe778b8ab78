use std::collections::BTreeSet;

use super::criteria::{
    check_fp_criteria, CriteriaFlags, Flag, FpCriteriaInput, FpVerdict, OrbitCount,
    RepresentativeList,
};
use super::verify::generated_order;
use super::{standard_presentation, GroupPresentation, RelatorFamily};
use crate::cosets::{double_cosets_finite, FiniteGSet};
use crate::error::{Error, Result};
use crate::groups::{
    symmetric_closure, Domain, FiniteGroup, GroupAction, GroupDescriptor, GroupElement, GroupOps,
};
use crate::word::{Assignment, Word};
use crate::wreath::WreathElement;

/// Symbol of the copy of the `W` generator `s` attached to orbit `i`. A
/// single orbit keeps the bare symbol.
fn fiber_symbol(s: &str, i: usize, orbits: usize) -> String {
    if orbits == 1 {
        s.to_string()
    } else {
        format!("{s}_{i}")
    }
}

fn commutator_family(
    p: &mut GroupPresentation,
    ws: &[String],
    ws2: &[String],
    g: &Word,
    family: RelatorFamily,
) {
    for a in ws {
        for b in ws2 {
            let r = Word::commutator(&Word::gen(a), &Word::conjugate(&Word::gen(b), g));
            if !r.is_empty() {
                p.push(r, family.clone());
            }
        }
    }
}

/// A finite presentation of `W ≀_X G` from presentations of `G` and `W`,
/// generators of each stabilizer `H_i` and representatives of every
/// `H_i \ G / H_j`.
///
/// Relators: those of `G`; those of each copy `W_i`; `[h, w]` for `h` a
/// generator of `H_i` and `w` of `W_i`; `[w, g w′ g⁻¹]` for `w ∈ W_i`,
/// `w′ ∈ W_j` and `g` a representative, skipping the class of `H_i` when
/// `i = j`. A trivial `W` returns the presentation of `G`.
pub fn synthesize_wreath_presentation(input: &FpCriteriaInput) -> Result<GroupPresentation> {
    input.validate()?;
    let verdict = check_fp_criteria(input);
    if verdict != FpVerdict::Fp {
        return Err(Error::PreconditionNotFp(verdict.to_string()));
    }
    let missing = |what: &str| Error::PreconditionNotFp(format!("no {what} given"));
    let g = input.g.as_ref().ok_or_else(|| missing("presentation of G"))?;
    let w = input.w.as_ref().ok_or_else(|| missing("presentation of W"))?;
    if w.generators.is_empty() {
        return Ok(g.retagged(RelatorFamily::Base));
    }
    let n = input.orbit_count().ok_or_else(|| missing("orbit count"))?;
    let stabilizers = input
        .stabilizers
        .as_ref()
        .ok_or_else(|| missing("stabilizer generators"))?;

    let copies: Vec<GroupPresentation> = (0..n)
        .map(|i| w.rename(|s| fiber_symbol(s, i, n)))
        .collect();
    let mut generators = g.generators.clone();
    generators.extend(copies.iter().flat_map(|c| c.generators.iter().cloned()));
    let mut seen = BTreeSet::new();
    if let Some(s) = generators.iter().find(|s| !seen.insert(s.as_str())) {
        return Err(Error::SymbolClash(s.clone()));
    }

    let mut p = GroupPresentation::new(generators);
    for r in &g.relators {
        p.push(r.clone(), RelatorFamily::Base);
    }
    for (i, c) in copies.iter().enumerate() {
        for r in &c.relators {
            p.push(r.clone(), RelatorFamily::Fiber { orbit: i });
        }
    }
    for (i, c) in copies.iter().enumerate() {
        for h in &stabilizers[i] {
            for s in &c.generators {
                let r = Word::commutator(h, &Word::gen(s));
                if !r.is_empty() {
                    p.push(
                        r,
                        RelatorFamily::StabilizerCommutes {
                            orbit: i,
                            stabilizer_generator: h.clone(),
                        },
                    );
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let reps = input
                .representatives_for(i, j)
                .ok_or(Error::MissingRepresentatives(i, j))?;
            for rep in reps {
                if i == j && rep.is_empty() {
                    continue;
                }
                commutator_family(
                    &mut p,
                    &copies[i].generators,
                    &copies[j].generators,
                    rep,
                    RelatorFamily::ConjugatesCommute {
                        orbit: i,
                        other: j,
                        representative: rep.clone(),
                    },
                );
            }
        }
    }
    p.validate()?;
    Ok(p)
}

/// Input for the untruncated schema: `[H_i, W_i]`, `[W_i, g W_i g⁻¹]` for
/// every `g ∉ H_i` and `[W_i, g W_j g⁻¹]` for every `g`, one orbit per base
/// point of the action.
#[derive(Clone, Debug)]
pub struct Pres1Input {
    pub action: GroupAction,
    pub g: GroupPresentation,
    pub w: GroupPresentation,
    pub stabilizers: Vec<Vec<Word>>,
}

impl Pres1Input {
    /// Standard presentations for `G` and `W`. Stabilizer generators are
    /// computed for finite groups and are trivial for regular actions;
    /// anything else must be supplied by the caller.
    pub fn from_action(action: GroupAction, w: &GroupDescriptor, budget: usize) -> Result<Self> {
        let mut action = action;
        let stabilizers = if action.group.is_finite() {
            let x = FiniteGSet::from_action(&action, budget)?;
            // orbits the declared base points miss get base points too
            let bases = (0..x.orbit_count()).map(|i| x.point(x.base(i)).clone()).collect();
            action = action.with_base_points(bases)?;
            stabilizer_words(&x)
        } else if action.domain == Domain::Regular || action.group == GroupDescriptor::Int {
            vec![vec![]; action.base_points.len()]
        } else {
            return Err(Error::Unsupported(format!(
                "stabilizer generators of {} on its natural domain must be supplied",
                action.group.name()
            )));
        };
        Ok(Pres1Input {
            g: standard_presentation(&action.group)?,
            w: standard_presentation(w)?,
            action,
            stabilizers,
        })
    }
}

/// The schema with `g` restricted to the ball of radius `radius` in `G`.
pub fn truncated_pres1(input: &Pres1Input, radius: usize) -> Result<GroupPresentation> {
    let bases = &input.action.base_points;
    let n = bases.len();
    if input.stabilizers.len() != n {
        return Err(Error::Parse {
            path: "stabilizers".into(),
            reason: format!("{} stabilizer lists for {n} orbits", input.stabilizers.len()),
        });
    }
    let fi = FpCriteriaInput {
        g: Some(input.g.clone()),
        w: Some(input.w.clone()),
        orbits: OrbitCount::Finite(n),
        stabilizers: Some(input.stabilizers.clone()),
        representatives: Some(
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(orbit, other)| RepresentativeList {
                    orbit,
                    other,
                    words: vec![],
                })
                .collect(),
        ),
        flags: CriteriaFlags::default(),
    };
    // Everything but the double-coset families.
    let mut p = synthesize_wreath_presentation(&fi)?;

    let gens = symmetric_closure(&input.action.group.generators()?);
    let identity = input.action.group.identity();
    let mut ball: Vec<(GroupElement, Word)> = vec![(identity.clone(), Word::empty())];
    let mut seen = BTreeSet::from([identity]);
    let mut frontier = 0;
    for _ in 0..radius {
        let end = ball.len();
        for k in frontier..end {
            for (name, s) in &gens {
                let h = ball[k].0.try_mul(s)?;
                if seen.insert(h.clone()) {
                    let word = ball[k].1.concat(&Word::parse(name)?);
                    ball.push((h, word));
                }
            }
        }
        frontier = end;
    }
    let copies: Vec<Vec<String>> = (0..n)
        .map(|i| {
            input
                .w
                .generators
                .iter()
                .map(|s| fiber_symbol(s, i, n))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for (g, word) in &ball {
                if i == j && input.action.act(g, &bases[i])? == bases[i] {
                    continue;
                }
                commutator_family(
                    &mut p,
                    &copies[i],
                    &copies[j],
                    word,
                    RelatorFamily::ConjugatesCommute {
                        orbit: i,
                        other: j,
                        representative: word.clone(),
                    },
                );
            }
        }
    }
    Ok(p)
}

fn stabilizer_words(x: &FiniteGSet) -> Vec<Vec<Word>> {
    let g = x.group();
    (0..x.orbit_count())
        .map(|i| {
            g.generating_subset(x.stabilizer(i))
                .into_iter()
                .map(|k| g.word(k).clone())
                .collect()
        })
        .collect()
}

/// A finite `W ≀_X G` with everything needed to synthesize its presentation
/// and check it in the concrete group.
#[derive(Clone, Debug)]
pub struct FiniteWreathInstance {
    pub input: FpCriteriaInput,
    /// Every symbol of the synthesized presentation, sent to `W ≀_X G`:
    /// `G` generators to cursor moves, `W_i` generators to lamps at `x_i`.
    pub assignment: Assignment<WreathElement>,
    /// `|W|^|X| · |G|`.
    pub expected_order: usize,
}

impl FiniteWreathInstance {
    pub fn presentation(&self) -> Result<GroupPresentation> {
        synthesize_wreath_presentation(&self.input)
    }

    /// Order of the subgroup of `W ≀_X G` generated by the images of the
    /// presentation's generators.
    pub fn generated_order(&self, budget: usize) -> Result<usize> {
        let gens: Vec<WreathElement> = self.assignment.values.values().cloned().collect();
        generated_order(&self.assignment.identity, &gens, budget)
    }
}

/// Builds the criteria input for a finite `G` acting on a finite set, with
/// stabilizer generators and double-coset representatives computed from the
/// tabulated action. `W` symbols that clash with `G`'s get a `w` prefix.
pub fn finite_wreath_instance(
    action: &GroupAction,
    w: &GroupDescriptor,
    budget: usize,
) -> Result<FiniteWreathInstance> {
    let x = FiniteGSet::from_action(action, budget)?;
    let group = x.group();
    let n = x.orbit_count();
    let g_pres = standard_presentation(&action.group)?;
    let mut w_pres = standard_presentation(w)?;
    let mut w_gens = w.generators()?;
    while w_pres.generators.iter().any(|s| g_pres.generators.contains(s)) {
        w_pres = w_pres.rename(|s| format!("w{s}"));
        for (s, _) in &mut w_gens {
            *s = format!("w{s}");
        }
    }

    let mut representatives = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let table = double_cosets_finite(group, x.stabilizer(i), x.stabilizer(j))?;
            let words: Vec<Word> = table
                .representatives()
                .iter()
                .map(|&k| group.word(k).clone())
                .collect();
            representatives.push(RepresentativeList {
                orbit: i,
                other: j,
                words,
            });
        }
    }

    let identity = group.element(0).clone();
    let mut assignment = Assignment::new(WreathElement::identity(identity.clone()));
    for (s, g) in group.generators() {
        assignment.insert(s.clone(), WreathElement::cursor(g.clone()));
    }
    for i in 0..n {
        let base = x.point(x.base(i)).clone();
        for (s, v) in &w_gens {
            assignment.insert(
                fiber_symbol(s, i, n),
                WreathElement::lamp(base.clone(), v.clone(), identity.clone())?,
            );
        }
    }

    let w_order = FiniteGroup::from_descriptor(w, budget)?.order();
    let expected_order = u32::try_from(x.points().len())
        .ok()
        .and_then(|k| w_order.checked_pow(k))
        .and_then(|p| p.checked_mul(group.order()))
        .ok_or(Error::BudgetExceeded {
            size: usize::MAX,
            budget,
        })?;

    Ok(FiniteWreathInstance {
        input: FpCriteriaInput {
            g: Some(g_pres),
            w: Some(w_pres),
            orbits: OrbitCount::Finite(n),
            stabilizers: Some(stabilizer_words(&x)),
            representatives: Some(representatives),
            flags: CriteriaFlags {
                domain_finite: Flag::Yes,
                ..Default::default()
            },
        },
        assignment,
        expected_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Perm, Point};
    use crate::presentations::verify_relators;

    fn natural(g: GroupDescriptor, base: usize) -> GroupAction {
        GroupAction::new(g, Domain::Natural)
            .unwrap()
            .with_base_points(vec![Point::Finite(base)])
            .unwrap()
    }

    fn families(p: &GroupPresentation) -> BTreeSet<String> {
        p.provenance
            .iter()
            .map(|f| serde_json::to_value(f).unwrap()["family"].as_str().unwrap().to_string())
            .collect()
    }

    #[test]
    fn c2_wr_sym3() {
        // base point 0, so H = <(1 2)>
        let inst = finite_wreath_instance(&natural(GroupDescriptor::Sym { n: 3 }, 0), &GroupDescriptor::Cyclic { n: 2 }, 1000).unwrap();
        let p = inst.presentation().unwrap();
        assert_eq!(p.generators, vec!["a", "b", "t"]);
        // a², b³, (ab)², t², [h, t], [t, g t g⁻¹]
        assert_eq!(p.relators.len(), 6, "{p}");
        assert_eq!(
            families(&p),
            ["base", "conjugates_commute", "fiber", "stabilizer_commutes"]
                .map(String::from)
                .into()
        );
        let report = verify_relators(&p, &inst.assignment).unwrap();
        assert!(report.passed);
        assert_eq!(inst.expected_order, 48);
        assert_eq!(inst.generated_order(10_000).unwrap(), 48);
    }

    #[test]
    fn corrupted_relator_fails_with_witness() {
        let inst = finite_wreath_instance(&natural(GroupDescriptor::Sym { n: 3 }, 0), &GroupDescriptor::Cyclic { n: 2 }, 1000).unwrap();
        let mut p = inst.presentation().unwrap();
        // b moves the lamp, so [t, b] is not trivial
        p.push(
            Word::commutator(&Word::gen("t"), &Word::gen("b")),
            RelatorFamily::Base,
        );
        let report = verify_relators(&p, &inst.assignment).unwrap();
        assert!(!report.passed);
        let bad: Vec<_> = report.failures().collect();
        assert_eq!(bad.len(), 1);
        assert!(bad[0].witness.is_some());
    }

    #[test]
    fn point_domain_gives_direct_product() {
        let g = GroupDescriptor::Perm {
            degree: 1,
            generators: vec![Perm::identity(1)],
        };
        let one_point = natural(g, 0);
        let inst = finite_wreath_instance(&one_point, &GroupDescriptor::Cyclic { n: 2 }, 100).unwrap();
        let p = inst.presentation().unwrap();
        assert!(p
            .provenance
            .iter()
            .all(|f| !matches!(f, RelatorFamily::ConjugatesCommute { .. })));
        assert!(verify_relators(&p, &inst.assignment).unwrap().passed);
    }

    #[test]
    fn trivial_fiber_keeps_g() {
        let inst = finite_wreath_instance(&natural(GroupDescriptor::Sym { n: 3 }, 0), &GroupDescriptor::Cyclic { n: 1 }, 1000).unwrap();
        let p = inst.presentation().unwrap();
        let g = standard_presentation(&GroupDescriptor::Sym { n: 3 }).unwrap();
        assert_eq!(p.generators, g.generators);
        assert_eq!(p.relators, g.relators);
    }

    #[test]
    fn two_orbits() {
        let g = GroupDescriptor::Perm {
            degree: 5,
            generators: vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1], &[3, 4]]).unwrap(),
            ],
        };
        let action = GroupAction::new(g, Domain::Natural).unwrap();
        let inst = finite_wreath_instance(&action, &GroupDescriptor::Cyclic { n: 2 }, 1000).unwrap();
        let p = inst.presentation().unwrap();
        assert!(p.generators.contains(&"t_0".to_string()));
        assert!(p.generators.contains(&"t_1".to_string()));
        assert!(p.provenance.iter().any(|f| matches!(
            f,
            RelatorFamily::ConjugatesCommute { orbit: 0, other: 1, .. }
        )));
        assert!(verify_relators(&p, &inst.assignment).unwrap().passed);
        assert_eq!(inst.expected_order, 32 * 6);
        assert_eq!(inst.generated_order(10_000).unwrap(), 32 * 6);
    }

    #[test]
    fn nonabelian_fiber_is_renamed() {
        let inst = finite_wreath_instance(&natural(GroupDescriptor::Sym { n: 3 }, 2), &GroupDescriptor::Sym { n: 3 }, 1000).unwrap();
        let p = inst.presentation().unwrap();
        assert!(p.generators.contains(&"wa".to_string()));
        assert!(verify_relators(&p, &inst.assignment).unwrap().passed);
        assert_eq!(inst.generated_order(100_000).unwrap(), 6usize.pow(3) * 6);
    }

    #[test]
    fn errors() {
        let inst = finite_wreath_instance(&natural(GroupDescriptor::Sym { n: 3 }, 0), &GroupDescriptor::Cyclic { n: 2 }, 1000).unwrap();
        let mut input = inst.input.clone();
        input.representatives = Some(vec![]);
        // without representatives (iii) is not established
        assert!(matches!(
            synthesize_wreath_presentation(&input),
            Err(Error::PreconditionNotFp(_))
        ));
        input.flags.pair_orbits_finite = Flag::Yes;
        assert_eq!(
            synthesize_wreath_presentation(&input).unwrap_err(),
            Error::MissingRepresentatives(0, 0)
        );
        let mut clash = inst.input.clone();
        clash.w = Some(GroupPresentation::new(vec!["a".into()]));
        assert_eq!(
            synthesize_wreath_presentation(&clash).unwrap_err(),
            Error::SymbolClash("a".into())
        );
    }

    #[test]
    fn truncated_schema_over_z() {
        let action = GroupAction::new(GroupDescriptor::Int, Domain::Regular).unwrap();
        let input = Pres1Input::from_action(action, &GroupDescriptor::Cyclic { n: 2 }, 1000).unwrap();
        let count = |r| {
            truncated_pres1(&input, r)
                .unwrap()
                .provenance
                .iter()
                .filter(|f| matches!(f, RelatorFamily::ConjugatesCommute { .. }))
                .count()
        };
        assert_eq!(count(0), 0);
        assert_eq!(count(3), 6);
        let counts: Vec<usize> = (0..6).map(count).collect();
        assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
        let p = truncated_pres1(&input, 3).unwrap();
        let reps: BTreeSet<String> = p
            .provenance
            .iter()
            .filter_map(|f| match f {
                RelatorFamily::ConjugatesCommute { representative, .. } => {
                    Some(representative.to_string())
                }
                _ => None,
            })
            .collect();
        assert_eq!(
            reps,
            ["z", "z^2", "z^3", "z^-1", "z^-2", "z^-3"].map(String::from).into()
        );
    }

    #[test]
    fn truncated_schema_stabilizes_for_finite_g() {
        let input = Pres1Input::from_action(
            natural(GroupDescriptor::Sym { n: 3 }, 0),
            &GroupDescriptor::Cyclic { n: 2 },
            1000,
        )
        .unwrap();
        let sizes: Vec<usize> = (0..6)
            .map(|r| truncated_pres1(&input, r).unwrap().relators.len())
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        // diameter of Sym(3) in a, b is 2; |G - H| = 4
        assert_eq!(sizes[2], sizes[5]);
        let base = truncated_pres1(&input, 0).unwrap().relators.len();
        assert_eq!(sizes[5] - base, 4);
    }
}
