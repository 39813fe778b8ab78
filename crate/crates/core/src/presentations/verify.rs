use std::collections::HashSet;

use serde::Serialize;

use super::{GroupPresentation, RelatorFamily};
use crate::error::{Error, Result};
use crate::groups::GroupOps;
use crate::word::{evaluate_word, Assignment, Word};

#[derive(Clone, Debug, Serialize)]
pub struct RelatorCheck {
    pub index: usize,
    pub relator: Word,
    pub family: Option<RelatorFamily>,
    pub passed: bool,
    /// The non-identity value a failing relator evaluates to.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelatorReport {
    pub passed: bool,
    pub checks: Vec<RelatorCheck>,
}

impl RelatorReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluates every relator under `assignment`. All generators must be
/// assigned, even those no relator mentions.
pub fn verify_relators<E: GroupOps>(
    p: &GroupPresentation,
    assignment: &Assignment<E>,
) -> Result<RelatorReport> {
    if let Some(g) = p.generators.iter().find(|g| !assignment.values.contains_key(*g)) {
        return Err(Error::UnboundSymbol(g.clone()));
    }
    let mut checks = Vec::with_capacity(p.relators.len());
    for (index, r) in p.relators.iter().enumerate() {
        let v = evaluate_word(r, assignment)?;
        let passed = v.is_identity();
        checks.push(RelatorCheck {
            index,
            relator: r.clone(),
            family: p.provenance.get(index).cloned(),
            passed,
            witness: (!passed).then(|| format!("{v:?}")),
        });
    }
    Ok(RelatorReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Order of the subgroup generated by `gens`, by breadth-first closure.
pub fn generated_order<E: GroupOps>(identity: &E, gens: &[E], budget: usize) -> Result<usize> {
    let mut seen = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in gens {
                let y = x.try_mul(s)?;
                if !seen.contains(&y) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded {
                            size: seen.len() + 1,
                            budget,
                        });
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    #[test]
    fn empty_presentation_passes() {
        let p = GroupPresentation::default();
        let r = verify_relators(&p, &Assignment::new(GroupElement::Int(0))).unwrap();
        assert!(r.passed && r.checks.is_empty());
    }

    #[test]
    fn unbound_generator() {
        let p = GroupPresentation::new(vec!["z".into()]);
        let e = verify_relators(&p, &Assignment::new(GroupElement::Int(0))).unwrap_err();
        assert_eq!(e, Error::UnboundSymbol("z".into()));
    }

    #[test]
    fn closure_order() {
        let t = GroupElement::cyclic(1, 6);
        assert_eq!(generated_order(&GroupElement::cyclic(0, 6), &[t.pow(2).unwrap()], 100).unwrap(), 3);
        assert!(matches!(
            generated_order(&GroupElement::Int(0), &[GroupElement::Int(1)], 50),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
