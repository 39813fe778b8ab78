use serde::{Deserialize, Serialize};

use super::graph::VertexGraph;
use crate::error::{Error, Result};

/// An increasing sequence of graphs on one vertex set, with the classes
/// `X_i` on which each complement is required to be regular.
#[derive(Clone, Debug, Deserialize)]
pub struct GraphSequence {
    pub graphs: Vec<VertexGraph>,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Stabilization {
    /// The sequence is constant from `index` on.
    Stabilized {
        index: usize,
        degrees: Vec<Vec<usize>>,
    },
    NotYet { degrees: Vec<Vec<usize>> },
}

impl Stabilization {
    pub fn index(&self) -> Option<usize> {
        match self {
            Stabilization::Stabilized { index, .. } => Some(*index),
            Stabilization::NotYet { .. } => None,
        }
    }

    /// `degrees[n][i]`: degree of the complement of `Γ_n` on class `i`.
    pub fn degrees(&self) -> &[Vec<usize>] {
        match self {
            Stabilization::Stabilized { degrees, .. } | Stabilization::NotYet { degrees } => degrees,
        }
    }
}

fn class_map(vertices: usize, classes: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut of = vec![usize::MAX; vertices];
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            if v >= vertices || of[v] != usize::MAX {
                return Err(Error::Parse {
                    path: format!("classes[{c}]"),
                    reason: format!("vertex {v} is out of range or in two classes"),
                });
            }
            of[v] = c;
        }
    }
    if let Some(v) = of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Parse {
            path: "classes".into(),
            reason: format!("vertex {v} is in no class"),
        });
    }
    Ok(of)
}

/// Checks the hypotheses of the stabilization argument on a finite
/// sequence and reports where it becomes constant.
///
/// Each `Γ_n` must contain `Γ_{n-1}`, and its complement must be a
/// disjoint union of regular graphs on the classes. The complement degrees
/// then never increase, and equal degrees on a class force equal edges
/// there. The index is the first `m` with `Γ_m = Γ_{m+1}`, or with `Γ_m`
/// complete, since nothing can be added after that.
pub fn detect_stabilization(seq: &[VertexGraph], classes: &[Vec<usize>]) -> Result<Stabilization> {
    let Some(first) = seq.first() else {
        return Ok(Stabilization::NotYet { degrees: vec![] });
    };
    let n = first.vertices();
    let of = class_map(n, classes)?;
    let mut degrees = Vec::with_capacity(seq.len());
    for (index, g) in seq.iter().enumerate() {
        if g.vertices() != n {
            return Err(Error::Parse {
                path: format!("graphs[{index}]"),
                reason: format!("{} vertices, expected {n}", g.vertices()),
            });
        }
        if index > 0 {
            if let Some(&edge) = seq[index - 1].edges().difference(g.edges()).next() {
                return Err(Error::NotIncreasing { index, edge });
            }
        }
    }
    for (index, g) in seq.iter().enumerate() {
        let op = g.complement();
        if let Some(&edge) = op.edges().iter().find(|(i, j)| of[*i] != of[*j]) {
            return Err(Error::CrossClassEdge { index, edge });
        }
        let mut row = Vec::with_capacity(classes.len());
        for (c, class) in classes.iter().enumerate() {
            let d = class.first().map_or(0, |&v| op.degree(v));
            if let Some(&vertex) = class.iter().find(|&&v| op.degree(v) != d) {
                return Err(Error::NotRegularOnClass {
                    index,
                    class: c,
                    vertex,
                });
            }
            row.push(d);
        }
        degrees.push(row);
    }

    for m in 0..seq.len() - 1 {
        for c in 0..classes.len() {
            let same_degree = degrees[m][c] == degrees[m + 1][c];
            let restricted = |g: &VertexGraph| -> Vec<(usize, usize)> {
                g.edges().iter().copied().filter(|(i, _)| of[*i] == c).collect()
            };
            if same_degree && restricted(&seq[m]) != restricted(&seq[m + 1]) {
                return Err(Error::InvariantViolated(format!(
                    "class {c} keeps degree {} from step {m} to {} but its edges change",
                    degrees[m][c],
                    m + 1
                )));
            }
        }
    }

    let index = (0..seq.len()).find(|&m| {
        seq[m].is_complete() || (m + 1 < seq.len() && seq[m].edges() == seq[m + 1].edges())
    });
    Ok(match index {
        Some(index) => Stabilization::Stabilized { index, degrees },
        None => Stabilization::NotYet { degrees },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> VertexGraph {
        VertexGraph::unlabelled(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn constant_sequence() {
        let c4 = g(4, &[(0, 1), (2, 3)]);
        let s = detect_stabilization(&[c4.clone(), c4.clone(), c4], &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(s.index(), Some(0));
        assert_eq!(s.degrees()[0], vec![2]);
    }

    #[test]
    fn reaches_complete_graph() {
        let seq = [g(3, &[]), g(3, &[(0, 1), (1, 2), (0, 2)])];
        let s = detect_stabilization(&seq, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(s.index(), Some(1));
        assert_eq!(s.degrees(), &[vec![2], vec![0]]);
    }

    #[test]
    fn growing_degrees_are_not_yet_stable() {
        // complements: K4 (3), 4-cycle (2), perfect matching (1)
        let seq = [
            g(4, &[]),
            g(4, &[(0, 2), (1, 3)]),
            g(4, &[(0, 2), (1, 3), (0, 1), (2, 3)]),
        ];
        let s = detect_stabilization(&seq, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(s.index(), None);
        let sums: Vec<usize> = s.degrees().iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![3, 2, 1]);
    }

    #[test]
    fn hypotheses_are_checked() {
        let seq = [g(3, &[(0, 1)]), g(3, &[(0, 2)])];
        assert_eq!(
            detect_stabilization(&seq, &[vec![0, 1, 2]]).unwrap_err(),
            Error::NotIncreasing {
                index: 1,
                edge: (0, 1)
            }
        );
        // complement of {0,1} on 3 vertices is the path 0 - 2 - 1
        assert_eq!(
            detect_stabilization(&[g(3, &[(0, 1)])], &[vec![0, 1, 2]]).unwrap_err(),
            Error::NotRegularOnClass {
                index: 0,
                class: 0,
                vertex: 2
            }
        );
        assert_eq!(
            detect_stabilization(&[g(2, &[])], &[vec![0], vec![1]]).unwrap_err(),
            Error::CrossClassEdge {
                index: 0,
                edge: (0, 1)
            }
        );
    }

    #[test]
    fn two_classes() {
        // classes {0,1,2} and {3,4,5}; every cross pair is an edge
        let cross: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let with = |extra: &[(usize, usize)]| {
            let mut e = cross.clone();
            e.extend_from_slice(extra);
            g(6, &e)
        };
        let seq = [
            with(&[]),
            with(&[(0, 1), (1, 2), (0, 2)]),
            with(&[(0, 1), (1, 2), (0, 2)]),
        ];
        let s = detect_stabilization(&seq, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(s.index(), Some(1));
        assert_eq!(s.degrees(), &[vec![2, 2], vec![0, 2], vec![0, 2]]);
    }
}
