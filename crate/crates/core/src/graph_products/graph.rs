use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupDescriptor, DEFAULT_BUDGET};

/// The group on a vertex. Only its order matters to the criteria, so the
/// label keeps the name it was given and the order, `None` if infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabel {
    pub name: String,
    pub group: GroupDescriptor,
    pub order: Option<usize>,
}

impl VertexLabel {
    pub fn parse(name: &str) -> Result<Self> {
        let group = GroupDescriptor::from_shorthand(name)?;
        group.validate()?;
        let order = if group.is_finite() {
            Some(FiniteGroup::from_descriptor(&group, DEFAULT_BUDGET)?.order())
        } else {
            None
        };
        Ok(VertexLabel {
            name: name.to_string(),
            group,
            order,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.order == Some(1)
    }

    pub fn is_c2(&self) -> bool {
        self.order == Some(2)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        VertexLabel::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite simple graph on `0..vertices`, optionally labelled by groups.
/// Edges are stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    labels: Vec<VertexLabel>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    labels: Vec<VertexLabel>,
}

impl<'de> Deserialize<'de> for VertexGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(d)?;
        VertexGraph::new(raw.vertices, raw.edges, raw.labels).map_err(serde::de::Error::custom)
    }
}

impl VertexGraph {
    /// Rejects loops and out-of-range endpoints; `(i, j)` and `(j, i)` name
    /// the same edge. `labels` is empty or has one entry per vertex.
    pub fn new(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<VertexLabel>,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j || i >= vertices || j >= vertices {
                return Err(Error::Parse {
                    path: "edges".into(),
                    reason: format!("bad edge ({i}, {j}) on {vertices} vertices"),
                });
            }
            set.insert((i.min(j), i.max(j)));
        }
        if !labels.is_empty() && labels.len() != vertices {
            return Err(Error::Parse {
                path: "labels".into(),
                reason: format!("{} labels for {vertices} vertices", labels.len()),
            });
        }
        Ok(VertexGraph {
            vertices,
            edges: set,
            labels,
        })
    }

    /// Unlabelled graph.
    pub fn unlabelled(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        VertexGraph::new(vertices, edges, Vec::new())
    }

    /// Every vertex labelled by the group named `label`.
    pub fn uniform(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        label: &str,
    ) -> Result<Self> {
        let l = VertexLabel::parse(label)?;
        VertexGraph::new(vertices, edges, vec![l; vertices])
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(s);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
            path: e.path().to_string(),
            reason: e.inner().to_string(),
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices).filter(move |&u| u != v && self.has_edge(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.vertices * self.vertices.saturating_sub(1) / 2
    }

    /// Same vertices and labels; an edge exactly where `self` has none.
    pub fn complement(&self) -> VertexGraph {
        let mut edges = BTreeSet::new();
        for i in 0..self.vertices {
            for j in i + 1..self.vertices {
                if !self.has_edge(i, j) {
                    edges.insert((i, j));
                }
            }
        }
        VertexGraph {
            vertices: self.vertices,
            edges,
            labels: self.labels.clone(),
        }
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertices);
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.vertices];
        for v in 0..self.vertices {
            let r = uf.find(v);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot[r]].push(v);
        }
        comps
    }
}
