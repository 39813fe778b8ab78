use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{act, GroupAction, GroupElement, Point, Window};

/// Largest window handled by the orbit routines.
pub const DEFAULT_POINT_LIMIT: usize = 20_000;

/// Default number of extra window steps that paths may use.
pub const DEFAULT_MARGIN: u64 = 1;

/// Points of the exploration window (the window widened by the margin)
/// with, for every generator, the index of the image when it stays inside.
struct WindowGraph {
    points: Vec<Point>,
    /// Whether each point lies in the target window.
    inner: Vec<bool>,
    images: Vec<Vec<Option<usize>>>,
}

impl WindowGraph {
    fn build(action: &GroupAction, window: Window, margin: u64, limit: usize) -> Result<Self> {
        let explore = match window {
            Window::Size(m) => Window::Size(m.saturating_add(margin)),
            Window::Unbounded => Window::Unbounded,
        };
        let points = action.window_points(explore, limit)?;
        let inner = points.iter().map(|p| window.contains(p)).collect();
        let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let images = action
            .generators
            .iter()
            .map(|(_, s)| {
                points
                    .iter()
                    .map(|p| Ok(index.get(&act(s, p)?).copied()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WindowGraph {
            points,
            inner,
            images,
        })
    }
}

/// One class of a window partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub points: Vec<Point>,
    /// Some generator maps a point of the class out of the widened window,
    /// so the true orbit may be larger or merge with other classes.
    pub boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub window: Window,
    pub classes: Vec<OrbitClass>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn boundary_classes(&self) -> usize {
        self.classes.iter().filter(|c| c.boundary).count()
    }
}

/// Connected components of the Schreier graph restricted to the window
/// widened by `margin`, reported on the points of the window itself. Points
/// joined here are truly in one orbit; classes may still merge further out.
pub fn orbits_on_set(action: &GroupAction, window: Window, margin: u64) -> Result<OrbitPartition> {
    let w = WindowGraph::build(action, window, margin, DEFAULT_POINT_LIMIT)?;
    let n = w.points.len();
    let mut uf = UnionFind::<usize>::new(n);
    let mut leaks = vec![false; n];
    for row in &w.images {
        for (p, img) in row.iter().enumerate() {
            match img {
                Some(q) => {
                    uf.union(p, *q);
                }
                None => leaks[p] = true,
            }
        }
    }
    let mut classes: BTreeMap<usize, OrbitClass> = BTreeMap::new();
    let mut order = Vec::new();
    let mut leaky_root = vec![false; n];
    for p in 0..n {
        if leaks[p] {
            leaky_root[uf.find(p)] = true;
        }
    }
    for p in (0..n).filter(|&p| w.inner[p]) {
        let root = uf.find(p);
        let class = classes.entry(root).or_insert_with(|| {
            order.push(root);
            OrbitClass {
                points: Vec::new(),
                boundary: false,
            }
        });
        class.points.push(w.points[p].clone());
        class.boundary |= leaky_root[root];
    }
    Ok(OrbitPartition {
        window,
        classes: order.into_iter().map(|r| classes.remove(&r).expect("root recorded")).collect(),
    })
}

/// A labelling of pairs that should be constant on the orbits of the
/// diagonal action.
pub struct InvariantClassifier {
    pub name: String,
    /// Declared label set; `None` when unbounded.
    pub labels: Option<Vec<String>>,
    func: Box<dyn Fn(&Point, &Point) -> Result<String> + Send + Sync>,
}

impl fmt::Debug for InvariantClassifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantClassifier")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .finish()
    }
}

fn int_value(p: &Point) -> Result<i64> {
    match p {
        Point::Int(k) | Point::Element(GroupElement::Int(k)) => Ok(*k),
        other => Err(Error::PointOutOfDomain {
            point: format!("{other:?}"),
            group: "integer points".into(),
        }),
    }
}

impl InvariantClassifier {
    pub fn new(
        name: impl Into<String>,
        labels: Option<Vec<String>>,
        func: impl Fn(&Point, &Point) -> Result<String> + Send + Sync + 'static,
    ) -> Self {
        InvariantClassifier {
            name: name.into(),
            labels,
            func: Box::new(func),
        }
    }

    /// `sign(b - a)` for an order-preserving action.
    pub fn sign() -> Self {
        InvariantClassifier::new(
            "sign",
            Some(vec!["<".into(), "=".into(), ">".into()]),
            |a, b| {
                Ok(match a.cmp(b) {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                }
                .into())
            },
        )
    }

    /// Whether the two points coincide.
    pub fn equality() -> Self {
        InvariantClassifier::new(
            "equal",
            Some(vec!["equal".into(), "distinct".into()]),
            |a, b| Ok(if a == b { "equal" } else { "distinct" }.into()),
        )
    }

    /// `b - a` for integer points.
    pub fn difference() -> Self {
        InvariantClassifier::new("difference", None, |a, b| {
            Ok((int_value(b)? - int_value(a)?).to_string())
        })
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "sign" => Ok(InvariantClassifier::sign()),
            "equal" | "equality" => Ok(InvariantClassifier::equality()),
            "difference" => Ok(InvariantClassifier::difference()),
            other => Err(Error::Parse {
                path: "classifier".into(),
                reason: format!("unknown classifier `{other}`"),
            }),
        }
    }

    pub fn label(&self, a: &Point, b: &Point) -> Result<String> {
        let l = (self.func)(a, b)?;
        if let Some(labels) = &self.labels {
            if !labels.contains(&l) {
                return Err(Error::InvariantViolated(format!(
                    "classifier `{}` produced undeclared label `{l}`",
                    self.name
                )));
            }
        }
        Ok(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOrbitReport {
    pub window: Window,
    pub window_points: usize,
    /// Classes of window² under generator moves inside the widened window.
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    pub boundary_classes: usize,
    pub classifier: Option<String>,
    /// Label of each class, in class order, when a classifier was given.
    pub class_labels: Option<Vec<String>>,
    /// Distinct labels realised.
    pub realized_labels: Option<Vec<String>>,
}

/// Partitions window² by the diagonal generator action, letting paths pass
/// through the window widened by `margin`, and, when given a classifier,
/// checks that its label never changes along any generator move explored.
///
/// Pairs joined by a path are in one orbit, so the class count bounds the
/// number of orbits meeting window² from above, while a label-constant
/// classifier bounds it from below by the number of realised labels.
pub fn orbits_on_pairs(
    action: &GroupAction,
    window: Window,
    margin: u64,
    classifier: Option<&InvariantClassifier>,
) -> Result<PairOrbitReport> {
    let w = WindowGraph::build(action, window, margin, DEFAULT_POINT_LIMIT)?;
    let n = w.points.len();
    let pairs = n
        .checked_mul(n)
        .filter(|&m| m <= DEFAULT_POINT_LIMIT * 100)
        .ok_or(Error::BudgetExceeded {
            size: n.saturating_mul(n),
            budget: DEFAULT_POINT_LIMIT * 100,
        })?;
    let labels = match classifier {
        Some(c) => Some(
            (0..pairs)
                .map(|k| c.label(&w.points[k / n], &w.points[k % n]))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };

    let mut uf = UnionFind::<usize>::new(pairs);
    let mut leaks = vec![false; pairs];
    for (s, row) in w.images.iter().enumerate() {
        for k in 0..pairs {
            let (p, q) = (k / n, k % n);
            match (row[p], row[q]) {
                (Some(p2), Some(q2)) => {
                    let k2 = p2 * n + q2;
                    if let Some(labels) = &labels {
                        if labels[k] != labels[k2] {
                            return Err(Error::ClassifierViolation {
                                from: format!("({:?}, {:?}) [{}]", w.points[p], w.points[q], labels[k]),
                                to: format!("({:?}, {:?}) [{}]", w.points[p2], w.points[q2], labels[k2]),
                                generator: action.generators[s].0.clone(),
                            });
                        }
                    }
                    uf.union(k, k2);
                }
                _ => leaks[k] = true,
            }
        }
    }

    let mut leaky_root = vec![false; pairs];
    for k in 0..pairs {
        if leaks[k] {
            leaky_root[uf.find(k)] = true;
        }
    }
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut class_sizes = Vec::new();
    let mut class_boundary = Vec::new();
    let mut class_labels = Vec::new();
    for k in (0..pairs).filter(|&k| w.inner[k / n] && w.inner[k % n]) {
        let root = uf.find(k);
        let c = *class_index.entry(root).or_insert_with(|| {
            class_sizes.push(0);
            class_boundary.push(false);
            if let Some(labels) = &labels {
                class_labels.push(labels[k].clone());
            }
            class_sizes.len() - 1
        });
        class_sizes[c] += 1;
        class_boundary[c] |= leaky_root[root];
    }
    let realized = labels.as_ref().map(|_| {
        class_labels
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect::<Vec<_>>()
    });
    Ok(PairOrbitReport {
        window,
        window_points: w.inner.iter().filter(|&&b| b).count(),
        classes: class_sizes.len(),
        class_sizes,
        boundary_classes: class_boundary.iter().filter(|&&b| b).count(),
        classifier: classifier.map(|c| c.name.clone()),
        class_labels: labels.map(|_| class_labels),
        realized_labels: realized,
    })
}
