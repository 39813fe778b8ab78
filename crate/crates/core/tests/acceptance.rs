//! End-to-end acceptance suite. Each criterion runs against an oracle that
//! shares no code with the library (plain BFS, exhaustive enumeration,
//! closed forms) and prints one PASS/FAIL line. Exit status is non-zero
//! when any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use wreathkit::cosets::hereditary::sample_instances;
use wreathkit::cosets::{
    cosets_from_edges, double_cosets_finite, edges_from_cosets, invariant_edge_sets,
    orbits_on_pairs, EdgeSet, FiniteGSet, InvariantClassifier,
};
use wreathkit::fibre::{
    biindex_vs_conjclasses, enumerate_surjections, verify_lattice_bijection, FibreContext,
    FibreProductSpec,
};
use wreathkit::geodesic::{cover_walk_length, explore_action, CoverWalkProblem};
use wreathkit::graph_products::{kernel_free_subgroup_criterion, KernelVerdict, VertexGraph, VertexLabel};
use wreathkit::groups::{Domain, GroupAction, GroupDescriptor, GroupElement, Perm, Point, Window};
use wreathkit::presentations::verify_relators;
use wreathkit::presentations::finite_wreath_instance;
use wreathkit::wreath::{
    bilipschitz_compare, wr_ball, wr_word_length, FiberMap, FinSupportFunction, WreathElement,
    WreathGenerators, WreathMetric,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: wreathkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn sh(s: &str) -> GroupDescriptor {
    GroupDescriptor::from_shorthand(s).expect("fixture shorthand")
}

fn natural(g: GroupDescriptor) -> GroupAction {
    GroupAction::new(g, Domain::Natural).expect("natural action")
}

// ---------------------------------------------------------------------------
// Oracle models. Permutations are image vectors and `mul(c, s) = c ∘ s`,
// so a walk c, cs, cst, ... visits the points c(x₀), (cs)(x₀), ...

type P = Vec<u8>;

fn pmul(a: &P, b: &P) -> P {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn pinv(a: &P) -> P {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

fn pid(n: usize) -> P {
    (0..n as u8).collect()
}

fn cycle(n: usize, pts: &[u8]) -> P {
    let mut p = pid(n);
    for k in 0..pts.len() {
        p[pts[k] as usize] = pts[(k + 1) % pts.len()];
    }
    p
}

fn to_lib(p: &P) -> GroupElement {
    GroupElement::Perm(Perm::new(p.iter().map(|&i| i as usize).collect()).expect("permutation"))
}

/// Symmetric generating sets matching the library's standard ones.
fn sym_gens(n: usize) -> Vec<P> {
    let b: Vec<u8> = (0..n as u8).collect();
    let b = cycle(n, &b);
    vec![cycle(n, &[0, 1]), pinv(&b), b]
}

fn bfs<S: Clone + Eq + Hash>(start: S, radius: usize, step: impl Fn(&S) -> Vec<S>) -> HashMap<S, usize> {
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        if d == radius {
            continue;
        }
        for t in step(&s) {
            if !dist.contains_key(&t) {
                dist.insert(t.clone(), d + 1);
                queue.push_back(t);
            }
        }
    }
    dist
}

/// A finite permutation group with its Cayley distances.
struct PermModel {
    gens: Vec<P>,
    dist: HashMap<P, usize>,
}

impl PermModel {
    fn new(n: usize, gens: Vec<P>) -> Self {
        let dist = bfs(pid(n), usize::MAX, |c| gens.iter().map(|s| pmul(c, s)).collect());
        PermModel { gens, dist }
    }

    fn d(&self, a: &P, b: &P) -> usize {
        self.dist[&pmul(&pinv(a), b)]
    }

    /// Shortest covering walk by iterative deepening over all generator
    /// sequences, pruned by an admissible bound: the walk must still reach
    /// `c`, and for each uncovered target pass through some element sending
    /// the base point there.
    fn cover_walk(&self, targets: &[u8], c: &P) -> usize {
        let all = (1u32 << targets.len()) - 1;
        let bit = |g: &P| -> u32 {
            targets
                .iter()
                .enumerate()
                .filter(|(_, &t)| g[0] == t)
                .fold(0, |m, (k, _)| m | 1 << k)
        };
        let by_point: Vec<Vec<&P>> = targets
            .iter()
            .map(|&t| self.dist.keys().filter(|g| g[0] == t).collect())
            .collect();
        let bound = |g: &P, covered: u32| -> usize {
            let mut lb = self.d(g, c);
            for (k, hs) in by_point.iter().enumerate() {
                if covered & 1 << k == 0 {
                    let via = hs.iter().map(|h| self.d(g, h) + self.d(h, c)).min().unwrap();
                    lb = lb.max(via);
                }
            }
            lb
        };
        fn dfs(
            m: &PermModel,
            g: &P,
            covered: u32,
            left: usize,
            all: u32,
            c: &P,
            bit: &dyn Fn(&P) -> u32,
            bound: &dyn Fn(&P, u32) -> usize,
        ) -> bool {
            if covered == all && g == c {
                return true;
            }
            if bound(g, covered) > left {
                return false;
            }
            m.gens.iter().any(|s| {
                let h = pmul(g, s);
                let cov = covered | bit(&h);
                dfs(m, &h, cov, left - 1, all, c, bit, bound)
            })
        }
        let start = pid(c.len());
        let covered = bit(&start);
        (0..)
            .find(|&d| dfs(self, &start, covered, d, all, c, &bit, &bound))
            .unwrap()
    }
}

/// Shortest walk on Z from 0 to `c` visiting every target, by the same
/// pruned iterative deepening over ±1 steps.
fn z_cover_walk(targets: &[i64], c: i64) -> usize {
    fn dfs(x: i64, covered: u32, left: usize, targets: &[i64], c: i64) -> bool {
        let all = (1u32 << targets.len()) - 1;
        if covered == all && x == c {
            return true;
        }
        let mut lb = (x - c).unsigned_abs() as usize;
        for (k, &t) in targets.iter().enumerate() {
            if covered & 1 << k == 0 {
                lb = lb.max(((x - t).abs() + (t - c).abs()) as usize);
            }
        }
        if lb > left {
            return false;
        }
        [x - 1, x + 1].into_iter().any(|y| {
            let cov = targets
                .iter()
                .enumerate()
                .filter(|(_, &t)| t == y)
                .fold(covered, |m, (k, _)| m | 1 << k);
            dfs(y, cov, left - 1, targets, c)
        })
    }
    let covered = targets
        .iter()
        .enumerate()
        .filter(|(_, &t)| t == 0)
        .fold(0, |m, (k, _)| m | 1 << k);
    (0..).find(|&d| dfs(0, covered, d, targets, c)).unwrap()
}

fn subsets_up_to<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for x in items {
        let grown: Vec<Vec<T>> = out
            .iter()
            .filter(|s| s.len() < k)
            .map(|s| {
                let mut s = s.clone();
                s.push(x.clone());
                s
            })
            .collect();
        out.extend(grown);
    }
    out
}

// ---------------------------------------------------------------------------

fn lamplighter_element(lamps: impl IntoIterator<Item = (Point, GroupElement)>, c: GroupElement) -> WreathElement {
    WreathElement::new(FinSupportFunction::from_entries(lamps).expect("lamps"), c).expect("element")
}

fn word_length_formula() -> Outcome {
    const R: usize = 8;
    // C2 ≀ Z: lamps as a bit mask centred at 16
    let z_ball = bfs((0u64, 0i64), R, |&(m, c)| {
        vec![(m ^ 1 << (c + 16), c), (m, c + 1), (m, c - 1)]
    });
    let gens = lib(WreathGenerators::standard(&sh("c2"), &natural(GroupDescriptor::Int)))?;
    let metric = lib(WreathMetric::new(gens.clone(), R + 2, Window::Unbounded))?;
    let lib_ball = lib(wr_ball(&gens, R, Window::Unbounded))?;
    ensure!(lib_ball.len() == z_ball.len(), "C2≀Z ball sizes {} vs {}", lib_ball.len(), z_ball.len());
    for (&(m, c), &d) in &z_ball {
        let e = lamplighter_element(
            (0..64)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| (Point::Int(b - 16), GroupElement::cyclic(1, 2))),
            GroupElement::Int(c),
        );
        let l = lib(wr_word_length(&e, &metric))?;
        ensure!(l == d, "C2≀Z: {e:?} has length {l}, BFS says {d}");
    }

    let sym = PermModel::new(3, sym_gens(3));
    let s_ball = bfs((0u8, pid(3)), R, |(m, c)| {
        let mut out = vec![(m ^ 1 << c[0], c.clone())];
        out.extend(sym.gens.iter().map(|s| (*m, pmul(c, s))));
        out
    });
    let gens = lib(WreathGenerators::standard(&sh("c2"), &natural(sh("sym3"))))?;
    let metric = lib(WreathMetric::new(gens, R, Window::Unbounded))?;
    for ((m, c), &d) in &s_ball {
        let e = lamplighter_element(
            (0..3)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| (Point::Finite(b), GroupElement::cyclic(1, 2))),
            to_lib(c),
        );
        let l = lib(wr_word_length(&e, &metric))?;
        ensure!(l == d, "C2≀Sym3: {e:?} has length {l}, BFS says {d}");
    }
    Ok(format!("{} + {} elements agree", z_ball.len(), s_ball.len()))
}

fn covering_walks() -> Outcome {
    let mut checked = 0;

    let z = natural(GroupDescriptor::Int);
    let frag = lib(explore_action(&z, 24, Window::Unbounded))?;
    let window: Vec<i64> = (-3..=3).collect();
    for f in subsets_up_to(&window, 3) {
        for c in -4..=4 {
            let problem = CoverWalkProblem::new(
                f.iter().map(|&t| Point::Int(t)).collect(),
                GroupElement::Int(c),
            );
            let got = lib(cover_walk_length(&problem, &frag))?;
            let want = z_cover_walk(&f, c);
            ensure!(got == want, "Z: K({f:?}, {c}) = {got}, enumeration {want}");
            checked += 1;
        }
    }

    for n in [3usize, 4] {
        let model = PermModel::new(n, sym_gens(n));
        let frag = lib(explore_action(&natural(GroupDescriptor::Sym { n }), 12, Window::Unbounded))?;
        let points: Vec<u8> = (0..n as u8).collect();
        let ball: Vec<&P> = model.dist.iter().filter(|(_, &d)| d <= 4).map(|(g, _)| g).collect();
        for f in subsets_up_to(&points, 3) {
            for c in &ball {
                let problem = CoverWalkProblem::new(
                    f.iter().map(|&t| Point::Finite(t as usize)).collect(),
                    to_lib(c),
                );
                let got = lib(cover_walk_length(&problem, &frag))?;
                let want = model.cover_walk(&f, c);
                ensure!(got == want, "Sym{n}: K({f:?}, {c:?}) = {got}, enumeration {want}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} instances agree"))
}

fn bilipschitz() -> Outcome {
    const R: usize = 5;
    let half_to_two = |a: usize, b: usize| 2 * b >= a && b <= 2 * a;
    let phi = FiberMap::int_to_dihedral();
    let mut summary = Vec::new();

    // Z ≀ Z: travel on Z is the shorter of sweeping left or right first
    let z_travel = |f: &[i64], c: i64| -> usize {
        let lo = f.iter().copied().chain([0, c]).min().unwrap();
        let hi = f.iter().copied().chain([0, c]).max().unwrap();
        ((hi - lo) + (-lo + hi - c).min(hi + c - lo)) as usize
    };
    let oracle_ball = bfs((BTreeMap::<i64, i64>::new(), 0i64), R, |(f, c)| {
        let mut out = vec![];
        for d in [-1, 1] {
            let mut g = f.clone();
            let v = g.entry(*c).or_insert(0);
            *v += d;
            if *v == 0 {
                g.remove(c);
            }
            out.push((g, *c));
            out.push((f.clone(), c + d));
        }
        out
    });
    let z = natural(GroupDescriptor::Int);
    let src_gens = lib(WreathGenerators::standard(&GroupDescriptor::Int, &z))?;
    let src = lib(WreathMetric::new(src_gens.clone(), 4 * R, Window::Unbounded))?;
    let img = lib(WreathMetric::new(
        lib(WreathGenerators::standard(&GroupDescriptor::DihedralInf, &z))?,
        4 * R,
        Window::Unbounded,
    ))?;
    let ball = lib(wr_ball(&src_gens, R, Window::Unbounded))?;
    ensure!(ball.len() == oracle_ball.len(), "Z≀Z ball sizes {} vs {}", ball.len(), oracle_ball.len());
    for (f, c) in oracle_ball.keys() {
        let support: Vec<i64> = f.keys().copied().collect();
        let mass: usize = f.values().map(|v| v.unsigned_abs() as usize).sum();
        let k = z_travel(&support, *c);
        let e = lamplighter_element(
            f.iter().map(|(&x, &v)| (Point::Int(x), GroupElement::Int(v))),
            GroupElement::Int(*c),
        );
        let (a, b) = (lib(src.word_length(&e))?, lib(img.word_length(&lib(phi.lift(&e))?))?);
        ensure!(a == k + mass, "Z≀Z: {e:?} length {a}, oracle {}", k + mass);
        // (ab)^n has length 2|n| in D∞
        ensure!(b == k + 2 * mass, "D∞≀Z: image of {e:?} length {b}, oracle {}", k + 2 * mass);
        ensure!(a == 0 || half_to_two(a, b), "ratio {b}/{a} at {e:?}");
    }
    let report = lib(bilipschitz_compare(&ball, &phi, &src, &img))?;
    ensure!(report.within_bounds(), "Z≀Z: {} violations", report.violations.len());
    summary.push(format!("Z≀Z {} elements, max ratio {}", ball.len(), report.max_ratio.unwrap()));

    // Z ≀ Sym4, travel from the covering-walk oracle
    let model = PermModel::new(4, sym_gens(4));
    let s4 = natural(sh("sym4"));
    let src_gens = lib(WreathGenerators::standard(&GroupDescriptor::Int, &s4))?;
    let src = lib(WreathMetric::new(src_gens.clone(), 12, Window::Unbounded))?;
    let img = lib(WreathMetric::new(
        lib(WreathGenerators::standard(&GroupDescriptor::DihedralInf, &s4))?,
        12,
        Window::Unbounded,
    ))?;
    let ball = lib(wr_ball(&src_gens, R, Window::Unbounded))?;
    let lib_index: HashMap<P, GroupElement> = model.dist.keys().map(|p| (p.clone(), to_lib(p))).collect();
    let mut travel: HashMap<(Vec<u8>, P), usize> = HashMap::new();
    for entry in &ball {
        let e = entry.element();
        let mut support = vec![];
        let mut mass = 0;
        for (x, v) in e.function().entries() {
            let (Point::Finite(x), GroupElement::Int(v)) = (x, v) else {
                return Err(format!("unexpected entry in {e:?}"));
            };
            support.push(*x as u8);
            mass += v.unsigned_abs() as usize;
        }
        let c = lib_index
            .iter()
            .find(|(_, g)| *g == e.cursor_element())
            .map(|(p, _)| p.clone())
            .ok_or("cursor outside Sym4")?;
        let k = *travel
            .entry((support.clone(), c.clone()))
            .or_insert_with(|| model.cover_walk(&support, &c));
        let (a, b) = (lib(src.word_length(&e))?, lib(img.word_length(&lib(phi.lift(&e))?))?);
        ensure!(a == k + mass && b == k + 2 * mass, "Z≀Sym4: {e:?} lengths {a}, {b}");
        ensure!(a == 0 || half_to_two(a, b), "ratio {b}/{a} at {e:?}");
    }
    let report = lib(bilipschitz_compare(&ball, &phi, &src, &img))?;
    ensure!(report.within_bounds(), "Z≀Sym4: {} violations", report.violations.len());
    summary.push(format!("Z≀Sym4 {} elements, max ratio {}", ball.len(), report.max_ratio.unwrap()));
    Ok(summary.join("; "))
}

fn presentation_synthesis() -> Outcome {
    let mut cases = 0;
    let mut relators = 0;
    for (w, w_order) in [("c2", 2usize), ("c3", 3)] {
        for (g, degree, g_order) in [("sym3", 3u32, 6usize), ("sym4", 4, 24), ("d4", 4, 8)] {
            for base in 0..degree as usize {
                let action = lib(natural(sh(g)).with_base_points(vec![Point::Finite(base)]))?;
                let inst = lib(finite_wreath_instance(&action, &sh(w), 10_000))?;
                let p = lib(inst.presentation())?;
                let report = lib(verify_relators(&p, &inst.assignment))?;
                let bad: Vec<String> = report.failures().map(|c| c.relator.to_string()).collect();
                ensure!(bad.is_empty(), "{w}≀{g} at {base}: relators fail {bad:?}");
                let want = w_order.pow(degree) * g_order;
                ensure!(inst.expected_order == want, "expected order {} vs {want}", inst.expected_order);
                let got = lib(inst.generated_order(100_000))?;
                ensure!(got == want, "{w}≀{g} at {base}: generated {got}, want {want}");
                cases += 1;
                relators += p.relators.len();
            }
        }
    }
    Ok(format!("{cases} instances, {relators} relators evaluated"))
}

fn double_coset_fixtures() -> Outcome {
    // Sym3 with H the stabilizer of 0, i.e. the transposition fixing 0
    let h: Vec<P> = vec![pid(3), vec![0, 2, 1]];
    let mut all: Vec<P> = PermModel::new(3, sym_gens(3)).dist.into_keys().collect();
    all.sort();
    let classes: BTreeSet<BTreeSet<P>> = all
        .iter()
        .map(|g| {
            h.iter()
                .flat_map(|a| h.iter().map(move |b| pmul(&pmul(a, g), b)))
                .collect()
        })
        .collect();
    ensure!(classes.len() == 2, "oracle gives {} double cosets", classes.len());
    let x = lib(FiniteGSet::from_action(&natural(sh("sym3")), 1000))?;
    let table = lib(double_cosets_finite(x.group(), x.stabilizer(0), x.stabilizer(0)))?;
    ensure!(table.len() == 2, "Sym3: {} double cosets", table.len());

    let sign = InvariantClassifier::sign();
    let f = natural(GroupDescriptor::ThompsonF);
    let mut counts = vec![];
    // exponent 1 holds only 1/2, so the diagonal is the sole class there
    for k in 2..=6 {
        // a classifier violation would surface as an error here
        let r = lib(orbits_on_pairs(&f, Window::Size(k), 1, Some(&sign)))?;
        ensure!(r.classes == 3, "F at exponent {k}: {} classes", r.classes);
        counts.push(r.classes);
    }
    let h3 = natural(GroupDescriptor::Houghton { n: 3 });
    let r = lib(orbits_on_pairs(&h3, Window::Size(20), 1, Some(&InvariantClassifier::equality())))?;
    ensure!(r.classes == 2, "H3: {} classes", r.classes);
    Ok(format!("Sym3 2, F {counts:?}, H3 {}", r.classes))
}

fn lattice_bijection() -> Outcome {
    let factors = ["c2", "c4", "c2xc2", "sym3", "d4"];
    // conjugacy classes of each quotient, counted by hand
    let quotients = [("c1", 1usize), ("c2", 2), ("c4", 4), ("c2xc2", 4), ("sym3", 3), ("d4", 5)];
    let mut specs = 0;
    for g1 in factors {
        for g2 in factors {
            for (q, classes) in quotients {
                let s1 = lib(enumerate_surjections(&sh(g1), &sh(q), 1000))?;
                if s1.is_empty() {
                    continue;
                }
                let s2 = lib(enumerate_surjections(&sh(g2), &sh(q), 1000))?;
                for p1 in &s1 {
                    for p2 in &s2 {
                        let spec = FibreProductSpec {
                            g1: sh(g1),
                            g2: sh(g2),
                            q: sh(q),
                            p1: p1.clone(),
                            p2: p2.clone(),
                        };
                        let ctx = lib(FibreContext::new(&spec, 576))?;
                        let lat = lib(verify_lattice_bijection(&ctx))?;
                        ensure!(
                            lat.u_then_v_identity && lat.v_then_u_identity && lat.passed,
                            "{g1} ×_{q} {g2}: {lat:?}"
                        );
                        let bi = lib(biindex_vs_conjclasses(&ctx))?;
                        ensure!(
                            bi.passed && bi.double_cosets == classes,
                            "{g1} ×_{q} {g2}: {} double cosets, {classes} classes",
                            bi.double_cosets
                        );
                        specs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{specs} fibre products"))
}

fn graph_product_criterion() -> Outcome {
    // reduced words of length <= r in a free group of rank 2
    let f2: Vec<usize> = (0..=6u32).map(|r| 1 + (1..=r).map(|k| 4 * 3usize.pow(k - 1)).sum::<usize>()).collect();
    ensure!(f2 == [1, 5, 17, 53, 161, 485, 1457], "F2 oracle {f2:?}");
    let graph = |n: usize, label: &[&str]| -> Result<VertexGraph, String> {
        let labels = label.iter().map(|l| VertexLabel::parse(l)).collect::<wreathkit::Result<_>>();
        lib(VertexGraph::new(n, [], lib(labels)?))
    };
    let fixtures = [
        ("C2-C2", graph(2, &["C2", "C2"])?, "NoFreeSubgroup"),
        ("C3-C2", graph(2, &["C3", "C2"])?, "ContainsF2(a)"),
        ("C2 triangle", graph(3, &["C2", "C2", "C2"])?, "ContainsF2(b)"),
    ];
    for (name, g, want) in fixtures {
        let verdict = lib(kernel_free_subgroup_criterion(&g))?;
        ensure!(verdict.to_string() == want, "{name}: {verdict}, want {want}");
        if let KernelVerdict::ContainsF2 { witness } = verdict {
            ensure!(lib(witness.generators_in_kernel())?, "{name}: witness outside the kernel");
            let balls = lib(witness.ball_sizes(6))?;
            ensure!(balls == f2, "{name}: balls {balls:?}");
        }
    }
    Ok("3 fixtures, witness balls match F2".into())
}

fn hereditary_lemmas() -> Outcome {
    let instances = lib(sample_instances(0x5eed, 200, 48))?;
    ensure!(instances.len() == 200, "only {} instances", instances.len());
    let mut checks = 0;
    for inst in &instances {
        ensure!(inst.group.order() <= 48, "{} too large", inst.name);
        ensure!(inst.h1.is_subset(&inst.h2), "{}: H1 not inside H2", inst.name);
        for c in lib(inst.checks())? {
            ensure!(c.holds(), "{}: {} ({} vs {})", inst.name, c.statement, c.lhs, c.rhs);
            checks += 1;
        }
    }
    Ok(format!("{checks} count assertions on 200 instances"))
}

fn edge_coset_round_trip() -> Outcome {
    let mut total = 0;
    for g in ["sym3", "sym4"] {
        let x = lib(FiniteGSet::from_action(&natural(sh(g)), 1000))?;
        let n = x.points().len();
        // oracle: every symmetric irreflexive edge set closed under the action
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let invariant: HashSet<EdgeSet> = (0u64..1 << pairs.len())
            .map(|mask| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .flat_map(|(_, &(i, j))| [(i, j), (j, i)])
                    .collect::<EdgeSet>()
            })
            .filter(|e| {
                (0..x.group().order())
                    .all(|h| e.iter().all(|&(i, j)| e.contains(&(x.image(h, i), x.image(h, j)))))
            })
            .collect();
        let sets = lib(invariant_edge_sets(&x, 16))?;
        let got: HashSet<EdgeSet> = sets.iter().cloned().collect();
        ensure!(got == invariant, "{g}: {} invariant edge sets, oracle {}", got.len(), invariant.len());
        for e in &sets {
            let fam = lib(cosets_from_edges(&x, e))?;
            let back = lib(edges_from_cosets(&x, &fam))?;
            ensure!(&back == e, "{g}: edges do not round-trip");
            let again = lib(cosets_from_edges(&x, &back))?;
            ensure!(again == fam, "{g}: cosets do not round-trip");
            total += 1;
        }
    }
    Ok(format!("{total} edge sets round-trip"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("word-length formula vs BFS", word_length_formula),
        ("covering walks vs enumeration", covering_walks),
        ("bi-Lipschitz ratios in [1/2, 2]", bilipschitz),
        ("presentation synthesis", presentation_synthesis),
        ("double-coset fixtures", double_coset_fixtures),
        ("fibre-product lattice bijection", lattice_bijection),
        ("graph-product kernel criterion", graph_product_criterion),
        ("hereditary lemma counts", hereditary_lemmas),
        ("edge/coset round trip", edge_coset_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
