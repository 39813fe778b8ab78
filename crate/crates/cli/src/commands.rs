use std::collections::BTreeMap;

use serde_json::{json, Value};
use wreathkit::cosets::hereditary::sample_instances;
use wreathkit::cosets::{
    cosets_from_edges, double_cosets_finite, edges_from_cosets, invariant_edge_sets,
    orbits_on_pairs, orbits_on_set, FiniteGSet, InvariantClassifier,
};
use wreathkit::fibre::{biindex_vs_conjclasses, verify_lattice_bijection, FibreContext, FibreProductSpec, DEFAULT_FIBRE_BUDGET};
use wreathkit::geodesic::{cover_walk_length, explore_action, CoverWalkProblem};
use wreathkit::graph_products::{detect_stabilization, kernel_free_subgroup_criterion, GraphSequence, KernelVerdict, VertexGraph};
use wreathkit::groups::{GroupAction, GroupDescriptor, Window, DEFAULT_BUDGET};
use wreathkit::presentations::{
    check_fg_criteria, check_fp_criteria, finite_wreath_instance, synthesize_wreath_presentation,
    truncated_pres1, verify_relators, FpCriteriaInput, GroupPresentation, Pres1Input,
};
use wreathkit::wreath::{bilipschitz_compare, wr_ball, wr_word_length, FiberMap, WreathElement, WreathGenerators, WreathMetric};

use crate::cli::{Command, Common};
use crate::input::{load_action, load_group, load_json, load_text, parse_group_word, parse_points};
use crate::CliError;

/// Largest concrete group whose order `present` checks by enumeration.
const ORDER_CHECK_BUDGET: usize = 200_000;

fn action_summary(a: &GroupAction) -> Value {
    json!({
        "group": a.group.name(),
        "domain": a.domain,
        "base_points": a.base_points,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn sizes_by_length(lengths: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut by = Vec::new();
    for l in lengths {
        if by.len() <= l {
            by.resize(l + 1, 0);
        }
        by[l] += 1;
    }
    by
}

fn lamp_generators(w: &str, action: &GroupAction) -> Result<WreathGenerators, CliError> {
    Ok(WreathGenerators::standard(&load_group(w)?, action)?)
}

/// Runs one command, returning the resolved parameters and the result.
pub fn run(cmd: &Command, common: &Common) -> Result<(Value, Value), CliError> {
    let window = Window::Size(common.window);
    let radius = common.radius;
    match cmd {
        Command::WreathLen { group, fiber, element } => {
            let action = load_action(group)?;
            let gens = lamp_generators(&fiber.w, &action)?;
            let e: WreathElement = load_json(element, "element")?;
            let metric = WreathMetric::new(gens, radius, window)?;
            let len = wr_word_length(&e, &metric)?;
            Ok((
                json!({ "action": action_summary(&action), "w": fiber.w }),
                json!({
                    "len": len,
                    "fiber_len": metric.fiber_length(&e)?,
                    "travel_len": metric.travel_length(&e)?,
                }),
            ))
        }
        Command::Ball { group, fiber } => {
            let action = load_action(group)?;
            let gens = lamp_generators(&fiber.w, &action)?;
            let ball = wr_ball(&gens, radius, window)?;
            let by = sizes_by_length(ball.iter().map(|e| e.len));
            let cumulative: Vec<usize> = by
                .iter()
                .scan(0, |acc, &n| {
                    *acc += n;
                    Some(*acc)
                })
                .collect();
            Ok((
                json!({ "action": action_summary(&action), "w": fiber.w }),
                json!({ "size": ball.len(), "sphere_sizes": by, "ball_sizes": cumulative }),
            ))
        }
        Command::Bilip { group } => {
            let action = load_action(group)?;
            let src = WreathGenerators::standard(&GroupDescriptor::Int, &action)?;
            let img = WreathGenerators::standard(&GroupDescriptor::DihedralInf, &action)?;
            let ball = wr_ball(&src, radius, window)?;
            let src = WreathMetric::new(src, radius, window)?;
            let img = WreathMetric::new(img, radius, window)?;
            let report = bilipschitz_compare(&ball, &FiberMap::int_to_dihedral(), &src, &img)?;
            Ok((
                json!({ "action": action_summary(&action), "source": "Z", "image": "Dinf" }),
                json!({ "ball_size": ball.len(), "within_bounds": report.within_bounds(), "report": report }),
            ))
        }
        Command::Kwalk { group, targets, terminal } => {
            let action = load_action(group)?;
            let targets = parse_points(targets, &action)?;
            let c = parse_group_word(terminal, &action.group)?;
            let frag = explore_action(&action, radius, window)?;
            let mut problem = CoverWalkProblem::new(targets.clone(), c.clone());
            problem.budget = common.budget;
            let k = cover_walk_length(&problem, &frag)?;
            Ok((
                json!({ "action": action_summary(&action), "targets": targets, "terminal": c }),
                json!({ "k": k, "fragment_complete": frag.is_complete(), "fragment_size": frag.walk_size() }),
            ))
        }
        Command::Orbits { group, margin, classifier } => {
            let action = load_action(group)?;
            let classifier = classifier.as_deref().map(InvariantClassifier::by_name).transpose()?;
            let set = orbits_on_set(&action, window, *margin)?;
            let pairs = orbits_on_pairs(&action, window, *margin, classifier.as_ref())?;
            Ok((
                json!({ "action": action_summary(&action) }),
                json!({
                    "orbits": set.len(),
                    "pair_orbits": pairs.classes,
                    "boundary_classes": set.boundary_classes(),
                    "set": set,
                    "pairs": pairs,
                }),
            ))
        }
        Command::Dcosets { group, stab, stab2, hereditary: Some(count), max_order } => {
            let _ = (group, stab, stab2);
            let instances = sample_instances(common.seed, *count, *max_order)?;
            let mut checks = 0;
            let mut violations = Vec::new();
            let mut by_group: BTreeMap<String, usize> = BTreeMap::new();
            for inst in &instances {
                *by_group.entry(inst.name.clone()).or_default() += 1;
                for c in inst.checks()? {
                    checks += 1;
                    if !c.holds() {
                        violations.push(json!({ "group": inst.name, "check": c }));
                    }
                }
            }
            Ok((
                json!({ "max_order": max_order, "seed": common.seed }),
                json!({
                    "instances": instances.len(),
                    "checks": checks,
                    "violations": violations,
                    "passed": violations.is_empty(),
                    "groups": by_group,
                }),
            ))
        }
        Command::Dcosets { group, stab, stab2, hereditary: None, .. } => {
            let action = load_action(group)?;
            let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
            let x = FiniteGSet::from_action(&action, budget)?;
            let subgroup = |p: usize| -> Result<_, CliError> {
                let pi = x
                    .point_index(&wreathkit::groups::Point::Finite(p))
                    .ok_or_else(|| CliError::Usage(format!("no point {p} in the domain")))?;
                let g = x.group();
                let fixes = (0..g.order()).filter(|&h| x.image(h, pi) == pi);
                Ok(g.set_of(fixes))
            };
            let (h, k) = (subgroup(*stab)?, subgroup(stab2.unwrap_or(*stab))?);
            let table = double_cosets_finite(x.group(), &h, &k)?;
            let reps: Vec<String> = table
                .representatives()
                .iter()
                .map(|&r| x.group().word(r).to_string())
                .collect();
            let sizes: Vec<usize> = (0..table.len()).map(|c| table.members(c).count()).collect();
            Ok((
                json!({ "action": action_summary(&action), "stab": stab, "stab2": stab2.unwrap_or(*stab), "budget": budget }),
                json!({ "double_cosets": table.len(), "representatives": reps, "sizes": sizes }),
            ))
        }
        Command::Edges { group, max_orbitals } => {
            let action = load_action(group)?;
            let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
            let x = FiniteGSet::from_action(&action, budget)?;
            let mut sets = Vec::new();
            for e in invariant_edge_sets(&x, *max_orbitals)? {
                let fam = cosets_from_edges(&x, &e)?;
                let back = edges_from_cosets(&x, &fam)?;
                let undirected: Vec<(usize, usize)> = e.iter().copied().filter(|(i, j)| i < j).collect();
                sets.push(json!({ "edges": undirected, "round_trip": back == e }));
            }
            let all_ok = sets.iter().all(|s| s["round_trip"] == true);
            Ok((
                json!({ "action": action_summary(&action), "budget": budget }),
                json!({ "points": x.points(), "edge_sets": sets.len(), "round_trip": all_ok, "sets": sets }),
            ))
        }
        Command::Present { group, fiber, criteria: Some(file), emit } => {
            let _ = (group, fiber);
            let input = FpCriteriaInput::from_json(&load_text(file, "criteria")?)?;
            let fg = check_fg_criteria(&input);
            let fp = check_fp_criteria(&input);
            let p = synthesize_wreath_presentation(&input)?;
            write_presentation(emit, &p)?;
            Ok((
                json!({ "criteria": file }),
                json!({
                    "fg": fg.to_string(),
                    "fp": fp.to_string(),
                    "relator_count": p.relators.len(),
                    "relators_verified": Value::Null,
                    "presentation": p,
                }),
            ))
        }
        Command::Present { group, fiber, criteria: None, emit } => {
            let action = load_action(group)?;
            let w = load_group(&fiber.w)?;
            let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
            let inst = finite_wreath_instance(&action, &w, budget)?;
            let p = inst.presentation()?;
            let report = verify_relators(&p, &inst.assignment)?;
            let generated = if inst.expected_order <= ORDER_CHECK_BUDGET {
                Some(inst.generated_order(ORDER_CHECK_BUDGET)?)
            } else {
                None
            };
            write_presentation(emit, &p)?;
            let mut families: BTreeMap<String, usize> = BTreeMap::new();
            for f in &p.provenance {
                let name = to_value(f)["family"].as_str().unwrap_or_default().to_string();
                *families.entry(name).or_default() += 1;
            }
            let failures: Vec<Value> = report.failures().map(to_value).collect();
            Ok((
                json!({ "action": action_summary(&action), "w": fiber.w, "budget": budget }),
                json!({
                    "relators_verified": report.passed,
                    "relator_count": p.relators.len(),
                    "families": families,
                    "failures": failures,
                    "expected_order": inst.expected_order,
                    "generated_order": generated,
                    "presentation": p,
                }),
            ))
        }
        Command::Pres1 { group, fiber } => {
            let action = load_action(group)?;
            let budget = common.budget.unwrap_or(DEFAULT_BUDGET);
            let input = Pres1Input::from_action(action, &load_group(&fiber.w)?, budget)?;
            let mut counts = Vec::new();
            let mut last = None;
            for r in 0..=radius {
                let p = truncated_pres1(&input, r)?;
                counts.push(json!({ "radius": r, "relators": p.relators.len() }));
                last = Some(p);
            }
            Ok((
                json!({ "action": action_summary(&input.action), "w": fiber.w }),
                json!({ "counts": counts, "presentation": last }),
            ))
        }
        Command::Graphprod { graph } => {
            let g = VertexGraph::from_json(&load_text(graph, "graph")?)?;
            let verdict = kernel_free_subgroup_criterion(&g)?;
            let balls = match &verdict {
                KernelVerdict::ContainsF2 { witness } => Some(witness.ball_sizes(radius)?),
                KernelVerdict::NoFreeSubgroup { .. } => None,
            };
            Ok((
                json!({ "vertices": g.vertices(), "edges": g.edges().len() }),
                json!({ "verdict": verdict.to_string(), "detail": verdict, "witness_ball_sizes": balls }),
            ))
        }
        Command::Stabilize { sequence } => {
            let seq: GraphSequence = load_json(sequence, "sequence")?;
            let s = detect_stabilization(&seq.graphs, &seq.classes)?;
            Ok((
                json!({ "graphs": seq.graphs.len(), "classes": seq.classes.len() }),
                json!({ "index": s.index(), "stabilization": s }),
            ))
        }
        Command::Fibre { spec } => {
            let spec = FibreProductSpec::from_json(&load_text(spec, "spec")?)?;
            let budget = common.budget.unwrap_or(DEFAULT_FIBRE_BUDGET);
            let ctx = FibreContext::new(&spec, budget)?;
            let lattice = verify_lattice_bijection(&ctx)?;
            let biindex = biindex_vs_conjclasses(&ctx)?;
            Ok((
                json!({
                    "g1": spec.g1.name(),
                    "g2": spec.g2.name(),
                    "q": spec.q.name(),
                    "budget": budget,
                }),
                json!({
                    "fibre_product_order": ctx.fibre_product().count_ones(..),
                    "passed": lattice.passed && biindex.passed,
                    "lattice": lattice,
                    "biindex": biindex,
                }),
            ))
        }
    }
}

fn write_presentation(path: &Option<std::path::PathBuf>, p: &GroupPresentation) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, p.to_json() + "\n")
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
