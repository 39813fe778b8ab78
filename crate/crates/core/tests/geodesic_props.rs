use proptest::prelude::*;
use proptest::sample::subsequence;
use wreathkit::geodesic::{cover_walk_length, explore, explore_action, CoverWalkProblem, SchreierFragment};
use wreathkit::groups::{Domain, GroupAction, GroupDescriptor, GroupElement, Point, Window};

fn action(g: GroupDescriptor) -> GroupAction {
    GroupAction::new(g, Domain::Natural).unwrap()
}

// Z with targets in [-2, 2]: any cover walk is at most 10 long
fn z_fragment() -> SchreierFragment {
    explore_action(&action(GroupDescriptor::Int), 14, Window::Unbounded).unwrap()
}

fn sym4_fragment() -> SchreierFragment {
    let f = explore_action(&action(GroupDescriptor::Sym { n: 4 }), 12, Window::Unbounded).unwrap();
    assert!(f.is_complete());
    f
}

fn k(frag: &SchreierFragment, targets: &[Point], c: &GroupElement) -> usize {
    cover_walk_length(&CoverWalkProblem::new(targets.to_vec(), c.clone()), frag).unwrap()
}

fn z_points() -> Vec<Point> {
    (-2..=2).map(Point::Int).collect()
}

fn sym4_points() -> Vec<Point> {
    (0..4).map(Point::Finite).collect()
}

fn elements(frag: &SchreierFragment) -> Vec<GroupElement> {
    let mut v: Vec<GroupElement> = frag.walk().map(|(g, _)| g.clone()).collect();
    v.sort();
    v
}

fn check_monotone_and_bounds(frag: &SchreierFragment, small: &[Point], extra: &[Point], c: &GroupElement) {
    let mut big = small.to_vec();
    big.extend_from_slice(extra);
    let ks = k(frag, small, c);
    let kb = k(frag, &big, c);
    assert!(ks <= kb, "K({small:?}) = {ks} > K({big:?}) = {kb}");
    assert!(kb >= frag.element_length(c).unwrap());
    for x in &big {
        assert!(kb >= frag.point_depth(x).unwrap());
    }
}

proptest! {
    #[test]
    fn z_monotone_and_bounded(
        small in subsequence(z_points(), 0..=3),
        extra in subsequence(z_points(), 0..=2),
        c in -2i64..=2,
    ) {
        check_monotone_and_bounds(&z_fragment(), &small, &extra, &GroupElement::Int(c));
    }

    #[test]
    fn sym4_monotone_and_bounded(
        small in subsequence(sym4_points(), 0..=3),
        extra in subsequence(sym4_points(), 0..=2),
        ci in 0usize..24,
    ) {
        let f = sym4_fragment();
        let c = elements(&f)[ci].clone();
        check_monotone_and_bounds(&f, &small, &extra, &c);
    }

    #[test]
    fn generator_order_is_irrelevant(
        order in Just((0..3usize).collect::<Vec<_>>()).prop_shuffle(),
        targets in subsequence(sym4_points(), 0..=4),
        ci in 0usize..24,
    ) {
        let a = action(GroupDescriptor::Sym { n: 4 });
        let f = sym4_fragment();
        let gens: Vec<_> = order.iter().map(|&i| a.generators[i].clone()).collect();
        let g = explore(&a.group.identity(), &gens, a.base_point(), 12, Window::Unbounded).unwrap();
        let c = elements(&f)[ci].clone();
        prop_assert_eq!(k(&f, &targets, &c), k(&g, &targets, &c));
    }
}

#[test]
fn sym4_generators_are_three() {
    // the shuffle above permutes all of them
    assert_eq!(action(GroupDescriptor::Sym { n: 4 }).generators.len(), 3);
}
