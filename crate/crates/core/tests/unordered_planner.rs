mod common;

use proptest::prelude::*;
use rand::Rng;
use treegeo_core::config::path_sup_distance;
use treegeo_core::unordered::{
    self, assign_eset, hull_classify, matching_cost, plan_interval, plan_unordered, plan_y, t0_diagram_a, t0_diagram_b,
    ESet, HullType,
};
use treegeo_core::{BiPath, Edge, Error, Metric, Point, Tree, UnorderedConfig};

fn un(p: Point, q: Point) -> UnorderedConfig {
    UnorderedConfig::new(p, q).unwrap()
}

fn five_leaf_tree() -> Tree {
    let e = |id, u, v, len| Edge { id, u, v, len };
    let edges = vec![e(0, 0, 1, 3.0), e(1, 0, 2, 4.0), e(2, 0, 3, 2.5), e(3, 1, 4, 3.5), e(4, 1, 5, 2.0), e(5, 1, 6, 4.5)];
    Tree::new(7, edges, vec![2, 3, 4, 5, 6]).unwrap()
}

/// Degree-4 vertex 0 with leaves 1-3 below edge 0, leaf 4, a vertex joining 5 and 6, and one joining 7 and 8.
fn eight_leaf_tree() -> Tree {
    let e = |id, u, v| Edge { id, u, v, len: 2.0 };
    let edges = vec![
        e(0, 0, 1),
        e(1, 1, 4),
        e(2, 1, 5),
        e(3, 1, 6),
        e(4, 0, 7),
        e(5, 0, 2),
        e(6, 2, 8),
        e(7, 2, 9),
        e(8, 0, 3),
        e(9, 3, 10),
        e(10, 3, 11),
    ];
    Tree::new(12, edges, vec![4, 5, 6, 7, 8, 9, 10, 11]).unwrap()
}

#[test]
fn hull_examples() {
    let t = five_leaf_tree();
    let on = |e, o| t.point_on_edge(e, o);
    let d = hull_classify(&t, &un(on(3, 0.5), on(3, 1.0)), &un(on(3, 2.0), on(3, 3.0))).unwrap();
    assert_eq!(d.kind, HullType::I3);
    assert_eq!(assign_eset(&d), ESet::E3);

    let y = common::star(3, 10.0);
    let s = y.as_star().unwrap();
    let d = hull_classify(&y, &un(s.at(1, 1.0), Point::Vertex(0)), &un(s.at(2, 1.0), s.at(3, 1.0))).unwrap();
    assert_eq!(d.kind, HullType::Y1);

    let x = common::star(4, 3.0);
    let s = x.as_star().unwrap();
    let d = hull_classify(&x, &un(s.at(1, 1.0), s.at(3, 1.0)), &un(s.at(2, 1.0), s.at(4, 1.0))).unwrap();
    assert_eq!(d.kind, HullType::X);
    assert_eq!(assign_eset(&d), ESet::E3);
}

#[test]
fn h_diagram_arm_numbers() {
    let t = eight_leaf_tree();
    let mid = |e: usize| t.point_on_edge(e, 1.0);
    let d = hull_classify(&t, &un(mid(6), mid(8)), &un(mid(7), mid(0))).unwrap();
    assert_eq!(d.kind, HullType::H);
    let arm_of = |p: Point| {
        let i = d.dots.iter().position(|x| x.pos == p).unwrap();
        d.arms[i].unwrap()
    };
    // Leaves 5 and 6 at one branch vertex; the 7/8 arm and the arm toward 1, 2, 3 at the other.
    assert_eq!([arm_of(mid(6)), arm_of(mid(7)), arm_of(mid(8)), arm_of(mid(0))], [5, 6, 7, 1]);
}

#[test]
fn eset_examples() {
    let t = five_leaf_tree();
    let on = |e, o| t.point_on_edge(e, o);
    // Path from leaf 1 (vertex 2) to leaf 3 (vertex 4) through vertices 0 and 1: whites toward
    // leaf 1, the smaller arm number, and a black at the other end.
    let (blacks, whites) = (un(on(0, 2.0), on(3, 2.0)), un(on(1, 1.0), on(1, 3.0)));
    let d = hull_classify(&t, &blacks, &whites).unwrap();
    assert_eq!(d.kind, HullType::I1);
    assert_eq!(assign_eset(&d), ESet::E1);
    let d = hull_classify(&t, &whites, &blacks).unwrap();
    assert_eq!(d.kind, HullType::I2);
    assert_eq!(assign_eset(&d), ESet::E2);
    // Doubled arm holding one dot of each color.
    let y2 = hull_classify(&t, &un(on(2, 1.0), on(1, 3.0)), &un(on(2, 2.0), on(0, 1.0))).unwrap();
    assert_eq!(y2.kind, HullType::Y2);
    assert_eq!(assign_eset(&y2), ESet::E3);
}

#[test]
fn interval_examples() {
    let t = Tree::path(&[10.0]).unwrap();
    let on = |o| t.point_on_edge(0, o);
    let p = plan_interval(&t, &un(on(1.0), on(3.0)), &un(on(2.0), on(6.0))).unwrap();
    assert!((p.length - 4.0).abs() < 1e-12);
    assert_eq!(p.rule_id, 0);
    let c = un(on(1.0), on(3.0));
    let same = plan_interval(&t, &c, &c).unwrap();
    assert_eq!(same.length, 0.0);
    assert!(path_sup_distance(&t, &same.path, &BiPath::constant(c.as_ordered(), 0.0, false)) < 1e-12);
}

#[test]
fn order_preserving_matching_is_never_longer() {
    let mut rng = common::rng(31);
    let t = Tree::path(&[3.0, 4.0, 3.0]).unwrap();
    for _ in 0..100 {
        let mut p = || t.point_on_edge(rng.gen_range(0..3), rng.gen_range(0.0..3.0));
        let (a, b) = (un(p(), p()), un(p(), p()));
        let p = plan_interval(&t, &a, &b).unwrap();
        let [a1, a2] = a.points();
        let [b1, b2] = b.points();
        let straight = t.distance(&a1, &b1) + t.distance(&a2, &b2);
        let crossed = t.distance(&a1, &b2) + t.distance(&a2, &b1);
        assert!(p.length <= straight.min(crossed) + 1e-9);
        assert!((p.length - matching_cost(&t, &a, &b)).abs() < 1e-9);
    }
}

#[test]
fn dedicated_planners_reject_other_shapes() {
    let path = Tree::path(&[1.0, 1.0]).unwrap();
    let y = common::star(3, 2.0);
    let gen = five_leaf_tree();
    let c = |t: &Tree| un(t.point_on_edge(0, 0.5), t.point_on_edge(1, 0.5));
    assert!(matches!(plan_unordered(&path, &c(&path), &c(&path)), Err(Error::Shape(_))));
    assert!(matches!(plan_unordered(&y, &c(&y), &c(&y)), Err(Error::Shape(_))));
    assert!(matches!(plan_interval(&gen, &c(&gen), &c(&gen)), Err(Error::Shape(_))));
    assert!(matches!(plan_y(&gen, &c(&gen), &c(&gen)), Err(Error::Shape(_))));
}

#[test]
fn t0_formulas() {
    assert_eq!(t0_diagram_a(1.0, 1.0, 2.0, 3.0), 0.5);
    assert_eq!(t0_diagram_b(1.0, 1.0, 2.0, 3.0), 0.2);
    // Point 2 starting or ending on the vertex.
    assert_eq!(t0_diagram_a(1.0, 0.0, 3.0, 2.0), 0.4);
    assert_eq!(t0_diagram_b(5.0, 3.0, 2.0, 0.0), 5.0 / 9.0);
}

#[test]
fn diagram_a_inner_limit_is_the_i_motion() {
    let y = common::star(3, 10.0);
    let s = y.as_star().unwrap();
    let b = un(s.at(3, 5.0), s.at(3, 3.0));
    let limit = unordered::plan(&y, &un(Point::Vertex(0), s.at(1, 2.0)), &b).unwrap();
    assert_eq!(limit.eset, ESet::E2Prime);
    let mut prev = f64::INFINITY;
    for delta in [0.1, 0.01, 0.001] {
        let p = unordered::plan(&y, &un(s.at(2, delta), s.at(1, 2.0)), &b).unwrap();
        assert_eq!(p.eset, ESet::E2Prime);
        let sup = path_sup_distance(&y, &p.path, &limit.path);
        assert!(sup <= 5.0 * delta && sup <= prev);
        prev = sup;
    }
}

proptest! {
    #![proptest_config(common::config(0x0b0e))]

    #[test]
    fn general_plans_are_feasible_geodesics(seed in any::<u64>(), internal in 2usize..5) {
        let mut rng = common::rng(seed);
        let t = common::random_tree(&mut rng, internal);
        let mut pair = || loop {
            if let Ok(c) = UnorderedConfig::new(common::point(&mut rng, &t), common::point(&mut rng, &t)) {
                break c;
            }
        };
        let (a, b) = (pair(), pair());
        let p = unordered::plan(&t, &a, &b).unwrap();
        prop_assert!(p.path.is_feasible(&t));
        prop_assert!(p.path.validate(&t).is_ok());
        prop_assert!((p.path.length(&t, Metric::L1) - p.length).abs() < 1e-9);
        prop_assert!(p.length >= matching_cost(&t, &a, &b) - 1e-9);
        prop_assert_eq!(p.rule_id, p.eset.rule_id());
        // Relabeling inside a or b changes nothing.
        let [a1, a2] = a.points();
        let [b1, b2] = b.points();
        let q = unordered::plan(&t, &un(a2, a1), &un(b2, b1)).unwrap();
        prop_assert!((q.length - p.length).abs() < 1e-12);
        prop_assert!(path_sup_distance(&t, &p.path, &q.path) < 1e-9);
        // Time reversal keeps the length.
        let r = unordered::plan(&t, &b, &a).unwrap();
        prop_assert!((r.length - p.length).abs() < 1e-9);
    }

    #[test]
    fn y_graph_plans_are_feasible(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let y = Tree::star(&[3.0, 4.0, 5.0]).unwrap();
        let mut pair = || loop {
            if let Ok(c) = UnorderedConfig::new(common::point(&mut rng, &y), common::point(&mut rng, &y)) {
                break c;
            }
        };
        let (a, b) = (pair(), pair());
        let p = plan_y(&y, &a, &b).unwrap();
        prop_assert!(p.path.is_feasible(&y));
        prop_assert!(matches!(p.eset, ESet::E1Prime | ESet::E2Prime));
        prop_assert!(p.length >= matching_cost(&y, &a, &b) - 1e-9);
    }
}
