use treegeo::io::{BiPathJson, PointJson, QueryJson, StarPlanJson, TreeJson};
use treegeo::sample;
use treegeo_core::star;
use treegeo_core::{Metric, OrderedConfig, Point, Tree};

#[test]
fn tree_round_trip() {
    let mut rng = sample::rng(1);
    for internal in 1..=5 {
        let t = sample::random_tree(&mut rng, internal, 1.0, 5.0);
        let text = serde_json::to_string(&TreeJson::from_tree(&t)).unwrap();
        let back: TreeJson = serde_json::from_str(&text).unwrap();
        let u = back.build().unwrap();
        assert_eq!(TreeJson::from_tree(&u), TreeJson::from_tree(&t));
    }
}

#[test]
fn points_are_validated_and_canonical() {
    let t = Tree::star(&[2.0, 3.0, 4.0]).unwrap();
    let p: PointJson = serde_json::from_str(r#"{"edge": 1, "offset": 1.5}"#).unwrap();
    assert_eq!(p.to_point(&t).unwrap(), t.point_on_edge(1, 1.5));
    let end: PointJson = serde_json::from_str(r#"{"edge": 1, "offset": 0.0}"#).unwrap();
    assert_eq!(end.to_point(&t).unwrap(), Point::Vertex(0));
    let v: PointJson = serde_json::from_str(r#"{"vertex": 2}"#).unwrap();
    assert_eq!(v.to_point(&t).unwrap(), Point::Vertex(2));
    for bad in [r#"{"edge": 1, "offset": 3.5}"#, r#"{"edge": 7, "offset": 1.0}"#, r#"{"vertex": 9}"#] {
        let p: PointJson = serde_json::from_str(bad).unwrap();
        assert!(p.to_point(&t).is_err(), "{bad}");
    }
}

#[test]
fn plan_and_path_round_trip() {
    let t = Tree::star(&[10.0; 4]).unwrap();
    let s = t.as_star().unwrap();
    let (a, b) = (OrderedConfig::new(s.at(1, 1.0), s.at(2, 2.0)), OrderedConfig::new(s.at(3, 2.0), s.at(4, 5.0)));
    let q: QueryJson = serde_json::from_str(&serde_json::to_string(&QueryJson::new(&a, &b)).unwrap()).unwrap();
    assert_eq!(q.resolve(&t).unwrap(), (a, b));
    let plan = star::plan(&s, 2.0, &a, &b, Metric::L1).unwrap();
    let text = serde_json::to_string(&StarPlanJson::new(&plan)).unwrap();
    let back: StarPlanJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.class.class, "X4_n_l1");
    assert_eq!(back.length, 10.0);
    assert_eq!(back.chosen.path.to_path(&t).unwrap(), plan.chosen.path);
    let json = BiPathJson::from_path(&plan.chosen.path);
    assert_eq!(json.to_path(&t).unwrap(), plan.chosen.path);
}
