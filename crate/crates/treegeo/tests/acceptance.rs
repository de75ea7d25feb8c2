//! Acceptance gate: one PASS/FAIL line per check, grouped by criterion.
//!
//! Runs without the libtest harness so the lines always reach the log. A check
//! listed in `DEVIATIONS` still prints its honest result but does not fail the run.

use std::time::Instant;

use rand::Rng;
use treegeo::audit::{self, five_leaf_tree};
use treegeo::sample;
use treegeo_core::config::path_sup_distance;
use treegeo_core::oracle::{corner_graph_distance, discretize, Oracle, OracleOptions};
use treegeo_core::star::{self, Descriptor, Refinement, Subtype};
use treegeo_core::unordered::{self, t0_diagram_a, t0_diagram_b, TimedDiagram};
use treegeo_core::{BiPath, Metric, OrderedConfig, Point, Tree, UnorderedConfig};

/// Checks whose expected reference value does not reproduce; see the README.
const DEVIATIONS: &[&str] = &["C1.type2_l2_reference"];

struct Gate {
    pass: usize,
    fail: Vec<String>,
    deviations: usize,
}

impl Gate {
    fn check(&mut self, id: &str, ok: bool, detail: impl AsRef<str>) {
        let known = DEVIATIONS.contains(&id);
        let status = match (ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (recorded deviation)",
            (false, false) => "FAIL",
        };
        println!("{status:<5} {id:<34} {}", detail.as_ref());
        if ok {
            self.pass += 1;
        } else if known {
            self.deviations += 1;
        } else {
            self.fail.push(id.to_string());
        }
    }
}

fn star_tree(k: usize, len: f64) -> Tree {
    Tree::star(&vec![len; k]).expect("valid star")
}

fn cfg(t: &Tree, p: (usize, f64), q: (usize, f64)) -> OrderedConfig {
    let s = t.as_star().expect("star");
    OrderedConfig::new(s.at(p.0, p.1), s.at(q.0, q.1))
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn criterion_1(g: &mut Gate) {
    let t = star_tree(4, 10.0);
    let s = t.as_star().unwrap();
    let (eps, a, b) = (2.0, cfg(&t, (1, 1.0), (2, 2.0)), cfg(&t, (3, 2.0), (4, 5.0)));
    let start = Instant::now();
    let p1 = star::plan(&s, eps, &a, &b, Metric::L1).unwrap();
    let p2 = star::plan(&s, eps, &a, &b, Metric::L2).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let cand = |d: Descriptor| p1.all_candidates.iter().find(|c| c.descriptor == d).unwrap().clone();
    let (t1, t2) = (cand(Descriptor::Type(1)), cand(Descriptor::Type(2)));
    let s8 = 8f64.sqrt();
    let reference = 5f64.sqrt() + s8 + 13f64.sqrt();
    let corrected = 5f64.sqrt() + 41f64.sqrt();
    g.check("C1.type1_l1", close(t1.length_l1, 10.0, 1e-12), format!("{:.15} vs 10", t1.length_l1));
    g.check("C1.type2_l1", close(t2.length_l1, 12.0, 1e-12), format!("{:.15} vs 12", t2.length_l1));
    g.check(
        "C1.type1_l2",
        close(t1.length_l2, 1.0 + s8 + 5.0, 1e-12),
        format!("{:.15} vs 1+sqrt8+5 = {:.15}", t1.length_l2, 1.0 + s8 + 5.0),
    );
    g.check(
        "C1.type2_l2_reference",
        close(t2.length_l2, reference, 1e-12),
        format!("{:.15} vs reference sqrt5+sqrt8+sqrt13 = {reference:.15}", t2.length_l2),
    );
    g.check(
        "C1.type2_l2_corrected",
        close(t2.length_l2, corrected, 1e-12),
        format!("{:.15} vs sqrt5+sqrt41 = {corrected:.15}", t2.length_l2),
    );
    // The reference value is the length of a feasible but slack type-2 path.
    let slack = BiPath::through(
        &t,
        eps,
        true,
        &[a, cfg(&t, (1, 2.0), (1, 0.0)), cfg(&t, (1, 0.0), (4, 2.0)), b],
        Metric::L2,
    );
    let slack_len = slack.length(&t, Metric::L2);
    g.check(
        "C1.reference_is_slack_type2",
        slack.is_feasible(&t) && close(slack_len, reference, 1e-12) && slack_len > corrected,
        format!("path via (-2,0),(0,2): feasible, length {slack_len:.15}"),
    );
    let exact = corner_graph_distance(&s, eps, &a, &b, Metric::L2).unwrap();
    g.check("C1.corner_graph_l2", close(exact, corrected, 1e-12), format!("exact corner graph {exact:.15}"));
    let grid = discretize(&t, 0.125).unwrap();
    let mut opts = OracleOptions::new(Metric::L2, true, eps);
    opts.track_crossing = Some(s.center());
    let o = Oracle::new(&t, &grid, opts).shortest(&a, &b, Some(2)).unwrap();
    g.check("C1.oracle_type2_l2", close(o.length, corrected, 0.5), format!("grid h=0.125 type 2: {:.6}", o.length));
    let chosen_l1 = p1.chosen.descriptor == Descriptor::Type(1) && close(p1.chosen.length_l2, 1.0 + s8 + 5.0, 1e-12);
    g.check(
        "C1.l1_chooses_taut_type1",
        chosen_l1 && p1.class.label(Metric::L1) == "X4_n_l1",
        format!("{} via {:?}, l2 length {:.12}", p1.class.label(Metric::L1), p1.chosen.descriptor, p1.chosen.length_l2),
    );
    g.check(
        "C1.l2_chooses_type2",
        p2.chosen.descriptor == Descriptor::Type(2),
        format!("{} via {:?}", p2.class.label(Metric::L2), p2.chosen.descriptor),
    );
    g.check("C1.runtime", elapsed < 1e-3, format!("{:.3} ms for both plans", elapsed * 1e3));
}

fn criterion_2(g: &mut Gate) {
    let start = Instant::now();
    let t = star_tree(4, 10.0);
    let s = t.as_star().unwrap();
    let (eps, a, b) = (2.0, cfg(&t, (1, 1.0), (2, 2.0)), cfg(&t, (2, 5.0), (1, 2.0)));
    let class = star::classify(&s, eps, &a, &b).unwrap();
    g.check("C2.class", class.subtype == Subtype::X2MinusOpp, class.subtype.name());
    let grid = discretize(&t, 0.125).unwrap();
    let mut best = [Descriptor::Direct; 2];
    for (mi, m) in [Metric::L1, Metric::L2].into_iter().enumerate() {
        let p = star::plan(&s, eps, &a, &b, m).unwrap();
        best[mi] = p.chosen.descriptor;
        let mut opts = OracleOptions::new(m, true, eps);
        opts.track_crossing = Some(s.center());
        let o = Oracle::new(&t, &grid, opts);
        let src = o.snap(&a).unwrap().0;
        let dst = o.snap(&b).unwrap().0;
        let search = o.search(src.0, src.1, None).unwrap();
        let mut cont = [f64::INFINITY; 2];
        let mut disc = [f64::INFINITY; 2];
        for ty in 1..=2u8 {
            cont[ty as usize - 1] = p
                .all_candidates
                .iter()
                .filter(|c| c.crossing == Some(ty))
                .map(|c| c.length(m))
                .fold(f64::INFINITY, f64::min);
            disc[ty as usize - 1] = search.distance(dst.0, dst.1, Some(ty as usize));
        }
        let within = (0..2).all(|i| close(cont[i], disc[i], 0.5));
        g.check(
            &format!("C2.oracle_{}", m.name()),
            within,
            format!("type1 {:.6}/{:.6}  type2 {:.6}/{:.6} (planner/oracle)", cont[0], disc[0], cont[1], disc[1]),
        );
        g.check(
            &format!("C2.ordering_{}", m.name()),
            (cont[0] < cont[1]) == (disc[0] < disc[1]),
            format!("planner prefers type {}, oracle prefers type {}", 1 + (cont[1] < cont[0]) as u8, 1 + (disc[1] < disc[0]) as u8),
        );
    }
    let ty = |d: Descriptor| match d {
        Descriptor::Switch { passing, .. } => 3 - passing,
        _ => 0,
    };
    g.check(
        "C2.l1_l2_types_differ",
        ty(best[0]) != ty(best[1]),
        format!("l1 {:?}, l2 {:?}", best[0], best[1]),
    );
    let secs = start.elapsed().as_secs_f64();
    g.check("C2.runtime", secs < 10.0, format!("{secs:.2} s"));
}

fn criterion_3(g: &mut Gate) {
    let start = Instant::now();
    let h = 1.0 / 16.0;
    let mut rng = sample::rng(3);
    for k in 3..=5 {
        let t = star_tree(k, 10.0);
        let s = t.as_star().unwrap();
        let grid = discretize(&t, h).unwrap();
        for m in [Metric::L1, Metric::L2] {
            let o = Oracle::new(&t, &grid, OracleOptions::new(m, true, 1.0));
            let (mut worst, mut count, mut bad) = (0.0f64, 0, 0);
            for _ in 0..10 {
                let a = sample::grid_config(&mut rng, &t, &grid, 1.0);
                let (src, _) = o.snap(&a).unwrap();
                let search = o.search(src.0, src.1, None).unwrap();
                for _ in 0..20 {
                    let b = sample::grid_config(&mut rng, &t, &grid, 1.0);
                    let (dst, _) = o.snap(&b).unwrap();
                    let planned = star::plan(&s, 1.0, &a, &b, m).unwrap().chosen.length(m);
                    let gap = (planned - search.distance(dst.0, dst.1, None)).abs();
                    worst = worst.max(gap);
                    bad += (gap > 4.0 * h) as usize;
                    count += 1;
                }
            }
            g.check(
                &format!("C3.k{k}_{}", m.name()),
                bad == 0 && count == 200,
                format!("{count} instances, worst |planner - oracle| = {worst:.4} (bound {})", 4.0 * h),
            );
        }
    }
    let secs = start.elapsed().as_secs_f64();
    g.check("C3.runtime", secs < 120.0, format!("{secs:.1} s"));
}

fn criterion_4(g: &mut Gate) {
    let start = Instant::now();
    let mut rng = sample::rng(4);
    let (mut worst, mut count, mut bad, mut max_leaves) = (0.0f64, 0, 0, 0);
    for _ in 0..10 {
        let internal = rng.gen_range(1..=5);
        let t = sample::random_tree(&mut rng, internal, 1.0, 5.0);
        max_leaves = max_leaves.max(t.leaves().len());
        let h = t.min_edge_len() / 16.0;
        let grid = discretize(&t, h).unwrap();
        let o = Oracle::new(&t, &grid, OracleOptions::new(Metric::L1, false, 0.0));
        for _ in 0..20 {
            let pair = |rng: &mut rand_chacha::ChaCha8Rng| loop {
                if let Ok(c) = UnorderedConfig::new(sample::grid_point(rng, &grid), sample::grid_point(rng, &grid)) {
                    break c;
                }
            };
            let (a, b) = (pair(&mut rng), pair(&mut rng));
            let planned = unordered::plan(&t, &a, &b).unwrap();
            let r = o.shortest(&a.as_ordered(), &b.as_ordered(), None).unwrap();
            let gap = (planned.length - r.length).abs();
            worst = worst.max(gap / h);
            bad += (gap > 4.0 * h || !planned.path.is_feasible(&t)) as usize;
            count += 1;
        }
    }
    g.check(
        "C4.unordered_oracle",
        bad == 0 && count == 200 && max_leaves <= 12,
        format!("{count} instances on 10 trees (<= {max_leaves} leaves), worst gap = {worst:.3} h (bound 4 h)"),
    );
    let secs = start.elapsed().as_secs_f64();
    g.check("C4.runtime", secs < 120.0, format!("{secs:.1} s"));
}

fn criterion_5(g: &mut Gate) {
    let n = 10_000;
    for (k, want) in [(3, 2), (4, 3), (5, 3)] {
        let t = star_tree(k, 10.0);
        for m in [Metric::L1, Metric::L2] {
            let r = audit::partition_ordered(&t.as_star().unwrap(), 1.0, m, n, 50 + k as u64);
            g.check(
                &format!("C5.ordered_k{k}_{}", m.name()),
                r.rule_ids() == want && r.exhaustive,
                format!("{} rule ids (want {want}), counts {:?}, failures {}", r.rule_ids(), r.rule_counts, r.failures),
            );
        }
    }
    let mut rng = sample::rng(5);
    let mut general = vec![five_leaf_tree(), star_tree(4, 3.0)];
    general.push(sample::random_tree(&mut rng, 4, 1.0, 5.0));
    let cases = [
        ("C5.unordered_y", star_tree(3, 4.0), 2),
        ("C5.unordered_interval", Tree::path(&[2.0, 3.0, 1.5]).unwrap(), 1),
    ];
    for (id, t, want) in cases {
        let r = audit::partition_unordered(&t, n, 55);
        g.check(id, r.rule_ids() == want && r.exhaustive, format!("{} rule ids (want {want}), counts {:?}", r.rule_ids(), r.rule_counts));
    }
    for (i, t) in general.iter().enumerate() {
        let r = audit::partition_unordered(t, n, 56 + i as u64);
        g.check(
            &format!("C5.unordered_general_{i}"),
            r.rule_ids() == 3 && r.exhaustive,
            format!("{} leaves: {} rule ids (want 3), counts {:?}", t.leaves().len(), r.rule_ids(), r.rule_counts),
        );
    }
}

fn criterion_6(g: &mut Gate) {
    let m = Metric::L2;
    let type_lengths = |p: &star::PlanResult| {
        let best = |ty: u8| {
            p.all_candidates.iter().filter(|c| c.crossing == Some(ty)).map(|c| c.length(m)).fold(f64::INFINITY, f64::min)
        };
        (best(1), best(2))
    };
    for (name, k, a, b, moved_a) in [
        ("x4", 4, ((1, 3.0), (2, 3.0)), ((3, 4.0), (4, 4.0)), ((1, 3.1), (2, 3.0))),
        ("x2_k4", 4, ((1, 3.0), (2, 3.0)), ((2, 4.0), (1, 4.0)), ((1, 3.1), (2, 3.0))),
        ("x2_k3", 3, ((1, 3.0), (2, 3.0)), ((2, 4.0), (1, 4.0)), ((1, 3.1), (2, 3.0))),
    ] {
        let t = star_tree(k, 10.0);
        let s = t.as_star().unwrap();
        let (a0, b0) = (cfg(&t, a.0, a.1), cfg(&t, b.0, b.1));
        let p = star::plan(&s, 1.0, &a0, &b0, m).unwrap();
        let (l1, l2) = type_lengths(&p);
        g.check(
            &format!("C6.{name}_symmetric_flagged"),
            p.in_cut_locus && p.class.refinement == Some(Refinement::Eq) && close(l1, l2, 1e-12),
            format!("{} in_cut_locus={} |len1-len2|={:.1e}", p.class.label(m), p.in_cut_locus, (l1 - l2).abs()),
        );
        let a1 = cfg(&t, moved_a.0, moved_a.1);
        let q = star::plan(&s, 1.0, &a1, &b0, m).unwrap();
        // With more than three arms every X2 minus pair is in the cut locus, so
        // the perturbation can only break the tie there.
        let expect_flag = name == "x2_k4";
        g.check(
            &format!("C6.{name}_perturbed"),
            q.in_cut_locus == expect_flag && q.class.refinement == Some(Refinement::N),
            format!("depth +0.1: {} in_cut_locus={} (expected {expect_flag})", q.class.label(m), q.in_cut_locus),
        );
    }
}

fn criterion_7(g: &mut Gate) {
    let eps = 1.0;
    let deltas = [eps / 10.0, eps / 100.0, eps / 1000.0];
    let scenarios = audit::boundary_scenarios();
    let report = audit::continuity(&scenarios, &deltas, 5.0).unwrap();
    for sc in &scenarios {
        let rows: Vec<_> = report.rows.iter().filter(|r| r.scenario == sc.name).collect();
        let ok = rows.iter().all(|r| r.same_rule && r.sup_distance <= 5.0 * r.delta)
            && rows.windows(2).all(|w| w[1].sup_distance <= w[0].sup_distance);
        let sups: Vec<String> = rows.iter().map(|r| format!("{:.2e}", r.sup_distance)).collect();
        g.check(
            &format!("C7.{}", sc.name),
            ok,
            format!("{} -> {}: sup = [{}]", rows[0].rule_set, rows[0].limit_rule_set, sups.join(", ")),
        );
    }
    g.check("C7.all", report.pass, format!("max sup/delta = {:.3}", report.max_ratio));
}

fn crossing_times(t: &Tree, path: &BiPath, center: Point) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for b in &path.breakpoints {
        if b.c.p1 == center || b.c.p2 == center {
            out.push(b.t);
        }
    }
    let _ = t;
    out
}

fn criterion_8(g: &mut Gate) {
    let a = t0_diagram_a(1.0, 1.0, 2.0, 3.0);
    g.check("C8.formula_a", a == 0.5 && 1.0 / 3.0 < a, format!("t0 = {a}, point 1 crosses at 1/3 (before point 2)"));
    let b = t0_diagram_b(1.0, 1.0, 2.0, 3.0);
    g.check("C8.formula_b", b < 1.0 / 3.0, format!("t0 = {b}, point 1 crosses at 1/3 (after point 2)"));

    let y = star_tree(3, 10.0);
    let s = y.as_star().unwrap();
    let center = Point::Vertex(s.center());
    let un = |p: [(usize, f64); 2]| UnorderedConfig::new(s.at(p[0].0, p[0].1), s.at(p[1].0, p[1].1)).unwrap();
    for (id, a, b, kind) in [
        ("C8.geometry_a", [(2, 1.0), (1, 1.0)], [(3, 3.0), (3, 2.0)], TimedDiagram::A),
        ("C8.geometry_b", [(3, 5.0), (3, 3.0)], [(1, 2.0), (2, 4.0)], TimedDiagram::B),
    ] {
        let (a, b) = (un(a), un(b));
        let (found, d) = unordered::timed_diagram(&y, &a, &b).unwrap().unwrap();
        let plan = unordered::plan(&y, &a, &b).unwrap();
        let t0 = plan.motion.t0.unwrap();
        let formula = if kind == TimedDiagram::A { t0_diagram_a(d[0], d[1], d[2], d[3]) } else { t0_diagram_b(d[0], d[1], d[2], d[3]) };
        let p1_time = d[0] / (d[0] + d[2]);
        let times = crossing_times(&y, &plan.path, center);
        let at_center = |t: f64| times.iter().any(|&x| close(x, t, 1e-12));
        let order = if kind == TimedDiagram::A { t0 >= p1_time } else { t0 <= p1_time };
        g.check(
            id,
            found == kind && close(t0, formula, 1e-12) && at_center(t0) && at_center(p1_time) && order,
            format!("{found:?} d={d:?}: t0 = {t0:.12}, point 1 at the vertex at {p1_time:.12}"),
        );
    }
    for (id, a, b) in [
        ("C8.degenerate_d4_0", [(2, 1.0), (1, 1.0)], [(3, 3.0), (3, 0.0)]),
        ("C8.degenerate_d2_0", [(3, 5.0), (3, 0.0)], [(1, 2.0), (2, 4.0)]),
    ] {
        let (a, b) = (un(a), un(b));
        let plan = unordered::plan(&y, &a, &b).unwrap();
        let d = unordered::timed_diagram(&y, &a, &b).unwrap();
        let uniform = BiPath::from_timed(&y, 0.0, false, &[(0.0, plan.path.start()), (1.0, plan.path.end())]);
        let sup = path_sup_distance(&y, &plan.path, &uniform);
        g.check(id, sup <= 1e-12, format!("{:?}: sup distance to uniform motion {sup:.1e}", d.map(|x| x.1)));
    }
}

fn criterion_9(g: &mut Gate) {
    let n = 1000;
    let mut rng = sample::rng(9);
    let trees: Vec<Tree> = (0..5).map(|i| sample::random_tree(&mut rng, 1 + i, 1.0, 5.0)).collect();

    let mut bad = 0;
    for i in 0..n {
        let t = &trees[i % trees.len()];
        let [p, q, r] = [0; 3].map(|_| sample::tree_point(&mut rng, t));
        let (pq, qp, pr, qr) = (t.distance(&p, &q), t.distance(&q, &p), t.distance(&p, &r), t.distance(&q, &r));
        let ok = pq == qp && (pq == 0.0) == (p == q) && t.distance(&p, &p) == 0.0 && pr <= pq + qr + 1e-12;
        bad += !ok as usize;
    }
    g.check("C9.metric_axioms", bad == 0, format!("{n} triples, {bad} violations"));

    let mut bad = 0;
    for i in 0..n {
        let t = &trees[i % trees.len()];
        let [p, q, r, s] = [0; 4].map(|_| sample::tree_point(&mut rng, t));
        let d = |x: &Point, y: &Point| t.distance(x, y);
        let mut sums = [d(&p, &q) + d(&r, &s), d(&p, &r) + d(&q, &s), d(&p, &s) + d(&q, &r)];
        sums.sort_by(f64::total_cmp);
        bad += !close(sums[1], sums[2], 1e-9) as usize;
    }
    g.check("C9.four_point", bad == 0, format!("{n} quadruples, {bad} violations"));

    let stars: Vec<Tree> = (3..=5).map(|k| star_tree(k, 10.0)).collect();
    let (mut bad, mut bad_eq) = (0, 0);
    for i in 0..n {
        let t = &stars[i % 3];
        let s = t.as_star().unwrap();
        let a = sample::star_config(&mut rng, &s, 1.0, 0.0);
        let b = sample::star_config(&mut rng, &s, 1.0, 0.0);
        for m in [Metric::L1, Metric::L2] {
            let p = star::plan(&s, 1.0, &a, &b, m).unwrap();
            let path = &p.chosen.path;
            let ends = path.start() == a && path.end() == b;
            bad += !(path.is_feasible(t) && path.validate(t).is_ok() && ends) as usize;
            let back = star::plan(&s, 1.0, &b, &a, m).unwrap();
            let swapped = star::plan(&s, 1.0, &a.swapped(), &b.swapped(), m).unwrap();
            let len = p.chosen.length(m);
            bad_eq += !(close(back.chosen.length(m), len, 1e-9 * len.max(1.0))
                && close(swapped.chosen.length(m), len, 1e-9 * len.max(1.0))
                && close(path.reversed().length(t, m), len, 1e-9 * len.max(1.0)))
                as usize;
        }
        let u = &trees[i % trees.len()];
        let (ua, ub) = (sample::unordered_config(&mut rng, u), sample::unordered_config(&mut rng, u));
        let up = unordered::plan(u, &ua, &ub).unwrap();
        bad += !(up.path.is_feasible(u) && up.path.validate(u).is_ok()) as usize;
        let rev = unordered::plan(u, &ub, &ua).unwrap();
        bad_eq += !close(rev.length, up.length, 1e-9 * up.length.max(1.0)) as usize;
    }
    g.check("C9.path_feasibility", bad == 0, format!("{n} ordered pairs in both metrics plus {n} unordered, {bad} violations"));
    g.check("C9.reversal_swap", bad_eq == 0, format!("{n} instances, {bad_eq} length mismatches"));

    let h = 1.0 / 8.0;
    let (mut count, mut bad, mut worst) = (0, 0, 0.0f64);
    'outer: for k in (3..=5).cycle() {
        let t = star_tree(k, 5.0);
        let s = t.as_star().unwrap();
        let grid = discretize(&t, h).unwrap();
        let o = Oracle::new(&t, &grid, OracleOptions::new(Metric::L1, true, 1.0));
        let a = sample::grid_config(&mut rng, &t, &grid, 1.0);
        let (src, _) = o.snap(&a).unwrap();
        let search = o.search(src.0, src.1, None).unwrap();
        for _ in 0..100 {
            let b = sample::grid_config(&mut rng, &t, &grid, 1.0);
            let class = star::classify(&s, 1.0, &a, &b).unwrap().subtype;
            if matches!(class, Subtype::X4 | Subtype::X2MinusOpp) {
                continue;
            }
            let p2 = star::plan(&s, 1.0, &a, &b, Metric::L2).unwrap();
            let p1 = star::plan(&s, 1.0, &a, &b, Metric::L1).unwrap();
            let (dst, _) = o.snap(&b).unwrap();
            let l1_of_l2 = p2.chosen.length_l1;
            let oracle = search.distance(dst.0, dst.1, None);
            worst = worst.max(l1_of_l2 - oracle);
            bad += !(l1_of_l2 <= oracle + 4.0 * h && close(l1_of_l2, p1.chosen.length_l1, 1e-9 * l1_of_l2.max(1.0))) as usize;
            count += 1;
            if count == n {
                break 'outer;
            }
        }
    }
    g.check(
        "C9.l2_path_is_l1_geodesic",
        bad == 0,
        format!("{count} pairs outside X4 and X2 opp, {bad} violations, worst excess over oracle {worst:.4} (bound {})", 4.0 * h),
    );
}

fn main() {
    let mut g = Gate { pass: 0, fail: Vec::new(), deviations: 0 };
    let criteria: [(&str, fn(&mut Gate)); 9] = [
        ("1 worked example, exact", criterion_1),
        ("2 X2 opp analogue", criterion_2),
        ("3 oracle agreement, ordered", criterion_3),
        ("4 oracle agreement, unordered", criterion_4),
        ("5 partition cardinality", criterion_5),
        ("6 cut-locus detection", criterion_6),
        ("7 continuity audits", criterion_7),
        ("8 t0 formulas", criterion_8),
        ("9 property suites", criterion_9),
    ];
    for (name, f) in criteria {
        println!("== criterion {name}");
        let start = Instant::now();
        f(&mut g);
        println!("   ({:.2} s)", start.elapsed().as_secs_f64());
    }
    println!(
        "acceptance: {} passed, {} failed, {} recorded deviation(s)",
        g.pass,
        g.fail.len(),
        g.deviations
    );
    if !g.fail.is_empty() {
        println!("failed: {}", g.fail.join(", "));
        std::process::exit(1);
    }
}
