//! Partition and continuity audits over sampled instances.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use treegeo_core::config::path_sup_distance;
use treegeo_core::unordered::{self, TreeShape};
use treegeo_core::{star, BiPath, Metric, OrderedConfig, Result, Star, Tree, UnorderedConfig};

use crate::sample;

/// Maps `f` over `0..n` on scoped worker threads; results come back in index order.
pub fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(n.max(1));
    if workers <= 1 {
        return (0..n).map(f).collect();
    }
    let f = &f;
    let mut parts: Vec<Vec<(usize, T)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| s.spawn(move || (w..n).step_by(workers).map(|i| (i, f(i))).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("audit worker panicked")).collect()
    });
    let mut out: Vec<(usize, T)> = parts.drain(..).flatten().collect();
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, t)| t).collect()
}

/// Per-instance generator, independent of how instances are split across workers.
pub fn instance_rng(seed: u64, i: usize) -> rand_chacha::ChaCha8Rng {
    let mut r = sample::rng(seed);
    r.set_stream(i as u64 + 1);
    r
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PartitionReport {
    pub instances: usize,
    /// Instances per rule id.
    pub rule_counts: BTreeMap<u8, usize>,
    /// Instances per class or E-set label, with the rule id it maps to.
    pub label_counts: BTreeMap<String, (u8, usize)>,
    /// Instances the planner rejected; an exhaustive partition has none.
    pub failures: usize,
    pub exhaustive: bool,
}

impl PartitionReport {
    fn from_labels(outcomes: Vec<Option<(String, u8)>>) -> Self {
        let mut r = PartitionReport { instances: outcomes.len(), ..Default::default() };
        for o in outcomes {
            match o {
                Some((label, id)) => {
                    *r.rule_counts.entry(id).or_default() += 1;
                    r.label_counts.entry(label).or_insert((id, 0)).1 += 1;
                }
                None => r.failures += 1,
            }
        }
        r.exhaustive = r.failures == 0 && r.rule_counts.values().sum::<usize>() == r.instances;
        r
    }

    pub fn rule_ids(&self) -> usize {
        self.rule_counts.len()
    }
}

/// Rule ids of `n` random ordered pairs on a star; depths uniform in `[eps, arm length]`.
pub fn partition_ordered(star: &Star<'_>, eps: f64, m: Metric, n: usize, seed: u64) -> PartitionReport {
    let outcomes = par_map(n, |i| {
        let mut rng = instance_rng(seed, i);
        let a = sample::star_config(&mut rng, star, eps, eps);
        let b = sample::star_config(&mut rng, star, eps, eps);
        star::plan(star, eps, &a, &b, m).ok().map(|r| (r.class.label(m), r.rule_id))
    });
    PartitionReport::from_labels(outcomes)
}

/// Rule ids of `n` random unordered pairs on `tree`.
pub fn partition_unordered(tree: &Tree, n: usize, seed: u64) -> PartitionReport {
    let outcomes = par_map(n, |i| {
        let mut rng = instance_rng(seed, i);
        let a = sample::unordered_config(&mut rng, tree);
        let b = sample::unordered_config(&mut rng, tree);
        unordered::plan(tree, &a, &b).ok().map(|p| (p.eset.name().to_string(), p.rule_id))
    });
    PartitionReport::from_labels(outcomes)
}

/// A start/target pair for either planner.
#[derive(Clone, Debug)]
pub enum Instance {
    Ordered { eps: f64, metric: Metric, a: OrderedConfig, b: OrderedConfig },
    Unordered { a: UnorderedConfig, b: UnorderedConfig },
}

impl Instance {
    /// Rule set label, rule id and planned path.
    pub fn plan(&self, tree: &Tree) -> Result<(String, u8, BiPath)> {
        match self {
            Instance::Ordered { eps, metric, a, b } => {
                let r = star::plan(&tree.as_star()?, *eps, a, b, *metric)?;
                Ok((r.class.label(*metric), r.rule_id, r.chosen.path))
            }
            Instance::Unordered { a, b } => {
                let p = unordered::plan(tree, a, b)?;
                Ok((p.eset.name().to_string(), p.rule_id, p.path))
            }
        }
    }

    /// Largest ℓ1 distance between corresponding endpoints.
    pub fn distance(&self, tree: &Tree, other: &Instance) -> f64 {
        let ends = |i: &Instance| match i {
            Instance::Ordered { a, b, .. } => (*a, *b),
            Instance::Unordered { a, b } => (a.as_ordered(), b.as_ordered()),
        };
        let ((a0, b0), (a1, b1)) = (ends(self), ends(other));
        let d = |x: &OrderedConfig, y: &OrderedConfig| {
            let direct = tree.distance(&x.p1, &y.p1) + tree.distance(&x.p2, &y.p2);
            match self {
                Instance::Ordered { .. } => direct,
                Instance::Unordered { .. } => {
                    direct.min(tree.distance(&x.p1, &y.p2) + tree.distance(&x.p2, &y.p1))
                }
            }
        };
        d(&a0, &a1).max(d(&b0, &b1))
    }
}

/// A one-parameter family converging, as `delta → 0`, to its limit `family(0)`.
pub struct Scenario {
    pub name: &'static str,
    pub tree: Tree,
    pub eps: f64,
    pub family: Box<dyn Fn(f64) -> Instance + Sync>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityRow {
    pub scenario: String,
    pub rule_set: String,
    pub limit_rule_set: String,
    pub same_rule: bool,
    pub delta: f64,
    pub config_distance: f64,
    pub sup_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub rows: Vec<ContinuityRow>,
    /// Largest sup distance divided by delta over all rows.
    pub max_ratio: f64,
    /// Sup distances shrink (weakly) with delta in every scenario.
    pub monotone: bool,
    /// Every row stays within `bound * delta` and in the limit's rule set.
    pub pass: bool,
}

/// Sup distance between each member of a family and its limit, at each `delta`
/// (given in decreasing order), against the bound `factor * delta`.
pub fn continuity(scenarios: &[Scenario], deltas: &[f64], factor: f64) -> Result<ContinuityReport> {
    let mut rows = Vec::new();
    let mut monotone = true;
    let mut pass = true;
    let mut max_ratio: f64 = 0.0;
    for sc in scenarios {
        let limit = (sc.family)(0.0);
        let (limit_label, limit_rule, limit_path) = limit.plan(&sc.tree)?;
        let mut prev = f64::INFINITY;
        for &delta in deltas {
            let inst = (sc.family)(delta);
            let (label, rule, path) = inst.plan(&sc.tree)?;
            let sup = path_sup_distance(&sc.tree, &path, &limit_path);
            let row = ContinuityRow {
                scenario: sc.name.to_string(),
                rule_set: label,
                limit_rule_set: limit_label.clone(),
                same_rule: rule == limit_rule,
                delta,
                config_distance: inst.distance(&sc.tree, &limit),
                sup_distance: sup,
            };
            monotone &= sup <= prev + 1e-12;
            pass &= row.same_rule && sup <= factor * delta;
            max_ratio = max_ratio.max(sup / delta);
            prev = sup;
            rows.push(row);
        }
    }
    let monotone = monotone && !rows.is_empty();
    Ok(ContinuityReport { rows, max_ratio, monotone, pass: pass && monotone })
}

/// Boundary limits where one rule set's paths must converge to the limit's own path:
/// an X2 tie instance degenerating to X1 minus on the 3-star, a Y-graph diagram A
/// whose nearest black dot reaches the center and its diagram B mirror, inner dots of doubled legs reaching
/// the branch vertex, lone dots of a mixed doubled leg reaching it, a white and
/// black pair meeting at it, and an H diagram collapsing to a mixed Y.
pub fn boundary_scenarios() -> Vec<Scenario> {
    let y = Tree::star(&[10.0; 3]).expect("valid star");
    let s4 = Tree::star(&[10.0; 4]).expect("valid star");
    fn at(t: &Tree, arm: usize, d: f64) -> treegeo_core::Point {
        t.as_star().expect("star").at(arm, d)
    }
    fn un(t: &Tree, p: [(usize, f64); 2], q: [(usize, f64); 2]) -> Instance {
        let pair = |c: [(usize, f64); 2]| {
            UnorderedConfig::new(at(t, c[0].0, c[0].1), at(t, c[1].0, c[1].1)).expect("distinct points")
        };
        Instance::Unordered { a: pair(p), b: pair(q) }
    }
    let mut out = Vec::new();
    for metric in [Metric::L1, Metric::L2] {
        let t = y.clone();
        out.push(Scenario {
            name: if metric == Metric::L1 { "x2_tie_to_x1_minus_l1" } else { "x2_tie_to_x1_minus_l2" },
            tree: y.clone(),
            eps: 1.0,
            family: Box::new(move |d| {
                let a = OrderedConfig::new(at(&t, 1, 4.0), at(&t, 3, d));
                let b = OrderedConfig::new(at(&t, 3, d), at(&t, 1, 4.0));
                Instance::Ordered { eps: 1.0, metric, a, b }
            }),
        });
    }
    let t = y.clone();
    out.push(Scenario {
        name: "diagram_a_d1_to_center",
        tree: y.clone(),
        eps: 1.0,
        family: Box::new(move |d| un(&t, [(2, d), (1, 2.0)], [(3, 5.0), (3, 3.0)])),
    });
    let t = y.clone();
    out.push(Scenario {
        name: "diagram_b_d3_to_center",
        tree: y.clone(),
        eps: 1.0,
        family: Box::new(move |d| un(&t, [(3, 5.0), (3, 3.0)], [(1, d), (2, 2.0)])),
    });
    let t = y.clone();
    out.push(Scenario {
        name: "y_graph_inner_white_to_center",
        tree: y.clone(),
        eps: 1.0,
        family: Box::new(move |d| un(&t, [(2, 1.0), (1, 2.0)], [(3, 5.0), (3, d)])),
    });
    let t = y.clone();
    out.push(Scenario {
        name: "y_graph_inner_black_to_center",
        tree: y,
        eps: 1.0,
        family: Box::new(move |d| un(&t, [(3, 5.0), (3, d)], [(2, 1.0), (1, 2.0)])),
    });
    for (name, a, b) in [
        ("star4_inner_white_to_center", [(1, 2.0), (2, 3.0)], [(3, 4.0), (3, 0.0)]),
        ("star4_inner_black_to_center", [(3, 4.0), (3, 0.0)], [(1, 2.0), (2, 3.0)]),
        ("star4_lone_white_to_center", [(1, 2.0), (3, 4.0)], [(2, 0.0), (3, 1.0)]),
        ("star4_lone_black_to_center", [(1, 0.0), (3, 1.0)], [(2, 3.0), (3, 4.0)]),
        ("star4_white_black_pair_to_center", [(1, 0.0), (3, 3.0)], [(2, 4.0), (2, 0.0)]),
    ] {
        let t = s4.clone();
        out.push(Scenario {
            name,
            tree: s4.clone(),
            eps: 1.0,
            family: Box::new(move |d| {
                let bump = |c: [(usize, f64); 2]| c.map(|(arm, depth)| (arm, if depth == 0.0 { d } else { depth }));
                un(&t, bump(a), bump(b))
            }),
        });
    }
    let h = five_leaf_tree();
    let t = h.clone();
    out.push(Scenario {
        name: "h_mixed_white_to_vertex",
        tree: h,
        eps: 1.0,
        family: Box::new(move |d| {
            let p = |e: usize, off: f64| t.point_on_edge(e, off);
            let a = UnorderedConfig::new(p(1, 2.0), p(3, 2.0)).expect("distinct points");
            let b = UnorderedConfig::new(p(2, d), p(4, 1.0)).expect("distinct points");
            Instance::Unordered { a, b }
        }),
    });
    out
}

/// Two branch vertices joined by an edge of length 3: leaves 1, 2 hang from
/// vertex 0 and leaves 3, 4, 5 from vertex 1.
pub fn five_leaf_tree() -> Tree {
    let lens = [3.0, 4.0, 2.5, 3.5, 2.0, 4.5];
    let ends = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)];
    let edges = ends
        .iter()
        .zip(lens)
        .enumerate()
        .map(|(id, (&(u, v), len))| treegeo_core::Edge { id, u, v, len })
        .collect();
    Tree::new(7, edges, vec![2, 3, 4, 5, 6]).expect("valid tree")
}

/// Random perturbation statistics for one tree: each sample moves one endpoint by
/// `delta` and records `sup / delta` when the rule set is unchanged.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationStats {
    pub samples: usize,
    pub same_rule: usize,
    pub max_ratio: f64,
    pub median_ratio: f64,
}

pub fn perturbation_stats(tree: &Tree, eps: Option<(f64, Metric)>, delta: f64, n: usize, seed: u64) -> PerturbationStats {
    let ratios: Vec<Option<f64>> = par_map(n, |i| {
        let mut rng = instance_rng(seed, i);
        let inst = match eps {
            Some((eps, metric)) => {
                let st = tree.as_star().ok()?;
                let a = sample::star_config(&mut rng, &st, eps, eps);
                let b = sample::star_config(&mut rng, &st, eps, eps);
                Instance::Ordered { eps, metric, a, b }
            }
            None => {
                let a = sample::unordered_config(&mut rng, tree);
                let b = sample::unordered_config(&mut rng, tree);
                Instance::Unordered { a, b }
            }
        };
        let moved = nudge(tree, &inst, delta, &mut rng)?;
        let (_, r0, p0) = inst.plan(tree).ok()?;
        let (_, r1, p1) = moved.plan(tree).ok()?;
        (r0 == r1).then(|| path_sup_distance(tree, &p0, &p1) / delta)
    });
    let mut same: Vec<f64> = ratios.iter().flatten().copied().collect();
    same.sort_by(f64::total_cmp);
    PerturbationStats {
        samples: n,
        same_rule: same.len(),
        max_ratio: same.last().copied().unwrap_or(0.0),
        median_ratio: same.get(same.len() / 2).copied().unwrap_or(0.0),
    }
}

/// Moves the first start point `delta` toward a random point, keeping feasibility.
fn nudge<R: Rng>(tree: &Tree, inst: &Instance, delta: f64, rng: &mut R) -> Option<Instance> {
    let toward = sample::tree_point(rng, tree);
    match inst {
        Instance::Ordered { eps, metric, a, b } => {
            let p = tree.point_along(&a.p1, &toward, delta.min(tree.distance(&a.p1, &toward)));
            let a2 = OrderedConfig::new(p, a.p2);
            (a2.separation(tree) >= *eps).then_some(Instance::Ordered { eps: *eps, metric: *metric, a: a2, b: *b })
        }
        Instance::Unordered { a, b } => {
            let [p, q] = a.points();
            let p = tree.point_along(&p, &toward, delta.min(tree.distance(&p, &toward)));
            Some(Instance::Unordered { a: UnorderedConfig::new(p, q).ok()?, b: *b })
        }
    }
}

/// Whether the tree is handled by the Y-graph, interval or general rules.
pub fn shape_name(tree: &Tree) -> &'static str {
    match unordered::tree_shape(tree) {
        TreeShape::Interval => "interval",
        TreeShape::Y => "y",
        TreeShape::General => "general",
    }
}
