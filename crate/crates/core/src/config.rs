//! Two-robot configurations, the ℓ1/ℓ2 product metrics, and piecewise-uniform
//! two-particle trajectories.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::hypot;
use crate::tree::{Point, Tree};
use crate::{Error, Result, TOL};

/// Product metric on `G × G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    L2,
}

impl Metric {
    /// Combines the two particles' distances.
    #[inline]
    pub fn combine(self, s1: f64, s2: f64) -> f64 {
        match self {
            Metric::L1 => s1 + s2,
            Metric::L2 => hypot(s1, s2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "l1",
            Metric::L2 => "l2",
        }
    }
}

/// Positions of particle 1 and particle 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderedConfig {
    pub p1: Point,
    pub p2: Point,
}

impl OrderedConfig {
    pub fn new(p1: Point, p2: Point) -> Self {
        OrderedConfig { p1, p2 }
    }

    /// The same positions with the particle labels exchanged.
    pub fn swapped(&self) -> Self {
        OrderedConfig { p1: self.p2, p2: self.p1 }
    }

    pub fn separation(&self, tree: &Tree) -> f64 {
        tree.distance(&self.p1, &self.p2)
    }

    /// Errors unless the particles are at least `eps` apart (up to [`TOL`]).
    pub fn check_feasible(&self, tree: &Tree, eps: f64) -> Result<()> {
        tree.validate_point(&self.p1)?;
        tree.validate_point(&self.p2)?;
        if self.separation(tree) < eps - TOL {
            return Err(Error::Infeasible("particles closer than the separation bound"));
        }
        Ok(())
    }
}

/// An unordered pair of distinct points, stored in canonical order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnorderedConfig {
    pts: [Point; 2],
}

impl UnorderedConfig {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        if p == q {
            return Err(Error::Infeasible("unordered configuration needs two distinct points"));
        }
        let pts = if p.cmp_key(&q).is_le() { [p, q] } else { [q, p] };
        Ok(UnorderedConfig { pts })
    }

    pub fn points(&self) -> [Point; 2] {
        self.pts
    }

    pub fn as_ordered(&self) -> OrderedConfig {
        OrderedConfig::new(self.pts[0], self.pts[1])
    }
}

/// Distance between ordered configurations in the product metric.
pub fn config_distance(tree: &Tree, a: &OrderedConfig, b: &OrderedConfig, m: Metric) -> f64 {
    m.combine(tree.distance(&a.p1, &b.p1), tree.distance(&a.p2, &b.p2))
}

/// Distance between unordered configurations: the better of the two pairings.
pub fn unordered_distance(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig, m: Metric) -> f64 {
    let (a, b) = (a.as_ordered(), b.as_ordered());
    config_distance(tree, &a, &b, m).min(config_distance(tree, &a, &b.swapped(), m))
}

/// A breakpoint of a [`BiPath`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Breakpoint {
    pub t: f64,
    pub c: OrderedConfig,
}

/// Piecewise-uniform two-particle trajectory on `[0, 1]`.
///
/// Between consecutive breakpoints each particle moves at constant speed along
/// its tree geodesic, and never across a vertex: paths built here are refined
/// so every particle stays on one closed edge per segment.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPath {
    pub eps: f64,
    pub ordered: bool,
    pub breakpoints: Vec<Breakpoint>,
}

impl BiPath {
    pub fn constant(c: OrderedConfig, eps: f64, ordered: bool) -> BiPath {
        BiPath {
            eps,
            ordered,
            breakpoints: vec![Breakpoint { t: 0.0, c }, Breakpoint { t: 1.0, c }],
        }
    }

    /// Simultaneous uniform motions between consecutive waypoints, with time
    /// proportional to each motion's length in `timing`.
    pub fn through(tree: &Tree, eps: f64, ordered: bool, waypoints: &[OrderedConfig], timing: Metric) -> BiPath {
        let mut pts: Vec<OrderedConfig> = Vec::with_capacity(waypoints.len());
        for w in waypoints {
            if pts.last() != Some(w) {
                pts.push(*w);
            }
        }
        if pts.len() < 2 {
            return BiPath::constant(waypoints[0], eps, ordered);
        }
        let lens: Vec<f64> = pts.windows(2).map(|w| config_distance(tree, &w[0], &w[1], timing)).collect();
        let total: f64 = lens.iter().sum();
        let mut timed = Vec::with_capacity(pts.len());
        let mut acc = 0.0;
        timed.push((0.0, pts[0]));
        for (i, l) in lens.iter().enumerate() {
            acc += if total > 0.0 { *l } else { 1.0 };
            let denom = if total > 0.0 { total } else { lens.len() as f64 };
            timed.push((acc / denom, pts[i + 1]));
        }
        timed.last_mut().unwrap().0 = 1.0;
        BiPath::from_timed(tree, eps, ordered, &timed)
    }

    /// Uniform motions between explicitly timed waypoints (times strictly
    /// increasing from 0 to 1). Segments are refined at vertex crossings.
    pub fn from_timed(tree: &Tree, eps: f64, ordered: bool, timed: &[(f64, OrderedConfig)]) -> BiPath {
        let mut breakpoints = vec![Breakpoint { t: timed[0].0, c: timed[0].1 }];
        for w in timed.windows(2) {
            let ((t0, c0), (t1, c1)) = (w[0], w[1]);
            for (lambda, c) in refine(tree, &c0, &c1) {
                breakpoints.push(Breakpoint { t: t0 + lambda * (t1 - t0), c });
            }
        }
        BiPath { eps, ordered, breakpoints }
    }

    pub fn start(&self) -> OrderedConfig {
        self.breakpoints[0].c
    }

    pub fn end(&self) -> OrderedConfig {
        self.breakpoints.last().unwrap().c
    }

    /// Checks times and point validity.
    pub fn validate(&self, tree: &Tree) -> Result<()> {
        let b = &self.breakpoints;
        if b.len() < 2 || b[0].t != 0.0 || b[b.len() - 1].t != 1.0 {
            return Err(Error::Argument("breakpoint times must run from 0 to 1"));
        }
        if b.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return Err(Error::Argument("breakpoint times must increase strictly"));
        }
        for bp in b {
            tree.validate_point(&bp.c.p1)?;
            tree.validate_point(&bp.c.p2)?;
        }
        Ok(())
    }

    /// Total length in the given metric.
    pub fn length(&self, tree: &Tree, m: Metric) -> f64 {
        self.breakpoints
            .windows(2)
            .map(|w| config_distance(tree, &w[0].c, &w[1].c, m))
            .sum()
    }

    /// Exact minimum separation of the two particles over the whole path.
    pub fn min_separation(&self, tree: &Tree) -> f64 {
        self.breakpoints
            .windows(2)
            .map(|w| segment_min_separation(tree, &w[0].c, &w[1].c))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether the separation constraint holds throughout (ε for ordered paths, > 0 otherwise).
    pub fn is_feasible(&self, tree: &Tree) -> bool {
        let s = self.min_separation(tree);
        if self.ordered {
            s >= self.eps - TOL
        } else {
            s > TOL
        }
    }

    /// Configuration at time `t`.
    pub fn at(&self, tree: &Tree, t: f64) -> OrderedConfig {
        let b = &self.breakpoints;
        let t = t.clamp(0.0, 1.0);
        let i = b.partition_point(|bp| bp.t <= t);
        if i == 0 {
            return b[0].c;
        }
        if i == b.len() {
            return b[b.len() - 1].c;
        }
        let (l, r) = (&b[i - 1], &b[i]);
        let lambda = (t - l.t) / (r.t - l.t);
        OrderedConfig::new(
            tree.lerp_on_edge(&l.c.p1, &r.c.p1, lambda),
            tree.lerp_on_edge(&l.c.p2, &r.c.p2, lambda),
        )
    }

    /// The path traversed backwards.
    pub fn reversed(&self) -> BiPath {
        let breakpoints = self
            .breakpoints
            .iter()
            .rev()
            .map(|bp| Breakpoint { t: 1.0 - bp.t, c: bp.c })
            .collect();
        BiPath { eps: self.eps, ordered: self.ordered, breakpoints }
    }

    /// The path with particle labels exchanged.
    pub fn swapped(&self) -> BiPath {
        let breakpoints = self
            .breakpoints
            .iter()
            .map(|bp| Breakpoint { t: bp.t, c: bp.c.swapped() })
            .collect();
        BiPath { eps: self.eps, ordered: self.ordered, breakpoints }
    }
}

/// Interior and final sub-breakpoints of the uniform motion `c0 → c1`, as
/// `(fraction, configuration)` pairs, at every vertex crossing of either particle.
pub fn refine(tree: &Tree, c0: &OrderedConfig, c1: &OrderedConfig) -> Vec<(f64, OrderedConfig)> {
    let g1 = tree.geodesic(&c0.p1, &c1.p1);
    let g2 = tree.geodesic(&c0.p2, &c1.p2);
    let l1 = g1.last().unwrap().1;
    let l2 = g2.last().unwrap().1;
    let mut fracs: Vec<f64> = Vec::new();
    for (g, l) in [(&g1, l1), (&g2, l2)] {
        if g.len() > 2 {
            fracs.extend(g[1..g.len() - 1].iter().map(|(_, s)| s / l));
        }
    }
    fracs.sort_by(f64::total_cmp);
    fracs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    fracs.retain(|&f| f > 1e-12 && f < 1.0 - 1e-12);
    let mut out: Vec<(f64, OrderedConfig)> = fracs
        .into_iter()
        .map(|f| (f, OrderedConfig::new(along(tree, &g1, f * l1), along(tree, &g2, f * l2))))
        .collect();
    out.push((1.0, *c1));
    out
}

/// Point at arc length `s` on a geodesic given by its breakpoints.
fn along(tree: &Tree, g: &[(Point, f64)], s: f64) -> Point {
    for w in g.windows(2) {
        let ((a, sa), (b, sb)) = (w[0], w[1]);
        if s <= sb {
            if s >= sb - 1e-12 * sb.max(1.0) {
                return b;
            }
            return tree.lerp_on_edge(&a, &b, (s - sa) / (sb - sa));
        }
    }
    g.last().unwrap().0
}

/// Minimum separation during a uniform motion in which each particle stays on one closed edge.
pub fn segment_min_separation(tree: &Tree, c0: &OrderedConfig, c1: &OrderedConfig) -> f64 {
    let d0 = tree.distance(&c0.p1, &c0.p2);
    let d1 = tree.distance(&c1.p1, &c1.p2);
    // A closed edge holding all four endpoints: separation is |x(t) − y(t)|.
    for &e in tree.carriers(&c0.p1) {
        let offs = [&c1.p1, &c0.p2, &c1.p2].map(|p| tree.locate(p, e));
        if let [Some(x1), Some(y0), Some(y1)] = offs {
            let x0 = tree.locate(&c0.p1, e).unwrap();
            let (f0, f1) = (x0 - y0, x1 - y1);
            if f0 * f1 < 0.0 {
                return 0.0;
            }
            return f0.abs().min(f1.abs());
        }
    }
    // Otherwise the separation is affine in t.
    d0.min(d1)
}

/// Minimum separation during an arbitrary uniform motion `c0 → c1`.
pub fn motion_min_separation(tree: &Tree, c0: &OrderedConfig, c1: &OrderedConfig) -> f64 {
    let mut prev = *c0;
    let mut best = f64::INFINITY;
    for (_, c) in refine(tree, c0, c1) {
        best = best.min(segment_min_separation(tree, &prev, &c));
        prev = c;
    }
    best
}

/// Number of uniform samples used by [`path_sup_distance`].
pub const SUP_SAMPLES: usize = 256;

/// Approximate sup over time of the ℓ1 distance between two paths, sampled at
/// [`SUP_SAMPLES`] uniform times plus every breakpoint of both paths. Unordered
/// paths take the better pairing at each sample.
pub fn path_sup_distance(tree: &Tree, g: &BiPath, h: &BiPath) -> f64 {
    let mut times: Vec<f64> = (0..=SUP_SAMPLES).map(|j| j as f64 / SUP_SAMPLES as f64).collect();
    times.extend(g.breakpoints.iter().map(|b| b.t));
    times.extend(h.breakpoints.iter().map(|b| b.t));
    let unordered = !g.ordered || !h.ordered;
    times
        .into_iter()
        .map(|t| {
            let (x, y) = (g.at(tree, t), h.at(tree, t));
            let d = config_distance(tree, &x, &y, Metric::L1);
            if unordered {
                d.min(config_distance(tree, &x, &y.swapped(), Metric::L1))
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

/// Pushes two particles apart to separation `eps`, following the deformation
/// retraction of the two-point configuration space onto its ε-subspace.
///
/// Requires `eps` no larger than the shortest edge.
pub fn retract_to_feps(tree: &Tree, a: &OrderedConfig, eps: f64) -> Result<OrderedConfig> {
    if eps > tree.min_edge_len() + TOL {
        return Err(Error::Argument("eps exceeds the shortest edge"));
    }
    let sep = a.separation(tree);
    if sep >= eps {
        return Ok(*a);
    }
    if a.p1 == a.p2 {
        return Err(Error::Infeasible("coincident particles have no retraction direction"));
    }
    // One particle at a vertex: push the other straight away from it.
    if let Point::Vertex(_) = a.p1 {
        return Ok(OrderedConfig::new(a.p1, push_from(tree, &a.p1, &a.p2, eps)));
    }
    if let Point::Vertex(_) = a.p2 {
        return Ok(OrderedConfig::new(push_from(tree, &a.p2, &a.p1, eps), a.p2));
    }
    if let (Point::Edge { edge: e1, offset: o1 }, Point::Edge { edge: e2, offset: o2 }) = (a.p1, a.p2) {
        if e1 == e2 {
            let len = tree.edge(e1).len;
            let (lo, hi) = (o1.min(o2), o1.max(o2));
            let mid = (lo + hi) / 2.0;
            let (mut nlo, mut nhi) = (mid - eps / 2.0, mid + eps / 2.0);
            if nlo < 0.0 {
                nlo = 0.0;
                nhi = eps;
            } else if nhi > len {
                nhi = len;
                nlo = len - eps;
            }
            let (n1, n2) = if o1 < o2 { (nlo, nhi) } else { (nhi, nlo) };
            return Ok(OrderedConfig::new(tree.point_on_edge(e1, n1), tree.point_on_edge(e1, n2)));
        }
        // Adjacent edges through a vertex v: scale both depths by eps / sep.
        let geo = tree.geodesic(&a.p1, &a.p2);
        let Point::Vertex(v) = geo[1].0 else { unreachable!() };
        let d1 = geo[1].1;
        let scale = eps / sep;
        let q1 = ray_point(tree, v, e1, d1 * scale);
        let q2 = ray_point(tree, v, e2, (sep - d1) * scale);
        return Ok(OrderedConfig::new(q1, q2));
    }
    unreachable!()
}

/// The point at distance `eps` from `anchor` on the ray from `anchor` through `p`.
fn push_from(tree: &Tree, anchor: &Point, p: &Point, eps: f64) -> Point {
    let geo = tree.geodesic(anchor, p);
    let (first, _) = geo[1];
    let (e, oa, of) = tree.shared_edge(anchor, &first).expect("consecutive breakpoints share an edge");
    let dir = if of > oa { 1.0 } else { -1.0 };
    tree.point_on_edge(e, oa + dir * eps)
}

/// The point at distance `d` from vertex `v` along incident edge `e`.
fn ray_point(tree: &Tree, v: usize, e: usize, d: f64) -> Point {
    let ed = tree.edge(e);
    if ed.u == v {
        tree.point_on_edge(e, d)
    } else {
        tree.point_on_edge(e, ed.len - d)
    }
}
