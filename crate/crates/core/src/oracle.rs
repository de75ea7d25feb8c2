//! Brute-force ground truth: a grid on the tree and Dijkstra over pairs of grid points.
//!
//! Each edge is cut into equal segments no longer than `h`. A node of the search
//! graph is a pair of grid points (ordered pairs at least ε apart, or unordered
//! pairs of distinct points). A move sends particle 1 to a grid point `i` hops
//! away and particle 2 to one `j` hops away, simultaneously and uniformly, for
//! coprime `(i, j)` up to the reach `R`; `R = 1` gives the usual single and
//! diagonal steps. Larger reach lets ℓ2 paths approximate more slopes.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::config::{motion_min_separation, BiPath, Metric, OrderedConfig};
use crate::math::ceil;
use crate::tree::{Point, Star, StarCoord, Tree};
use crate::{Error, Result, TOL};

/// Grid points of a discretized tree with all pairwise distances.
#[derive(Clone, Debug)]
pub struct Grid {
    pub h: f64,
    pub points: Vec<Point>,
    /// Grid point ids along each edge, from `u` to `v`.
    pub edge_nodes: Vec<Vec<u32>>,
    nbr: Vec<Vec<u32>>,
    dist: Vec<f64>,
}

/// Subdivides every edge into `ceil(len / h)` equal segments.
pub fn discretize(tree: &Tree, h: f64) -> Result<Grid> {
    if !(h > 0.0) || h > tree.min_edge_len() / 2.0 + TOL {
        return Err(Error::Argument("grid step must lie in (0, min edge length / 2]"));
    }
    let nv = tree.vertex_count();
    let mut points: Vec<Point> = (0..nv).map(Point::Vertex).collect();
    let mut nbr: Vec<Vec<u32>> = vec![Vec::new(); nv];
    let mut edge_nodes = Vec::with_capacity(tree.edges().len());
    for e in tree.edges() {
        let segs = ceil(e.len / h - 1e-9).max(1.0) as usize;
        let step = e.len / segs as f64;
        let mut ids = vec![e.u as u32];
        for s in 1..segs {
            points.push(tree.point_on_edge(e.id, s as f64 * step));
            nbr.push(Vec::new());
            ids.push((points.len() - 1) as u32);
        }
        ids.push(e.v as u32);
        for w in ids.windows(2) {
            nbr[w[0] as usize].push(w[1]);
            nbr[w[1] as usize].push(w[0]);
        }
        edge_nodes.push(ids);
    }
    let n = points.len();
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = tree.distance(&points[i], &points[j]);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    Ok(Grid { h, points, edge_nodes, nbr, dist })
}

impl Grid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.points.len() + j]
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.nbr[i]
    }

    /// Nearest grid point to `p` and the distance to it.
    pub fn snap(&self, tree: &Tree, p: &Point) -> (usize, f64) {
        match *p {
            Point::Vertex(v) => (v, 0.0),
            Point::Edge { edge, offset } => {
                let ids = &self.edge_nodes[edge];
                let step = tree.edge(edge).len / (ids.len() - 1) as f64;
                let k = crate::math::round(offset / step) as usize;
                let k = k.min(ids.len() - 1);
                (ids[k] as usize, (offset - k as f64 * step).abs())
            }
        }
    }

    /// Grid points exactly `r` hops from each point, for `r = 0..=reach`.
    fn balls(&self, reach: usize) -> Vec<Vec<Vec<u32>>> {
        (0..self.len())
            .map(|u| {
                let mut rings = vec![vec![u as u32]];
                let mut prev: Vec<(u32, u32)> = vec![(u as u32, u32::MAX)];
                for _ in 0..reach {
                    let mut next = Vec::new();
                    for &(x, from) in &prev {
                        for &y in &self.nbr[x as usize] {
                            if y != from {
                                next.push((y, x));
                            }
                        }
                    }
                    rings.push(next.iter().map(|&(y, _)| y).collect());
                    prev = next;
                }
                rings
            })
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hop pairs `(i, j)` with `gcd(i, j) = 1`, `i, j ≤ reach`.
fn hop_pairs(reach: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=reach {
        for j in 0..=reach {
            if gcd(i, j) == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub metric: Metric,
    pub ordered: bool,
    /// Minimum separation for ordered search; ignored otherwise.
    pub eps: f64,
    /// Maximum hops per particle in one move.
    pub reach: usize,
    /// Track which particle reaches `center` first (ordered star search).
    pub track_crossing: Option<usize>,
}

impl OracleOptions {
    /// Reach 1 for ℓ1 and 6 for ℓ2.
    pub fn new(metric: Metric, ordered: bool, eps: f64) -> Self {
        let reach = match metric {
            Metric::L1 => 1,
            Metric::L2 => 6,
        };
        OracleOptions { metric, ordered, eps, reach, track_crossing: None }
    }
}

/// Search graph over pairs of grid points.
pub struct Oracle<'a> {
    tree: &'a Tree,
    grid: &'a Grid,
    opts: OracleOptions,
    moves: Vec<(usize, usize)>,
    balls: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    d: f64,
    node: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.d.total_cmp(&self.d).then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distances from one source over the whole search graph.
pub struct Search {
    n: usize,
    layers: usize,
    ordered: bool,
    dist: Vec<f64>,
    pred: Vec<u32>,
    pub settled: usize,
    pub relaxed: usize,
}

impl Search {
    fn index(&self, u: usize, v: usize, flag: usize) -> usize {
        let (u, v) = if self.ordered || u < v { (u, v) } else { (v, u) };
        (flag * self.n + u) * self.n + v
    }

    fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let v = idx % self.n;
        let rest = idx / self.n;
        (rest % self.n, v, rest / self.n)
    }

    /// Distance to the grid pair `(u, v)`: the minimum over crossing flags, or the given flag.
    pub fn distance(&self, u: usize, v: usize, flag: Option<usize>) -> f64 {
        match flag {
            Some(f) => self.dist[self.index(u, v, f)],
            None => (0..self.layers).map(|f| self.dist[self.index(u, v, f)]).fold(f64::INFINITY, f64::min),
        }
    }

    /// Grid pairs along a shortest path to `(u, v, flag)`.
    pub fn path_to(&self, u: usize, v: usize, flag: usize) -> Option<Vec<(usize, usize)>> {
        let mut idx = self.index(u, v, flag);
        if !self.dist[idx].is_finite() {
            return None;
        }
        let mut out = Vec::new();
        loop {
            let (a, b, _) = self.decode(idx);
            out.push((a, b));
            let p = self.pred[idx];
            if p == u32::MAX {
                break;
            }
            idx = p as usize;
        }
        out.reverse();
        Some(out)
    }
}

/// Result of a single source-target query.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub length: f64,
    /// Grid pairs along the discrete path.
    pub path: Vec<(usize, usize)>,
    /// Largest snapping displacement of the four endpoints.
    pub snap_error: f64,
    pub settled: usize,
    pub relaxed: usize,
}

impl<'a> Oracle<'a> {
    pub fn new(tree: &'a Tree, grid: &'a Grid, opts: OracleOptions) -> Self {
        let reach = opts.reach.max(1);
        Oracle { tree, grid, opts, moves: hop_pairs(reach), balls: grid.balls(reach) }
    }

    pub fn grid(&self) -> &Grid {
        self.grid
    }

    fn layers(&self) -> usize {
        if self.opts.track_crossing.is_some() {
            3
        } else {
            1
        }
    }

    fn node_ok(&self, u: usize, v: usize) -> bool {
        if self.opts.ordered {
            self.grid.distance(u, v) >= self.opts.eps - TOL
        } else {
            u != v
        }
    }

    fn move_ok(&self, u: usize, v: usize, u2: usize, v2: usize, l1: f64, l2: f64) -> bool {
        let g = self.grid;
        let bound = (g.distance(u, v) + g.distance(u2, v2) - l1 - l2) / 2.0;
        let need = if self.opts.ordered { self.opts.eps - TOL } else { TOL };
        if bound >= need {
            return true;
        }
        let p = &g.points;
        let sep = motion_min_separation(
            self.tree,
            &OrderedConfig::new(p[u], p[v]),
            &OrderedConfig::new(p[u2], p[v2]),
        );
        if self.opts.ordered {
            sep >= need
        } else {
            sep > TOL
        }
    }

    /// Crossing flag after moving `(u, v) → (u2, v2)` from flag `f`.
    fn next_flag(&self, f: usize, u: usize, v: usize, u2: usize, v2: usize) -> usize {
        let Some(c) = self.opts.track_crossing else { return 0 };
        if f != 0 {
            return f;
        }
        let g = self.grid;
        let hit = |from: usize, to: usize| {
            let l = g.distance(from, to);
            if (g.distance(from, c) + g.distance(c, to) - l).abs() <= TOL {
                Some(if l > 0.0 { g.distance(from, c) / l } else { 0.0 })
            } else {
                None
            }
        };
        match (hit(u, u2), hit(v, v2)) {
            (Some(a), Some(b)) => {
                if a <= b {
                    1
                } else {
                    2
                }
            }
            (Some(_), None) => 1,
            (None, Some(_)) => 2,
            (None, None) => 0,
        }
    }

    fn initial_flag(&self, u: usize, v: usize) -> usize {
        match self.opts.track_crossing {
            Some(c) if u == c => 1,
            Some(c) if v == c => 2,
            _ => 0,
        }
    }

    /// Dijkstra from the grid pair `(u, v)`, stopping early at `target` if given.
    pub fn search(&self, u: usize, v: usize, target: Option<(usize, usize, Option<usize>)>) -> Result<Search> {
        if !self.node_ok(u, v) {
            return Err(Error::Infeasible("source pair violates the separation constraint"));
        }
        let n = self.grid.len();
        let layers = self.layers();
        let mut s = Search {
            n,
            layers,
            ordered: self.opts.ordered,
            dist: vec![f64::INFINITY; layers * n * n],
            pred: vec![u32::MAX; layers * n * n],
            settled: 0,
            relaxed: 0,
        };
        let start = s.index(u, v, self.initial_flag(u, v));
        s.dist[start] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Entry { d: 0.0, node: start as u32 });
        let is_target = |s: &Search, idx: usize| {
            target.is_some_and(|(tu, tv, tf)| {
                let (a, b, f) = s.decode(idx);
                let same = (a == tu && b == tv) || (!self.opts.ordered && a == tv && b == tu);
                same && tf.map_or(true, |tf| tf == f)
            })
        };
        while let Some(Entry { d, node }) = heap.pop() {
            let idx = node as usize;
            if d > s.dist[idx] {
                continue;
            }
            s.settled += 1;
            if is_target(&s, idx) {
                break;
            }
            let (a, b, f) = s.decode(idx);
            for &(i, j) in &self.moves {
                for &a2 in &self.balls[a][i] {
                    let a2 = a2 as usize;
                    let l1 = self.grid.distance(a, a2);
                    for &b2 in &self.balls[b][j] {
                        let b2 = b2 as usize;
                        if !self.node_ok(a2, b2) {
                            continue;
                        }
                        let l2 = self.grid.distance(b, b2);
                        let nd = d + self.opts.metric.combine(l1, l2);
                        let f2 = self.next_flag(f, a, b, a2, b2);
                        let j2 = s.index(a2, b2, f2);
                        if nd >= s.dist[j2] {
                            continue;
                        }
                        s.relaxed += 1;
                        if !self.move_ok(a, b, a2, b2, l1, l2) {
                            continue;
                        }
                        s.dist[j2] = nd;
                        s.pred[j2] = node;
                        heap.push(Entry { d: nd, node: j2 as u32 });
                    }
                }
            }
        }
        Ok(s)
    }

    /// Snaps both configurations to the grid and returns the discrete shortest path.
    pub fn shortest(&self, a: &OrderedConfig, b: &OrderedConfig, flag: Option<usize>) -> Result<OracleResult> {
        let (sa, ea) = self.snap(a)?;
        let (sb, eb) = self.snap(b)?;
        let s = self.search(sa.0, sa.1, Some((sb.0, sb.1, flag)))?;
        let (length, f) = match flag {
            Some(f) => (s.distance(sb.0, sb.1, Some(f)), f),
            None => (0..s.layers)
                .map(|f| (s.distance(sb.0, sb.1, Some(f)), f))
                .fold((f64::INFINITY, 0), |x, y| if y.0 < x.0 { y } else { x }),
        };
        if !length.is_finite() {
            return Err(Error::Disconnected);
        }
        let path = s.path_to(sb.0, sb.1, f).unwrap_or_default();
        Ok(OracleResult { length, path, snap_error: ea.max(eb), settled: s.settled, relaxed: s.relaxed })
    }

    /// Grid pair for a configuration, rejecting it if snapping breaks feasibility.
    pub fn snap(&self, c: &OrderedConfig) -> Result<((usize, usize), f64)> {
        let (u, eu) = self.grid.snap(self.tree, &c.p1);
        let (v, ev) = self.grid.snap(self.tree, &c.p2);
        if !self.node_ok(u, v) {
            return Err(Error::Infeasible("configuration is infeasible after snapping to the grid"));
        }
        Ok(((u, v), eu.max(ev)))
    }

    /// The discrete path as a continuous path through the grid configurations.
    pub fn to_bipath(&self, path: &[(usize, usize)]) -> BiPath {
        let p = &self.grid.points;
        let confs: Vec<OrderedConfig> = path.iter().map(|&(u, v)| OrderedConfig::new(p[u], p[v])).collect();
        BiPath::through(self.tree, self.opts.eps, self.opts.ordered, &confs, self.opts.metric)
    }
}

/// Shortest-path distance in the ordered ε-space of a star, computed exactly on
/// the graph whose nodes are `a`, `b` and the configurations with one particle at
/// the center and the other at depth ε, and whose edges are feasible uniform motions.
pub fn corner_graph_distance(star: &Star<'_>, eps: f64, a: &OrderedConfig, b: &OrderedConfig, m: Metric) -> Option<f64> {
    let tree = star.tree();
    let center = star.point(StarCoord::Center).ok()?;
    let mut nodes = vec![*a, *b];
    for arm in 1..=star.k() {
        if star.arm_len(arm) >= eps {
            let p = star.at(arm, eps);
            nodes.push(OrderedConfig::new(p, center));
            nodes.push(OrderedConfig::new(center, p));
        }
    }
    let n = nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[0] = 0.0;
    for _ in 0..n {
        let u = (0..n).filter(|&i| !done[i]).min_by(|&i, &j| dist[i].total_cmp(&dist[j]))?;
        if !dist[u].is_finite() {
            break;
        }
        done[u] = true;
        for w in 0..n {
            if done[w] {
                continue;
            }
            if motion_min_separation(tree, &nodes[u], &nodes[w]) < eps - TOL {
                continue;
            }
            let l = crate::config::config_distance(tree, &nodes[u], &nodes[w], m);
            if dist[u] + l < dist[w] {
                dist[w] = dist[u] + l;
            }
        }
    }
    dist[1].is_finite().then_some(dist[1])
}
