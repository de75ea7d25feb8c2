//! Finite metric trees, points on them, and the leaf/arm numbering.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Offsets closer than this to an edge end are snapped onto the vertex.
const SNAP: f64 = 1e-12;

/// An edge of the tree with its positive length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub len: f64,
}

impl Edge {
    /// The endpoint opposite to `w`.
    pub fn other(&self, w: VertexId) -> VertexId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }

    /// Offset (measured from `u`) of the endpoint `w`.
    fn end_offset(&self, w: VertexId) -> f64 {
        if w == self.u {
            0.0
        } else {
            self.len
        }
    }
}

/// A point of the tree in canonical form: vertices are never stored as edge offsets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Vertex(VertexId),
    /// Interior point of `edge`, `offset` measured from the edge's `u` end.
    Edge { edge: EdgeId, offset: f64 },
}

impl Point {
    /// Sort key used for canonical ordering of unordered pairs.
    pub fn key(&self) -> (u8, usize, f64) {
        match *self {
            Point::Vertex(v) => (0, v, 0.0),
            Point::Edge { edge, offset } => (1, edge, offset),
        }
    }

    /// Total order on canonical encodings.
    pub fn cmp_key(&self, other: &Point) -> core::cmp::Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.total_cmp(&b.2))
    }
}

/// Position on a star graph: an arm (numbered by its leaf, 1..k) and the depth from the center.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StarCoord {
    Center,
    Arm { arm: usize, depth: f64 },
}

impl StarCoord {
    pub fn depth(&self) -> f64 {
        match *self {
            StarCoord::Center => 0.0,
            StarCoord::Arm { depth, .. } => depth,
        }
    }

    pub fn arm(&self) -> Option<usize> {
        match *self {
            StarCoord::Center => None,
            StarCoord::Arm { arm, .. } => Some(arm),
        }
    }
}

/// A finite metric tree with a numbering of its leaves.
///
/// The incident edges of each vertex are kept in increasing arm-number order,
/// which is the cyclic order used wherever the planners need an embedding.
#[derive(Clone, Debug)]
pub struct Tree {
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
    leaf_number: Vec<usize>,
    leaves: Vec<VertexId>,
    dist: Vec<f64>,
    parent: Vec<Option<(VertexId, EdgeId)>>,
    level: Vec<usize>,
    arm: Vec<[usize; 2]>,
}

impl Tree {
    /// Builds and validates a tree on vertices `0..n`.
    ///
    /// `edges` may come in any order but their ids must be exactly `0..n-1`.
    /// `leaf_order[i]` is the vertex receiving leaf number `i + 1`.
    pub fn new(n: usize, mut edges: Vec<Edge>, leaf_order: Vec<VertexId>) -> Result<Tree> {
        if n < 2 {
            return Err(Error::Structure("a tree needs at least two vertices"));
        }
        if edges.len() != n - 1 {
            return Err(Error::Structure("edge count must be vertex count minus one"));
        }
        edges.sort_by_key(|e| e.id);
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.id != i {
                return Err(Error::Structure("edge ids must be 0..n-1 without gaps"));
            }
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(Error::Structure("edge endpoint out of range or loop"));
            }
            if !(e.len > 0.0) || !e.len.is_finite() {
                return Err(Error::Structure("edge lengths must be positive and finite"));
            }
            incident[e.u].push(i);
            incident[e.v].push(i);
        }

        // Root at 0; connectivity plus the edge count rules out cycles.
        let mut parent = vec![None; n];
        let mut level = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &e in &incident[x] {
                let y = edges[e].other(x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    level[y] = level[x] + 1;
                    order.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Structure("tree is not connected"));
        }

        let degree_one: Vec<VertexId> = (0..n).filter(|&v| incident[v].len() == 1).collect();
        if leaf_order.len() != degree_one.len() {
            return Err(Error::Structure("leaf order must list every degree-1 vertex once"));
        }
        let mut leaf_number = vec![0; n];
        for (i, &v) in leaf_order.iter().enumerate() {
            if v >= n || incident[v].len() != 1 || leaf_number[v] != 0 {
                return Err(Error::Structure("leaf order must list every degree-1 vertex once"));
            }
            leaf_number[v] = i + 1;
        }

        let mut dist = vec![0.0; n * n];
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            let mut stack = vec![(s, usize::MAX)];
            while let Some((x, from)) = stack.pop() {
                for &e in &incident[x] {
                    if e == from {
                        continue;
                    }
                    let y = edges[e].other(x);
                    row[y] = row[x] + edges[e].len;
                    stack.push((y, e));
                }
            }
        }

        let mut tree = Tree {
            edges,
            incident,
            leaf_number,
            leaves: leaf_order,
            dist,
            parent,
            level,
            arm: Vec::new(),
        };
        tree.arm = (0..n - 1)
            .map(|e| {
                let ed = tree.edges[e];
                [tree.component_min_leaf(ed.u, e), tree.component_min_leaf(ed.v, e)]
            })
            .collect();
        for v in 0..n {
            let mut inc = core::mem::take(&mut tree.incident[v]);
            inc.sort_by_key(|&e| tree.arm_at(v, e));
            tree.incident[v] = inc;
        }
        Ok(tree)
    }

    /// Star with `lens.len()` arms; vertex 0 is the center and arm `i` ends at leaf `i`.
    pub fn star(lens: &[f64]) -> Result<Tree> {
        let edges = lens
            .iter()
            .enumerate()
            .map(|(i, &len)| Edge { id: i, u: 0, v: i + 1, len })
            .collect();
        Tree::new(lens.len() + 1, edges, (1..=lens.len()).collect())
    }

    /// Path with the given consecutive edge lengths, numbered from vertex 0.
    pub fn path(lens: &[f64]) -> Result<Tree> {
        let n = lens.len() + 1;
        let edges = lens
            .iter()
            .enumerate()
            .map(|(i, &len)| Edge { id: i, u: i, v: i + 1, len })
            .collect();
        Tree::new(n, edges, vec![0, n - 1])
    }

    fn component_min_leaf(&self, v: VertexId, e: EdgeId) -> usize {
        let mut best = usize::MAX;
        let mut stack = vec![(self.edges[e].other(v), e)];
        while let Some((x, from)) = stack.pop() {
            if self.leaf_number[x] != 0 {
                best = best.min(self.leaf_number[x]);
            }
            for &f in &self.incident[x] {
                if f != from {
                    stack.push((self.edges[f].other(x), f));
                }
            }
        }
        best
    }

    pub fn vertex_count(&self) -> usize {
        self.incident.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    /// Incident edges of `v` in cyclic (increasing arm-number) order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// Leaf number of `v`, if `v` has degree one.
    pub fn leaf_number(&self, v: VertexId) -> Option<usize> {
        match self.leaf_number[v] {
            0 => None,
            n => Some(n),
        }
    }

    /// Vertices of degree one ordered by leaf number.
    pub fn leaves(&self) -> &[VertexId] {
        &self.leaves
    }

    /// Vertices of degree at least three.
    pub fn branch_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).filter(|&v| self.degree(v) >= 3)
    }

    pub fn min_edge_len(&self) -> f64 {
        self.edges.iter().map(|e| e.len).fold(f64::INFINITY, f64::min)
    }

    pub fn total_len(&self) -> f64 {
        self.edges.iter().map(|e| e.len).sum()
    }

    /// Distance between two vertices.
    pub fn vertex_distance(&self, x: VertexId, y: VertexId) -> f64 {
        self.dist[x * self.vertex_count() + y]
    }

    /// Smallest leaf number in the component of `G − {v}` containing edge `e`.
    pub fn arm_number(&self, v: VertexId, e: EdgeId) -> Result<usize> {
        let ed = self.edges.get(e).ok_or(Error::Structure("unknown edge"))?;
        if !ed.touches(v) {
            return Err(Error::Argument("edge is not incident to the vertex"));
        }
        Ok(self.arm_at(v, e))
    }

    pub(crate) fn arm_at(&self, v: VertexId, e: EdgeId) -> usize {
        if self.edges[e].u == v {
            self.arm[e][0]
        } else {
            self.arm[e][1]
        }
    }

    /// The edge at `v` on whose side of the tree `p` lies, or `None` when `p` is `v`.
    pub fn edge_toward(&self, v: VertexId, p: &Point) -> Option<EdgeId> {
        if *p == Point::Vertex(v) {
            return None;
        }
        let dv = self.distance(&Point::Vertex(v), p);
        self.incident[v].iter().copied().find(|&e| {
            if self.locate(p, e).is_some() {
                return true;
            }
            let w = self.edges[e].other(v);
            (self.distance(&Point::Vertex(w), p) + self.edges[e].len - dv).abs() <= 1e-9 * dv.max(1.0)
        })
    }

    /// Checks ids and canonical form.
    pub fn validate_point(&self, p: &Point) -> Result<()> {
        match *p {
            Point::Vertex(v) if v < self.vertex_count() => Ok(()),
            Point::Vertex(_) => Err(Error::Structure("unknown vertex")),
            Point::Edge { edge, offset } => {
                let ed = self.edges.get(edge).ok_or(Error::Structure("unknown edge"))?;
                if offset > 0.0 && offset < ed.len {
                    Ok(())
                } else {
                    Err(Error::Argument("edge offset must lie strictly inside the edge"))
                }
            }
        }
    }

    /// Canonical point at `offset` from `u` along `e`; offsets within 1e-12 of an end snap to it.
    pub fn point_on_edge(&self, e: EdgeId, offset: f64) -> Point {
        let ed = &self.edges[e];
        if offset <= SNAP {
            Point::Vertex(ed.u)
        } else if offset >= ed.len - SNAP {
            Point::Vertex(ed.v)
        } else {
            Point::Edge { edge: e, offset }
        }
    }

    /// Offset of `p` along `e` if `p` lies on the closed edge.
    pub fn locate(&self, p: &Point, e: EdgeId) -> Option<f64> {
        let ed = &self.edges[e];
        match *p {
            Point::Vertex(w) if ed.touches(w) => Some(ed.end_offset(w)),
            Point::Vertex(_) => None,
            Point::Edge { edge, offset } if edge == e => Some(offset),
            Point::Edge { .. } => None,
        }
    }

    /// Closed edges containing `p`.
    pub fn carriers<'a>(&'a self, p: &'a Point) -> &'a [EdgeId] {
        match p {
            Point::Vertex(v) => &self.incident[*v],
            Point::Edge { edge, .. } => core::slice::from_ref(edge),
        }
    }

    /// A closed edge containing both points, with their offsets along it.
    pub fn shared_edge(&self, p: &Point, q: &Point) -> Option<(EdgeId, f64, f64)> {
        for &e in self.carriers(p) {
            if let Some(oq) = self.locate(q, e) {
                return Some((e, self.locate(p, e).unwrap(), oq));
            }
        }
        None
    }

    fn vertex_to_point(&self, x: VertexId, p: &Point) -> f64 {
        match *p {
            Point::Vertex(y) => self.vertex_distance(x, y),
            Point::Edge { edge, offset } => {
                let ed = &self.edges[edge];
                (self.vertex_distance(x, ed.u) + offset)
                    .min(self.vertex_distance(x, ed.v) + ed.len - offset)
            }
        }
    }

    /// Path-metric distance between two points.
    pub fn distance(&self, p: &Point, q: &Point) -> f64 {
        // Evaluate in a fixed argument order so the result is bitwise symmetric.
        let (p, q) = if q.cmp_key(p).is_lt() { (q, p) } else { (p, q) };
        if let Some((_, a, b)) = self.shared_edge(p, q) {
            return (a - b).abs();
        }
        match *p {
            Point::Vertex(x) => self.vertex_to_point(x, q),
            Point::Edge { edge, offset } => {
                let ed = &self.edges[edge];
                (offset + self.vertex_to_point(ed.u, q))
                    .min(ed.len - offset + self.vertex_to_point(ed.v, q))
            }
        }
    }

    /// Vertex through which a geodesic from `p` toward `q` leaves `p`'s edge.
    fn exit_vertex(&self, p: &Point, q: &Point) -> VertexId {
        match *p {
            Point::Vertex(x) => x,
            Point::Edge { edge, offset } => {
                let ed = &self.edges[edge];
                if offset + self.vertex_to_point(ed.u, q)
                    <= ed.len - offset + self.vertex_to_point(ed.v, q)
                {
                    ed.u
                } else {
                    ed.v
                }
            }
        }
    }

    /// Vertices on the tree path from `x` to `y`, inclusive, with the edges between them.
    pub fn vertex_path(&self, x: VertexId, y: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
        let (mut a, mut b) = (x, y);
        let mut front = vec![a];
        let mut front_e = Vec::new();
        let mut back = vec![b];
        let mut back_e = Vec::new();
        while a != b {
            if self.level[a] >= self.level[b] {
                let (pa, e) = self.parent[a].unwrap();
                a = pa;
                front.push(a);
                front_e.push(e);
            } else {
                let (pb, e) = self.parent[b].unwrap();
                b = pb;
                back.push(b);
                back_e.push(e);
            }
        }
        back.pop();
        front.extend(back.into_iter().rev());
        front_e.extend(back_e.into_iter().rev());
        (front, front_e)
    }

    /// Breakpoints of the tree geodesic from `p` to `q`: the endpoints and every
    /// traversed vertex, with cumulative distances.
    pub fn geodesic(&self, p: &Point, q: &Point) -> Vec<(Point, f64)> {
        if p == q {
            return vec![(*p, 0.0)];
        }
        if let Some((_, a, b)) = self.shared_edge(p, q) {
            return vec![(*p, 0.0), (*q, (a - b).abs())];
        }
        let x = self.exit_vertex(p, q);
        let z = self.exit_vertex(q, p);
        let (verts, _) = self.vertex_path(x, z);
        let mut out = Vec::with_capacity(verts.len() + 2);
        let mut last = *p;
        let mut acc = 0.0;
        out.push((last, 0.0));
        for v in verts {
            let pt = Point::Vertex(v);
            if pt != last {
                acc += self.distance(&last, &pt);
                out.push((pt, acc));
                last = pt;
            }
        }
        if *q != last {
            acc += self.distance(&last, q);
            out.push((*q, acc));
        }
        out
    }

    /// The point a fraction `lambda` of the way from `a` to `b`, where `a` and `b` share a closed edge.
    pub fn lerp_on_edge(&self, a: &Point, b: &Point, lambda: f64) -> Point {
        if lambda <= 0.0 {
            return *a;
        }
        if lambda >= 1.0 {
            return *b;
        }
        match self.shared_edge(a, b) {
            Some((e, oa, ob)) => self.point_on_edge(e, oa + lambda * (ob - oa)),
            None => *a,
        }
    }

    /// The point at arc length `s` along the geodesic from `p` to `q` (clamped).
    pub fn point_along(&self, p: &Point, q: &Point, s: f64) -> Point {
        let geo = self.geodesic(p, q);
        if s <= 0.0 {
            return *p;
        }
        for w in geo.windows(2) {
            let ((a, sa), (b, sb)) = (w[0], w[1]);
            if s < sb {
                return self.lerp_on_edge(&a, &b, (s - sa) / (sb - sa));
            }
        }
        *q
    }

    /// The unique point lying on all three pairwise paths.
    pub fn median(&self, x1: &Point, x2: &Point, x3: &Point) -> Point {
        let d12 = self.distance(x1, x2);
        let d13 = self.distance(x1, x3);
        let d23 = self.distance(x2, x3);
        let s = ((d12 + d13 - d23) / 2.0).clamp(0.0, d12);
        self.point_along(x1, x2, s)
    }

    /// Interprets the tree as a star, if it is one.
    pub fn as_star(&self) -> Result<Star<'_>> {
        let mut branch = self.branch_vertices();
        let center = branch.next().ok_or(Error::Shape("a star needs a vertex of degree three or more"))?;
        if branch.next().is_some() {
            return Err(Error::Shape("a star has exactly one branch vertex"));
        }
        if self.degree(center) != self.vertex_count() - 1 {
            return Err(Error::Shape("every edge of a star joins the center to a leaf"));
        }
        let arms = self
            .leaves
            .iter()
            .map(|&l| self.incident[l][0])
            .collect();
        Ok(Star { tree: self, center, arms })
    }
}

/// A star-shaped tree seen through its arms. Arm `i` (1-based) ends at leaf number `i`.
#[derive(Clone, Debug)]
pub struct Star<'a> {
    tree: &'a Tree,
    center: VertexId,
    arms: Vec<EdgeId>,
}

impl<'a> Star<'a> {
    pub fn tree(&self) -> &'a Tree {
        self.tree
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    /// Number of arms.
    pub fn k(&self) -> usize {
        self.arms.len()
    }

    pub fn arm_edge(&self, arm: usize) -> EdgeId {
        self.arms[arm - 1]
    }

    pub fn arm_len(&self, arm: usize) -> f64 {
        self.tree.edge(self.arm_edge(arm)).len
    }

    /// Arm following `arm` cyclically.
    pub fn next_arm(&self, arm: usize) -> usize {
        arm % self.k() + 1
    }

    pub fn coord(&self, p: &Point) -> StarCoord {
        match *p {
            Point::Vertex(v) if v == self.center => StarCoord::Center,
            Point::Vertex(v) => {
                let arm = self.tree.leaf_number(v).unwrap();
                StarCoord::Arm { arm, depth: self.arm_len(arm) }
            }
            Point::Edge { edge, offset } => {
                let ed = self.tree.edge(edge);
                let leaf = ed.other(self.center);
                let arm = self.tree.leaf_number(leaf).unwrap();
                let depth = if ed.u == self.center { offset } else { ed.len - offset };
                StarCoord::Arm { arm, depth }
            }
        }
    }

    /// Inverse of [`Star::coord`]; depth 0 on any arm is the center.
    pub fn point(&self, c: StarCoord) -> Result<Point> {
        match c {
            StarCoord::Center => Ok(Point::Vertex(self.center)),
            StarCoord::Arm { arm, depth } => {
                if arm == 0 || arm > self.k() {
                    return Err(Error::Argument("arm index out of range"));
                }
                let e = self.arm_edge(arm);
                let ed = self.tree.edge(e);
                if !(0.0..=ed.len + SNAP).contains(&depth) {
                    return Err(Error::Argument("depth outside the arm"));
                }
                let off = if ed.u == self.center { depth } else { ed.len - depth };
                Ok(self.tree.point_on_edge(e, off))
            }
        }
    }

    /// Shorthand for a point at `depth` on `arm`.
    pub fn at(&self, arm: usize, depth: f64) -> Point {
        self.point(StarCoord::Arm { arm, depth }).expect("arm position out of range")
    }
}
