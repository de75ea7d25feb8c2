//! Unordered two-robot planning on a tree under the ℓ1 metric.
//!
//! The start points are drawn as black dots and the targets as white dots.
//! The convex hull of the four dots has one of five shapes (Y, X, H and the
//! degenerate I, with Y and I split further), and each shape, together with
//! where the colors sit relative to the arm numbering, fixes a motion: one or
//! two uniform single-particle moves, or a simultaneous pair of moves.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::{BiPath, Metric, OrderedConfig, UnorderedConfig};
use crate::tree::{Point, Tree, VertexId};
use crate::{Error, Result, TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dot {
    pub pos: Point,
    pub color: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullType {
    Y1,
    Y2,
    X,
    H,
    I1,
    I2,
    I3,
}

impl HullType {
    pub fn name(self) -> &'static str {
        match self {
            HullType::Y1 => "Y1",
            HullType::Y2 => "Y2",
            HullType::X => "X",
            HullType::H => "H",
            HullType::I1 => "I1",
            HullType::I2 => "I2",
            HullType::I3 => "I3",
        }
    }

    pub fn is_i(self) -> bool {
        matches!(self, HullType::I1 | HullType::I2 | HullType::I3)
    }
}

/// The hull of the four dots with its arm numbering.
#[derive(Clone, Debug, PartialEq)]
pub struct HullDiagram {
    pub kind: HullType,
    /// `a1, a2, b1, b2`; the first two are black.
    pub dots: [Dot; 4],
    /// The center for Y and X, `v0` and `v1` for H, and for I the interior
    /// branch vertex used for the arm numbering (absent if there is none).
    pub branch: Vec<VertexId>,
    /// Index into `branch` of the vertex each dot hangs from.
    pub home: [Option<usize>; 4],
    /// Arm number of each dot at its home vertex; `None` for a dot on that vertex.
    pub arms: [Option<usize>; 4],
    /// Endpoints of an I diagram and their arm numbers at the reference vertex.
    pub ends: Option<[Point; 2]>,
    pub end_arms: Option<[usize; 2]>,
}

/// Rule sets: three on a general tree, two on the Y-graph, one on an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ESet {
    E1,
    E2,
    E3,
    E1Prime,
    E2Prime,
    Interval,
}

impl ESet {
    pub fn rule_id(self) -> u8 {
        match self {
            ESet::E1 | ESet::E1Prime | ESet::Interval => 0,
            ESet::E2 | ESet::E2Prime => 1,
            ESet::E3 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ESet::E1 => "E1",
            ESet::E2 => "E2",
            ESet::E3 => "E3",
            ESet::E1Prime => "E1'",
            ESet::E2Prime => "E2'",
            ESet::Interval => "interval",
        }
    }
}

/// One particle moving uniformly along its geodesic during `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leg {
    pub particle: u8,
    pub from: Point,
    pub to: Point,
    pub start: f64,
    pub end: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimedMotion {
    pub start: OrderedConfig,
    pub legs: Vec<Leg>,
    /// Vertex arrival time of point 2 in the Y-graph diagrams A and B.
    pub t0: Option<f64>,
}

impl TimedMotion {
    fn position(&self, tree: &Tree, particle: u8, t: f64) -> Point {
        let mut cur = if particle == 1 { self.start.p1 } else { self.start.p2 };
        for leg in self.legs.iter().filter(|l| l.particle == particle) {
            if t <= leg.start {
                break;
            }
            if t >= leg.end {
                cur = leg.to;
                continue;
            }
            let frac = (t - leg.start) / (leg.end - leg.start);
            return tree.point_along(&leg.from, &leg.to, frac * tree.distance(&leg.from, &leg.to));
        }
        cur
    }

    /// Compiles the legs into a breakpoint path.
    pub fn to_path(&self, tree: &Tree) -> BiPath {
        let mut times = vec![0.0, 1.0];
        for l in &self.legs {
            times.push(l.start);
            times.push(l.end);
        }
        times.sort_by(f64::total_cmp);
        times.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        *times.last_mut().unwrap() = 1.0;
        if times.len() < 2 {
            return BiPath::constant(self.start, 0.0, false);
        }
        let timed: Vec<(f64, OrderedConfig)> = times
            .iter()
            .map(|&t| (t, OrderedConfig::new(self.position(tree, 1, t), self.position(tree, 2, t))))
            .collect();
        BiPath::from_timed(tree, 0.0, false, &timed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnorderedPlan {
    pub diagram: HullDiagram,
    pub eset: ESet,
    pub rule_id: u8,
    pub motion: TimedMotion,
    pub path: BiPath,
    /// ℓ1 length of `path`.
    pub length: f64,
}

/// How the planner treats a tree: by its homeomorphism type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Interval,
    Y,
    General,
}

pub fn tree_shape(tree: &Tree) -> TreeShape {
    let branch: Vec<VertexId> = tree.branch_vertices().collect();
    match branch.as_slice() {
        [] => TreeShape::Interval,
        [v] if tree.degree(*v) == 3 => TreeShape::Y,
        _ => TreeShape::General,
    }
}

fn close(tree: &Tree, p: &Point, q: &Point) -> bool {
    p == q || tree.distance(p, q) <= TOL
}

/// Whether `p` lies on the path from `q` to `r`.
fn between(tree: &Tree, q: &Point, p: &Point, r: &Point) -> bool {
    let d = tree.distance(q, r);
    tree.distance(q, p) + tree.distance(p, r) <= d + TOL * d.max(1.0)
}

fn as_vertex(tree: &Tree, p: &Point) -> Option<VertexId> {
    match *p {
        Point::Vertex(v) => Some(v),
        Point::Edge { edge, offset } => {
            let e = tree.edge(edge);
            if offset <= TOL {
                Some(e.u)
            } else if e.len - offset <= TOL {
                Some(e.v)
            } else {
                None
            }
        }
    }
}

fn arm_of(tree: &Tree, v: VertexId, p: &Point) -> Option<usize> {
    if close(tree, &Point::Vertex(v), p) {
        return None;
    }
    tree.edge_toward(v, p).map(|e| tree.arm_number(v, e).unwrap())
}

fn dots_of(a: &UnorderedConfig, b: &UnorderedConfig) -> [Dot; 4] {
    let [a1, a2] = a.points();
    let [b1, b2] = b.points();
    [
        Dot { pos: a1, color: Color::Black },
        Dot { pos: a2, color: Color::Black },
        Dot { pos: b1, color: Color::White },
        Dot { pos: b2, color: Color::White },
    ]
}

fn branch_vertex(tree: &Tree, p: &Point) -> Result<VertexId> {
    as_vertex(tree, p).ok_or(Error::Structure("hull branch point is not a vertex"))
}

/// Classifies the hull of the four dots.
pub fn hull_classify(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<HullDiagram> {
    let dots = dots_of(a, b);
    let mut pos: Vec<Point> = Vec::with_capacity(4);
    for d in &dots {
        if !pos.iter().any(|p| close(tree, p, &d.pos)) {
            pos.push(d.pos);
        }
    }
    let n = pos.len();
    let extreme: Vec<Point> = (0..n)
        .filter(|&i| {
            !(0..n).any(|j| (j + 1..n).any(|k| j != i && k != i && between(tree, &pos[j], &pos[i], &pos[k])))
        })
        .map(|i| pos[i])
        .collect();

    let mut diagram = HullDiagram {
        kind: HullType::I3,
        dots,
        branch: Vec::new(),
        home: [None; 4],
        arms: [None; 4],
        ends: None,
        end_arms: None,
    };
    match extreme.len() {
        2 => classify_i(tree, &mut diagram, extreme[0], extreme[1]),
        3 => {
            let c = branch_vertex(tree, &tree.median(&extreme[0], &extreme[1], &extreme[2]))?;
            let at_center = dots.iter().any(|d| close(tree, &d.pos, &Point::Vertex(c)));
            diagram.kind = if at_center { HullType::Y1 } else { HullType::Y2 };
            diagram.branch = vec![c];
            for (i, d) in dots.iter().enumerate() {
                diagram.home[i] = Some(0);
                diagram.arms[i] = arm_of(tree, c, &d.pos);
            }
        }
        4 => {
            let x = &extreme;
            let d = |i: usize, j: usize| tree.distance(&x[i], &x[j]);
            let splits = [
                ([0, 1], [2, 3], d(0, 1) + d(2, 3)),
                ([0, 2], [1, 3], d(0, 2) + d(1, 3)),
                ([0, 3], [1, 2], d(0, 3) + d(1, 2)),
            ];
            let (lo, hi) = splits.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), s| (lo.min(s.2), hi.max(s.2)));
            let (p, q, _) = splits.iter().copied().min_by(|s, t| s.2.total_cmp(&t.2)).unwrap();
            if (hi - lo) / 2.0 <= TOL * hi.max(1.0) {
                let c = branch_vertex(tree, &tree.median(&x[0], &x[1], &x[2]))?;
                diagram.kind = HullType::X;
                diagram.branch = vec![c];
                for (i, dt) in dots.iter().enumerate() {
                    diagram.home[i] = Some(0);
                    diagram.arms[i] = arm_of(tree, c, &dt.pos);
                }
            } else {
                let v0 = branch_vertex(tree, &tree.median(&x[p[0]], &x[p[1]], &x[q[0]]))?;
                let v1 = branch_vertex(tree, &tree.median(&x[q[0]], &x[q[1]], &x[p[0]]))?;
                diagram.kind = HullType::H;
                diagram.branch = vec![v0, v1];
                for (i, dt) in dots.iter().enumerate() {
                    let near0 = tree.distance(&dt.pos, &Point::Vertex(v0)) < tree.distance(&dt.pos, &Point::Vertex(v1));
                    let (h, v) = if near0 { (0, v0) } else { (1, v1) };
                    diagram.home[i] = Some(h);
                    diagram.arms[i] = arm_of(tree, v, &dt.pos);
                }
            }
        }
        _ => return Err(Error::Structure("degenerate hull")),
    }
    Ok(diagram)
}

fn classify_i(tree: &Tree, diagram: &mut HullDiagram, e0: Point, e1: Point) {
    diagram.ends = Some([e0, e1]);
    let t = |p: &Point| tree.distance(&e0, p);
    let mut ts: Vec<f64> = diagram.dots.iter().map(|d| t(&d.pos)).collect();
    ts.sort_by(f64::total_cmp);
    let mid = (ts[1] + ts[2]) / 2.0;
    let interior = tree.branch_vertices().filter(|&v| {
        let pv = Point::Vertex(v);
        between(tree, &e0, &pv, &e1) && !close(tree, &pv, &e0) && !close(tree, &pv, &e1)
    });
    let reference = interior.min_by(|&u, &v| {
        let du = (t(&Point::Vertex(u)) - mid).abs();
        let dv = (t(&Point::Vertex(v)) - mid).abs();
        du.total_cmp(&dv)
    });
    let Some(v) = reference else {
        diagram.kind = HullType::I3;
        return;
    };
    diagram.branch = vec![v];
    for (i, d) in diagram.dots.iter().enumerate() {
        diagram.home[i] = Some(0);
        diagram.arms[i] = arm_of(tree, v, &d.pos);
    }
    let arms = [arm_of(tree, v, &e0).unwrap(), arm_of(tree, v, &e1).unwrap()];
    diagram.end_arms = Some(arms);
    let (small, large) = if arms[0] < arms[1] { (e0, e1) } else { (e1, e0) };
    let has = |end: &Point, c: Color| diagram.dots.iter().any(|d| d.color == c && close(tree, &d.pos, end));
    diagram.kind = if has(&small, Color::White) && has(&large, Color::Black) {
        HullType::I1
    } else if has(&small, Color::Black) && has(&large, Color::White) {
        HullType::I2
    } else {
        HullType::I3
    };
}

/// Legs of a Y diagram: per distinct arm number, the dots on it.
struct YLegs {
    center: VertexId,
    /// Arm numbers of the three legs, increasing.
    legs: [usize; 3],
    /// Dot at the center, if any.
    center_dot: Option<usize>,
}

impl YLegs {
    fn new(d: &HullDiagram) -> YLegs {
        let mut legs: Vec<usize> = d.arms.iter().flatten().copied().collect();
        legs.sort_unstable();
        legs.dedup();
        YLegs {
            center: d.branch[0],
            legs: [legs[0], legs[1], legs[2]],
            center_dot: (0..4).find(|&i| d.arms[i].is_none()),
        }
    }

    fn dots_on(&self, d: &HullDiagram, leg: usize) -> Vec<usize> {
        (0..4).filter(|&i| d.arms[i] == Some(leg)).collect()
    }

    /// The leg holding two dots, counting a center dot as inner dot of the leg whose dot matches its color.
    fn doubled(&self, d: &HullDiagram) -> usize {
        match self.center_dot {
            Some(c) => *self
                .legs
                .iter()
                .find(|&&l| self.dots_on(d, l).iter().any(|&i| d.dots[i].color == d.dots[c].color))
                .unwrap(),
            None => *self.legs.iter().find(|&&l| self.dots_on(d, l).len() == 2).unwrap(),
        }
    }

    /// Inner and outer dot of the doubled leg.
    fn inner_outer(&self, tree: &Tree, d: &HullDiagram) -> (usize, usize) {
        let leg = self.doubled(d);
        let mut on = self.dots_on(d, leg);
        if let Some(c) = self.center_dot {
            on.push(c);
        }
        let depth = |i: usize| tree.distance(&Point::Vertex(self.center), &d.dots[i].pos);
        on.sort_by(|&i, &j| depth(i).total_cmp(&depth(j)));
        (on[0], on[1])
    }

    fn is_mixed(&self, d: &HullDiagram) -> bool {
        self.center_dot.is_none() && {
            let on = self.dots_on(d, self.doubled(d));
            d.dots[on[0]].color != d.dots[on[1]].color
        }
    }

    /// The dot of `color` on `leg` other than the doubled leg's.
    fn single_on(&self, d: &HullDiagram, leg: usize) -> usize {
        self.dots_on(d, leg)[0]
    }
}

/// E-set of a diagram on a general tree.
pub fn assign_eset(d: &HullDiagram) -> ESet {
    match d.kind {
        HullType::I1 => ESet::E1,
        HullType::I2 => ESet::E2,
        HullType::I3 | HullType::X | HullType::H => ESet::E3,
        HullType::Y1 | HullType::Y2 => {
            let y = YLegs::new(d);
            if y.is_mixed(d) {
                return ESet::E3;
            }
            let smallest = y.legs[0];
            let black = y.dots_on(d, smallest).iter().any(|&i| d.dots[i].color == Color::Black);
            if black {
                ESet::E1
            } else {
                ESet::E2
            }
        }
    }
}

fn particle(black: usize) -> u8 {
    black as u8 + 1
}

fn leg(d: &HullDiagram, (b, w): (usize, usize), start: f64, end: f64) -> Leg {
    Leg { particle: particle(b), from: d.dots[b].pos, to: d.dots[w].pos, start, end }
}

fn start_config(d: &HullDiagram) -> OrderedConfig {
    OrderedConfig::new(d.dots[0].pos, d.dots[1].pos)
}

fn sequential(tree: &Tree, d: &HullDiagram, first: (usize, usize), second: (usize, usize)) -> TimedMotion {
    let l1 = tree.distance(&d.dots[first.0].pos, &d.dots[first.1].pos);
    let l2 = tree.distance(&d.dots[second.0].pos, &d.dots[second.1].pos);
    let mut legs = Vec::new();
    if l1 + l2 > 0.0 {
        let split = l1 / (l1 + l2);
        if l1 > 0.0 {
            legs.push(leg(d, first, 0.0, split));
        }
        if l2 > 0.0 {
            legs.push(leg(d, second, split, 1.0));
        }
    }
    TimedMotion { start: start_config(d), legs, t0: None }
}

fn simultaneous(d: &HullDiagram, m1: (usize, usize), m2: (usize, usize)) -> TimedMotion {
    TimedMotion { start: start_config(d), legs: vec![leg(d, m1, 0.0, 1.0), leg(d, m2, 0.0, 1.0)], t0: None }
}

fn other_black(b: usize) -> usize {
    1 - b
}

fn other_white(w: usize) -> usize {
    5 - w
}

/// Order-preserving matching of an I diagram, measured from `origin`: pairs sorted by position.
fn sorted_matching(tree: &Tree, d: &HullDiagram, origin: &Point) -> [(usize, usize); 2] {
    let t = |i: usize| tree.distance(origin, &d.dots[i].pos);
    let (b0, b1) = if t(0) <= t(1) { (0, 1) } else { (1, 0) };
    let (w0, w1) = if t(2) <= t(3) { (2, 3) } else { (3, 2) };
    [(b0, w0), (b1, w1)]
}

fn has_color(tree: &Tree, d: &HullDiagram, end: &Point, c: Color) -> bool {
    d.dots.iter().any(|x| x.color == c && close(tree, &x.pos, end))
}

fn finish(tree: &Tree, diagram: HullDiagram, eset: ESet, motion: TimedMotion) -> UnorderedPlan {
    let path = motion.to_path(tree);
    let length = path.length(tree, Metric::L1);
    UnorderedPlan { diagram, eset, rule_id: eset.rule_id(), motion, path, length }
}

/// Motion of an I diagram: sequential from the black end when the ends carry
/// opposite colors, simultaneous otherwise.
fn i_motion(tree: &Tree, d: &HullDiagram) -> TimedMotion {
    let [e0, e1] = d.ends.unwrap();
    let black_end = match (d.kind, d.end_arms) {
        (HullType::I1, Some([s0, s1])) => Some(if s0 > s1 { e0 } else { e1 }),
        (HullType::I2, Some([s0, s1])) => Some(if s0 < s1 { e0 } else { e1 }),
        _ => {
            if has_color(tree, d, &e0, Color::Black) && has_color(tree, d, &e1, Color::White) {
                Some(e0)
            } else if has_color(tree, d, &e1, Color::Black) && has_color(tree, d, &e0, Color::White) {
                Some(e1)
            } else {
                None
            }
        }
    };
    match black_end {
        Some(origin) => {
            let [near, far] = sorted_matching(tree, d, &origin);
            let m = sequential(tree, d, far, near);
            if m.to_path(tree).min_separation(tree) > TOL {
                return m;
            }
            let m = sequential(tree, d, near, far);
            if m.to_path(tree).min_separation(tree) > TOL {
                return m;
            }
            simultaneous(d, near, far)
        }
        None => {
            let [p, q] = sorted_matching(tree, d, &e0);
            simultaneous(d, p, q)
        }
    }
}

/// Plans on a tree that is neither an interval nor the Y-graph.
pub fn plan_unordered(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<UnorderedPlan> {
    match tree_shape(tree) {
        TreeShape::Interval => return Err(Error::Shape("interval tree: use plan_interval")),
        TreeShape::Y => return Err(Error::Shape("Y-graph: use plan_y")),
        TreeShape::General => {}
    }
    let d = hull_classify(tree, a, b)?;
    let eset = assign_eset(&d);
    let motion = match d.kind {
        HullType::Y1 | HullType::Y2 if eset != ESet::E3 => y_sequential(tree, &d, eset),
        HullType::Y2 => {
            let y = YLegs::new(&d);
            let on = y.dots_on(&d, y.doubled(&d));
            let (bd, wd) = if d.dots[on[0]].color == Color::Black { (on[0], on[1]) } else { (on[1], on[0]) };
            simultaneous(&d, (bd, wd), (other_black(bd), other_white(wd)))
        }
        HullType::X => {
            let arm = |i: usize| d.arms[i].unwrap();
            let b = if arm(0) < arm(1) { 0 } else { 1 };
            let w = if arm(2) < arm(3) { 2 } else { 3 };
            sequential(tree, &d, (b, w), (other_black(b), other_white(w)))
        }
        HullType::H => {
            if d.home[0] == d.home[1] {
                let arm = |i: usize| d.arms[i].unwrap();
                let b = if arm(0) < arm(1) { 0 } else { 1 };
                let w = if arm(2) < arm(3) { 2 } else { 3 };
                sequential(tree, &d, (b, w), (other_black(b), other_white(w)))
            } else {
                let w = if d.home[2] == d.home[0] { 2 } else { 3 };
                simultaneous(&d, (0, w), (1, other_white(w)))
            }
        }
        _ => i_motion(tree, &d),
    };
    Ok(finish(tree, d, eset, motion))
}

/// The E1/E2 Y diagrams: two sequential moves, rotating with the arm order.
fn y_sequential(tree: &Tree, d: &HullDiagram, eset: ESet) -> TimedMotion {
    let y = YLegs::new(d);
    let rank = |leg: usize| y.legs.iter().position(|&l| l == leg).unwrap() as i32;
    let by_rank = |r: i32| y.legs[r.rem_euclid(3) as usize];
    let s = if eset == ESet::E1 { 1 } else { -1 };
    let dl = y.doubled(d);
    let (inner, outer) = y.inner_outer(tree, d);
    if d.dots[outer].color == Color::White {
        let b_first = y.single_on(d, by_rank(rank(dl) - s));
        sequential(tree, d, (b_first, outer), (other_black(b_first), inner))
    } else {
        let w_first = y.single_on(d, by_rank(rank(dl) - s));
        let w_second = y.single_on(d, by_rank(rank(dl) + s));
        sequential(tree, d, (inner, w_first), (outer, w_second))
    }
}

/// Point 2's vertex arrival time in diagram A.
pub fn t0_diagram_a(d1: f64, d2: f64, d3: f64, d4: f64) -> f64 {
    ratio(2.0 * d1, 2.0 * d1 + d3).max(ratio(d2, d2 + d4))
}

/// Point 2's vertex arrival time in diagram B.
pub fn t0_diagram_b(d1: f64, d2: f64, d3: f64, d4: f64) -> f64 {
    ratio(d1, d1 + 2.0 * d3).min(ratio(d2, d2 + d4))
}

fn ratio(x: f64, y: f64) -> f64 {
    if y > 0.0 {
        x / y
    } else {
        0.0
    }
}

/// Which of the two timed Y-graph diagrams applies, if either.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimedDiagram {
    /// Two white dots share a leg (or one white dot is at the center).
    A,
    /// Two black dots share a leg (or one black dot is at the center).
    B,
}

/// Plans on a tree homeomorphic to the Y-graph; legs are numbered clockwise by leaf.
pub fn plan_y(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<UnorderedPlan> {
    if tree_shape(tree) != TreeShape::Y {
        return Err(Error::Shape("plan_y needs a tree homeomorphic to the Y-graph"));
    }
    let d = hull_classify(tree, a, b)?;
    let center = tree.branch_vertices().next().unwrap();
    let next = next_leg;

    if d.kind.is_i() {
        let [e0, e1] = d.ends.unwrap();
        let (l0, l1) = (arm_of(tree, center, &e0), arm_of(tree, center, &e1));
        let through = matches!((l0, l1), (Some(x), Some(y)) if x != y);
        let mut eset = ESet::E1Prime;
        if let (true, Some(l0), Some(l1)) = (through, l0, l1) {
            let empty = 6 - l0 - l1;
            let (w_end, b_end) = if next(empty) == l0 { (e0, e1) } else { (e1, e0) };
            if has_color(tree, &d, &w_end, Color::White) && has_color(tree, &d, &b_end, Color::Black) {
                eset = ESet::E2Prime;
            }
        }
        let [p, q] = sorted_matching(tree, &d, &e0);
        let motion = simultaneous(&d, p, q);
        return Ok(finish(tree, d, eset, motion));
    }

    let y = YLegs::new(&d);
    if y.is_mixed(&d) {
        let dl = y.doubled(&d);
        let on = y.dots_on(&d, dl);
        let (bd, wd) = if d.dots[on[0]].color == Color::Black { (on[0], on[1]) } else { (on[1], on[0]) };
        let w_next = d.dots[y.single_on(&d, next(dl))].color == Color::White;
        let eset = if w_next { ESet::E1Prime } else { ESet::E2Prime };
        let motion = simultaneous(&d, (bd, wd), (other_black(bd), other_white(wd)));
        return Ok(finish(tree, d, eset, motion));
    }

    let (_, _, motion) = timed_y_motion(tree, &d, &y);
    Ok(finish(tree, d, ESet::E2Prime, motion))
}

fn next_leg(l: usize) -> usize {
    l % 3 + 1
}

fn prev_leg(l: usize) -> usize {
    (l + 1) % 3 + 1
}

fn timed_y_motion(tree: &Tree, d: &HullDiagram, y: &YLegs) -> (TimedDiagram, [f64; 4], TimedMotion) {
    let (next, prev) = (next_leg, prev_leg);
    let c = Point::Vertex(y.center);
    let depth = |i: usize| tree.distance(&c, &d.dots[i].pos);
    let dl = y.doubled(d);
    let (inner, outer) = y.inner_outer(tree, d);
    let (kind, one, two) = if d.dots[outer].color == Color::White {
        let b1 = y.single_on(d, prev(dl));
        (TimedDiagram::A, (b1, outer), (other_black(b1), inner))
    } else {
        let w1 = y.single_on(d, next(dl));
        (TimedDiagram::B, (outer, w1), (inner, other_white(w1)))
    };
    let (d1, d3, d2, d4) = (depth(one.0), depth(one.1), depth(two.0), depth(two.1));
    let t0 = match kind {
        TimedDiagram::A => t0_diagram_a(d1, d2, d3, d4),
        TimedDiagram::B => t0_diagram_b(d1, d2, d3, d4),
    };
    let mut legs = vec![leg(d, one, 0.0, 1.0)];
    let p2 = particle(two.0);
    if d2 > 0.0 && t0 > 0.0 {
        legs.push(Leg { particle: p2, from: d.dots[two.0].pos, to: c, start: 0.0, end: t0 });
    }
    if d4 > 0.0 && t0 < 1.0 {
        legs.push(Leg { particle: p2, from: c, to: d.dots[two.1].pos, start: t0, end: 1.0 });
    }
    (kind, [d1, d2, d3, d4], TimedMotion { start: start_config(d), legs, t0: Some(t0) })
}

/// Which timed diagram a Y-graph pair falls in, with its vertex distances `[d1, d2, d3, d4]`.
pub fn timed_diagram(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<Option<(TimedDiagram, [f64; 4])>> {
    if tree_shape(tree) != TreeShape::Y {
        return Err(Error::Shape("timed diagrams exist only on the Y-graph"));
    }
    let d = hull_classify(tree, a, b)?;
    if !matches!(d.kind, HullType::Y1 | HullType::Y2) {
        return Ok(None);
    }
    let y = YLegs::new(&d);
    if y.is_mixed(&d) {
        return Ok(None);
    }
    let (kind, dist, _) = timed_y_motion(tree, &d, &y);
    Ok(Some((kind, dist)))
}

/// Plans on a tree homeomorphic to an interval: order-preserving simultaneous motion.
pub fn plan_interval(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<UnorderedPlan> {
    if tree_shape(tree) != TreeShape::Interval {
        return Err(Error::Shape("plan_interval needs a tree homeomorphic to an interval"));
    }
    let d = hull_classify(tree, a, b)?;
    let origin = Point::Vertex(tree.leaves()[0]);
    let [p, q] = sorted_matching(tree, &d, &origin);
    let motion = simultaneous(&d, p, q);
    Ok(finish(tree, d, ESet::Interval, motion))
}

/// Dispatches on the tree's shape.
pub fn plan(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> Result<UnorderedPlan> {
    match tree_shape(tree) {
        TreeShape::Interval => plan_interval(tree, a, b),
        TreeShape::Y => plan_y(tree, a, b),
        TreeShape::General => plan_unordered(tree, a, b),
    }
}

/// Minimal ℓ1 cost of matching the start points to the targets.
pub fn matching_cost(tree: &Tree, a: &UnorderedConfig, b: &UnorderedConfig) -> f64 {
    let [a1, a2] = a.points();
    let [b1, b2] = b.points();
    let straight = tree.distance(&a1, &b1) + tree.distance(&a2, &b2);
    let crossed = tree.distance(&a1, &b2) + tree.distance(&a2, &b1);
    straight.min(crossed)
}
