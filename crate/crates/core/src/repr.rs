//! Planar charts for two particles on a star: each particle's position becomes a
//! signed depth, and the separation constraint becomes a polygonal obstacle
//! around the origin.

use alloc::vec::Vec;

use crate::config::{Metric, OrderedConfig};
use crate::math::hypot;
use crate::tree::{Star, StarCoord};
use crate::{Error, Result, TOL};

/// A point of the representation plane: particle 1's signed depth on `x`, particle 2's on `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        PlanarPoint { x, y }
    }

    fn lerp(self, o: PlanarPoint, t: f64) -> PlanarPoint {
        PlanarPoint::new(self.x + t * (o.x - self.x), self.y + t * (o.y - self.y))
    }
}

/// Shape of the forbidden region in one quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Both axes run along the same arm: forbidden where `||x| − |y|| < ε`.
    Band,
    /// Different arms: forbidden where `|x| + |y| < ε`.
    Diamond,
}

/// Assignment of arms to the four half-axes. `None` marks an unused half.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub x_neg: Option<usize>,
    pub x_pos: Option<usize>,
    pub y_neg: Option<usize>,
    pub y_pos: Option<usize>,
    pub eps: f64,
    lo: PlanarPoint,
    hi: PlanarPoint,
}

/// Which particle must reach the center first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crossing {
    First(u8),
}

/// A feasible polyline in a chart and its length in the requested metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<PlanarPoint>,
    pub length: f64,
}

impl Chart {
    /// Builds a chart; domain bounds come from the arm lengths.
    pub fn new(
        star: &Star<'_>,
        x_neg: Option<usize>,
        x_pos: Option<usize>,
        y_neg: Option<usize>,
        y_pos: Option<usize>,
        eps: f64,
    ) -> Result<Chart> {
        let bad_axis = |n: Option<usize>, p: Option<usize>| (n.is_none() && p.is_none()) || (n.is_some() && n == p);
        if bad_axis(x_neg, x_pos) || bad_axis(y_neg, y_pos) {
            return Err(Error::Argument("each axis needs two distinct arms or one arm and an unused half"));
        }
        let len = |a: Option<usize>| a.map_or(0.0, |a| star.arm_len(a));
        Ok(Chart {
            x_neg,
            x_pos,
            y_neg,
            y_pos,
            eps,
            lo: PlanarPoint::new(-len(x_neg), -len(y_neg)),
            hi: PlanarPoint::new(len(x_pos), len(y_pos)),
        })
    }

    /// Lower-left and upper-right corners of the domain box.
    pub fn bounds(&self) -> (PlanarPoint, PlanarPoint) {
        (self.lo, self.hi)
    }

    fn x_arm(&self, x: f64) -> Option<usize> {
        if x < 0.0 {
            self.x_neg
        } else {
            self.x_pos
        }
    }

    fn y_arm(&self, y: f64) -> Option<usize> {
        if y < 0.0 {
            self.y_neg
        } else {
            self.y_pos
        }
    }

    /// Obstacle shape in the quadrant with the given signs, if that quadrant exists.
    pub fn shape(&self, sx: f64, sy: f64) -> Option<Shape> {
        let (ax, ay) = (self.x_arm(sx)?, self.y_arm(sy)?);
        Some(if ax == ay { Shape::Band } else { Shape::Diamond })
    }

    /// Obstacle corners lying in the domain, in boundary cyclic order.
    pub fn corners(&self) -> Vec<PlanarPoint> {
        let e = self.eps;
        [
            PlanarPoint::new(-e, 0.0),
            PlanarPoint::new(0.0, -e),
            PlanarPoint::new(e, 0.0),
            PlanarPoint::new(0.0, e),
        ]
        .into_iter()
        .filter(|p| self.in_box(p))
        .collect()
    }

    fn in_box(&self, p: &PlanarPoint) -> bool {
        p.x >= self.lo.x - TOL && p.x <= self.hi.x + TOL && p.y >= self.lo.y - TOL && p.y <= self.hi.y + TOL
    }

    /// Separation of the particles at a planar point.
    pub fn separation(&self, p: &PlanarPoint) -> f64 {
        if p.x == 0.0 {
            return p.y.abs();
        }
        if p.y == 0.0 {
            return p.x.abs();
        }
        match self.shape(p.x, p.y) {
            Some(Shape::Band) => (p.x.abs() - p.y.abs()).abs(),
            _ => p.x.abs() + p.y.abs(),
        }
    }

    /// Whether `p` lies in the domain and outside the open obstacle.
    pub fn is_free(&self, p: &PlanarPoint) -> bool {
        self.in_box(p) && self.separation(p) >= self.eps - TOL
    }

    /// Exact minimum separation along the segment `p → q`.
    pub fn segment_min_separation(&self, p: &PlanarPoint, q: &PlanarPoint) -> f64 {
        let mut cuts = [0.0, 1.0, 2.0, 2.0];
        let mut n = 2;
        for (a, b) in [(p.x, q.x), (p.y, q.y)] {
            if (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) {
                cuts[n] = a / (a - b);
                n += 1;
            }
        }
        let cuts = &mut cuts[..n];
        cuts.sort_by(f64::total_cmp);
        let mut best = f64::INFINITY;
        for w in cuts.windows(2) {
            let (a, b) = (p.lerp(*q, w[0]), p.lerp(*q, w[1]));
            let mid = p.lerp(*q, (w[0] + w[1]) / 2.0);
            let piece = match self.shape(mid.x, mid.y) {
                Some(Shape::Band) => {
                    let (fa, fb) = (a.x.abs() - a.y.abs(), b.x.abs() - b.y.abs());
                    if fa * fb < 0.0 {
                        0.0
                    } else {
                        fa.abs().min(fb.abs())
                    }
                }
                _ => self.separation(&a).min(self.separation(&b)),
            };
            best = best.min(piece);
        }
        best
    }

    /// Whether the closed segment stays in the domain and avoids the open obstacle.
    pub fn segment_is_free(&self, p: &PlanarPoint, q: &PlanarPoint) -> bool {
        if !self.in_box(p) || !self.in_box(q) {
            return false;
        }
        self.segment_min_separation(p, q) >= self.eps - TOL
    }

    /// Planar coordinates of a configuration; errors if a particle is on an arm the chart lacks.
    pub fn embed(&self, star: &Star<'_>, c: &OrderedConfig) -> Result<PlanarPoint> {
        let signed = |p, neg: Option<usize>, pos: Option<usize>| match star.coord(p) {
            StarCoord::Center => Ok(0.0),
            StarCoord::Arm { arm, depth } if Some(arm) == neg => Ok(-depth),
            StarCoord::Arm { arm, depth } if Some(arm) == pos => Ok(depth),
            StarCoord::Arm { .. } => Err(Error::NotRepresentable),
        };
        Ok(PlanarPoint::new(
            signed(&c.p1, self.x_neg, self.x_pos)?,
            signed(&c.p2, self.y_neg, self.y_pos)?,
        ))
    }

    /// Configuration represented by a planar point.
    pub fn unembed(&self, star: &Star<'_>, p: &PlanarPoint) -> Result<OrderedConfig> {
        let point = |v: f64, neg: Option<usize>, pos: Option<usize>| {
            if v.abs() <= 1e-12 {
                star.point(StarCoord::Center)
            } else {
                let arm = if v < 0.0 { neg } else { pos }.ok_or(Error::NotRepresentable)?;
                star.point(StarCoord::Arm { arm, depth: v.abs() })
            }
        };
        Ok(OrderedConfig::new(
            point(p.x, self.x_neg, self.x_pos)?,
            point(p.y, self.y_neg, self.y_pos)?,
        ))
    }
}

/// Chart spanned by the arms of `a` and `b`: particle 1's start arm on the
/// negative x-axis and its end arm on the positive one, likewise for particle 2
/// on y. A particle at the center takes its other endpoint's arm; if both of a
/// particle's endpoints are at the center it takes an arm unused by the other particle.
pub fn chart_of(star: &Star<'_>, a: &OrderedConfig, b: &OrderedConfig, eps: f64) -> Result<Chart> {
    let arms = |p, q| (star.coord(p).arm(), star.coord(q).arm());
    let (a1, b1) = arms(&a.p1, &b.p1);
    let (a2, b2) = arms(&a.p2, &b.p2);
    let spare = |taken: [Option<usize>; 2]| (1..=star.k()).find(|&i| !taken.contains(&Some(i)));
    let resolve = |s: Option<usize>, t: Option<usize>, other: [Option<usize>; 2]| -> (Option<usize>, Option<usize>) {
        match (s, t) {
            (Some(s), Some(t)) if s != t => (Some(s), Some(t)),
            (Some(s), _) => (Some(s), None),
            (None, Some(t)) => (Some(t), None),
            (None, None) => (spare(other), None),
        }
    };
    let (x_neg, x_pos) = resolve(a1, b1, [a2, b2]);
    let (y_neg, y_pos) = resolve(a2, b2, [a1, b1]);
    Chart::new(star, x_neg, x_pos, y_neg, y_pos, eps)
}

/// Arc length at which a coordinate first reaches zero along a polyline.
fn first_zero(points: &[PlanarPoint], coord: impl Fn(&PlanarPoint) -> f64) -> Option<f64> {
    let mut s = 0.0;
    if coord(&points[0]) == 0.0 {
        return Some(0.0);
    }
    for w in points.windows(2) {
        let (a, b) = (coord(&w[0]), coord(&w[1]));
        let len = hypot(w[1].x - w[0].x, w[1].y - w[0].y);
        if b == 0.0 || a * b < 0.0 {
            return Some(s + len * a / (a - b));
        }
        s += len;
    }
    None
}

/// Crossing type of a polyline: 1 when particle 1 reaches the center first, 2 when particle 2 does.
pub fn crossing_type(points: &[PlanarPoint]) -> Option<u8> {
    match (first_zero(points, |p| p.x), first_zero(points, |p| p.y)) {
        (Some(x), Some(y)) if x < y => Some(1),
        (Some(_), Some(_)) => Some(2),
        (Some(_), None) => Some(1),
        (None, Some(_)) => Some(2),
        (None, None) => None,
    }
}

/// Length of a polyline in the given metric.
pub fn polyline_length(points: &[PlanarPoint], m: Metric) -> f64 {
    points
        .windows(2)
        .map(|w| m.combine((w[1].x - w[0].x).abs(), (w[1].y - w[0].y).abs()))
        .sum()
}

/// Shortest feasible polyline from `a` to `b` bending only at obstacle corners.
///
/// All orderings of up to four distinct corners are tried. With a crossing
/// constraint only polylines of that crossing type compete. Returns `None`
/// when no feasible polyline exists.
pub fn planar_geodesic(
    chart: &Chart,
    a: PlanarPoint,
    b: PlanarPoint,
    m: Metric,
    constraint: Option<Crossing>,
) -> Result<Option<Polyline>> {
    if !chart.is_free(&a) || !chart.is_free(&b) {
        return Err(Error::Infeasible("endpoint inside the obstacle or outside the chart"));
    }
    let corners = chart.corners();
    let n = corners.len();
    let mut best: Option<Polyline> = None;
    let mut seq: Vec<usize> = Vec::with_capacity(4);
    let mut used = [false; 4];
    let mut visit = |seq: &[usize], best: &mut Option<Polyline>| {
        let mut pts = Vec::with_capacity(seq.len() + 2);
        pts.push(a);
        pts.extend(seq.iter().map(|&i| corners[i]));
        pts.push(b);
        if !pts.windows(2).all(|w| chart.segment_is_free(&w[0], &w[1])) {
            return;
        }
        if let Some(Crossing::First(i)) = constraint {
            if crossing_type(&pts) != Some(i) {
                return;
            }
        }
        let length = polyline_length(&pts, m);
        if best.as_ref().map_or(true, |p| length < p.length - 1e-12) {
            *best = Some(Polyline { points: pts, length });
        }
    };
    fn rec(
        n: usize,
        seq: &mut Vec<usize>,
        used: &mut [bool; 4],
        best: &mut Option<Polyline>,
        visit: &mut impl FnMut(&[usize], &mut Option<Polyline>),
    ) {
        visit(seq, best);
        if seq.len() == n {
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                seq.push(i);
                rec(n, seq, used, best, visit);
                seq.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut seq, &mut used, &mut best, &mut visit);
    Ok(best)
}
