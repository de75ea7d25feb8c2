//! Minimal SVG output: trees with configuration dots, and representation planes.

use std::f64::consts::PI;
use std::fmt::Write;

use treegeo_core::repr::{Chart, PlanarPoint, Shape};
use treegeo_core::star::PlanResult;
use treegeo_core::{Point, Star, Tree};

const SIZE: f64 = 480.0;
const PAD: f64 = 24.0;

/// A marker drawn on the tree.
#[derive(Clone, Debug)]
pub struct Marker {
    pub at: Point,
    pub fill: &'static str,
    pub label: String,
}

fn banner(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<!-- treegeo {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
}

/// Vertex positions: leaves spread over the circle in leaf-number order, each
/// internal vertex at the mean angle of the leaves below it, radius = distance
/// from the root (the center of a star, otherwise the first branch vertex).
pub fn layout(tree: &Tree) -> Vec<(f64, f64)> {
    let n = tree.vertex_count();
    let root = tree.branch_vertices().next().unwrap_or(0);
    let k = tree.leaves().len().max(1);
    let mut angle = vec![0.0; n];
    let mut weight = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in tree.incident(v) {
            let w = tree.edge(e).other(v);
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    for &v in order.iter().rev() {
        if let Some(num) = tree.leaf_number(v) {
            if v != root {
                angle[v] += 2.0 * PI * (num - 1) as f64 / k as f64;
                weight[v] += 1;
            }
        }
        if v != root && weight[v] > 0 {
            let p = parent[v];
            angle[p] += angle[v];
            weight[p] += weight[v];
        }
    }
    let radius: Vec<f64> = (0..n).map(|v| tree.distance(&Point::Vertex(root), &Point::Vertex(v))).collect();
    let scale = (SIZE / 2.0 - PAD) / radius.iter().cloned().fold(1e-9, f64::max);
    (0..n)
        .map(|v| {
            let a = if weight[v] > 0 { angle[v] / weight[v] as f64 } else { 0.0 };
            let r = radius[v] * scale;
            (SIZE / 2.0 + r * a.cos(), SIZE / 2.0 - r * a.sin())
        })
        .collect()
}

fn place(tree: &Tree, pos: &[(f64, f64)], p: &Point) -> (f64, f64) {
    match *p {
        Point::Vertex(v) => pos[v],
        Point::Edge { edge, offset } => {
            let e = tree.edge(edge);
            let t = offset / e.len;
            let (a, b) = (pos[e.u], pos[e.v]);
            (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
        }
    }
}

/// The tree with its leaf numbers and the given markers.
pub fn tree_svg(tree: &Tree, markers: &[Marker]) -> String {
    let pos = layout(tree);
    let mut out = String::new();
    banner(&mut out);
    for e in tree.edges() {
        let (a, b) = (pos[e.u], pos[e.v]);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#555\" stroke-width=\"2\"/>",
            a.0, a.1, b.0, b.1
        );
    }
    for (i, &v) in tree.leaves().iter().enumerate() {
        let (x, y) = pos[v];
        let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" fill=\"#333\">{}</text>", x + 4.0, y - 4.0, i + 1);
    }
    for m in markers {
        let (x, y) = place(tree, &pos, &m.at);
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"{}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            m.fill
        );
        if !m.label.is_empty() {
            let _ = writeln!(out, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">{}</text>", x + 7.0, y + 12.0, m.label);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Obstacle polygon in the quadrant `(sx, sy)`, reaching out to `far`.
fn obstacle(shape: Shape, sx: f64, sy: f64, eps: f64, far: f64) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = match shape {
        Shape::Diamond => vec![(0.0, 0.0), (eps, 0.0), (0.0, eps)],
        Shape::Band => vec![(0.0, 0.0), (eps, 0.0), (far, far - eps), (far - eps, far), (0.0, eps)],
    };
    pts.into_iter().map(|(x, y)| (sx * x, sy * y)).collect()
}

/// The chart of a star plan: axes, obstacle, and every candidate that fits the
/// chart, the chosen one highlighted.
pub fn plane_svg(star: &Star<'_>, chart: &Chart, plan: &PlanResult) -> String {
    let (lo, hi) = chart.bounds();
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let s = (SIZE - 2.0 * PAD) / span;
    let to = |p: PlanarPoint| (PAD + (p.x - lo.x) * s, SIZE - PAD - (p.y - lo.y) * s);
    let mut out = String::new();
    banner(&mut out);
    let (bl, tr) = (to(lo), to(hi));
    let _ = writeln!(
        out,
        "<clipPath id=\"box\"><rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/></clipPath>",
        bl.0,
        tr.1,
        tr.0 - bl.0,
        bl.1 - tr.1
    );
    let _ = writeln!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#999\"/>",
        bl.0,
        tr.1,
        tr.0 - bl.0,
        bl.1 - tr.1
    );
    let far = span + chart.eps;
    for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
        if let Some(shape) = chart.shape(sx, sy) {
            let poly: Vec<String> = obstacle(shape, sx, sy, chart.eps, far)
                .into_iter()
                .map(|(x, y)| {
                    let (px, py) = to(PlanarPoint::new(x, y));
                    format!("{px:.2},{py:.2}")
                })
                .collect();
            let _ = writeln!(out, "<polygon points=\"{}\" fill=\"#ccc\" clip-path=\"url(#box)\"/>", poly.join(" "));
        }
    }
    let o = to(PlanarPoint::new(0.0, 0.0));
    let _ = writeln!(out, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>", bl.0, o.1, tr.0, o.1);
    let _ = writeln!(out, "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>", o.0, bl.1, o.0, tr.1);
    let axis = |a: Option<usize>| a.map_or("-".to_string(), |a| a.to_string());
    let labels = [
        (bl.0, o.1 - 4.0, format!("x arm {}", axis(chart.x_neg))),
        (tr.0 - 60.0, o.1 - 4.0, format!("x arm {}", axis(chart.x_pos))),
        (o.0 + 4.0, bl.1 - 4.0, format!("y arm {}", axis(chart.y_neg))),
        (o.0 + 4.0, tr.1 + 12.0, format!("y arm {}", axis(chart.y_pos))),
    ];
    for (x, y, t) in labels {
        let _ = writeln!(out, "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"11\">{t}</text>");
    }
    let chosen = &plan.chosen;
    for c in plan.all_candidates.iter().filter(|c| *c != chosen).chain(std::iter::once(chosen)) {
        let pts: Option<Vec<PlanarPoint>> = c.path.breakpoints.iter().map(|b| chart.embed(star, &b.c).ok()).collect();
        let Some(pts) = pts else { continue };
        let (stroke, width) = if c == chosen { ("#c00", 2.5) } else { ("#36c", 1.2) };
        let d: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = to(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
            d.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}
