//! Seeded random trees and configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treegeo_core::oracle::Grid;
use treegeo_core::{Edge, OrderedConfig, Point, Star, Tree, UnorderedConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A tree with `internal` branch vertices, each of degree 3 or 4, and edge
/// lengths uniform in `[lo, hi)`. Leaves are numbered in depth-first order.
pub fn random_tree<R: Rng>(rng: &mut R, internal: usize, lo: f64, hi: f64) -> Tree {
    let internal = internal.max(1);
    let mut edges: Vec<(usize, usize)> = (1..internal).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut deg = vec![0usize; internal];
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut n = internal;
    for v in 0..internal {
        let want = if rng.gen_bool(0.2) { 4 } else { 3 };
        while deg[v] < want {
            edges.push((v, n));
            n += 1;
            deg[v] += 1;
        }
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut order = Vec::new();
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((x, parent)) = stack.pop() {
        if adj[x].len() == 1 {
            order.push(x);
        }
        for &y in adj[x].iter().rev() {
            if y != parent {
                stack.push((y, x));
            }
        }
    }
    let es = edges
        .iter()
        .enumerate()
        .map(|(id, &(u, v))| Edge { id, u, v, len: rng.gen_range(lo..hi) })
        .collect();
    Tree::new(n, es, order).expect("generated tree is valid")
}

/// A uniformly chosen arm and a depth uniform in `[lo, arm length]`.
pub fn star_point<R: Rng>(rng: &mut R, star: &Star<'_>, lo: f64) -> Point {
    let arm = rng.gen_range(1..=star.k());
    let len = star.arm_len(arm);
    star.at(arm, rng.gen_range(lo.min(len)..=len))
}

/// An ordered configuration with both points drawn by [`star_point`], redrawn until feasible.
pub fn star_config<R: Rng>(rng: &mut R, star: &Star<'_>, eps: f64, lo: f64) -> OrderedConfig {
    loop {
        let c = OrderedConfig::new(star_point(rng, star, lo), star_point(rng, star, lo));
        if c.separation(star.tree()) >= eps {
            return c;
        }
    }
}

/// A uniformly chosen edge and a uniform offset on it.
pub fn tree_point<R: Rng>(rng: &mut R, tree: &Tree) -> Point {
    let e = tree.edge(rng.gen_range(0..tree.edges().len()));
    tree.point_on_edge(e.id, rng.gen_range(0.0..=e.len))
}

pub fn unordered_config<R: Rng>(rng: &mut R, tree: &Tree) -> UnorderedConfig {
    loop {
        if let Ok(c) = UnorderedConfig::new(tree_point(rng, tree), tree_point(rng, tree)) {
            return c;
        }
    }
}

/// A uniformly chosen edge and a uniformly chosen grid point on it.
pub fn grid_point<R: Rng>(rng: &mut R, grid: &Grid) -> Point {
    let ids = &grid.edge_nodes[rng.gen_range(0..grid.edge_nodes.len())];
    grid.points[ids[rng.gen_range(0..ids.len())] as usize]
}

/// Ordered pair of grid points at least `eps` apart.
pub fn grid_config<R: Rng>(rng: &mut R, tree: &Tree, grid: &Grid, eps: f64) -> OrderedConfig {
    loop {
        let c = OrderedConfig::new(grid_point(rng, grid), grid_point(rng, grid));
        if c.separation(tree) >= eps - 1e-9 && c.p1 != c.p2 {
            return c;
        }
    }
}
