#![allow(dead_code)]

use proptest::test_runner::{Config, RngAlgorithm, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treegeo_core::{Edge, OrderedConfig, Point, Star, Tree};

pub fn config(seed: u64) -> Config {
    Config {
        cases: 1000,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn star(k: usize, len: f64) -> Tree {
    Tree::star(&vec![len; k]).unwrap()
}

/// Random tree with `internal` branch vertices of degree 3 or 4.
pub fn random_tree(rng: &mut ChaCha8Rng, internal: usize) -> Tree {
    let mut edges: Vec<(usize, usize)> = (1..internal).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut deg = vec![0; internal];
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut n = internal;
    for v in 0..internal {
        let want = if rng.gen_bool(0.25) { 4 } else { 3 };
        while deg[v] < want {
            edges.push((v, n));
            deg[v] += 1;
            n += 1;
        }
    }
    let es = edges
        .iter()
        .enumerate()
        .map(|(id, &(u, v))| Edge { id, u, v, len: rng.gen_range(1.0..5.0) })
        .collect();
    Tree::new(n, es, (internal..n).collect()).unwrap()
}

pub fn point(rng: &mut ChaCha8Rng, t: &Tree) -> Point {
    let e = t.edge(rng.gen_range(0..t.edges().len()));
    // Occasionally land exactly on a vertex.
    match rng.gen_range(0..8) {
        0 => Point::Vertex(e.u),
        _ => t.point_on_edge(e.id, rng.gen_range(0.0..e.len)),
    }
}

pub fn star_config(rng: &mut ChaCha8Rng, s: &Star<'_>, eps: f64) -> OrderedConfig {
    loop {
        let mut p = || {
            let arm = rng.gen_range(1..=s.k());
            // Snap a fifth of the depths to a coarse lattice so ties and vertex cases occur.
            let d = if rng.gen_bool(0.2) { rng.gen_range(0..=10) as f64 * s.arm_len(arm) / 10.0 } else { rng.gen_range(0.0..=s.arm_len(arm)) };
            s.at(arm, d)
        };
        let c = OrderedConfig::new(p(), p());
        if c.separation(s.tree()) >= eps {
            return c;
        }
    }
}
