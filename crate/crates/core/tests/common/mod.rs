//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use powercycle::graph::{Graph, GraphCollection};
use powercycle::host::ColourPattern;
use powercycle::matching::{BipartiteGraph, CliqueTiling};
use powercycle::verify_coloured_embedding;
use rand::seq::SliceRandom;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Perfect matchings by trying every permutation of the right side.
pub fn brute_perfect_matchings(b: &BipartiteGraph) -> u128 {
    if b.left() != b.right() {
        return 0;
    }
    (0..b.right())
        .permutations(b.left())
        .filter(|p| p.iter().enumerate().all(|(l, &r)| b.has_edge(l, r)))
        .count() as u128
}

/// Whether any vertex ordering realises the pattern, checked by the
/// verifier over all `n!` orderings.
pub fn naive_exists(collection: &GraphCollection, pattern: &ColourPattern) -> bool {
    let n = collection.n();
    (0..n).permutations(n).any(|p| {
        verify_coloured_embedding(collection, pattern, &p)
            .map(|r| r.is_valid())
            .unwrap_or(false)
    })
}

pub fn naive_count(collection: &GraphCollection, pattern: &ColourPattern) -> u128 {
    let n = collection.n();
    (0..n)
        .permutations(n)
        .filter(|p| verify_coloured_embedding(collection, pattern, p).unwrap().is_valid())
        .count() as u128
}

/// Upper-tail p-value of Pearson's statistic against equal frequencies.
pub fn chi_square_uniform_p(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> BipartiteGraph {
    let adj = (0..left)
        .map(|_| (0..right).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    BipartiteGraph::new(right, adj).unwrap()
}

/// An instance of the tiling-extension lemma: `A = 0..kn` tiled by
/// consecutive k-cliques, `B = kn..(k+1)n`, with
/// `d(v, A) >= (1 - 1/2k) kn` for `v` in `B` and
/// `d(u, B) >= (1 - 1/2k) n` for `u` in `A`, both met tightly where the
/// random start allows.
pub struct LemmaInstance {
    pub graph: Graph,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub tiling: CliqueTiling,
}

pub fn lemma_instance<R: Rng>(rng: &mut R, k: usize, n: usize) -> LemmaInstance {
    let size_a = k * n;
    let total = size_a + n;
    let a: Vec<usize> = (0..size_a).collect();
    let b: Vec<usize> = (size_a..total).collect();
    let mut g = Graph::empty(total);
    for t in 0..n {
        for i in 0..k {
            for j in i + 1..k {
                g.add_edge(t * k + i, t * k + j).unwrap();
            }
        }
    }
    let frac = 1.0 - 1.0 / (2.0 * k as f64);
    let need_b = (frac * size_a as f64).ceil() as usize;
    let need_a = (frac * n as f64).ceil() as usize;
    // sparse random start, then the minimum top-up on both sides
    let p = (frac - 0.15).max(0.0);
    for &u in &a {
        for &v in &b {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    for &v in &b {
        let mut missing: Vec<usize> = a.iter().copied().filter(|&u| !g.has_edge(u, v)).collect();
        missing.shuffle(rng);
        let have = size_a - missing.len();
        for &u in missing.iter().take(need_b.saturating_sub(have)) {
            g.add_edge(u, v).unwrap();
        }
    }
    for &u in &a {
        let mut missing: Vec<usize> = b.iter().copied().filter(|&v| !g.has_edge(u, v)).collect();
        missing.shuffle(rng);
        let have = n - missing.len();
        for &v in missing.iter().take(need_a.saturating_sub(have)) {
            g.add_edge(u, v).unwrap();
        }
    }
    let tiles: Vec<Vec<usize>> = (0..n).map(|t| (t * k..(t + 1) * k).collect()).collect();
    let tiling = CliqueTiling::new(&g, k, tiles).unwrap();
    LemmaInstance {
        graph: g,
        a,
        b,
        tiling,
    }
}

/// Whether the lemma's degree conditions hold.
pub fn lemma_bounds_hold(inst: &LemmaInstance, k: usize) -> bool {
    let n = inst.b.len();
    let frac = 1.0 - 1.0 / (2.0 * k as f64);
    let deg = |v: usize, set: &[usize]| set.iter().filter(|&&u| inst.graph.has_edge(u, v)).count() as f64;
    inst.b.iter().all(|&v| deg(v, &inst.a) >= frac * (k * n) as f64)
        && inst.a.iter().all(|&u| deg(u, &inst.b) >= frac * n as f64)
}
