//! Bipartite matching: maximum matchings, permanent counting, perfect
//! matching sampling, and the auxiliary tiling graph used to grow clique
//! tilings one level at a time.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Adjacency;

/// Exact counting and sampling work on at most this many vertices per side.
pub const EXACT_SIDE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("right neighbour {neighbour} of left vertex {left} is outside 0..{right}")]
    NeighbourOutOfRange {
        left: usize,
        neighbour: usize,
        right: usize,
    },
    #[error("sides {left} and {right} differ; perfect matchings need equal sides")]
    Unbalanced { left: usize, right: usize },
    #[error("side of {0} exceeds the exact limit {EXACT_SIDE_LIMIT}")]
    TooLarge(usize),
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("tiles overlap at vertex {0}")]
    OverlappingTiles(usize),
    #[error("tile {0} has {1} vertices, expected {2}")]
    TileSize(usize, usize, usize),
    #[error("tile {tile} is not a clique: {u} and {v} are not adjacent")]
    NotAClique { tile: usize, u: usize, v: usize },
    #[error("vertex {0} lies in both the tiling and the extension set")]
    TilingMeetsExtension(usize),
    #[error("{tiles} tiles cannot be extended by {extension} vertices")]
    SizeMismatch { tiles: usize, extension: usize },
    #[error("vertex {0} of the extension set is missing from the tiled set")]
    NotTiled(usize),
    #[error("the auxiliary tiling graph has no perfect matching; the tiling cannot be extended")]
    NoExtension,
}

/// How perfect matchings are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerMode {
    /// Exactly uniform, via counts of completions. Sides up to
    /// [`EXACT_SIDE_LIMIT`].
    Exact,
    /// Augmenting-path search on randomly permuted vertex orders. Always
    /// yields a perfect matching when one exists, but is not uniform.
    #[default]
    Fast,
}

/// Bipartite graph given by sorted right-neighbour lists of left vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(right: usize, mut adj: Vec<Vec<usize>>) -> Result<Self, MatchingError> {
        for (left, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&neighbour) = list.iter().find(|&&r| r >= right) {
                return Err(MatchingError::NeighbourOutOfRange {
                    left,
                    neighbour,
                    right,
                });
            }
        }
        Ok(Self { right, adj })
    }

    pub fn from_edges(
        left: usize,
        right: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, MatchingError> {
        let mut adj = vec![Vec::new(); left];
        for &(l, r) in edges {
            adj[l].push(r);
        }
        Self::new(right, adj)
    }

    pub fn complete(left: usize, right: usize) -> Self {
        Self {
            right,
            adj: vec![(0..right).collect(); left],
        }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbours(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].binary_search(&r).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Subgraph induced on the given left and right vertices, relabelled in
    /// the given orders.
    pub fn induced(&self, left: &[usize], right: &[usize]) -> BipartiteGraph {
        let mut index = vec![usize::MAX; self.right];
        for (i, &r) in right.iter().enumerate() {
            index[r] = i;
        }
        let adj = left
            .iter()
            .map(|&l| {
                let mut v: Vec<usize> = self.adj[l]
                    .iter()
                    .filter_map(|&r| (index[r] != usize::MAX).then_some(index[r]))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        BipartiteGraph {
            right: right.len(),
            adj,
        }
    }

    /// Transposed graph (right vertices become left).
    pub fn transpose(&self) -> BipartiteGraph {
        let mut adj = vec![Vec::new(); self.right];
        for (l, list) in self.adj.iter().enumerate() {
            for &r in list {
                adj[r].push(l);
            }
        }
        BipartiteGraph {
            right: self.adj.len(),
            adj,
        }
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp, as `(left, right)` pairs
/// sorted by left vertex. The result depends only on the adjacency order.
pub fn max_matching(b: &BipartiteGraph) -> Vec<(usize, usize)> {
    const FREE: usize = usize::MAX;
    let left = b.left();
    let mut match_left = vec![FREE; left];
    let mut match_right = vec![FREE; b.right()];
    let mut dist = vec![0usize; left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in b.neighbours(l) {
                let next = match_right[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for l in 0..left {
            if match_left[l] == FREE
                && augment(b, l, &mut match_left, &mut match_right, &mut dist)
            {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }

    match_left
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != FREE)
        .map(|(l, &r)| (l, r))
        .collect()
}

fn augment(
    b: &BipartiteGraph,
    l: usize,
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in b.neighbours(l) {
        let next = match_right[r];
        let ok = next == usize::MAX
            || (dist[next] == dist[l] + 1 && augment(b, next, match_left, match_right, dist));
        if ok {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Number of perfect matchings (the permanent of the biadjacency matrix),
/// by Ryser's inclusion–exclusion over column subsets in Gray-code order.
pub fn count_perfect_matchings(b: &BipartiteGraph) -> Result<u128, MatchingError> {
    let n = b.left();
    if n != b.right() {
        return Err(MatchingError::Unbalanced {
            left: n,
            right: b.right(),
        });
    }
    if n > EXACT_SIDE_LIMIT {
        return Err(MatchingError::TooLarge(n));
    }
    if n == 0 {
        return Ok(1);
    }
    // column j as a bitmask of rows
    let mut columns = vec![0u32; n];
    for l in 0..n {
        for &r in b.neighbours(l) {
            columns[r] |= 1 << l;
        }
    }
    // perm(A) = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij.
    // The true value fits in u128, so wrapping arithmetic is exact.
    let mut row_sums = vec![0i64; n];
    let mut total: i128 = 0;
    let mut gray: u32 = 0;
    for step in 1u32..(1u32 << n) {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let sign: i64 = if gray >> bit & 1 == 1 { 1 } else { -1 };
        let mut rows = columns[bit];
        while rows != 0 {
            let i = rows.trailing_zeros() as usize;
            rows &= rows - 1;
            row_sums[i] += sign;
        }
        let product = row_sums
            .iter()
            .fold(1i128, |acc, &s| acc.wrapping_mul(s as i128));
        if product != 0 {
            if gray.count_ones() % 2 == 1 {
                total = total.wrapping_sub(product);
            } else {
                total = total.wrapping_add(product);
            }
        }
    }
    if n % 2 == 1 {
        total = total.wrapping_neg();
    }
    Ok(total as u128)
}

/// Draws a perfect matching, returned as `(left, right)` pairs sorted by
/// left vertex.
pub fn sample_perfect_matching<R: Rng + ?Sized>(
    b: &BipartiteGraph,
    rng: &mut R,
    mode: SamplerMode,
) -> Result<Vec<(usize, usize)>, MatchingError> {
    let n = b.left();
    if n != b.right() {
        return Err(MatchingError::Unbalanced {
            left: n,
            right: b.right(),
        });
    }
    match mode {
        SamplerMode::Exact => sample_exact(b, rng),
        SamplerMode::Fast => sample_fast(b, rng),
    }
}

fn sample_exact<R: Rng + ?Sized>(
    b: &BipartiteGraph,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>, MatchingError> {
    let n = b.left();
    if n > EXACT_SIDE_LIMIT {
        return Err(MatchingError::TooLarge(n));
    }
    let adj: Vec<u32> = (0..n)
        .map(|l| b.neighbours(l).iter().fold(0u32, |m, &r| m | 1 << r))
        .collect();
    // ways[mask]: matchings of left 0..|mask| onto exactly the right set mask
    let full = (1usize << n) - 1;
    let mut ways = vec![0u128; full + 1];
    ways[0] = 1;
    for mask in 1..=full {
        let t = mask.count_ones() as usize - 1;
        let mut options = mask as u32 & adj[t];
        let mut total = 0u128;
        while options != 0 {
            let j = options.trailing_zeros();
            options &= options - 1;
            total += ways[mask ^ (1 << j)];
        }
        ways[mask] = total;
    }
    if ways[full] == 0 {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut out = Vec::with_capacity(n);
    let mut mask = full;
    for t in (0..n).rev() {
        let mut ticket = rng.gen_range(0..ways[mask]);
        let mut options = mask as u32 & adj[t];
        loop {
            let j = options.trailing_zeros() as usize;
            options &= options - 1;
            let w = ways[mask ^ (1 << j)];
            if ticket < w {
                out.push((t, j));
                mask ^= 1 << j;
                break;
            }
            ticket -= w;
        }
    }
    out.reverse();
    Ok(out)
}

fn sample_fast<R: Rng + ?Sized>(
    b: &BipartiteGraph,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>, MatchingError> {
    let n = b.left();
    let mut left_order: Vec<usize> = (0..n).collect();
    left_order.shuffle(rng);
    let mut right_label: Vec<usize> = (0..b.right()).collect();
    right_label.shuffle(rng);
    let mut right_back = vec![0; b.right()];
    for (orig, &lab) in right_label.iter().enumerate() {
        right_back[lab] = orig;
    }
    let adj = left_order
        .iter()
        .map(|&l| {
            let mut list: Vec<usize> = b.neighbours(l).iter().map(|&r| right_label[r]).collect();
            list.shuffle(rng);
            list
        })
        .collect();
    // built directly so the shuffled neighbour order survives
    let permuted = BipartiteGraph {
        right: b.right(),
        adj,
    };
    let m = max_matching(&permuted);
    if m.len() != n {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut out: Vec<(usize, usize)> = m
        .into_iter()
        .map(|(l, r)| (left_order[l], right_back[r]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Disjoint k-cliques of some graph. Vertex order inside a tile is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueTiling {
    k: usize,
    tiles: Vec<Vec<usize>>,
}

impl CliqueTiling {
    pub fn new<G: Adjacency + ?Sized>(
        graph: &G,
        k: usize,
        tiles: Vec<Vec<usize>>,
    ) -> Result<Self, MatchingError> {
        let mut seen = vec![false; graph.order()];
        for (t, tile) in tiles.iter().enumerate() {
            if tile.len() != k {
                return Err(MatchingError::TileSize(t, tile.len(), k));
            }
            for (i, &u) in tile.iter().enumerate() {
                if std::mem::replace(&mut seen[u], true) {
                    return Err(MatchingError::OverlappingTiles(u));
                }
                for &v in &tile[i + 1..] {
                    if !graph.adjacent(u, v) {
                        return Err(MatchingError::NotAClique { tile: t, u, v });
                    }
                }
            }
        }
        Ok(Self { k, tiles })
    }

    /// Tiling of a vertex list by singletons.
    pub fn singletons(vertices: &[usize]) -> Self {
        Self {
            k: 1,
            tiles: vertices.iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tiles(&self) -> &[Vec<usize>] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.tiles.iter().flatten().copied()
    }

    pub fn into_tiles(self) -> Vec<Vec<usize>> {
        self.tiles
    }
}

/// `H_{G,T}`: tile `t` is adjacent to `extension[j]` iff that vertex is
/// adjacent in `graph` to every vertex of tile `t`.
pub fn build_auxiliary_tiling_graph<G: Adjacency + ?Sized>(
    graph: &G,
    tiling: &CliqueTiling,
    extension: &[usize],
) -> Result<BipartiteGraph, MatchingError> {
    let mut in_tiling = vec![false; graph.order()];
    for v in tiling.vertices() {
        in_tiling[v] = true;
    }
    if let Some(&v) = extension.iter().find(|&&v| in_tiling[v]) {
        return Err(MatchingError::TilingMeetsExtension(v));
    }
    let adj = tiling
        .tiles()
        .iter()
        .map(|tile| {
            extension
                .iter()
                .enumerate()
                .filter(|(_, &v)| tile.iter().all(|&u| graph.adjacent(u, v)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(BipartiteGraph {
        right: extension.len(),
        adj,
    })
}

/// Extends a perfect K_k-tiling of `G[A]` to a perfect K_{k+1}-tiling of
/// `G[A ∪ B]` via a deterministic maximum matching of `H_{G,T}`.
pub fn extend_tiling<G: Adjacency + ?Sized>(
    graph: &G,
    tiled: &[usize],
    extension: &[usize],
    tiling: &CliqueTiling,
) -> Result<CliqueTiling, MatchingError> {
    let aux = extension_graph(graph, tiled, extension, tiling)?;
    let m = max_matching(&aux);
    finish_extension(tiling, extension, &m)
}

/// As [`extend_tiling`], with the matching drawn by the given sampler.
pub fn extend_tiling_sampled<G: Adjacency + ?Sized, R: Rng + ?Sized>(
    graph: &G,
    tiled: &[usize],
    extension: &[usize],
    tiling: &CliqueTiling,
    rng: &mut R,
    mode: SamplerMode,
) -> Result<CliqueTiling, MatchingError> {
    let aux = extension_graph(graph, tiled, extension, tiling)?;
    let m = match sample_perfect_matching(&aux, rng, mode) {
        Ok(m) => m,
        Err(MatchingError::NoPerfectMatching) => return Err(MatchingError::NoExtension),
        Err(e) => return Err(e),
    };
    finish_extension(tiling, extension, &m)
}

fn extension_graph<G: Adjacency + ?Sized>(
    graph: &G,
    tiled: &[usize],
    extension: &[usize],
    tiling: &CliqueTiling,
) -> Result<BipartiteGraph, MatchingError> {
    if tiling.len() != extension.len() {
        return Err(MatchingError::SizeMismatch {
            tiles: tiling.len(),
            extension: extension.len(),
        });
    }
    let mut covered = vec![false; graph.order()];
    for v in tiling.vertices() {
        covered[v] = true;
    }
    if let Some(&v) = tiled.iter().find(|&&v| !covered[v]) {
        return Err(MatchingError::NotTiled(v));
    }
    if tiled.len() != tiling.len() * tiling.k() {
        return Err(MatchingError::SizeMismatch {
            tiles: tiling.len(),
            extension: extension.len(),
        });
    }
    build_auxiliary_tiling_graph(graph, tiling, extension)
}

fn finish_extension(
    tiling: &CliqueTiling,
    extension: &[usize],
    matching: &[(usize, usize)],
) -> Result<CliqueTiling, MatchingError> {
    if matching.len() != tiling.len() {
        return Err(MatchingError::NoExtension);
    }
    let mut tiles = tiling.tiles().to_vec();
    for &(t, j) in matching {
        tiles[t].push(extension[j]);
    }
    Ok(CliqueTiling {
        k: tiling.k() + 1,
        tiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive maximum matching size: try every way to match or skip
    /// each left vertex.
    fn brute_max(b: &BipartiteGraph) -> usize {
        fn go(b: &BipartiteGraph, l: usize, used: &mut Vec<bool>) -> usize {
            if l == b.left() {
                return 0;
            }
            let mut best = go(b, l + 1, used);
            for &r in b.neighbours(l) {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + go(b, l + 1, used));
                    used[r] = false;
                }
            }
            best
        }
        go(b, 0, &mut vec![false; b.right()])
    }

    fn brute_count(b: &BipartiteGraph) -> u128 {
        fn go(b: &BipartiteGraph, l: usize, used: &mut Vec<bool>) -> u128 {
            if l == b.left() {
                return 1;
            }
            let mut total = 0;
            for &r in b.neighbours(l) {
                if !used[r] {
                    used[r] = true;
                    total += go(b, l + 1, used);
                    used[r] = false;
                }
            }
            total
        }
        go(b, 0, &mut vec![false; b.right()])
    }

    fn random_bipartite(rng: &mut ChaCha8Rng, left: usize, right: usize, p: f64) -> BipartiteGraph {
        let adj = (0..left)
            .map(|_| (0..right).filter(|_| rng.gen_bool(p)).collect())
            .collect();
        BipartiteGraph::new(right, adj).unwrap()
    }

    fn is_matching(b: &BipartiteGraph, m: &[(usize, usize)]) -> bool {
        let mut l_used = vec![false; b.left()];
        let mut r_used = vec![false; b.right()];
        m.iter().all(|&(l, r)| {
            b.has_edge(l, r)
                && !std::mem::replace(&mut l_used[l], true)
                && !std::mem::replace(&mut r_used[r], true)
        })
    }

    #[test]
    fn complete_and_empty_matchings() {
        assert_eq!(max_matching(&BipartiteGraph::complete(4, 4)).len(), 4);
        let empty = BipartiteGraph::new(3, vec![vec![]; 3]).unwrap();
        assert!(max_matching(&empty).is_empty());
    }

    #[test]
    fn max_matching_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let left = rng.gen_range(0..=8);
            let right = rng.gen_range(0..=8);
            let p = rng.gen_range(0.05..0.7);
            let b = random_bipartite(&mut rng, left, right, p);
            let m = max_matching(&b);
            assert!(is_matching(&b, &m));
            assert_eq!(m.len(), brute_max(&b));
        }
    }

    #[test]
    fn neighbour_range_is_checked() {
        assert!(matches!(
            BipartiteGraph::new(2, vec![vec![0, 2]]),
            Err(MatchingError::NeighbourOutOfRange { .. })
        ));
    }

    #[test]
    fn permanent_small_cases() {
        assert_eq!(count_perfect_matchings(&BipartiteGraph::complete(3, 3)).unwrap(), 6);
        let identity = BipartiteGraph::new(5, (0..5).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(count_perfect_matchings(&identity).unwrap(), 1);
        // C_8 as a 4+4 cycle: left i ~ right i, i+1
        let c8 = BipartiteGraph::new(4, (0..4).map(|i| vec![i, (i + 1) % 4]).collect()).unwrap();
        assert_eq!(brute_count(&c8), 2);
        assert_eq!(count_perfect_matchings(&c8).unwrap(), 2);
        assert_eq!(
            count_perfect_matchings(&BipartiteGraph::complete(2, 3)),
            Err(MatchingError::Unbalanced { left: 2, right: 3 })
        );
        assert_eq!(
            count_perfect_matchings(&BipartiteGraph::complete(25, 25)),
            Err(MatchingError::TooLarge(25))
        );
    }

    #[test]
    fn permanent_of_large_complete_graph_is_factorial() {
        let f: u128 = (1..=20u128).product();
        assert_eq!(count_perfect_matchings(&BipartiteGraph::complete(20, 20)).unwrap(), f);
    }

    #[test]
    fn permanent_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(0..=7);
            let p = rng.gen_range(0.2..0.9);
            let b = random_bipartite(&mut rng, n, n, p);
            assert_eq!(count_perfect_matchings(&b).unwrap(), brute_count(&b));
        }
    }

    #[test]
    fn unique_matching_is_returned_by_both_samplers() {
        // lower triangular: forced identity matching
        let b = BipartiteGraph::new(4, (0..4).map(|i| (0..=i).collect()).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let expect: Vec<_> = (0..4).map(|i| (i, i)).collect();
        for mode in [SamplerMode::Exact, SamplerMode::Fast] {
            for _ in 0..20 {
                assert_eq!(sample_perfect_matching(&b, &mut rng, mode).unwrap(), expect);
            }
        }
    }

    #[test]
    fn samplers_report_missing_matchings() {
        let b = BipartiteGraph::new(2, vec![vec![0], vec![0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for mode in [SamplerMode::Exact, SamplerMode::Fast] {
            assert_eq!(
                sample_perfect_matching(&b, &mut rng, mode),
                Err(MatchingError::NoPerfectMatching)
            );
        }
    }

    #[test]
    fn exact_sampler_splits_k22_evenly() {
        let b = BipartiteGraph::complete(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 10_000;
        let identity = (0..draws)
            .filter(|_| {
                sample_perfect_matching(&b, &mut rng, SamplerMode::Exact).unwrap()[0] == (0, 0)
            })
            .count();
        let p = identity as f64 / draws as f64;
        assert!((p - 0.5).abs() <= 0.03, "p = {p}");
    }

    #[test]
    fn fast_sampler_always_returns_perfect_matchings() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(1..=30);
            let mut b = random_bipartite(&mut rng, n, n, 0.3);
            // plant a perfect matching
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut adj: Vec<Vec<usize>> = (0..n).map(|l| b.neighbours(l).to_vec()).collect();
            for l in 0..n {
                adj[l].push(perm[l]);
            }
            b = BipartiteGraph::new(n, adj).unwrap();
            let m = sample_perfect_matching(&b, &mut rng, SamplerMode::Fast).unwrap();
            assert_eq!(m.len(), n);
            assert!(is_matching(&b, &m));
        }
    }

    #[test]
    fn auxiliary_graph_hand_instance() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (0, 4), (1, 4), (2, 5), (3, 5)]).unwrap();
        let t = CliqueTiling::new(&g, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let h = build_auxiliary_tiling_graph(&g, &t, &[4, 5]).unwrap();
        assert_eq!(h.neighbours(0), &[0]);
        assert_eq!(h.neighbours(1), &[1]);
        let ext = extend_tiling(&g, &[0, 1, 2, 3], &[4, 5], &t).unwrap();
        assert_eq!(ext.tiles(), &[vec![0, 1, 4], vec![2, 3, 5]]);
    }

    #[test]
    fn auxiliary_graph_for_singletons_is_the_bipartite_subgraph() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut g = Graph::empty(10);
        for u in 0..10 {
            for v in u + 1..10 {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let a = [0, 2, 4, 6, 8];
        let b = [1, 3, 5, 7, 9];
        let h = build_auxiliary_tiling_graph(&g, &CliqueTiling::singletons(&a), &b).unwrap();
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                assert_eq!(h.has_edge(i, j), g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn complete_graph_gives_complete_auxiliary_graph() {
        let g = Graph::complete(9);
        let t = CliqueTiling::new(&g, 2, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        let h = build_auxiliary_tiling_graph(&g, &t, &[6, 7, 8]).unwrap();
        assert_eq!(h, BipartiteGraph::complete(3, 3));
    }

    #[test]
    fn tiling_errors() {
        let g = Graph::complete(6);
        assert_eq!(
            CliqueTiling::new(&g, 2, vec![vec![0, 1], vec![1, 2]]),
            Err(MatchingError::OverlappingTiles(1))
        );
        let sparse = Graph::empty(4);
        assert!(matches!(
            CliqueTiling::new(&sparse, 2, vec![vec![0, 1]]),
            Err(MatchingError::NotAClique { .. })
        ));
        let t = CliqueTiling::new(&g, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            build_auxiliary_tiling_graph(&g, &t, &[1]),
            Err(MatchingError::TilingMeetsExtension(1))
        );
    }

    #[test]
    fn empty_graph_cannot_be_extended() {
        let g = Graph::empty(4);
        let t = CliqueTiling::singletons(&[0, 1]);
        assert_eq!(
            extend_tiling(&g, &[0, 1], &[2, 3], &t),
            Err(MatchingError::NoExtension)
        );
    }

    #[test]
    fn complete_graph_always_extends() {
        let g = Graph::complete(12);
        let t = CliqueTiling::new(&g, 3, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ext = extend_tiling_sampled(
            &g,
            &[0, 1, 2, 3, 4, 5, 6, 7, 8],
            &[9, 10, 11],
            &t,
            &mut rng,
            SamplerMode::Exact,
        )
        .unwrap();
        assert_eq!(ext.k(), 4);
        let mut all: Vec<usize> = ext.vertices().collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }
}
