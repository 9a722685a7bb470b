//! Instance and pattern generators: complete and random minimum-degree
//! collections, r-partite collections for the path builder, and the
//! extremal lower-bound family.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Colour, Graph, GraphCollection, GraphError};
use crate::host::{ColourPattern, HostError, HostTemplate};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("need n >= 1 and m >= 1 (got n = {n}, m = {m})")]
    Empty { n: usize, m: usize },
    #[error("the lower-bound construction needs p >= 3 (got {0})")]
    PartTooSmall(usize),
    #[error("power k must be at least 1")]
    ZeroPower,
    #[error("degree fraction {0} out of range")]
    BadFraction(f64),
    #[error("bijective pattern needs {needed} colours")]
    NotEnoughColours { needed: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Host(#[from] HostError),
}

/// Which end of the colour-2 connector window carries the deleted edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Hash)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `J^k_{1,k}`: single vertex first, the deletions among the last `k`
    /// positions. For `k = 2` this removes `(v4, v5)`.
    Figure,
    /// `J^k_{k,1}`: from `k` vertices to a single vertex.
    Text,
}

pub fn complete_collection(n: usize, m: usize) -> Result<GraphCollection, InstanceError> {
    if n == 0 || m == 0 {
        return Err(InstanceError::Empty { n, m });
    }
    Ok(GraphCollection::new(n, vec![Graph::complete(n); m])?)
}

/// Tops up `g` until every vertex of `vertices` has at least `target`
/// neighbours among `pool(v)`, adding edges to random non-neighbours of
/// least degree first.
fn top_up<R: Rng + ?Sized>(
    g: &mut Graph,
    vertices: &[usize],
    target: usize,
    pool: impl Fn(usize) -> Vec<usize>,
    rng: &mut R,
) {
    let inside = |g: &Graph, v: usize, pool: &[usize]| {
        pool.iter().filter(|&&u| g.has_edge(u, v)).count()
    };
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    for &v in &order {
        let candidates = pool(v);
        let mut have = inside(g, v, &candidates);
        let mut open: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&u| u != v && !g.has_edge(u, v))
            .collect();
        open.shuffle(rng);
        open.sort_by_key(|&u| g.degree(u));
        for u in open {
            if have >= target {
                break;
            }
            g.add_edge(u, v).expect("distinct in-range vertices");
            have += 1;
        }
    }
}

fn check_fraction(f: f64) -> Result<(), InstanceError> {
    if !(0.0..1.0).contains(&f) {
        return Err(InstanceError::BadFraction(f));
    }
    Ok(())
}

/// Each graph: independent edges with probability `delta_frac`, then greedy
/// additions until the minimum degree is at least `⌈delta_frac · n⌉`
/// (capped at `n - 1`).
pub fn random_min_degree_collection<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    delta_frac: f64,
    rng: &mut R,
) -> Result<GraphCollection, InstanceError> {
    if n == 0 || m == 0 {
        return Err(InstanceError::Empty { n, m });
    }
    check_fraction(delta_frac)?;
    let target = ((delta_frac * n as f64).ceil() as usize).min(n - 1);
    let all: Vec<usize> = (0..n).collect();
    let graphs = (0..m)
        .map(|_| {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(delta_frac) {
                        g.add_edge(u, v).expect("fresh edge");
                    }
                }
            }
            top_up(&mut g, &all, target, |_| all.clone(), rng);
            g
        })
        .collect();
    Ok(GraphCollection::new(n, graphs)?)
}

/// `r` parts of `part_size` consecutive vertices.
pub fn consecutive_parts(r: usize, part_size: usize) -> Vec<Vec<usize>> {
    (0..r)
        .map(|j| (j * part_size..(j + 1) * part_size).collect())
        .collect()
}

/// `m` copies of the complete r-partite graph on consecutive parts.
pub fn complete_partite_collection(
    r: usize,
    part_size: usize,
    m: usize,
) -> Result<(GraphCollection, Vec<Vec<usize>>), InstanceError> {
    let n = r * part_size;
    if n == 0 || m == 0 {
        return Err(InstanceError::Empty { n, m });
    }
    let parts = consecutive_parts(r, part_size);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if u / part_size != v / part_size {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok((GraphCollection::new(n, vec![g; m])?, parts))
}

/// Random r-partite collection: between every two parts each graph has
/// independent edges with probability `pair_frac`, topped up so that every
/// vertex has at least `⌈pair_frac · part_size⌉` neighbours in every other
/// part. No edges inside parts.
pub fn random_partite_collection<R: Rng + ?Sized>(
    r: usize,
    part_size: usize,
    m: usize,
    pair_frac: f64,
    rng: &mut R,
) -> Result<(GraphCollection, Vec<Vec<usize>>), InstanceError> {
    let n = r * part_size;
    if n == 0 || m == 0 {
        return Err(InstanceError::Empty { n, m });
    }
    // a pair fraction of 1 is allowed: complete bipartite between parts
    if !(0.0..=1.0).contains(&pair_frac) {
        return Err(InstanceError::BadFraction(pair_frac));
    }
    let target = ((pair_frac * part_size as f64).ceil() as usize).min(part_size);
    let parts = consecutive_parts(r, part_size);
    let graphs = (0..m)
        .map(|_| {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if u / part_size != v / part_size && rng.gen_bool(pair_frac) {
                        g.add_edge(u, v).expect("fresh edge");
                    }
                }
            }
            for i in 0..r {
                for j in 0..r {
                    if i != j {
                        let other = parts[j].clone();
                        top_up(&mut g, &parts[i], target, |_| other.clone(), rng);
                    }
                }
            }
            g
        })
        .collect();
    Ok((GraphCollection::new(n, graphs)?, parts))
}

/// The extremal pair `{G_1, G_2}` on `(k + 1) p` vertices with parts
/// `A_i = {(i-1)p, ..., ip - 1}`, together with the pattern that puts
/// colour 2 on a connector window at positions `0..=2k` and colour 1 on
/// every other edge of `C^k_{(k+1)p}`.
///
/// `G_1` is complete (k+1)-partite. `G_2` replaces the bipartite graph
/// between `A_{2i-1}` and `A_{2i}` by the identity matching for
/// `i <= ⌊(k+1)/2⌋` and adds a clique inside each of those paired parts.
pub fn lowerbound_construction(
    k: usize,
    p: usize,
    orientation: Orientation,
) -> Result<(GraphCollection, ColourPattern), InstanceError> {
    if k == 0 {
        return Err(InstanceError::ZeroPower);
    }
    if p < 3 {
        return Err(InstanceError::PartTooSmall(p));
    }
    let n = (k + 1) * p;
    let part = |v: usize| v / p;
    let mut g1 = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part(u) != part(v) {
                g1.add_edge(u, v)?;
            }
        }
    }
    let mut g2 = g1.clone();
    for i in 0..k.div_ceil(2) {
        let (x, y) = (2 * i, 2 * i + 1);
        for a in 0..p {
            for b in 0..p {
                let (u, v) = (x * p + a, y * p + b);
                if a != b {
                    g2.remove_edge(u, v);
                }
            }
            for b in a + 1..p {
                g2.add_edge(x * p + a, x * p + b)?;
                g2.add_edge(y * p + a, y * p + b)?;
            }
        }
    }
    let collection = GraphCollection::new(n, vec![g1, g2])?;
    let window = match orientation {
        Orientation::Figure => HostTemplate::connector(1, k, k)?,
        Orientation::Text => HostTemplate::connector(k, 1, k)?,
    };
    let host = HostTemplate::power_cycle(n, k)?;
    let pattern = ColourPattern::from_fn(host, |i, j| {
        if i <= 2 * k && j <= 2 * k && window.contains(i, j) {
            2
        } else {
            1
        }
    })?;
    Ok((collection, pattern))
}

/// Independent uniform colours from `1..=m`.
pub fn random_pattern<R: Rng + ?Sized>(
    host: HostTemplate,
    m: usize,
    rng: &mut R,
) -> Result<ColourPattern, InstanceError> {
    if m == 0 {
        return Err(InstanceError::Empty { n: host.order(), m });
    }
    Ok(ColourPattern::from_fn(host, |_, _| rng.gen_range(1..=m))?)
}

/// Every edge gets its own colour: a uniformly random bijection onto
/// `1..=|E|`.
pub fn bijective_pattern<R: Rng + ?Sized>(
    host: HostTemplate,
    rng: &mut R,
) -> Result<ColourPattern, InstanceError> {
    let edges = host.edges()?;
    let mut colours: Vec<Colour> = (1..=edges.len()).collect();
    colours.shuffle(rng);
    let triples: Vec<_> = edges
        .iter()
        .zip(&colours)
        .map(|(&(i, j), &c)| (i, j, c))
        .collect();
    Ok(ColourPattern::from_triples(host, &triples)?)
}

/// As [`bijective_pattern`], checking that the collection has enough
/// graphs for it.
pub fn bijective_pattern_for<R: Rng + ?Sized>(
    collection: &GraphCollection,
    host: HostTemplate,
    rng: &mut R,
) -> Result<ColourPattern, InstanceError> {
    let needed = host.edges()?.len();
    if collection.m() < needed {
        return Err(InstanceError::NotEnoughColours { needed });
    }
    bijective_pattern(host, rng)
}
