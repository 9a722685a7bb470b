//! Random greedy k-path builder.
//!
//! Given parts `V_1, ..., V_r` of equal size and patterns `chi_1, ..., chi_s`
//! on `P_r^k`, step `i` grows a perfect clique tiling level by level across
//! the parts, each level being a perfect matching of the auxiliary tiling
//! graph. The union of the matchings splits into `n_i` disjoint
//! `chi_i`-coloured k-paths with one vertex per part; one of them is kept
//! and its vertices leave the parts.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::embedding::{min_bipartite_degree, verify_coloured_embedding, PowerPath};
use crate::graph::{Adjacency, GraphCollection};
use crate::host::{ColourPattern, HostTemplate};
use crate::matching::{
    build_auxiliary_tiling_graph, sample_perfect_matching, CliqueTiling, MatchingError,
    SamplerMode, EXACT_SIDE_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("need at least k + 1 = {need} parts, got {got}")]
    TooFewParts { need: usize, got: usize },
    #[error("part {part} has {found} vertices, part 1 has {expected}")]
    UnequalParts {
        part: usize,
        found: usize,
        expected: usize,
    },
    #[error("parts overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} is outside the collection")]
    VertexOutOfRange(usize),
    #[error("{s} paths requested but parts have only {n} vertices")]
    TooManyPaths { s: usize, n: usize },
    #[error("pattern {index} has host {found:?}, expected {expected:?}")]
    WrongHost {
        index: usize,
        found: HostTemplate,
        expected: HostTemplate,
    },
    #[error("pattern {index} uses colour {colour} beyond the collection")]
    ColourOutOfRange { index: usize, colour: usize },
    /// The minimum-degree check failed; `parts` are the 1-based indices of
    /// the offending pair.
    #[error("abort at step {step}, phase {phase}: min degree {degree} between parts {parts:?} is below the threshold for n_i = {n_i}")]
    Abort {
        step: usize,
        phase: u8,
        parts: (usize, usize),
        degree: usize,
        n_i: usize,
    },
    /// The auxiliary graph had no perfect matching although the degree check
    /// passed. The matching lemma rules this out, so it signals a bug.
    #[error("step {step}, level {level}: auxiliary graph has no perfect matching despite passing the degree check")]
    NoMatching { step: usize, level: usize },
    #[error("step {step}, level {level}: internal invariant broken: {message}")]
    Invariant {
        step: usize,
        level: usize,
        message: String,
    },
}

/// How each level's matching was drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SamplerUsage {
    pub exact: usize,
    pub fast: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCollection {
    pub paths: Vec<PowerPath>,
    pub sampler: SamplerUsage,
}

/// Residual parts during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionState {
    pub parts: Vec<Vec<usize>>,
    pub step: usize,
}

impl PartitionState {
    pub fn n_i(&self) -> usize {
        self.parts[0].len()
    }
}

/// Union graph `G^l` restricted to the parts: `u` in part `p` and `v` in
/// part `q` with `0 < |p - q| <= k` are adjacent iff `uv` lies in the graph of
/// colour `chi(p, q)`.
struct PartUnion<'a> {
    collection: &'a GraphCollection,
    part_of: &'a [usize],
    pattern: &'a ColourPattern,
}

const NO_PART: usize = usize::MAX;

impl Adjacency for PartUnion<'_> {
    fn order(&self) -> usize {
        self.collection.n()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let (p, q) = (self.part_of[u], self.part_of[v]);
        if p == NO_PART || q == NO_PART {
            return false;
        }
        match self.pattern.colour(p, q) {
            Some(c) => self.collection.has_edge(c, u, v),
            None => false,
        }
    }
}

/// Runs the builder for `patterns.len()` steps.
pub fn build_path_collection<R: Rng + ?Sized>(
    collection: &GraphCollection,
    parts: &[Vec<usize>],
    patterns: &[ColourPattern],
    rng: &mut R,
    mode: SamplerMode,
) -> Result<PathCollection, PathError> {
    let r = parts.len();
    let k = patterns.first().map(|p| p.host().k()).unwrap_or(1);
    let expected_host = HostTemplate::PowerPath { order: r, k };
    let mut part_of = validate(collection, parts, patterns, expected_host)?;

    let mut state = PartitionState {
        parts: parts.to_vec(),
        step: 1,
    };
    let mut usage = SamplerUsage::default();
    let mut out = Vec::with_capacity(patterns.len());
    for (idx, pattern) in patterns.iter().enumerate() {
        state.step = idx + 1;
        let chains = run_step(collection, &state, &part_of, pattern, rng, mode, &mut usage)?;
        let chosen = rng.gen_range(0..chains.len());
        let path = chains[chosen].clone();
        for (j, &v) in path.iter().enumerate() {
            let part = &mut state.parts[j];
            let pos = part.iter().position(|&x| x == v).expect("path vertex in its part");
            part.swap_remove(pos);
            part_of[v] = NO_PART;
        }
        out.push(PowerPath { k, vertices: path });
    }
    Ok(PathCollection {
        paths: out,
        sampler: usage,
    })
}

fn validate(
    collection: &GraphCollection,
    parts: &[Vec<usize>],
    patterns: &[ColourPattern],
    expected_host: HostTemplate,
) -> Result<Vec<usize>, PathError> {
    let k = expected_host.k();
    let r = parts.len();
    if r < k + 1 {
        return Err(PathError::TooFewParts { need: k + 1, got: r });
    }
    let n1 = parts[0].len();
    let mut part_of = vec![NO_PART; collection.n()];
    for (j, part) in parts.iter().enumerate() {
        if part.len() != n1 {
            return Err(PathError::UnequalParts {
                part: j + 1,
                found: part.len(),
                expected: n1,
            });
        }
        for &v in part {
            if v >= collection.n() {
                return Err(PathError::VertexOutOfRange(v));
            }
            if part_of[v] != NO_PART {
                return Err(PathError::Overlap(v));
            }
            part_of[v] = j;
        }
    }
    if patterns.len() > n1 {
        return Err(PathError::TooManyPaths {
            s: patterns.len(),
            n: n1,
        });
    }
    for (index, p) in patterns.iter().enumerate() {
        if p.host() != expected_host {
            return Err(PathError::WrongHost {
                index,
                found: p.host(),
                expected: expected_host,
            });
        }
        if p.max_colour() > collection.m() {
            return Err(PathError::ColourOutOfRange {
                index,
                colour: p.max_colour(),
            });
        }
    }
    Ok(part_of)
}

/// Exact rational abort test: `delta < (2t - 1) n_i / (2t)`.
fn below_threshold(delta: usize, t: usize, n_i: usize) -> bool {
    2 * t * delta < (2 * t - 1) * n_i
}

fn run_step<R: Rng + ?Sized>(
    collection: &GraphCollection,
    state: &PartitionState,
    part_of: &[usize],
    pattern: &ColourPattern,
    rng: &mut R,
    mode: SamplerMode,
    usage: &mut SamplerUsage,
) -> Result<Vec<Vec<usize>>, PathError> {
    let step = state.step;
    let k = pattern.host().k();
    let r = state.parts.len();
    let n_i = state.n_i();
    let union = PartUnion {
        collection,
        part_of,
        pattern,
    };
    // chains[t] is the t-th path under construction; its tile is the last
    // min(k, len) vertices
    let mut chains: Vec<Vec<usize>> = state.parts[0].iter().map(|&v| vec![v]).collect();

    // level is the 0-based index of the part being attached
    for level in 1..r {
        let (phase, window) = if level < k { (1u8, level) } else { (2u8, k) };
        for j in level - window..level {
            let degree = min_bipartite_degree(collection, &state.parts[j], &state.parts[level])
                .map_err(|e| PathError::Invariant {
                    step,
                    level: level + 1,
                    message: e.to_string(),
                })?;
            if below_threshold(degree, window, n_i) {
                return Err(PathError::Abort {
                    step,
                    phase,
                    parts: (j + 1, level + 1),
                    degree,
                    n_i,
                });
            }
        }

        let tiles: Vec<Vec<usize>> = chains
            .iter()
            .map(|c| c[c.len().saturating_sub(window)..].to_vec())
            .collect();
        let tiling =
            CliqueTiling::new(&union, window, tiles).map_err(|e| PathError::Invariant {
                step,
                level: level + 1,
                message: e.to_string(),
            })?;
        let aux = build_auxiliary_tiling_graph(&union, &tiling, &state.parts[level]).map_err(
            |e| PathError::Invariant {
                step,
                level: level + 1,
                message: e.to_string(),
            },
        )?;
        let effective = match mode {
            SamplerMode::Exact if n_i <= EXACT_SIDE_LIMIT => SamplerMode::Exact,
            _ => SamplerMode::Fast,
        };
        match effective {
            SamplerMode::Exact => usage.exact += 1,
            SamplerMode::Fast => usage.fast += 1,
        }
        let matching = match sample_perfect_matching(&aux, rng, effective) {
            Ok(m) => m,
            Err(MatchingError::NoPerfectMatching) => {
                return Err(PathError::NoMatching {
                    step,
                    level: level + 1,
                })
            }
            Err(e) => {
                return Err(PathError::Invariant {
                    step,
                    level: level + 1,
                    message: e.to_string(),
                })
            }
        };
        for (t, right) in matching {
            chains[t].push(state.parts[level][right]);
        }
    }

    for chain in &chains {
        let report = verify_coloured_embedding(collection, pattern, chain).map_err(|e| {
            PathError::Invariant {
                step,
                level: r,
                message: e.to_string(),
            }
        })?;
        if let Some(v) = report.violation {
            return Err(PathError::Invariant {
                step,
                level: r,
                message: format!("decoded path violates the pattern at {:?}", v.host_edge),
            });
        }
    }
    Ok(chains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parts(r: usize, size: usize) -> Vec<Vec<usize>> {
        (0..r).map(|j| (j * size..(j + 1) * size).collect()).collect()
    }

    #[test]
    fn threshold_is_exact() {
        // (2*1 - 1) * 4 / 2 = 2
        assert!(!below_threshold(2, 1, 4));
        assert!(below_threshold(1, 1, 4));
        // 3 * 5 / 4 = 3.75
        assert!(below_threshold(3, 2, 5));
        assert!(!below_threshold(4, 2, 5));
    }

    #[test]
    fn zero_paths_is_empty() {
        let c = GraphCollection::new(9, vec![Graph::complete(9)]).unwrap();
        let out = build_path_collection(
            &c,
            &parts(3, 3),
            &[],
            &mut ChaCha8Rng::seed_from_u64(0),
            SamplerMode::Fast,
        )
        .unwrap();
        assert!(out.paths.is_empty());
    }

    #[test]
    fn complete_collection_small_run() {
        let c = GraphCollection::new(20, vec![Graph::complete(20); 2]).unwrap();
        let host = HostTemplate::power_path(4, 2).unwrap();
        let patterns: Vec<_> = (0..4)
            .map(|i| ColourPattern::from_fn(host, |a, b| 1 + (a + b + i) % 2).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let out = build_path_collection(&c, &parts(4, 5), &patterns, &mut rng, SamplerMode::Exact)
            .unwrap();
        assert_eq!(out.paths.len(), 4);
        let mut seen = vec![false; 20];
        for (p, pat) in out.paths.iter().zip(&patterns) {
            assert!(verify_coloured_embedding(&c, pat, &p.vertices).unwrap().is_valid());
            for &v in &p.vertices {
                assert!(!std::mem::replace(&mut seen[v], true));
            }
        }
        assert_eq!(out.sampler.fast, 0);
    }

    #[test]
    fn sparse_pair_aborts_at_step_one() {
        let mut g = Graph::complete(12);
        // strip vertex 0 (part 1) of all neighbours in part 2
        for v in 3..6 {
            g.remove_edge(0, v);
        }
        let c = GraphCollection::new(12, vec![g]).unwrap();
        let host = HostTemplate::power_path(4, 2).unwrap();
        let pattern = ColourPattern::uniform(host, 1).unwrap();
        let err = build_path_collection(
            &c,
            &parts(4, 3),
            &[pattern],
            &mut ChaCha8Rng::seed_from_u64(0),
            SamplerMode::Fast,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            PathError::Abort {
                step: 1,
                phase: 1,
                parts: (1, 2),
                degree: 0,
                ..
            }
        ));
    }

    #[test]
    fn input_checks() {
        let c = GraphCollection::new(9, vec![Graph::complete(9)]).unwrap();
        let host = HostTemplate::power_path(3, 2).unwrap();
        let pattern = ColourPattern::uniform(host, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let bad = vec![vec![0, 1, 2], vec![3, 4], vec![5, 6, 7]];
        assert!(matches!(
            build_path_collection(&c, &bad, std::slice::from_ref(&pattern), &mut rng, SamplerMode::Fast),
            Err(PathError::UnequalParts { part: 2, .. })
        ));
        let wrong = ColourPattern::uniform(HostTemplate::power_path(3, 1).unwrap(), 1).unwrap();
        assert!(matches!(
            build_path_collection(
                &c,
                &parts(3, 3),
                &[pattern, wrong],
                &mut rng,
                SamplerMode::Fast
            ),
            Err(PathError::WrongHost { index: 1, .. })
        ));
    }
}
