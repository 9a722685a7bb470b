//! Exhaustive search for pattern-coloured Hamilton k-th powers on small
//! instances (`n <= 64`).
//!
//! Patterns are anchored, so the search fixes host positions left to right
//! and lets the vertex at position 0 range over every vertex. A partial
//! placement is cut as soon as a host edge between two placed positions is
//! missing from its colour's graph; adjacency is kept as `u64` masks.
//! Counts are of anchored placements, i.e. vertex sequences: a complete
//! collection on `n` vertices has `n!` of them.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{verify_coloured_embedding, PowerCycle};
use crate::graph::{Colour, GraphCollection};
use crate::host::ColourPattern;
use crate::par::{self, Parallelism};

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle handles at most {MAX_ORDER} vertices, got {0}")]
    TooLarge(usize),
    #[error("pattern must live on a power cycle")]
    NotACycle,
    #[error("pattern order {pattern} differs from collection order {collection}")]
    OrderMismatch { pattern: usize, collection: usize },
    #[error("pattern colour {0} exceeds the collection")]
    ColourOutOfRange(Colour),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Found,
    None,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    #[serde(skip)]
    pub elapsed: Duration,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(PowerCycle),
    None,
    /// Budget ran out before the search finished.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Exact(u128),
    /// Budget ran out; at least this many were seen.
    AtLeast(u128),
}

struct Problem {
    n: usize,
    /// `adj[c][v]`: neighbours of `v` in colour `c` (index 0 unused).
    adj: Vec<Vec<u64>>,
    /// Edges `(q, colour)` from position `t` back to placed positions.
    back: Vec<Vec<(usize, Colour)>>,
    /// Colour of the edge `(t, t + 1)`, steering candidate order.
    next: Vec<Option<Colour>>,
}

impl Problem {
    fn new(collection: &GraphCollection, pattern: &ColourPattern) -> Result<Self, OracleError> {
        let n = collection.n();
        if n > MAX_ORDER {
            return Err(OracleError::TooLarge(n));
        }
        let host = pattern.host();
        if !host.is_cycle() {
            return Err(OracleError::NotACycle);
        }
        if host.order() != n {
            return Err(OracleError::OrderMismatch {
                pattern: host.order(),
                collection: n,
            });
        }
        if pattern.max_colour() > collection.m() {
            return Err(OracleError::ColourOutOfRange(pattern.max_colour()));
        }
        let mut adj = vec![Vec::new(); collection.m() + 1];
        for (c, g) in collection.graphs().iter().enumerate() {
            adj[c + 1] = (0..n).map(|v| g.row(v)[0]).collect();
        }
        let mut back = vec![Vec::new(); n];
        for (i, j, c) in pattern.triples() {
            back[j].push((i, c));
        }
        let next = (0..n)
            .map(|t| (t + 1 < n).then(|| pattern.colour(t, t + 1)).flatten())
            .collect();
        Ok(Self { n, adj, back, next })
    }
}

struct Search<'a> {
    p: &'a Problem,
    placed: Vec<usize>,
    unused: u64,
    nodes: u64,
    budget: u64,
    max_depth: usize,
    count: u128,
    stop_at_first: bool,
    exhausted: bool,
}

impl Search<'_> {
    /// Returns `true` to stop the whole search.
    fn go(&mut self, t: usize) -> bool {
        self.max_depth = self.max_depth.max(t);
        if t == self.p.n {
            self.count += 1;
            return self.stop_at_first;
        }
        let mut cand = self.unused;
        for &(q, c) in &self.p.back[t] {
            cand &= self.p.adj[c][self.placed[q]];
        }
        let mut order: Vec<usize> = Vec::with_capacity(cand.count_ones() as usize);
        while cand != 0 {
            order.push(cand.trailing_zeros() as usize);
            cand &= cand - 1;
        }
        if let Some(c) = self.p.next[t] {
            let unused = self.unused;
            order.sort_by_key(|&v| (self.p.adj[c][v] & unused).count_ones());
        }
        for v in order {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return true;
            }
            self.nodes += 1;
            self.placed[t] = v;
            self.unused &= !(1 << v);
            let stop = self.go(t + 1);
            self.unused |= 1 << v;
            if stop {
                return true;
            }
        }
        false
    }
}

struct Branch {
    found: Option<Vec<usize>>,
    count: u128,
    nodes: u64,
    max_depth: usize,
    exhausted: bool,
}

fn run(
    problem: &Problem,
    budget: Option<u64>,
    stop_at_first: bool,
    mode: Parallelism,
) -> Vec<Branch> {
    let n = problem.n;
    let share = budget.map_or(u64::MAX, |b| b.div_ceil(n as u64).max(1));
    let roots: Vec<usize> = (0..n).collect();
    par::map(mode, &roots, |&v0| {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut s = Search {
            p: problem,
            placed: vec![usize::MAX; n],
            unused: full & !(1 << v0),
            nodes: 1,
            budget: share,
            max_depth: 1,
            count: 0,
            stop_at_first,
            exhausted: false,
        };
        s.placed[0] = v0;
        s.go(1);
        Branch {
            found: (stop_at_first && s.count > 0).then(|| s.placed.clone()),
            count: s.count,
            nodes: s.nodes,
            max_depth: s.max_depth,
            exhausted: s.exhausted,
        }
    })
}

/// Searches for a pattern-coloured Hamilton k-th power. `budget` caps the
/// number of expanded nodes and is split evenly over the `n` choices for
/// position 0, so the answer does not depend on `mode`. Among branches
/// that succeed, the one with the smallest position-0 vertex is returned.
pub fn find_coloured_hamilton_power(
    collection: &GraphCollection,
    pattern: &ColourPattern,
    budget: Option<u64>,
    mode: Parallelism,
) -> Result<(Outcome, SearchStats), OracleError> {
    let start = Instant::now();
    let problem = Problem::new(collection, pattern)?;
    let branches = run(&problem, budget, true, mode);
    let nodes = branches.iter().map(|b| b.nodes).sum();
    let max_depth = branches.iter().map(|b| b.max_depth).max().unwrap_or(0);
    let outcome = match branches.iter().find_map(|b| b.found.clone()) {
        Some(vertices) => {
            let report = verify_coloured_embedding(collection, pattern, &vertices)
                .expect("oracle produces well-formed sequences");
            assert!(report.is_valid(), "oracle output failed verification");
            Outcome::Found(PowerCycle::new(pattern.host().k(), vertices).expect("valid cycle"))
        }
        None if branches.iter().any(|b| b.exhausted) => Outcome::Unknown,
        None => Outcome::None,
    };
    let status = match outcome {
        Outcome::Found(_) => Status::Found,
        Outcome::None => Status::None,
        Outcome::Unknown => Status::Unknown,
    };
    Ok((
        outcome,
        SearchStats {
            nodes,
            max_depth,
            elapsed: start.elapsed(),
            status,
        },
    ))
}

/// Counts anchored placements (valid vertex sequences) without early exit.
pub fn count_coloured_hamilton_powers(
    collection: &GraphCollection,
    pattern: &ColourPattern,
    budget: Option<u64>,
    mode: Parallelism,
) -> Result<(Count, SearchStats), OracleError> {
    let start = Instant::now();
    let problem = Problem::new(collection, pattern)?;
    let branches = run(&problem, budget, false, mode);
    let total: u128 = branches.iter().map(|b| b.count).sum();
    let exhausted = branches.iter().any(|b| b.exhausted);
    let count = if exhausted {
        Count::AtLeast(total)
    } else {
        Count::Exact(total)
    };
    let status = match (exhausted, total) {
        (true, _) => Status::Unknown,
        (false, 0) => Status::None,
        (false, _) => Status::Found,
    };
    Ok((
        count,
        SearchStats {
            nodes: branches.iter().map(|b| b.nodes).sum(),
            max_depth: branches.iter().map(|b| b.max_depth).max().unwrap_or(0),
            elapsed: start.elapsed(),
            status,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::host::HostTemplate;
    use crate::instances::{complete_collection, lowerbound_construction, Orientation};

    #[test]
    fn complete_collection_is_found() {
        let c = complete_collection(8, 3).unwrap();
        let p = ColourPattern::from_fn(HostTemplate::power_cycle(8, 2).unwrap(), |i, j| {
            1 + (i + j) % 3
        })
        .unwrap();
        let (out, stats) = find_coloured_hamilton_power(&c, &p, None, Parallelism::Sequential).unwrap();
        assert!(matches!(out, Outcome::Found(_)));
        assert_eq!(stats.status, Status::Found);
    }

    #[test]
    fn complete_count_is_factorial() {
        for k in 1..=2 {
            let n = 2 * k + 1;
            let c = complete_collection(n, 1).unwrap();
            let p = ColourPattern::uniform(HostTemplate::power_cycle(n, k).unwrap(), 1).unwrap();
            let (count, _) = count_coloured_hamilton_powers(&c, &p, None, Parallelism::Parallel).unwrap();
            let f: u128 = (1..=n as u128).product();
            assert_eq!(count, Count::Exact(f));
        }
    }

    #[test]
    fn empty_collection_counts_zero() {
        let c = GraphCollection::new(5, vec![Graph::empty(5)]).unwrap();
        let p = ColourPattern::uniform(HostTemplate::power_cycle(5, 1).unwrap(), 1).unwrap();
        let (count, stats) = count_coloured_hamilton_powers(&c, &p, None, Parallelism::Sequential).unwrap();
        assert_eq!(count, Count::Exact(0));
        assert_eq!(stats.status, Status::None);
    }

    #[test]
    fn lower_bound_k1_has_none() {
        let (c, p) = lowerbound_construction(1, 3, Orientation::Figure).unwrap();
        let (out, _) = find_coloured_hamilton_power(&c, &p, None, Parallelism::Sequential).unwrap();
        assert_eq!(out, Outcome::None);
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let c = complete_collection(9, 1).unwrap();
        let p = ColourPattern::uniform(HostTemplate::power_cycle(9, 2).unwrap(), 1).unwrap();
        let (count, stats) = count_coloured_hamilton_powers(&c, &p, Some(50), Parallelism::Sequential).unwrap();
        assert!(matches!(count, Count::AtLeast(_)));
        assert_eq!(stats.status, Status::Unknown);
    }

    #[test]
    fn path_pattern_is_rejected() {
        let c = complete_collection(4, 1).unwrap();
        let p = ColourPattern::uniform(HostTemplate::power_path(4, 1).unwrap(), 1).unwrap();
        assert_eq!(
            find_coloured_hamilton_power(&c, &p, None, Parallelism::Sequential).unwrap_err(),
            OracleError::NotACycle
        );
    }
}
