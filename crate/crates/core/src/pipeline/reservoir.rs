//! Random reservoir selection with a degree check on both sides.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphCollection, VertexSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReservoirError {
    #[error("reservoir of size {size} does not fit {n} vertices with a non-empty complement")]
    TooLarge { size: usize, n: usize },
    #[error("no good reservoir after {attempts} attempts; worst: vertex {} in graph {} has degree fraction {:.3} {}", .worst.vertex, .worst.colour, .worst.fraction, if .worst.into_reservoir { "into Z" } else { "into V \\ Z" })]
    Exhausted { attempts: usize, worst: DegreeDeficit },
}

/// The worst degree ratio seen in a rejected sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DegreeDeficit {
    pub vertex: usize,
    pub colour: usize,
    pub fraction: f64,
    pub into_reservoir: bool,
}

/// Required degree fraction `1 - 1/(2k) + α/2`.
pub fn reservoir_threshold(k: usize, alpha: f64) -> f64 {
    1.0 - 1.0 / (2.0 * k as f64) + alpha / 2.0
}

/// Worst ratio `d_{G_i}(v, S) / |S|` over all vertices and graphs where
/// `S` is `Z` or `V ∖ Z`.
pub fn worst_deficit(collection: &GraphCollection, z: &VertexSet) -> DegreeDeficit {
    let n = collection.n();
    let rest = VertexSet::full(n).difference(z);
    let mut worst = DegreeDeficit {
        vertex: 0,
        colour: 1,
        fraction: f64::INFINITY,
        into_reservoir: true,
    };
    for (ci, g) in collection.graphs().iter().enumerate() {
        for v in 0..n {
            for (set, into) in [(z, true), (&rest, false)] {
                if set.is_empty() {
                    continue;
                }
                let f = g.degree_into(v, set) as f64 / set.len() as f64;
                if f < worst.fraction {
                    worst = DegreeDeficit {
                        vertex: v,
                        colour: ci + 1,
                        fraction: f,
                        into_reservoir: into,
                    };
                }
            }
        }
    }
    worst
}

/// Draws uniform `size`-subsets until every vertex keeps a
/// `1 - 1/(2k) + α/2` fraction of its possible neighbours in `Z` and in
/// `V ∖ Z`, in every graph. Makes `1 + max_retries` attempts. Returns the
/// sorted set and the number of attempts used.
pub fn sample_reservoir<R: Rng + ?Sized>(
    collection: &GraphCollection,
    size: usize,
    k: usize,
    alpha: f64,
    rng: &mut R,
    max_retries: usize,
) -> Result<(Vec<usize>, usize), ReservoirError> {
    let n = collection.n();
    if size == 0 || size >= n {
        return Err(ReservoirError::TooLarge { size, n });
    }
    let threshold = reservoir_threshold(k, alpha);
    let mut overall: Option<DegreeDeficit> = None;
    for attempt in 1..=max_retries + 1 {
        let mut z = sample(rng, n, size).into_vec();
        z.sort_unstable();
        let set = VertexSet::from_slice(n, &z);
        let worst = worst_deficit(collection, &set);
        if worst.fraction >= threshold {
            return Ok((z, attempt));
        }
        if overall.is_none_or(|o| worst.fraction < o.fraction) {
            overall = Some(worst);
        }
    }
    Err(ReservoirError::Exhausted {
        attempts: max_retries + 1,
        worst: overall.expect("at least one attempt"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instances::complete_collection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complete_collection_accepts_first_sample() {
        let c = complete_collection(60, 2).unwrap();
        let (z, attempts) =
            sample_reservoir(&c, 10, 2, 0.2, &mut ChaCha8Rng::seed_from_u64(1), 5).unwrap();
        assert_eq!(z.len(), 10);
        assert_eq!(attempts, 1);
    }

    #[test]
    fn isolated_vertex_is_always_rejected() {
        let mut g = Graph::complete(20);
        for v in 1..20 {
            g.remove_edge(0, v);
        }
        let c = GraphCollection::new(20, vec![Graph::complete(20), g]).unwrap();
        let err = sample_reservoir(&c, 8, 2, 0.2, &mut ChaCha8Rng::seed_from_u64(1), 4).unwrap_err();
        match err {
            ReservoirError::Exhausted { attempts, worst } => {
                assert_eq!(attempts, 5);
                assert_eq!((worst.vertex, worst.colour), (0, 2));
                assert_eq!(worst.fraction, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
