//! Embedded k-paths and k-cycles, verification of coloured embeddings, and
//! minimum-degree measurements on collections.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Colour, GraphCollection, GraphError, VertexSet};
use crate::host::{ColourPattern, HostError, HostTemplate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("{found} vertices given for a host of order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} appears more than once")]
    RepeatedVertex(usize),
    #[error("vertex {0} is outside the collection")]
    VertexOutOfRange(usize),
    #[error("pattern colour {0} exceeds the {1} graphs in the collection")]
    ColourOutOfRange(Colour, usize),
    #[error("a power path needs at least one vertex")]
    EmptyPath,
    #[error(transparent)]
    Host(#[from] HostError),
}

/// The k-th power of a path, given by its vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerPath {
    pub k: usize,
    pub vertices: Vec<usize>,
}

impl PowerPath {
    pub fn new(k: usize, vertices: Vec<usize>) -> Result<Self, EmbeddingError> {
        if vertices.is_empty() {
            return Err(EmbeddingError::EmptyPath);
        }
        check_distinct(&vertices)?;
        Ok(Self { k, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self, count: usize) -> &[usize] {
        &self.vertices[..count.min(self.vertices.len())]
    }

    pub fn last(&self, count: usize) -> &[usize] {
        let len = self.vertices.len();
        &self.vertices[len - count.min(len)..]
    }
}

/// The k-th power of a cycle; position 0 is the anchor of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCycle {
    pub k: usize,
    pub vertices: Vec<usize>,
}

impl PowerCycle {
    pub fn new(k: usize, vertices: Vec<usize>) -> Result<Self, EmbeddingError> {
        HostTemplate::power_cycle(vertices.len(), k)?;
        check_distinct(&vertices)?;
        Ok(Self { k, vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn check_distinct(vertices: &[usize]) -> Result<(), EmbeddingError> {
    let mut seen = std::collections::HashSet::with_capacity(vertices.len());
    for &v in vertices {
        if !seen.insert(v) {
            return Err(EmbeddingError::RepeatedVertex(v));
        }
    }
    Ok(())
}

/// First host edge whose image is missing from its colour's graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub host_edge: (usize, usize),
    pub colour: Colour,
    pub endpoints: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub violation: Option<Violation>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that placing host position `i` on `vertices[i]` realises every
/// host edge in the graph of its colour. Host edges are scanned in
/// canonical order, so the reported violation is the lexicographically
/// first one.
pub fn verify_coloured_embedding(
    collection: &GraphCollection,
    pattern: &ColourPattern,
    vertices: &[usize],
) -> Result<EmbeddingReport, EmbeddingError> {
    let order = pattern.host().order();
    if vertices.len() != order {
        return Err(EmbeddingError::LengthMismatch {
            expected: order,
            found: vertices.len(),
        });
    }
    if let Some(&v) = vertices.iter().find(|&&v| v >= collection.n()) {
        return Err(EmbeddingError::VertexOutOfRange(v));
    }
    check_distinct(vertices)?;
    let m = collection.m();
    if pattern.max_colour() > m {
        return Err(EmbeddingError::ColourOutOfRange(pattern.max_colour(), m));
    }
    let violation = pattern.triples().find_map(|(i, j, c)| {
        let (u, v) = (vertices[i], vertices[j]);
        (!collection.graph(c).has_edge(u, v)).then_some(Violation {
            host_edge: (i, j),
            colour: c,
            endpoints: (u, v),
        })
    });
    Ok(EmbeddingReport { violation })
}

/// `min_i delta(G_i)`.
pub fn min_degree(collection: &GraphCollection) -> usize {
    collection
        .graphs()
        .iter()
        .map(|g| g.min_degree())
        .min()
        .unwrap_or(0)
}

/// Minimum over all graphs of the minimum degree of `G_i[A, B]`: every
/// vertex of `A` counted into `B` and every vertex of `B` into `A`.
pub fn min_bipartite_degree(
    collection: &GraphCollection,
    a: &[usize],
    b: &[usize],
) -> Result<usize, GraphError> {
    let n = collection.n();
    if a.is_empty() {
        return Err(GraphError::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(GraphError::EmptySet("B"));
    }
    let set_a = VertexSet::from_slice(n, a);
    let set_b = VertexSet::from_slice(n, b);
    if let Some(v) = set_a.iter().find(|&v| set_b.contains(v)) {
        return Err(GraphError::Overlap(v));
    }
    Ok(collection
        .graphs()
        .iter()
        .map(|g| {
            let from_a = a.iter().map(|&v| g.degree_into(v, &set_b));
            let from_b = b.iter().map(|&v| g.degree_into(v, &set_a));
            from_a.chain(from_b).min().unwrap_or(0)
        })
        .min()
        .unwrap_or(0))
}
