//! Construction of colour-patterned powers of Hamilton cycles in collections
//! of graphs on a shared vertex set.
//!
//! The solver follows the absorption method: a random reservoir, a
//! template-driven absorbing path, a matching-based builder for many short
//! k-paths, greedy connectors, and a final absorption step. Around it sit an
//! exhaustive oracle for small instances and generators for test families,
//! including the extremal lower-bound construction.

pub mod absorber;
pub mod connectors;
pub mod embedding;
pub mod graph;
pub mod host;
pub mod instances;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod pathbuilder;
pub mod pipeline;
pub mod rng;
pub mod cli;

pub use embedding::{
    min_bipartite_degree, min_degree, verify_coloured_embedding, EmbeddingError, EmbeddingReport,
    PowerCycle, PowerPath, Violation,
};
pub use graph::{Adjacency, Colour, Graph, GraphCollection, GraphError, VertexSet};
pub use host::{ColourPattern, HostError, HostTemplate};
