//! Absorbing gadgets, robust greedy embedding, the robustly matchable
//! template, and the absorbing structure assembled from them.

mod degeneracy;
mod gadget;
mod structure;
mod template;

pub use degeneracy::{check_degeneracy, embed_by_degeneracy, EdgeColouredGraph};
pub use gadget::{build_gadget_blueprint, gadget_absorb_sequence, GadgetBlueprint, Role};
pub use structure::{
    absorb, absorber_size, build_absorbing_structure, AbsorbingStructure, EmbeddedGadget, Segment,
    SegmentKind,
};
pub use template::{build_template, build_template_with_slack, Template, TemplateCheck, MAX_DEGREE};

use thiserror::Error;

use crate::connectors::ConnectorError;
use crate::host::HostError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbsorberError {
    #[error("gadgets need k >= 2 (got {0}); for k = 1 the degeneracy bound fails")]
    PowerTooSmall(usize),
    #[error("gadgets need l >= 2 (got {0})")]
    TooFewSlots(usize),
    #[error("gadget pattern host is {found:?}, expected {expected:?}")]
    WrongPattern {
        found: crate::host::HostTemplate,
        expected: crate::host::HostTemplate,
    },
    #[error("absorb index {index} outside 1..={l}")]
    IndexOutOfRange { index: usize, l: usize },
    #[error("ordering is not a permutation of the graph's vertices")]
    BadOrdering,
    #[error("initial segment is not independent: {0} ~ {1}")]
    InitialNotIndependent(usize, usize),
    #[error("vertex {vertex} has {earlier} earlier neighbours, above the bound {bound}")]
    DegeneracyExceeded {
        vertex: usize,
        earlier: usize,
        bound: usize,
    },
    #[error("initial images repeat or leave the collection")]
    BadInitialImages,
    #[error("no feasible image for graph vertex {vertex}")]
    EmbedFailed { vertex: usize },
    #[error("template parameter: {0}")]
    TemplateParameter(String),
    #[error("no certified template after {0} attempts")]
    TemplateFailed(usize),
    #[error("template vertex x_{x} has degree {degree}, outside 2..=40")]
    TemplateDegree { x: usize, degree: usize },
    #[error("structure input: {0}")]
    BadInput(String),
    #[error("gadget {gadget}: {source}")]
    Gadget {
        gadget: usize,
        #[source]
        source: Box<AbsorberError>,
    },
    #[error("connector {index}: {source}")]
    Connector {
        index: usize,
        #[source]
        source: ConnectorError,
    },
    #[error("absorbed set has {found} vertices, expected {expected}")]
    WrongAbsorbSize { found: usize, expected: usize },
    #[error("vertex {0} is not a reservoir vertex of the structure")]
    NotInReservoir(usize),
    #[error("template has no perfect matching for this set; it is not robust")]
    NotRobust,
    #[error("absorbed path failed verification at host edge {0:?}")]
    Unverified((usize, usize)),
    #[error(transparent)]
    Host(#[from] HostError),
}
