//! Greedy embedding of coloured k-connectors through a reservoir, and
//! one-vertex extensions of k-paths.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{Colour, GraphCollection, VertexSet};
use crate::host::{ColourPattern, HostTemplate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectorError {
    #[error("pattern host {found:?} is not connector({a}, {b}, {k})")]
    WrongHost {
        found: HostTemplate,
        a: usize,
        b: usize,
        k: usize,
    },
    #[error("end vertex {0} is repeated or lies in the reservoir")]
    BadEnd(usize),
    #[error("pattern colour {0} exceeds the collection")]
    ColourOutOfRange(Colour),
    #[error("no reservoir vertex fits internal position {position}")]
    ConnectionFailed { position: usize },
    #[error("extension needs {expected} colours and a path of at least {expected} vertices, got {colours} colours and {path} vertices")]
    BadExtension {
        expected: usize,
        colours: usize,
        path: usize,
    },
    #[error("no reservoir vertex extends the path")]
    NoCandidate,
}

/// Join the tail `w` of one k-path to the head `y` of another through `k`
/// fresh vertices of `reservoir ∖ avoid`.
#[derive(Clone, Copy, Debug)]
pub struct ConnectorRequest<'a> {
    pub w: &'a [usize],
    pub y: &'a [usize],
    pub pattern: &'a ColourPattern,
    pub reservoir: &'a VertexSet,
    pub avoid: &'a VertexSet,
}

/// Chooses the internal vertices left to right, each uniformly among the
/// reservoir vertices adjacent in the prescribed colours to every already
/// fixed neighbour (earlier positions and the `y` end). The returned
/// vertices make `w ++ internal ++ y` a pattern-coloured connector.
pub fn embed_connector<R: Rng + ?Sized>(
    collection: &GraphCollection,
    req: &ConnectorRequest<'_>,
    rng: &mut R,
) -> Result<Vec<usize>, ConnectorError> {
    let host = req.pattern.host();
    let k = host.k();
    let (a, b) = (req.w.len(), req.y.len());
    if host != (HostTemplate::Connector { head: a, tail: b, k }) {
        return Err(ConnectorError::WrongHost {
            found: host,
            a,
            b,
            k,
        });
    }
    if req.pattern.max_colour() > collection.m() {
        return Err(ConnectorError::ColourOutOfRange(req.pattern.max_colour()));
    }
    let mut taken = VertexSet::new(collection.n());
    for &v in req.w.iter().chain(req.y) {
        if req.reservoir.contains(v) || !taken.insert(v) {
            return Err(ConnectorError::BadEnd(v));
        }
    }

    let mut placed: Vec<usize> = req.w.to_vec();
    placed.resize(a + k, usize::MAX);
    placed.extend_from_slice(req.y);
    let pool: Vec<usize> = req
        .reservoir
        .iter()
        .filter(|&v| !req.avoid.contains(v) && !taken.contains(v))
        .collect();

    for p in a..a + k {
        let lo = p.saturating_sub(k);
        let hi = (p + k).min(host.order() - 1);
        // constraints against fixed vertices only: earlier positions and y
        let constraints: Vec<(usize, Colour)> = (lo..=hi)
            .filter(|&q| q != p && (q < p || q >= a + k))
            .filter_map(|q| req.pattern.colour(p, q).map(|c| (placed[q], c)))
            .collect();
        let candidates: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&v| !taken.contains(v))
            .filter(|&v| constraints.iter().all(|&(u, c)| collection.has_edge(c, u, v)))
            .collect();
        let &v = candidates
            .choose(rng)
            .ok_or(ConnectorError::ConnectionFailed { position: p })?;
        placed[p] = v;
        taken.insert(v);
    }
    Ok(placed[a..a + k].to_vec())
}

/// Picks a vertex of `reservoir ∖ avoid`, not on `path`, joined to the last
/// `k` path vertices in the given colours: `colours[t]` is the colour of
/// the edge to `path[len - k + t]`. Uniform among the feasible vertices.
pub fn extend_by_one<R: Rng + ?Sized>(
    collection: &GraphCollection,
    path: &[usize],
    colours: &[Colour],
    reservoir: &VertexSet,
    avoid: &VertexSet,
    rng: &mut R,
) -> Result<usize, ConnectorError> {
    let k = colours.len();
    if k == 0 || path.len() < k {
        return Err(ConnectorError::BadExtension {
            expected: k.max(1),
            colours: k,
            path: path.len(),
        });
    }
    if let Some(&c) = colours.iter().find(|&&c| c == 0 || c > collection.m()) {
        return Err(ConnectorError::ColourOutOfRange(c));
    }
    let tail = &path[path.len() - k..];
    let candidates: Vec<usize> = reservoir
        .iter()
        .filter(|&v| !avoid.contains(v) && !path.contains(&v))
        .filter(|&v| {
            tail.iter()
                .zip(colours)
                .all(|(&u, &c)| collection.has_edge(c, u, v))
        })
        .collect();
    candidates.choose(rng).copied().ok_or(ConnectorError::NoCandidate)
}
