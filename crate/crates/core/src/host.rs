//! Host templates (k-power paths, k-power cycles and k-connectors) and colour
//! patterns over their canonical edge sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Colour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HostError {
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("power path needs at least one vertex")]
    EmptyPath,
    #[error("power cycle on {n} vertices with k = {k} needs n >= 2k + 1")]
    CycleTooShort { n: usize, k: usize },
    #[error("connector ends ({a}, {b}) must lie in 1..={k}")]
    ConnectorEnds { a: usize, b: usize, k: usize },
    #[error("pattern misses host edge ({0}, {1})")]
    MissingEdge(usize, usize),
    #[error("({0}, {1}) is not a canonical host edge")]
    NotAHostEdge(usize, usize),
    #[error("host edge ({0}, {1}) coloured twice")]
    DoubleColoured(usize, usize),
    #[error("colour 0 on host edge ({0}, {1}); colours are 1-based")]
    ZeroColour(usize, usize),
    #[error("window of order {order} starting at {start} does not fit a host of order {host_order}")]
    WindowOutOfRange {
        start: usize,
        order: usize,
        host_order: usize,
    },
    #[error("window power {window} differs from host power {host}")]
    PowerMismatch { window: usize, host: usize },
    #[error("restriction target must be a path or connector")]
    BadRestrictionTarget,
}

/// Shape of the graph a colour pattern lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HostTemplate {
    /// `P_r^k`: `r` vertices, `i ~ j` iff `0 < |i - j| <= k`.
    PowerPath { order: usize, k: usize },
    /// `C_n^k`: `n` vertices, edges at cyclic distance at most `k`.
    PowerCycle { order: usize, k: usize },
    /// `J^k_{a,b}`: `P^k_{a+k+b}` minus the edges inside the first `a` and
    /// inside the last `b` positions.
    Connector { head: usize, tail: usize, k: usize },
}

impl HostTemplate {
    pub fn power_path(order: usize, k: usize) -> Result<Self, HostError> {
        let h = Self::PowerPath { order, k };
        h.validate()?;
        Ok(h)
    }

    pub fn power_cycle(order: usize, k: usize) -> Result<Self, HostError> {
        let h = Self::PowerCycle { order, k };
        h.validate()?;
        Ok(h)
    }

    pub fn connector(head: usize, tail: usize, k: usize) -> Result<Self, HostError> {
        let h = Self::Connector { head, tail, k };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<(), HostError> {
        if self.k() == 0 {
            return Err(HostError::ZeroPower);
        }
        match *self {
            Self::PowerPath { order: 0, .. } => Err(HostError::EmptyPath),
            Self::PowerCycle { order, k } if order < 2 * k + 1 => {
                Err(HostError::CycleTooShort { n: order, k })
            }
            Self::Connector { head, tail, k }
                if head == 0 || tail == 0 || head > k || tail > k =>
            {
                Err(HostError::ConnectorEnds {
                    a: head,
                    b: tail,
                    k,
                })
            }
            _ => Ok(()),
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            Self::PowerPath { k, .. } | Self::PowerCycle { k, .. } | Self::Connector { k, .. } => k,
        }
    }

    /// Number of host vertices.
    pub fn order(&self) -> usize {
        match *self {
            Self::PowerPath { order, .. } | Self::PowerCycle { order, .. } => order,
            Self::Connector { head, tail, k } => head + k + tail,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Self::PowerCycle { .. })
    }

    /// Whether `(i, j)` with `i < j` is a host edge.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let order = self.order();
        if i == j || j >= order {
            return false;
        }
        let d = j - i;
        match *self {
            Self::PowerPath { k, .. } => d <= k,
            Self::PowerCycle { k, .. } => d.min(order - d) <= k,
            Self::Connector { head, tail, k } => {
                d <= k && j >= head && i < order - tail
            }
        }
    }

    /// Canonical edges: `(min, max)` pairs, lexicographically sorted, no
    /// duplicates.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>, HostError> {
        self.validate()?;
        let order = self.order();
        let k = self.k();
        let mut out = Vec::new();
        for i in 0..order {
            for j in i + 1..order {
                let near = j - i <= k;
                // cycle edges across the seam are the only long ones
                if (near || self.is_cycle()) && self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }
}

/// Total assignment of colours to the canonical edges of a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourPattern {
    host: HostTemplate,
    edges: Vec<(usize, usize)>,
    colours: Vec<Colour>,
}

impl ColourPattern {
    /// Builds a pattern by evaluating `colour_of` on every canonical edge.
    pub fn from_fn(
        host: HostTemplate,
        mut colour_of: impl FnMut(usize, usize) -> Colour,
    ) -> Result<Self, HostError> {
        let edges = host.edges()?;
        let colours: Vec<Colour> = edges.iter().map(|&(i, j)| colour_of(i, j)).collect();
        if let Some(pos) = colours.iter().position(|&c| c == 0) {
            return Err(HostError::ZeroColour(edges[pos].0, edges[pos].1));
        }
        Ok(Self {
            host,
            edges,
            colours,
        })
    }

    pub fn uniform(host: HostTemplate, colour: Colour) -> Result<Self, HostError> {
        Self::from_fn(host, |_, _| colour)
    }

    /// Builds from `(i, j, colour)` triples that must cover every canonical
    /// edge exactly once.
    pub fn from_triples(
        host: HostTemplate,
        triples: &[(usize, usize, Colour)],
    ) -> Result<Self, HostError> {
        let edges = host.edges()?;
        let mut colours: Vec<Option<Colour>> = vec![None; edges.len()];
        for &(i, j, c) in triples {
            let key = (i.min(j), i.max(j));
            let idx = edges
                .binary_search(&key)
                .map_err(|_| HostError::NotAHostEdge(key.0, key.1))?;
            if c == 0 {
                return Err(HostError::ZeroColour(key.0, key.1));
            }
            if colours[idx].replace(c).is_some() {
                return Err(HostError::DoubleColoured(key.0, key.1));
            }
        }
        let colours = colours
            .into_iter()
            .zip(&edges)
            .map(|(c, &(i, j))| c.ok_or(HostError::MissingEdge(i, j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            host,
            edges,
            colours,
        })
    }

    pub fn host(&self) -> HostTemplate {
        self.host
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    /// `(i, j, colour)` triples in canonical order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        self.edges
            .iter()
            .zip(&self.colours)
            .map(|(&(i, j), &c)| (i, j, c))
    }

    /// Colour of host edge `{i, j}`, if it is one.
    pub fn colour(&self, i: usize, j: usize) -> Option<Colour> {
        let key = (i.min(j), i.max(j));
        self.edges
            .binary_search(&key)
            .ok()
            .map(|idx| self.colours[idx])
    }

    pub fn max_colour(&self) -> Colour {
        self.colours.iter().copied().max().unwrap_or(0)
    }

    /// Restriction to a window of the host. Position `t` of `target` maps
    /// to host position `start + t` (taken modulo the order on cycles).
    /// The target must be a power path or connector with the same power.
    pub fn restrict(&self, start: usize, target: HostTemplate) -> Result<ColourPattern, HostError> {
        target.validate()?;
        if target.is_cycle() {
            return Err(HostError::BadRestrictionTarget);
        }
        if target.k() != self.host.k() {
            return Err(HostError::PowerMismatch {
                window: target.k(),
                host: self.host.k(),
            });
        }
        let order = self.host.order();
        let len = target.order();
        let fits = if self.host.is_cycle() {
            start < order && len <= order
        } else {
            start + len <= order
        };
        if !fits {
            return Err(HostError::WindowOutOfRange {
                start,
                order: len,
                host_order: order,
            });
        }
        let map = |t: usize| (start + t) % order;
        let mut failure = None;
        let pattern = ColourPattern::from_fn(target, |i, j| {
            match self.colour(map(i), map(j)) {
                Some(c) => c,
                None => {
                    failure.get_or_insert((map(i), map(j)));
                    1
                }
            }
        })?;
        match failure {
            Some((i, j)) => Err(HostError::NotAHostEdge(i, j)),
            None => Ok(pattern),
        }
    }

    /// Rotates a cycle pattern so that new position `t` carries the colours
    /// of old position `t + offset`.
    pub fn rotated(&self, offset: usize) -> ColourPattern {
        let n = self.host.order();
        ColourPattern::from_fn(self.host, |i, j| {
            self.colour((i + offset) % n, (j + offset) % n)
                .expect("rotation preserves host edges")
        })
        .expect("rotation of a valid pattern")
    }

    /// Mirror image of a cycle pattern: position `t` takes the colours of
    /// position `-t mod n`.
    pub fn reflected(&self) -> ColourPattern {
        let n = self.host.order();
        ColourPattern::from_fn(self.host, |i, j| {
            self.colour((n - i) % n, (n - j) % n)
                .expect("reflection preserves host edges")
        })
        .expect("reflection of a valid pattern")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_nine_square_has_eighteen_edges() {
        let h = HostTemplate::power_cycle(9, 2).unwrap();
        assert_eq!(h.edges().unwrap().len(), 18);
    }

    #[test]
    fn single_vertex_path_has_no_edges() {
        for k in 1..4 {
            let h = HostTemplate::power_path(1, k).unwrap();
            assert!(h.edges().unwrap().is_empty());
        }
    }

    #[test]
    fn square_connector_two_two() {
        let h = HostTemplate::connector(2, 2, 2).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(
            h.edges().unwrap(),
            vec![(0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5)]
        );
    }

    #[test]
    fn cube_connector_three_one() {
        let h = HostTemplate::connector(3, 1, 3).unwrap();
        assert_eq!(h.order(), 7);
        assert_eq!(h.edges().unwrap().len(), 12);
    }

    #[test]
    fn invalid_hosts_are_rejected() {
        assert_eq!(
            HostTemplate::power_cycle(4, 2),
            Err(HostError::CycleTooShort { n: 4, k: 2 })
        );
        assert!(matches!(
            HostTemplate::connector(0, 1, 2),
            Err(HostError::ConnectorEnds { .. })
        ));
        assert!(matches!(
            HostTemplate::connector(3, 1, 2),
            Err(HostError::ConnectorEnds { .. })
        ));
        assert_eq!(HostTemplate::power_path(0, 1), Err(HostError::EmptyPath));
        assert_eq!(HostTemplate::power_path(3, 0), Err(HostError::ZeroPower));
    }

    #[test]
    fn triples_must_cover_exactly() {
        let h = HostTemplate::power_path(3, 1).unwrap();
        assert_eq!(
            ColourPattern::from_triples(h, &[(0, 1, 1)]),
            Err(HostError::MissingEdge(1, 2))
        );
        assert_eq!(
            ColourPattern::from_triples(h, &[(0, 1, 1), (1, 2, 1), (2, 1, 2)]),
            Err(HostError::DoubleColoured(1, 2))
        );
        assert_eq!(
            ColourPattern::from_triples(h, &[(0, 2, 1)]),
            Err(HostError::NotAHostEdge(0, 2))
        );
        let p = ColourPattern::from_triples(h, &[(2, 1, 5), (0, 1, 3)]).unwrap();
        assert_eq!(p.colour(1, 2), Some(5));
        assert_eq!(p.colour(1, 0), Some(3));
        assert_eq!(p.max_colour(), 5);
    }

    #[test]
    fn restriction_of_full_cycle_window_keeps_path_edges() {
        let h = HostTemplate::power_cycle(7, 2).unwrap();
        let p = ColourPattern::from_fn(h, |i, j| 1 + i * 7 + j).unwrap();
        let path = p.restrict(0, HostTemplate::power_path(7, 2).unwrap()).unwrap();
        assert_eq!(path.edges().len(), 2 * 7 - 3);
        for (i, j, c) in path.triples() {
            assert_eq!(p.colour(i, j), Some(c));
        }
    }

    #[test]
    fn restriction_wraps_on_cycles_only() {
        let h = HostTemplate::power_cycle(7, 2).unwrap();
        let p = ColourPattern::from_fn(h, |i, j| 1 + i * 7 + j).unwrap();
        let w = p.restrict(5, HostTemplate::power_path(3, 2).unwrap()).unwrap();
        // window positions 0,1,2 are cycle positions 5,6,0
        assert_eq!(w.colour(0, 1), p.colour(5, 6));
        assert_eq!(w.colour(1, 2), p.colour(6, 0));
        assert_eq!(w.colour(0, 2), p.colour(5, 0));

        let path = p.restrict(0, HostTemplate::power_path(7, 2).unwrap()).unwrap();
        assert!(matches!(
            path.restrict(5, HostTemplate::power_path(3, 2).unwrap()),
            Err(HostError::WindowOutOfRange { .. })
        ));
        assert!(matches!(
            p.restrict(0, HostTemplate::power_path(3, 1).unwrap()),
            Err(HostError::PowerMismatch { .. })
        ));
    }

    #[test]
    fn clique_window_is_a_path_on_k_plus_one() {
        let h = HostTemplate::power_cycle(9, 3).unwrap();
        let p = ColourPattern::uniform(h, 2).unwrap();
        let w = p.restrict(4, HostTemplate::power_path(4, 3).unwrap()).unwrap();
        assert_eq!(w.edges().len(), 6);
    }
}
