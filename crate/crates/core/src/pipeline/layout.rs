//! Position bookkeeping for the final cycle.
//!
//! Positions are 0-based. The absorbing path takes `[0, m)`. Then come,
//! in order: for each built path a connector block of `k` positions
//! followed by the `r` path positions; for each leftover vertex `k`
//! connector positions followed by the vertex; one position per single
//! vertex extension; and finally `k` closing positions that wrap onto
//! positions `0..k`.
//!
//! Every host edge belongs to exactly one unit: edges inside the absorbing
//! path or a built path belong to that window, and every other edge
//! belongs to the unit containing its later endpoint, with wrap-around
//! edges going to the closure.

use serde::Serialize;

use crate::host::{ColourPattern, HostError, HostTemplate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnitKind {
    Absorber,
    /// Connector into built path `index` (0-based).
    PathConnector { index: usize },
    Path { index: usize },
    /// Connector `J(k, 1)` onto leftover vertex `index`.
    Sweep { index: usize },
    Extension { index: usize },
    Closure,
}

/// A contiguous run of new positions plus the already placed positions it
/// attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Unit {
    pub kind: UnitKind,
    /// First new position.
    pub start: usize,
    /// Number of new positions.
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub r: usize,
    pub paths: usize,
    pub leftovers: usize,
    pub extensions: usize,
    pub units: Vec<Unit>,
}

impl Layout {
    /// Lays out `paths` paths of order `r`, `leftovers` swept vertices and
    /// `extensions` single steps after an absorbing path of order `m`,
    /// closing up with `k` more positions. Returns `None` if the total is
    /// not `n` or a unit would be too short to attach.
    pub fn new(
        n: usize,
        k: usize,
        m: usize,
        r: usize,
        paths: usize,
        leftovers: usize,
        extensions: usize,
    ) -> Option<Self> {
        if k == 0 || m < 2 * k || (paths > 0 && r < k) {
            return None;
        }
        if m + paths * (k + r) + leftovers * (k + 1) + extensions + k != n {
            return None;
        }
        let mut units = vec![Unit {
            kind: UnitKind::Absorber,
            start: 0,
            len: m,
        }];
        let mut p = m;
        for index in 0..paths {
            units.push(Unit {
                kind: UnitKind::PathConnector { index },
                start: p,
                len: k,
            });
            units.push(Unit {
                kind: UnitKind::Path { index },
                start: p + k,
                len: r,
            });
            p += k + r;
        }
        for index in 0..leftovers {
            units.push(Unit {
                kind: UnitKind::Sweep { index },
                start: p,
                len: k + 1,
            });
            p += k + 1;
        }
        for index in 0..extensions {
            units.push(Unit {
                kind: UnitKind::Extension { index },
                start: p,
                len: 1,
            });
            p += 1;
        }
        units.push(Unit {
            kind: UnitKind::Closure,
            start: p,
            len: k,
        });
        Some(Self {
            n,
            k,
            m,
            r,
            paths,
            leftovers,
            extensions,
            units,
        })
    }

    /// Host window `(start, template)` whose restriction colours the unit.
    /// Extensions have no window; their colours are read off the cycle.
    pub fn window(&self, unit: &Unit) -> Option<(usize, HostTemplate)> {
        let k = self.k;
        let t = match unit.kind {
            UnitKind::Absorber => (0, HostTemplate::PowerPath { order: self.m, k }),
            UnitKind::Path { .. } => (unit.start, HostTemplate::PowerPath { order: self.r, k }),
            UnitKind::PathConnector { .. } => (
                unit.start - k,
                HostTemplate::Connector { head: k, tail: k, k },
            ),
            UnitKind::Sweep { .. } => (
                unit.start - k,
                HostTemplate::Connector { head: k, tail: 1, k },
            ),
            UnitKind::Closure => (
                unit.start - k,
                HostTemplate::Connector { head: k, tail: k, k },
            ),
            UnitKind::Extension { .. } => return None,
        };
        Some(t)
    }

    /// Colour pattern of a unit's window under the cycle pattern.
    pub fn unit_pattern(
        &self,
        cycle: &ColourPattern,
        unit: &Unit,
    ) -> Option<Result<ColourPattern, HostError>> {
        self.window(unit).map(|(start, t)| cycle.restrict(start, t))
    }

    /// Colours of the edges from an extension position back to the `k`
    /// positions before it, oldest first.
    pub fn extension_colours(&self, cycle: &ColourPattern, position: usize) -> Vec<usize> {
        (position - self.k..position)
            .map(|q| cycle.colour(q, position).expect("host edge"))
            .collect()
    }

    /// Cycle edges owned by a unit, as sorted position pairs.
    pub fn unit_edges(&self, unit: &Unit) -> Vec<(usize, usize)> {
        let n = self.n;
        let norm = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut out = Vec::new();
        match self.window(unit) {
            Some((start, t)) => {
                // connector hosts already leave out edges inside their ends
                for (i, j) in t.edges().expect("valid window") {
                    out.push(norm((start + i) % n, (start + j) % n));
                }
            }
            None => {
                for q in unit.start - self.k..unit.start {
                    out.push(norm(q, unit.start));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether the units' edge sets partition the cycle's edges.
    pub fn is_exact_partition(&self) -> bool {
        let Ok(host) = HostTemplate::power_cycle(self.n, self.k) else {
            return false;
        };
        let Ok(mut expected) = host.edges() else {
            return false;
        };
        expected.sort_unstable();
        let mut got: Vec<(usize, usize)> = self.units.iter().flat_map(|u| self.unit_edges(u)).collect();
        got.sort_unstable();
        got == expected
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_is_exact_on_mixed_layout() {
        assert!(Layout::new(60, 2, 30, 5, 2, 3, 2).is_none());
        // 30 + 2*7 + 3*3 + 5 + 2 = 60
        let l = Layout::new(60, 2, 30, 5, 2, 3, 5).unwrap();
        assert!(l.is_exact_partition());
        assert_eq!(l.units.last().unwrap().start, 58);
    }

    #[test]
    fn small_layouts_are_exact() {
        for k in 1..=3 {
            for paths in 0..3 {
                for leftovers in 0..3 {
                    for extensions in 0..3 {
                        let m = 3 * k + 1;
                        let r = k + 2;
                        let n = m + paths * (k + r) + leftovers * (k + 1) + extensions + k;
                        let l = Layout::new(n, k, m, r, paths, leftovers, extensions).unwrap();
                        assert!(l.is_exact_partition(), "{k} {paths} {leftovers} {extensions}");
                    }
                }
            }
        }
    }
}
