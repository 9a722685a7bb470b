//! The absorbing structure: one gadget per template `X`-vertex, chained
//! from `z_1` to `z_2` by coloured connectors.
//!
//! Layout along the absorbing path (positions of the pattern `chi_0`):
//! `z_1`, `k` connector vertices, gadget path 1, `k` connector vertices, ...,
//! gadget path `3s`, `k` connector vertices, `z_2`. Gadget `i` occupies
//! `(2k+1) d_B(x_i)` positions; its first `k` and last `k` vertices are the
//! same whichever slot vertex it absorbs.

use rand::Rng;

use super::degeneracy::embed_by_degeneracy;
use super::gadget::{build_gadget_blueprint, gadget_absorb_sequence, GadgetBlueprint};
use super::template::Template;
use super::AbsorberError;
use crate::connectors::{embed_connector, ConnectorRequest};
use crate::embedding::{verify_coloured_embedding, PowerPath};
use crate::graph::{GraphCollection, VertexSet};
use crate::host::{ColourPattern, HostTemplate};

/// `a = (2k + 1) b + (3s + 1) k - s`.
pub fn absorber_size(k: usize, template: &Template) -> usize {
    let s = template.s();
    (2 * k + 1) * template.edge_count() + (3 * s + 1) * k - s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Endpoint,
    /// Internal vertices of connector `H_i`.
    Connector(usize),
    /// Absorbed path of gadget `i` (0-based).
    Gadget(usize),
}

/// A run of positions on the absorbing path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGadget {
    pub blueprint: GadgetBlueprint,
    /// Image of every blueprint vertex.
    pub image: Vec<usize>,
    /// Template left indices of the slots `a_1, ..., a_l`.
    pub slots: Vec<usize>,
}

impl EmbeddedGadget {
    fn path_for(&self, slot: usize) -> Vec<usize> {
        gadget_absorb_sequence(&self.blueprint, slot)
            .expect("slot in range")
            .into_iter()
            .map(|v| self.image[v])
            .collect()
    }

    fn head(&self) -> Vec<usize> {
        let k = self.blueprint.k();
        (1..=k).map(|j| self.image[self.blueprint.b(j)]).collect()
    }

    fn tail(&self) -> Vec<usize> {
        let k = self.blueprint.k();
        let nb = 2 * k * self.blueprint.l();
        (nb - k + 1..=nb).map(|j| self.image[self.blueprint.b(j)]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbingStructure {
    k: usize,
    template: Template,
    pattern: ColourPattern,
    y: Vec<usize>,
    reservoir: Vec<usize>,
    z1: usize,
    z2: usize,
    gadgets: Vec<EmbeddedGadget>,
    connectors: Vec<Vec<usize>>,
    segments: Vec<Segment>,
    absorbing_set: Vec<usize>,
}

impl AbsorbingStructure {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn pattern(&self) -> &ColourPattern {
        &self.pattern
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.z1, self.z2)
    }

    /// `Y`, identified with `U` in order.
    pub fn y(&self) -> &[usize] {
        &self.y
    }

    /// `Z ∖ {z_1, z_2}`, identified with `W` in order.
    pub fn reservoir(&self) -> &[usize] {
        &self.reservoir
    }

    pub fn gadgets(&self) -> &[EmbeddedGadget] {
        &self.gadgets
    }

    /// Internal vertices of `H_0, ..., H_{3s}`.
    pub fn connectors(&self) -> &[Vec<usize>] {
        &self.connectors
    }

    /// Offset table of the absorbing path.
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `A`, sorted.
    pub fn absorbing_set(&self) -> &[usize] {
        &self.absorbing_set
    }

    /// Number of vertices the absorber absorbs, `s`.
    pub fn absorb_size(&self) -> usize {
        self.template.s()
    }

    /// Order `a + s + 2` of every absorbed path.
    pub fn path_order(&self) -> usize {
        self.absorbing_set.len() + self.template.s() + 2
    }

    /// `z_1, u_2, ..., u_k`: the same for every absorbed set.
    pub fn first_k(&self) -> Vec<usize> {
        let mut out = vec![self.z1];
        out.extend_from_slice(&self.connectors[0][..self.k - 1]);
        out
    }

    /// `y_1, ..., y_{k-1}, z_2`.
    pub fn last_k(&self) -> Vec<usize> {
        let last = self.connectors.last().expect("at least one connector");
        let mut out = last[1..].to_vec();
        out.push(self.z2);
        out
    }
}

/// Builds the structure. `reservoir` is `Z` and must contain `z1` and `z2`;
/// the rest of it, in the given order, plays the role of `W`. `y` plays
/// `U`. Gadgets avoid `Y ∪ Z` and each other; connectors use vertices
/// outside `Y ∪ Z` and outside every gadget.
#[allow(clippy::too_many_arguments)]
pub fn build_absorbing_structure<R: Rng + ?Sized>(
    collection: &GraphCollection,
    pattern: &ColourPattern,
    reservoir: &[usize],
    z1: usize,
    z2: usize,
    y: &[usize],
    template: &Template,
    rng: &mut R,
) -> Result<AbsorbingStructure, AbsorberError> {
    template.check_x_degrees()?;
    let k = pattern.host().k();
    if k < 2 {
        return Err(AbsorberError::PowerTooSmall(k));
    }
    let s = template.s();
    let n = collection.n();
    let a = absorber_size(k, template);
    let m = a + s + 2;
    let expected = HostTemplate::power_path(m, k)?;
    if pattern.host() != expected {
        return Err(AbsorberError::WrongPattern {
            found: pattern.host(),
            expected,
        });
    }
    if z1 == z2 || !reservoir.contains(&z1) || !reservoir.contains(&z2) {
        return Err(AbsorberError::BadInput(
            "z1 and z2 must be distinct reservoir vertices".into(),
        ));
    }
    let w: Vec<usize> = reservoir
        .iter()
        .copied()
        .filter(|&v| v != z1 && v != z2)
        .collect();
    if w.len() != s + template.slack() {
        return Err(AbsorberError::BadInput(format!(
            "reservoir minus endpoints has {} vertices, template needs {}",
            w.len(),
            s + template.slack()
        )));
    }
    if y.len() != 2 * s {
        return Err(AbsorberError::BadInput(format!(
            "Y has {} vertices, template needs {}",
            y.len(),
            2 * s
        )));
    }
    let mut used = VertexSet::new(n);
    for &v in reservoir.iter().chain(y) {
        if v >= n || !used.insert(v) {
            return Err(AbsorberError::BadInput(format!(
                "vertex {v} repeated or out of range in Y ∪ Z"
            )));
        }
    }
    let left_vertex = |idx: usize| if idx < 2 * s { y[idx] } else { w[idx - 2 * s] };

    // offset table
    let mut segments = vec![Segment {
        kind: SegmentKind::Endpoint,
        start: 0,
        len: 1,
    }];
    let mut pos = 1;
    for i in 0..3 * s {
        segments.push(Segment {
            kind: SegmentKind::Connector(i),
            start: pos,
            len: k,
        });
        pos += k;
        let len = (2 * k + 1) * template.x_degree(i);
        segments.push(Segment {
            kind: SegmentKind::Gadget(i),
            start: pos,
            len,
        });
        pos += len;
    }
    segments.push(Segment {
        kind: SegmentKind::Connector(3 * s),
        start: pos,
        len: k,
    });
    pos += k;
    segments.push(Segment {
        kind: SegmentKind::Endpoint,
        start: pos,
        len: 1,
    });
    debug_assert_eq!(pos + 1, m);

    let everything = VertexSet::full(n);
    let mut gadgets = Vec::with_capacity(3 * s);
    for (i, seg) in segments
        .iter()
        .filter(|seg| matches!(seg.kind, SegmentKind::Gadget(_)))
        .enumerate()
    {
        let wrap = |source| AbsorberError::Gadget {
            gadget: i + 1,
            source: Box::new(source),
        };
        let l = template.x_degree(i);
        let chi_i = pattern
            .restrict(seg.start, HostTemplate::power_path(seg.len, k)?)
            .map_err(|e| wrap(e.into()))?;
        let blueprint = build_gadget_blueprint(k, l, &chi_i).map_err(wrap)?;
        let slots = template.neighbours(i).to_vec();
        let fixed: Vec<usize> = slots.iter().map(|&idx| left_vertex(idx)).collect();
        let image = embed_by_degeneracy(
            collection,
            blueprint.graph(),
            &blueprint.degeneracy_order(),
            &fixed,
            &everything,
            &used,
            k + 2,
            rng,
        )
        .map_err(wrap)?;
        for &v in &image[l..] {
            used.insert(v);
        }
        gadgets.push(EmbeddedGadget {
            blueprint,
            image,
            slots,
        });
    }

    let mut connectors = Vec::with_capacity(3 * s + 1);
    for (i, seg) in segments
        .iter()
        .filter(|seg| matches!(seg.kind, SegmentKind::Connector(_)))
        .enumerate()
    {
        let w_end = if i == 0 { vec![z1] } else { gadgets[i - 1].tail() };
        let y_end = if i == 3 * s { vec![z2] } else { gadgets[i].head() };
        let host = HostTemplate::connector(w_end.len(), y_end.len(), k)?;
        let chi = pattern.restrict(seg.start - w_end.len(), host)?;
        let free = everything.difference(&used);
        let req = ConnectorRequest {
            w: &w_end,
            y: &y_end,
            pattern: &chi,
            reservoir: &free,
            avoid: &VertexSet::new(n),
        };
        let inner = embed_connector(collection, &req, rng)
            .map_err(|source| AbsorberError::Connector { index: i, source })?;
        for &v in &inner {
            used.insert(v);
        }
        connectors.push(inner);
    }

    let mut absorbing_set: Vec<usize> = y.to_vec();
    for g in &gadgets {
        absorbing_set.extend_from_slice(&g.image[g.blueprint.l()..]);
    }
    for c in &connectors {
        absorbing_set.extend_from_slice(c);
    }
    absorbing_set.sort_unstable();
    if absorbing_set.len() != a {
        return Err(AbsorberError::BadInput(format!(
            "absorbing set has {} vertices, expected {a}",
            absorbing_set.len()
        )));
    }
    Ok(AbsorbingStructure {
        k,
        template: template.clone(),
        pattern: pattern.clone(),
        y: y.to_vec(),
        reservoir: w,
        z1,
        z2,
        gadgets,
        connectors,
        segments,
        absorbing_set,
    })
}

/// The `chi_0`-coloured k-path from `z_1` to `z_2` covering
/// `A ∪ Z' ∪ {z_1, z_2}`, for an `s`-subset `Z'` of the reservoir. The
/// result is verified against the collection before it is returned.
pub fn absorb(
    collection: &GraphCollection,
    structure: &AbsorbingStructure,
    z_prime: &[usize],
) -> Result<PowerPath, AbsorberError> {
    let s = structure.template.s();
    if z_prime.len() != s {
        return Err(AbsorberError::WrongAbsorbSize {
            found: z_prime.len(),
            expected: s,
        });
    }
    let mut w_prime = Vec::with_capacity(s);
    for &v in z_prime {
        let idx = structure
            .reservoir
            .iter()
            .position(|&w| w == v)
            .ok_or(AbsorberError::NotInReservoir(v))?;
        w_prime.push(2 * s + idx);
    }
    w_prime.sort_unstable();
    if w_prime.windows(2).any(|p| p[0] == p[1]) {
        return Err(AbsorberError::BadInput("repeated vertex in Z'".into()));
    }
    let matching = structure
        .template
        .matching_for(&w_prime)
        .ok_or(AbsorberError::NotRobust)?;

    let k = structure.k;
    let mut path = vec![structure.z1];
    for (x, left) in matching {
        path.extend_from_slice(&structure.connectors[x]);
        let g = &structure.gadgets[x];
        let slot = g.slots.iter().position(|&u| u == left).expect("matched to a neighbour") + 1;
        path.extend(g.path_for(slot));
    }
    path.extend_from_slice(structure.connectors.last().expect("closing connector"));
    path.push(structure.z2);

    let report = verify_coloured_embedding(collection, &structure.pattern, &path)
        .map_err(|e| AbsorberError::BadInput(e.to_string()))?;
    if let Some(v) = report.violation {
        return Err(AbsorberError::Unverified(v.host_edge));
    }
    Ok(PowerPath { k, vertices: path })
}
