//! The absorbing gadget `F^k_l`.
//!
//! Vertices are numbered `a_1..a_l` first, then `b_1..b_{2kl}`, then
//! `c_1..c_{l-1}`. The base sequence `S` lists the `b`s in order with `a_i`
//! inserted directly after `b_{(2i-1)k}`; `S` carries a coloured copy of
//! `P^k_{(2k+1)l}`. Each `c_i` merges a clone of `a_i` and a clone of
//! `a_{i+1}`, inheriting the colours of both.

use super::degeneracy::EdgeColouredGraph;
use super::AbsorberError;
use crate::graph::Colour;
use crate::host::{ColourPattern, HostTemplate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    A(usize),
    B(usize),
    C(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetBlueprint {
    k: usize,
    l: usize,
    pattern: ColourPattern,
    sequence: Vec<usize>,
    graph: EdgeColouredGraph,
}

impl GadgetBlueprint {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn pattern(&self) -> &ColourPattern {
        &self.pattern
    }

    pub fn graph(&self) -> &EdgeColouredGraph {
        &self.graph
    }

    /// `|A ∪ B ∪ C| = (2k + 2)l - 1`.
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Order of an absorbed path, `(2k + 1)l`.
    pub fn path_order(&self) -> usize {
        (2 * self.k + 1) * self.l
    }

    pub fn a(&self, i: usize) -> usize {
        assert!((1..=self.l).contains(&i));
        i - 1
    }

    pub fn b(&self, j: usize) -> usize {
        assert!((1..=2 * self.k * self.l).contains(&j));
        self.l + j - 1
    }

    pub fn c(&self, i: usize) -> usize {
        assert!((1..self.l).contains(&i));
        self.l + 2 * self.k * self.l + i - 1
    }

    pub fn role(&self, v: usize) -> Role {
        let nb = 2 * self.k * self.l;
        if v < self.l {
            Role::A(v + 1)
        } else if v < self.l + nb {
            Role::B(v - self.l + 1)
        } else {
            Role::C(v - self.l - nb + 1)
        }
    }

    pub fn a_vertices(&self) -> Vec<usize> {
        (0..self.l).collect()
    }

    /// `R = B ∪ C`.
    pub fn r_vertices(&self) -> Vec<usize> {
        (self.l..self.order()).collect()
    }

    /// Base sequence `S` over `A ∪ B`.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// The ordering `A, s_1, ..., s_{l-1}, b_{2k(l-1)+1}, ..., b_{2kl}` with
    /// `s_i = b_{(2i-2)k+1..(2i-1)k}, c_i, b_{(2i-1)k+1..2ki}`.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let k = self.k;
        let mut order = self.a_vertices();
        for i in 1..self.l {
            order.extend(((2 * i - 2) * k + 1..=(2 * i - 1) * k).map(|j| self.b(j)));
            order.push(self.c(i));
            order.extend(((2 * i - 1) * k + 1..=2 * k * i).map(|j| self.b(j)));
        }
        order.extend((2 * k * (self.l - 1) + 1..=2 * k * self.l).map(|j| self.b(j)));
        order
    }
}

/// Builds `F^k_l` with colours from `pattern` on `P^k_{(2k+1)l}`.
pub fn build_gadget_blueprint(
    k: usize,
    l: usize,
    pattern: &ColourPattern,
) -> Result<GadgetBlueprint, AbsorberError> {
    if k < 2 {
        return Err(AbsorberError::PowerTooSmall(k));
    }
    if l < 2 {
        return Err(AbsorberError::TooFewSlots(l));
    }
    let r = (2 * k + 1) * l;
    let expected = HostTemplate::power_path(r, k)?;
    if pattern.host() != expected {
        return Err(AbsorberError::WrongPattern {
            found: pattern.host(),
            expected,
        });
    }
    let nb = 2 * k * l;
    let order = l + nb + (l - 1);
    let b = |j: usize| l + j - 1;

    let mut sequence = Vec::with_capacity(r);
    let mut next_a = 1;
    for j in 1..=nb {
        sequence.push(b(j));
        if next_a <= l && j == (2 * next_a - 1) * k {
            sequence.push(next_a - 1);
            next_a += 1;
        }
    }
    debug_assert_eq!(sequence.len(), r);

    let mut edges: Vec<(usize, usize, Colour)> = pattern
        .triples()
        .map(|(p, q, c)| (sequence[p], sequence[q], c))
        .collect();
    // c_i takes over every edge of a_i and a_{i+1}
    let a_edges: Vec<(usize, usize, Colour)> = edges
        .iter()
        .copied()
        .filter(|&(u, v, _)| u < l || v < l)
        .collect();
    for &(u, v, c) in &a_edges {
        let (a, other) = if u < l { (u, v) } else { (v, u) };
        let i = a + 1;
        if i < l {
            edges.push((l + nb + i - 1, other, c));
        }
        if i > 1 {
            edges.push((l + nb + i - 2, other, c));
        }
    }
    let graph = EdgeColouredGraph::new(order, edges).map_err(AbsorberError::BadInput)?;
    Ok(GadgetBlueprint {
        k,
        l,
        pattern: pattern.clone(),
        sequence,
        graph,
    })
}

/// `S_i`: the base sequence with `a_j` replaced by `c_j` for `j < i` and by
/// `c_{j-1}` for `j > i`. It is a pattern-coloured k-path on `R ∪ {a_i}`.
pub fn gadget_absorb_sequence(
    g: &GadgetBlueprint,
    i: usize,
) -> Result<Vec<usize>, AbsorberError> {
    if i == 0 || i > g.l {
        return Err(AbsorberError::IndexOutOfRange { index: i, l: g.l });
    }
    Ok(g.sequence
        .iter()
        .map(|&v| match g.role(v) {
            Role::A(j) if j < i => g.c(j),
            Role::A(j) if j > i => g.c(j - 1),
            _ => v,
        })
        .collect())
}
