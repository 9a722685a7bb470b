//! Edge-coloured pattern graphs and greedy embedding along a degeneracy
//! ordering.

use rand::seq::SliceRandom;
use rand::Rng;

use super::AbsorberError;
use crate::graph::{Colour, GraphCollection, VertexSet};

/// Small graph whose edges carry colours, used as an embedding target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouredGraph {
    order: usize,
    edges: Vec<(usize, usize, Colour)>,
    adj: Vec<Vec<(usize, Colour)>>,
}

impl EdgeColouredGraph {
    pub fn new(order: usize, edges: Vec<(usize, usize, Colour)>) -> Result<Self, String> {
        let mut adj = vec![Vec::new(); order];
        for &(u, v, c) in &edges {
            if u == v || u >= order || v >= order {
                return Err(format!("bad edge ({u}, {v})"));
            }
            if c == 0 {
                return Err(format!("colour 0 on edge ({u}, {v})"));
            }
            adj[u].push((v, c));
            adj[v].push((u, c));
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(format!("duplicate edge ({u}, {})", w[0].0));
            }
        }
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v, c)| (u.min(v), u.max(v), c))
            .collect();
        edges.sort_unstable();
        Ok(Self { order, edges, adj })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize, Colour)] {
        &self.edges
    }

    /// Sorted `(neighbour, colour)` pairs.
    pub fn neighbours(&self, v: usize) -> &[(usize, Colour)] {
        &self.adj[v]
    }

    pub fn colour(&self, u: usize, v: usize) -> Option<Colour> {
        self.adj
            .get(u)?
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }
}

/// Largest number of earlier neighbours along `order`, after checking that
/// `order` is a permutation and its first `initial` vertices are
/// independent.
pub fn check_degeneracy(
    graph: &EdgeColouredGraph,
    order: &[usize],
    initial: usize,
) -> Result<usize, AbsorberError> {
    let n = graph.order();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(AbsorberError::BadOrdering);
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(AbsorberError::BadOrdering);
        }
        pos[v] = i;
    }
    for &u in &order[..initial.min(n)] {
        if let Some(&(v, _)) = graph.neighbours(u).iter().find(|&&(v, _)| pos[v] < initial) {
            return Err(AbsorberError::InitialNotIndependent(u, v));
        }
    }
    Ok(order
        .iter()
        .map(|&v| graph.neighbours(v).iter().filter(|&&(w, _)| pos[w] < pos[v]).count())
        .max()
        .unwrap_or(0))
}

/// Embeds `graph` into the collection. The first `fixed.len()` vertices of
/// `order` go to `fixed`; every other vertex, in order, goes to a uniformly
/// random vertex of `target ∖ avoid` that is still unused and realises
/// each edge to an earlier vertex in that edge's colour. Returns the image
/// of every graph vertex.
#[allow(clippy::too_many_arguments)]
pub fn embed_by_degeneracy<R: Rng + ?Sized>(
    collection: &GraphCollection,
    graph: &EdgeColouredGraph,
    order: &[usize],
    fixed: &[usize],
    target: &VertexSet,
    avoid: &VertexSet,
    p: usize,
    rng: &mut R,
) -> Result<Vec<usize>, AbsorberError> {
    let earlier = check_degeneracy(graph, order, fixed.len())?;
    if earlier > p {
        let vertex = *order
            .iter()
            .find(|&&v| {
                let pos = |w: usize| order.iter().position(|&x| x == w).unwrap();
                graph.neighbours(v).iter().filter(|&&(w, _)| pos(w) < pos(v)).count() > p
            })
            .expect("some vertex exceeds the bound");
        return Err(AbsorberError::DegeneracyExceeded {
            vertex,
            earlier,
            bound: p,
        });
    }
    if let Some(&(_, _, c)) = graph.edges().iter().find(|&&(_, _, c)| c > collection.m()) {
        return Err(AbsorberError::BadInput(format!("colour {c} beyond the collection")));
    }
    let n = collection.n();
    let mut used = VertexSet::new(n);
    let mut image = vec![usize::MAX; graph.order()];
    for (&x, &v) in order.iter().zip(fixed) {
        if v >= n || !used.insert(v) {
            return Err(AbsorberError::BadInitialImages);
        }
        image[x] = v;
    }
    let pool: Vec<usize> = target.iter().filter(|&v| !avoid.contains(v)).collect();
    for &x in &order[fixed.len()..] {
        let constraints: Vec<(usize, Colour)> = graph
            .neighbours(x)
            .iter()
            .filter(|&&(w, _)| image[w] != usize::MAX)
            .map(|&(w, c)| (image[w], c))
            .collect();
        let candidates: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&v| !used.contains(v))
            .filter(|&v| constraints.iter().all(|&(u, c)| collection.has_edge(c, u, v)))
            .collect();
        let &v = candidates
            .choose(rng)
            .ok_or(AbsorberError::EmbedFailed { vertex: x })?;
        image[x] = v;
        used.insert(v);
    }
    Ok(image)
}
