//! Simple undirected graphs, graph collections on a shared vertex set, and a
//! small dense vertex-set type used throughout the solver.

use thiserror::Error;

/// Colour index of a graph in a collection. Colours are 1-based.
pub type Colour = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("collection must contain at least one graph")]
    EmptyCollection,
    #[error("graph {index} has {found} vertices, collection has {expected}")]
    VertexCountMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("colour {0} is outside 1..={1}")]
    ColourOutOfRange(Colour, usize),
    #[error("vertex set {0} is empty")]
    EmptySet(&'static str),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
}

/// Anything that can answer adjacency queries on vertices `0..order()`.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

/// Undirected simple graph on `0..n` with sorted neighbour lists and a
/// bit-matrix for constant-time adjacency tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbours: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; words * n],
            neighbours: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// Adds `uv`; returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange(u, v, self.n));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.insert_unchecked(u, v);
        Ok(true)
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        let nu = &mut self.neighbours[u];
        let pos = nu.partition_point(|&x| x < v);
        nu.insert(pos, v);
        let nv = &mut self.neighbours[v];
        let pos = nv.partition_point(|&x| x < u);
        nv.insert(pos, u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return false;
        }
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
        self.neighbours[u].retain(|&x| x != v);
        self.neighbours[v].retain(|&x| x != u);
        true
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.neighbours[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Number of neighbours of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        let row = &self.bits[v * self.words..(v + 1) * self.words];
        row.iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Bit row of `v`, one bit per vertex.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.neighbours[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.n
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
}

/// A collection `G_1, ..., G_m` of graphs on the common vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCollection {
    n: usize,
    graphs: Vec<Graph>,
}

impl GraphCollection {
    pub fn new(n: usize, graphs: Vec<Graph>) -> Result<Self, GraphError> {
        if graphs.is_empty() {
            return Err(GraphError::EmptyCollection);
        }
        for (index, g) in graphs.iter().enumerate() {
            if g.n() != n {
                return Err(GraphError::VertexCountMismatch {
                    index,
                    found: g.n(),
                    expected: n,
                });
            }
        }
        Ok(Self { n, graphs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.graphs.len()
    }

    /// The graph in colour `c` (1-based). Panics on an out-of-range colour.
    pub fn graph(&self, c: Colour) -> &Graph {
        &self.graphs[c - 1]
    }

    pub fn try_graph(&self, c: Colour) -> Result<&Graph, GraphError> {
        if c == 0 || c > self.graphs.len() {
            return Err(GraphError::ColourOutOfRange(c, self.graphs.len()));
        }
        Ok(&self.graphs[c - 1])
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    #[inline]
    pub fn has_edge(&self, c: Colour, u: usize, v: usize) -> bool {
        c >= 1 && c <= self.graphs.len() && self.graphs[c - 1].has_edge(u, v)
    }

    /// Applies a vertex relabelling `perm[v]` to every graph.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let graphs = self
            .graphs
            .iter()
            .map(|g| {
                let mut h = Graph::empty(self.n);
                for (u, v) in g.edges() {
                    h.insert_unchecked(perm[u], perm[v]);
                }
                h
            })
            .collect();
        Self { n: self.n, graphs }
    }
}

/// Dense vertex subset of `0..n` backed by a bit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; n.div_ceil(64).max(1)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_slice(n: usize, vertices: &[usize]) -> Self {
        let mut s = Self::new(n);
        for &v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Returns `true` if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.n, "vertex {v} outside universe {}", self.n);
        let (w, b) = (v / 64, v % 64);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.len += 1;
        true
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.bits[v / 64] &= !(1 << (v % 64));
        self.len -= 1;
        true
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.insert(v);
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in self.iter().filter(|&v| !other.contains(v)) {
            out.insert(v);
        }
        out
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EndpointOutOfRange(0, 3, 3))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = Graph::from_edges(5, &[(3, 1), (0, 3), (4, 3)]).unwrap();
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1));
        assert_eq!(g.neighbours(3), &[0, 1, 4]);
        assert_eq!(g.edges(), vec![(0, 3), (1, 3), (3, 4)]);
        assert_eq!(g.min_degree(), 0);
    }

    #[test]
    fn wide_graphs_cross_word_boundaries() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129).unwrap();
        g.add_edge(63, 64).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(64, 63));
        let set = VertexSet::from_slice(130, &[64, 129]);
        assert_eq!(g.degree_into(0, &set), 1);
        assert_eq!(g.degree_into(63, &set), 1);
        assert!(g.remove_edge(0, 129));
        assert!(!g.has_edge(0, 129));
    }

    #[test]
    fn vertex_set_operations() {
        let mut s = VertexSet::from_slice(70, &[3, 65, 3]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![3, 65]);
        assert!(s.remove(65));
        assert!(!s.remove(65));
        let t = VertexSet::from_slice(70, &[3, 4]);
        assert!(!s.is_disjoint(&t));
        assert_eq!(t.difference(&s).to_vec(), vec![4]);
    }

    #[test]
    fn collection_validates_graphs() {
        assert_eq!(
            GraphCollection::new(3, vec![]),
            Err(GraphError::EmptyCollection)
        );
        let err = GraphCollection::new(3, vec![Graph::empty(4)]).unwrap_err();
        assert!(matches!(err, GraphError::VertexCountMismatch { .. }));
        let c = GraphCollection::new(3, vec![Graph::complete(3)]).unwrap();
        assert!(c.has_edge(1, 0, 2));
        assert!(!c.has_edge(2, 0, 2));
    }
}
