//! Labelled simple graphs on at most [`MAX_ORDER`] vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so neighbourhood
//! intersections and degree counts are single word operations.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Hard vertex capacity; one adjacency row fits a machine word.
pub const MAX_ORDER: usize = 64;

/// An unordered vertex pair, stored with `.0 < .1`.
pub type Edge = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edge_count: usize,
    rows: [u64; MAX_ORDER],
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(order: usize) -> u64 {
    if order >= 64 {
        u64::MAX
    } else {
        (1u64 << order) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        Ok(Graph {
            order,
            edge_count: 0,
            rows: [0; MAX_ORDER],
        })
    }

    pub fn complete(order: usize) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        let all = low_mask(order);
        for v in 0..order {
            g.rows[v] = all & !bit(v);
        }
        g.edge_count = order * order.saturating_sub(1) / 2;
        Ok(g)
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges(order: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = ordered(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.insert_unchecked(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u] |= bit(v);
        self.rows[v] |= bit(u);
        self.edge_count += 1;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `e(H)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u] & bit(v) != 0
    }

    /// Neighbourhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Bit set of vertices with at least one incident edge.
    pub fn support(&self) -> u64 {
        (0..self.order)
            .filter(|&v| self.rows[v] != 0)
            .fold(0, |acc, v| acc | bit(v))
    }

    /// `v(H)` for edge-induced patterns: the number of non-isolated vertices.
    pub fn vertex_count(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// Edges in row-major order `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.order).flat_map(move |u| Bits(self.rows[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// The edge-induced subgraph on the listed edges, keeping all labelled
    /// vertices of `self` (isolated ones included).
    pub fn edge_induced_subgraph(&self, edges: &[Edge]) -> Result<Graph> {
        let mut g = Graph::empty(self.order)?;
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                let (a, b) = ordered(u, v);
                return Err(Error::MissingEdge(a, b));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Subgraph selecting `edge_list[i]` for every set bit `i` of `mask`.
    /// `edge_list` must come from [`Graph::edge_list`] of `self`.
    pub(crate) fn subgraph_from_mask(&self, edge_list: &[Edge], mask: u64) -> Graph {
        let mut g = Graph {
            order: self.order,
            edge_count: 0,
            rows: [0; MAX_ORDER],
        };
        for i in Bits(mask) {
            let (u, v) = edge_list[i];
            g.insert_unchecked(u, v);
        }
        g
    }

    /// Relabels the non-isolated vertices to `0..v(H)` preserving their
    /// relative order and drops the isolated ones.
    pub fn strip_isolated(&self) -> Graph {
        self.induced_on(self.support())
    }

    /// Vertex-induced subgraph on `set`, relabelled compactly in label order.
    pub fn induced_on(&self, set: u64) -> Graph {
        let mut index = [usize::MAX; MAX_ORDER];
        let mut k = 0;
        for v in Bits(set) {
            index[v] = k;
            k += 1;
        }
        let mut g = Graph {
            order: k,
            edge_count: 0,
            rows: [0; MAX_ORDER],
        };
        for u in Bits(set) {
            for v in Bits(self.rows[u] & set) {
                if u < v {
                    g.insert_unchecked(index[u], index[v]);
                }
            }
        }
        g
    }

    /// Image of `self` under the vertex map `perm` into a graph of order
    /// `target_order`. `perm` must be injective.
    pub fn relabel(&self, perm: &[usize], target_order: usize) -> Result<Graph> {
        let mut g = Graph::empty(target_order)?;
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// True when every edge of `other` is an edge of `self`.
    pub fn contains_edges_of(&self, other: &Graph) -> bool {
        (0..other.order).all(|v| other.rows[v] & !self.rows[v] == 0)
    }

    /// Connected components of the non-isolated part, each as a vertex set,
    /// ordered by smallest label.
    pub fn components(&self) -> Vec<u64> {
        let mut remaining = self.support();
        let mut out = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize;
            let comp = self.reach(start);
            remaining &= !comp;
            out.push(comp);
        }
        out
    }

    fn reach(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected after ignoring isolated vertices. The edgeless graph counts
    /// as connected.
    pub fn is_connected(&self) -> bool {
        let s = self.support();
        s == 0 || self.reach(s.trailing_zeros() as usize) == s
    }
}

#[inline]
fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}
