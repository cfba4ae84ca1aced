use super::{OrientedGraph, MAX_VERTICES};
use crate::error::{Error, Result};

/// A simple undirected graph, used as the host whose orientations are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        let mut check = normalized.clone();
        check.sort_unstable();
        if check.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvariantViolation("duplicate edge".into()));
        }
        Ok(Self { n, edges: normalized })
    }

    /// K_{a,b} with parts 0..a and a..a+b.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
        Self::new(a + b, edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Self::new(self.n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The orientation where bit `i` of `mask` set means edge `i` points from
    /// its larger endpoint to its smaller one.
    pub fn orientation(&self, mask: u64) -> OrientedGraph {
        let mut g = OrientedGraph::empty(self.n).expect("size checked at construction");
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.insert_arc_unchecked(b, a);
            } else {
                g.insert_arc_unchecked(a, b);
            }
        }
        g
    }
}
