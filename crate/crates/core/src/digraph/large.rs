use super::{Digraph, OrientedGraph};
use crate::error::{Error, Result};

/// An oriented graph of any order, stored as sorted adjacency lists.
///
/// Hosts for the bipartite embedding pipeline routinely need thousands of
/// vertices; this type carries the same invariants as [`OrientedGraph`]
/// without the word-sized cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargeOrientedGraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arcs: usize,
}

impl LargeOrientedGraph {
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvariantViolation(format!("loop at vertex {u}")));
            }
            out[u].push(v);
            inn[v].push(u);
            count += 1;
        }
        for row in out.iter_mut().chain(inn.iter_mut()) {
            row.sort_unstable();
        }
        for (u, row) in out.iter().enumerate() {
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvariantViolation(format!("duplicate arc {u} {}", w[0])));
            }
            for &v in row {
                if out[v].binary_search(&u).is_ok() {
                    return Err(Error::InvariantViolation(format!(
                        "antiparallel arcs between {u} and {v}"
                    )));
                }
            }
        }
        Ok(Self { out, inn, arcs: count })
    }

    pub fn out_list(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_list(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }
}

impl From<&OrientedGraph> for LargeOrientedGraph {
    fn from(g: &OrientedGraph) -> Self {
        Self::from_arcs(g.n(), g.arcs()).expect("oriented graph invariants already hold")
    }
}

impl Digraph for LargeOrientedGraph {
    fn vertex_count(&self) -> usize {
        self.out.len()
    }

    fn arc_count(&self) -> usize {
        self.arcs
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.out.len() && self.out[u].binary_search(&v).is_ok()
    }

    fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().copied()
    }

    fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].iter().copied()
    }

    fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }
}
