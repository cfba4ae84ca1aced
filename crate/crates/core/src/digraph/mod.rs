//! Oriented graphs: loopless digraphs without antiparallel arc pairs.
//!
//! [`OrientedGraph`] is the small, bitset-backed workhorse (at most 64
//! vertices, one machine word per adjacency row). [`LargeOrientedGraph`] holds
//! hosts beyond that cap for the bipartite embedding pipeline, and
//! [`BipartiteDigraph`] is the two-part type whose arcs all run from one part
//! to the other.

mod bipartite;
mod families;
mod io;
mod large;
mod undirected;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bipartite::{BipartiteDigraph, BipartiteSummary, Side};
pub use io::{decode, decode_large, decode_undirected, encode, encode_large, encode_undirected};
pub use large::LargeOrientedGraph;
pub use undirected::UndirectedGraph;

pub const MAX_VERTICES: usize = 64;

/// Read access shared by every digraph representation in the crate.
pub trait Digraph {
    fn vertex_count(&self) -> usize;
    fn arc_count(&self) -> usize;
    fn has_arc(&self, u: usize, v: usize) -> bool;
    fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;
    fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;

    fn out_degree(&self, v: usize) -> usize {
        self.out_neighbors(v).count()
    }

    fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).count()
    }

    /// All arcs, sorted by `(tail, head)`.
    fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for u in 0..self.vertex_count() {
            arcs.extend(self.out_neighbors(u).map(|v| (u, v)));
        }
        arcs.sort_unstable();
        arcs
    }

    fn degree_profile(&self) -> DegreeProfile {
        let n = self.vertex_count();
        DegreeProfile {
            out_degree: (0..n).map(|v| self.out_degree(v)).collect(),
            in_degree: (0..n).map(|v| self.in_degree(v)).collect(),
        }
    }
}

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An oriented graph on at most [`MAX_VERTICES`] vertices.
///
/// Row `v` of `out` is the out-neighbourhood of `v` as a bitset; `inn` is the
/// transpose. Values are immutable from the outside: edits return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl OrientedGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        Ok(Self {
            n,
            out: vec![0; n],
            inn: vec![0; n],
        })
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in arcs {
            g.insert_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.out.iter().all(|&r| r == 0)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u] >> v & 1 == 1
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    #[inline]
    pub fn out_mask(&self, v: usize) -> u64 {
        self.out[v]
    }

    #[inline]
    pub fn in_mask(&self, v: usize) -> u64 {
        self.inn[v]
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.out[v] | self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// Returns a copy with the arc `u -> v` added.
    pub fn with_arc(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.insert_arc(u, v)?;
        Ok(g)
    }

    /// Returns a copy without the arc `u -> v` (a no-op if it is absent).
    pub fn without_arc(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if g.has_arc(u, v) {
            g.remove_arc(u, v);
        }
        g
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub(crate) fn insert_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopArc(u));
        }
        if self.has_arc(v, u) {
            return Err(Error::AntiparallelViolation { u, v });
        }
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
        Ok(())
    }

    /// Inserts without validation; callers guarantee `u != v` and that `v -> u` is absent.
    #[inline]
    pub(crate) fn insert_arc_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && !self.has_arc(v, u));
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
    }

    #[inline]
    pub(crate) fn remove_arc(&mut self, u: usize, v: usize) {
        self.out[u] &= !(1 << v);
        self.inn[v] &= !(1 << u);
    }

    /// Appends an isolated vertex, returning its index.
    pub(crate) fn push_vertex(&mut self) -> Result<usize> {
        if self.n == MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                limit: MAX_VERTICES,
                got: self.n + 1,
            });
        }
        self.out.push(0);
        self.inn.push(0);
        self.n += 1;
        Ok(self.n - 1)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            arcs.extend(bits(self.out[u]).map(|v| (u, v)));
        }
        arcs
    }

    /// Relabels vertex `v` as `new_of_old[v]`; the argument must be a permutation.
    pub fn relabel(&self, new_of_old: &[usize]) -> Self {
        assert_eq!(new_of_old.len(), self.n, "permutation length");
        let mut g = Self {
            n: self.n,
            out: vec![0; self.n],
            inn: vec![0; self.n],
        };
        for (u, v) in self.arcs() {
            g.insert_arc_unchecked(new_of_old[u], new_of_old[v]);
        }
        g
    }

    /// Every arc flipped.
    pub fn reverse(&self) -> Self {
        Self {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Subgraph induced on `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let mut g = Self {
            n: keep.len(),
            out: vec![0; keep.len()],
            inn: vec![0; keep.len()],
        };
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.has_arc(a, b) {
                    g.insert_arc_unchecked(i, j);
                }
            }
        }
        g
    }

    /// Removes vertex `v`, shifting higher indices down by one.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&x| x != v).collect();
        self.induced(&keep)
    }

    /// Vertex-disjoint union; `other`'s vertices come after `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let mut g = Self::empty(self.n + other.n)?;
        for (u, v) in self.arcs() {
            g.insert_arc_unchecked(u, v);
        }
        for (u, v) in other.arcs() {
            g.insert_arc_unchecked(u + self.n, v + self.n);
        }
        Ok(g)
    }

    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|v| self.neighbor_mask(v) == low_mask(self.n) & !(1 << v))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            out_degree: (0..self.n).map(|v| self.out_degree(v)).collect(),
            in_degree: (0..self.n).map(|v| self.in_degree(v)).collect(),
        }
    }
}

impl Digraph for OrientedGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn arc_count(&self) -> usize {
        OrientedGraph::arc_count(self)
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        OrientedGraph::has_arc(self, u, v)
    }

    fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.out[v])
    }

    fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.inn[v])
    }

    fn out_degree(&self, v: usize) -> usize {
        OrientedGraph::out_degree(self, v)
    }

    fn in_degree(&self, v: usize) -> usize {
        OrientedGraph::in_degree(self, v)
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        OrientedGraph::arcs(self)
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode(self))
    }
}

impl Serialize for OrientedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrientedGraph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("arcs", &self.arcs())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for OrientedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            arcs: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(d)?;
        OrientedGraph::from_arcs(raw.n, raw.arcs).map_err(serde::de::Error::custom)
    }
}

/// Per-vertex in/out degrees. Total degree is their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
}

impl DegreeProfile {
    pub fn len(&self) -> usize {
        self.out_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out_degree.is_empty()
    }

    pub fn total(&self, v: usize) -> usize {
        self.out_degree[v] + self.in_degree[v]
    }

    pub fn totals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(|v| self.total(v))
    }

    /// Δ: largest total degree (0 for the empty vertex set).
    pub fn max_total(&self) -> usize {
        self.totals().max().unwrap_or(0)
    }

    /// δ: smallest total degree (0 for the empty vertex set).
    pub fn min_total(&self) -> usize {
        self.totals().min().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.out_degree.iter().sum()
    }

    /// d(D) = 2|E|/n; zero for the empty vertex set.
    pub fn average_total(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            2.0 * self.arc_count() as f64 / self.len() as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_arc_base_case() {
        let g = OrientedGraph::empty(2).unwrap().with_arc(0, 1).unwrap();
        assert_eq!(g.arcs(), vec![(0, 1)]);
    }

    #[test]
    fn add_arc_rejects_antiparallel() {
        let g = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(matches!(
            g.with_arc(1, 0),
            Err(Error::AntiparallelViolation { u: 1, v: 0 })
        ));
    }

    #[test]
    fn add_arc_rejects_loop() {
        let g = OrientedGraph::empty(3).unwrap();
        assert!(matches!(g.with_arc(2, 2), Err(Error::LoopArc(2))));
    }

    #[test]
    fn add_disjoint_pair_extends_path() {
        let g = OrientedGraph::from_arcs(3, [(0, 1)]).unwrap();
        let h = g.with_arc(1, 2).unwrap();
        assert_eq!(h.arc_count(), 2);
        assert_eq!(h.arcs(), vec![(0, 1), (1, 2)]);
        // original untouched
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn out_of_range_vertex() {
        let g = OrientedGraph::empty(2).unwrap();
        assert!(matches!(
            g.with_arc(0, 5),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
        assert!(OrientedGraph::empty(65).is_err());
    }

    #[test]
    fn degree_profile_of_path() {
        let g = OrientedGraph::directed_path(3);
        let d = g.degree_profile();
        assert_eq!(d.out_degree, vec![1, 1, 0]);
        assert_eq!(d.in_degree, vec![0, 1, 1]);
        assert_eq!(d.max_total(), 2);
        assert_eq!(d.min_total(), 1);
    }

    #[test]
    fn degree_profile_of_empty_graph() {
        let d = OrientedGraph::empty(4).unwrap().degree_profile();
        assert!(d.totals().all(|t| t == 0));
        assert_eq!(d.average_total(), 0.0);
    }

    #[test]
    fn degree_profile_of_transitive_triangle() {
        let d = OrientedGraph::transitive_tournament(3).degree_profile();
        assert!(d.totals().all(|t| t == 2));
        assert_eq!(d.average_total(), 2.0);
    }

    #[test]
    fn relabel_and_reverse() {
        let g = OrientedGraph::directed_path(3);
        let h = g.relabel(&[2, 1, 0]);
        assert_eq!(h.arcs(), vec![(1, 0), (2, 1)]);
        assert_eq!(g.reverse().arcs(), vec![(1, 0), (2, 1)]);
        assert!(OrientedGraph::transitive_tournament(4).is_tournament());
        assert!(!g.is_tournament());
    }

    #[test]
    fn serde_round_trip() {
        let g = OrientedGraph::directed_cycle(4);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":4,"arcs":[[0,1],[1,2],[2,3],[3,0]]}"#);
        let back: OrientedGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<OrientedGraph>(r#"{"n":2,"arcs":[[0,1],[1,0]]}"#).is_err());
    }
}
