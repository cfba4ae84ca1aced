use std::collections::HashMap;

use serde::Serialize;

use super::{Digraph, OrientedGraph};
use crate::error::{Error, Result};

/// A bipartite digraph `G(U ∪ W, U -> W)`: every arc leaves `U` and enters `W`.
///
/// Vertices carry labels (usually vertex ids of some ambient host) so that
/// subgraphs and samples can be mapped back. Internally the `U` side is
/// indexed `0..|U|` and the `W` side `0..|W|`; through the [`Digraph`] trait
/// the sides are concatenated, `U` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteDigraph {
    part_u: Vec<usize>,
    part_w: Vec<usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arcs: usize,
}

/// Side-qualified local index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    U(usize),
    W(usize),
}

impl BipartiteDigraph {
    /// Builds from labelled parts and labelled arcs.
    pub fn new(part_u: Vec<usize>, part_w: Vec<usize>, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(part_u.len() + part_w.len());
        for (i, &l) in part_u.iter().enumerate() {
            if index.insert(l, Side::U(i)).is_some() {
                return Err(Error::InvariantViolation(format!("label {l} repeated in U")));
            }
        }
        for (j, &l) in part_w.iter().enumerate() {
            if index.insert(l, Side::W(j)).is_some() {
                return Err(Error::InvariantViolation(format!(
                    "label {l} appears in both parts or twice in W"
                )));
            }
        }
        let mut local = Vec::with_capacity(arcs.len());
        for &(a, b) in arcs {
            match (index.get(&a), index.get(&b)) {
                (Some(&Side::U(i)), Some(&Side::W(j))) => local.push((i, j)),
                (Some(_), Some(_)) => {
                    return Err(Error::InvariantViolation(format!(
                        "arc {a}->{b} does not go from U to W"
                    )))
                }
                _ => {
                    return Err(Error::InvariantViolation(format!(
                        "arc {a}->{b} uses an unknown vertex"
                    )))
                }
            }
        }
        Self::assemble(part_u, part_w, local)
    }

    /// Builds with labels `0..nu` for `U` and `nu..nu+nw` for `W`; arcs are given
    /// as `(u_index, w_index)`.
    pub fn from_local(nu: usize, nw: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        for &(i, j) in arcs {
            if i >= nu || j >= nw {
                return Err(Error::InvariantViolation(format!("local arc ({i}, {j}) out of range")));
            }
        }
        Self::assemble((0..nu).collect(), (nu..nu + nw).collect(), arcs.to_vec())
    }

    fn assemble(part_u: Vec<usize>, part_w: Vec<usize>, local: Vec<(usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); part_u.len()];
        let mut inn = vec![Vec::new(); part_w.len()];
        for &(i, j) in &local {
            out[i].push(j);
            inn[j].push(i);
        }
        for row in out.iter_mut().chain(inn.iter_mut()) {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvariantViolation("duplicate arc".into()));
            }
        }
        Ok(Self {
            part_u,
            part_w,
            out,
            inn,
            arcs: local.len(),
        })
    }

    /// Reads an antidirected oriented graph as `H(A ∪ B, A -> B)`: `A` holds the
    /// vertices with an out-arc, `B` everything else (isolated vertices included).
    /// Labels are the original vertex ids.
    pub fn from_antidirected(g: &OrientedGraph) -> Result<Self> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 0..g.n() {
            match (g.out_degree(v) > 0, g.in_degree(v) > 0) {
                (true, true) => {
                    return Err(Error::InvariantViolation(format!(
                        "vertex {v} has both in- and out-arcs; pattern is not of the form A -> B"
                    )))
                }
                (true, false) => a.push(v),
                _ => b.push(v),
            }
        }
        Self::new(a, b, &g.arcs())
    }

    pub fn u_len(&self) -> usize {
        self.part_u.len()
    }

    pub fn w_len(&self) -> usize {
        self.part_w.len()
    }

    pub fn part_u(&self) -> &[usize] {
        &self.part_u
    }

    pub fn part_w(&self) -> &[usize] {
        &self.part_w
    }

    pub fn u_label(&self, i: usize) -> usize {
        self.part_u[i]
    }

    pub fn w_label(&self, j: usize) -> usize {
        self.part_w[j]
    }

    /// Out-neighbours of `U`-vertex `i`, as sorted `W` indices.
    pub fn out_of(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    /// In-neighbours of `W`-vertex `j`, as sorted `U` indices.
    pub fn in_of(&self, j: usize) -> &[usize] {
        &self.inn[j]
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn order(&self) -> usize {
        self.part_u.len() + self.part_w.len()
    }

    pub fn max_u_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_u_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn local_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&j| (i, j)))
    }

    pub fn labelled_arcs(&self) -> Vec<(usize, usize)> {
        self.local_arcs()
            .map(|(i, j)| (self.part_u[i], self.part_w[j]))
            .collect()
    }

    /// Sorted `U` indices adjacent to every `W` index in `ws`; all of `U` when `ws` is empty.
    pub fn common_in_neighbors(&self, ws: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = ws.split_first() else {
            return (0..self.u_len()).collect();
        };
        let mut acc = self.inn[first].clone();
        for &w in rest {
            let other = &self.inn[w];
            acc.retain(|u| other.binary_search(u).is_ok());
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Subgraph on the given local indices (order preserved), keeping labels.
    pub fn induced(&self, us: &[usize], ws: &[usize]) -> Self {
        let mut w_pos = vec![usize::MAX; self.w_len()];
        for (k, &j) in ws.iter().enumerate() {
            w_pos[j] = k;
        }
        let mut local = Vec::new();
        for (k, &i) in us.iter().enumerate() {
            for &j in &self.out[i] {
                if w_pos[j] != usize::MAX {
                    local.push((k, w_pos[j]));
                }
            }
        }
        Self::assemble(
            us.iter().map(|&i| self.part_u[i]).collect(),
            ws.iter().map(|&j| self.part_w[j]).collect(),
            local,
        )
        .expect("subgraph of a valid bipartite digraph")
    }

    /// Map from label to side-qualified index.
    pub fn label_index(&self) -> HashMap<usize, Side> {
        let mut m = HashMap::with_capacity(self.order());
        m.extend(self.part_u.iter().enumerate().map(|(i, &l)| (l, Side::U(i))));
        m.extend(self.part_w.iter().enumerate().map(|(j, &l)| (l, Side::W(j))));
        m
    }

    /// Label of the vertex with [`Digraph`] index `v`.
    pub fn label(&self, v: usize) -> usize {
        if v < self.u_len() {
            self.part_u[v]
        } else {
            self.part_w[v - self.u_len()]
        }
    }

    /// Same graph as an [`OrientedGraph`] on labels; every label must be below 64.
    pub fn to_oriented(&self) -> Result<OrientedGraph> {
        let n = self.part_u.iter().chain(&self.part_w).max().map_or(0, |&m| m + 1);
        OrientedGraph::from_arcs(n, self.labelled_arcs())
    }

    pub fn summary(&self) -> BipartiteSummary {
        let profile = self.degree_profile();
        BipartiteSummary {
            u_size: self.u_len(),
            w_size: self.w_len(),
            arcs: self.arcs,
            max_degree: profile.max_total(),
            min_degree: profile.min_total(),
        }
    }
}

/// Size figures reported in pipeline diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteSummary {
    pub u_size: usize,
    pub w_size: usize,
    pub arcs: usize,
    pub max_degree: usize,
    pub min_degree: usize,
}

impl Digraph for BipartiteDigraph {
    fn vertex_count(&self) -> usize {
        self.order()
    }

    fn arc_count(&self) -> usize {
        self.arcs
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        let nu = self.u_len();
        u < nu && v >= nu && v < self.order() && self.out[u].binary_search(&(v - nu)).is_ok()
    }

    fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let nu = self.u_len();
        let row: &[usize] = if v < nu { &self.out[v] } else { &[] };
        row.iter().map(move |&j| j + nu)
    }

    fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let nu = self.u_len();
        let row: &[usize] = if v >= nu { &self.inn[v - nu] } else { &[] };
        row.iter().copied()
    }

    fn out_degree(&self, v: usize) -> usize {
        if v < self.u_len() {
            self.out[v].len()
        } else {
            0
        }
    }

    fn in_degree(&self, v: usize) -> usize {
        if v >= self.u_len() {
            self.inn[v - self.u_len()].len()
        } else {
            0
        }
    }
}
