//! Homomorphisms between oriented graphs and the compressibility number.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{enumerate_tournaments, MAX_ENUMERATION_ORDER};
use crate::digraph::{bits, low_mask, Digraph, OrientedGraph};
use crate::error::{Error, Result};

/// A (possibly partial) map from the vertices of a source digraph to those of
/// a target digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexMap {
    pub source_size: usize,
    pub target_size: usize,
    pub assignment: Vec<Option<usize>>,
}

impl VertexMap {
    pub fn new(source_size: usize, target_size: usize) -> Self {
        Self {
            source_size,
            target_size,
            assignment: vec![None; source_size],
        }
    }

    /// A total map with the given images.
    pub fn total(target_size: usize, images: Vec<usize>) -> Self {
        Self {
            source_size: images.len(),
            target_size,
            assignment: images.into_iter().map(Some).collect(),
        }
    }

    pub fn image(&self, v: usize) -> Option<usize> {
        self.assignment.get(v).copied().flatten()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.len() == self.source_size && self.assignment.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.assignment.iter().flatten().all(|&t| seen.insert(t))
    }

    /// Images of a total map, in source order.
    pub fn images(&self) -> Option<Vec<usize>> {
        self.assignment.iter().copied().collect()
    }

    /// Total, in range, and every source arc lands on a target arc.
    pub fn is_homomorphism<S: Digraph, T: Digraph>(&self, source: &S, target: &T) -> bool {
        if self.source_size != source.vertex_count() || self.target_size != target.vertex_count() {
            return false;
        }
        let Some(images) = self.images() else {
            return false;
        };
        if images.len() != self.source_size || images.iter().any(|&t| t >= self.target_size) {
            return false;
        }
        source
            .arcs()
            .into_iter()
            .all(|(u, v)| target.has_arc(images[u], images[v]))
    }

    /// A homomorphism that is also injective.
    pub fn is_embedding<S: Digraph, T: Digraph>(&self, source: &S, target: &T) -> bool {
        self.is_homomorphism(source, target) && self.is_injective()
    }
}

/// Smallest `k` such that every `k`-vertex tournament receives a homomorphism
/// from the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompressibilityResult {
    /// `witness` is a tournament on `k - 1` vertices with no homomorphism from the pattern.
    Finite {
        k: usize,
        witness: OrientedGraph,
    },
    Infinite,
}

impl CompressibilityResult {
    pub fn value(&self) -> Option<usize> {
        match self {
            Self::Finite { k, .. } => Some(*k),
            Self::Infinite => None,
        }
    }

    /// Sort key placing `Infinite` above every finite value.
    pub fn rank(&self) -> usize {
        self.value().unwrap_or(usize::MAX)
    }
}

/// Backtracking search state for homomorphisms (and, with `injective`, embeddings).
pub(crate) struct MapSearch<'a> {
    pub source: &'a OrientedGraph,
    pub target: &'a OrientedGraph,
    pub injective: bool,
    order: Vec<usize>,
    domain: Vec<u64>,
    image: Vec<Option<usize>>,
    used: u64,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a OrientedGraph, target: &'a OrientedGraph, injective: bool) -> Self {
        let n = source.n();
        let all = low_mask(target.n());
        let domain = (0..n)
            .map(|v| {
                let (need_out, need_in) = if injective {
                    (source.out_degree(v), source.in_degree(v))
                } else {
                    (source.out_degree(v).min(1), source.in_degree(v).min(1))
                };
                bits(all)
                    .filter(|&t| target.out_degree(t) >= need_out && target.in_degree(t) >= need_in)
                    .fold(0u64, |m, t| m | 1 << t)
            })
            .collect();
        Self {
            source,
            target,
            injective,
            order: connected_order(source, None),
            domain,
            image: vec![None; n],
            used: 0,
        }
    }

    /// Forces source vertex `v` onto target vertex `t` before the search starts.
    pub fn pin(&mut self, v: usize, t: usize) {
        self.domain[v] &= 1 << t;
        self.order = connected_order(self.source, Some(v));
    }

    fn candidates(&self, v: usize) -> u64 {
        let mut c = self.domain[v];
        if self.injective {
            c &= !self.used;
        }
        for w in bits(self.source.out_mask(v)) {
            if let Some(t) = self.image[w] {
                c &= self.target.in_mask(t);
            }
        }
        for w in bits(self.source.in_mask(v)) {
            if let Some(t) = self.image[w] {
                c &= self.target.out_mask(t);
            }
        }
        c
    }

    fn go(&mut self, depth: usize) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        for t in bits(self.candidates(v)) {
            self.image[v] = Some(t);
            self.used |= 1 << t;
            if self.neighbours_alive(v) && self.go(depth + 1) {
                return true;
            }
            self.used &= !(1 << t);
            self.image[v] = None;
        }
        false
    }

    fn neighbours_alive(&self, v: usize) -> bool {
        bits(self.source.neighbor_mask(v)).all(|w| self.image[w].is_some() || self.candidates(w) != 0)
    }

    pub fn solve(mut self) -> Option<VertexMap> {
        if self.injective && self.source.n() > self.target.n() {
            return None;
        }
        if self.go(0) {
            Some(VertexMap {
                source_size: self.source.n(),
                target_size: self.target.n(),
                assignment: self.image,
            })
        } else {
            None
        }
    }
}

/// Vertices ordered so each one (after the first of its component) has an
/// already-placed neighbour; ties go to larger total degree, then smaller index.
/// `first`, when given, is placed at the front.
pub(crate) fn connected_order(g: &OrientedGraph, first: Option<usize>) -> Vec<usize> {
    let n = g.n();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    if let Some(v) = first {
        placed |= 1 << v;
        order.push(v);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (g.neighbor_mask(v) & placed).count_ones(),
                    g.total_degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("an unplaced vertex remains");
        placed |= 1 << next;
        order.push(next);
    }
    order
}

/// A homomorphism from `f` to `d`, if one exists.
pub fn hom_exists(f: &OrientedGraph, d: &OrientedGraph) -> Option<VertexMap> {
    MapSearch::new(f, d, false).solve()
}

/// True iff every vertex is a source or a sink.
pub fn is_antidirected<G: Digraph>(f: &G) -> bool {
    (0..f.vertex_count()).all(|v| f.in_degree(v) == 0 || f.out_degree(v) == 0)
}

/// A topological order, or `None` when `g` has a directed cycle.
pub fn topological_order<G: Digraph>(g: &G) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in g.out_neighbors(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn has_directed_cycle<G: Digraph>(g: &G) -> bool {
    topological_order(g).is_none()
}

/// For an acyclic graph, the number of vertices on a path ending at each
/// vertex, maximised; `None` when a directed cycle exists.
pub fn longest_path_levels<G: Digraph>(g: &G) -> Option<Vec<usize>> {
    let order = topological_order(g)?;
    let mut level = vec![1; g.vertex_count()];
    for v in order {
        for w in g.out_neighbors(v) {
            level[w] = level[w].max(level[v] + 1);
        }
    }
    Some(level)
}

/// Number of vertices on a longest directed path, or `None` if cyclic.
pub fn longest_path_vertices<G: Digraph>(g: &G) -> Option<usize> {
    longest_path_levels(g).map(|l| l.into_iter().max().unwrap_or(0))
}

/// Computes the compressibility of `f` by testing every tournament class of
/// order `k = 2, 3, ...` in turn.
pub fn compressibility(f: &OrientedGraph) -> Result<CompressibilityResult> {
    if f.arc_count() == 0 {
        return Err(Error::EmptyPattern);
    }
    if has_directed_cycle(f) {
        return Ok(CompressibilityResult::Infinite);
    }
    let mut witness = OrientedGraph::empty(1)?;
    for k in 2.. {
        if k > MAX_ENUMERATION_ORDER {
            return Err(Error::TooLarge {
                what: "compressibility search order",
                limit: MAX_ENUMERATION_ORDER,
                got: k,
            });
        }
        let tournaments = enumerate_tournaments(k)?;
        match tournaments.par_iter().find_first(|t| hom_exists(f, t).is_none()) {
            Some(t) => witness = t.clone(),
            None => return Ok(CompressibilityResult::Finite { k, witness }),
        }
    }
    unreachable!("the loop returns once k exceeds the enumeration cap")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_hom(f: &OrientedGraph, d: &OrientedGraph) -> bool {
        let (n, m) = (f.n(), d.n());
        if n == 0 {
            return true;
        }
        if m == 0 {
            return false;
        }
        let total = m.pow(n as u32);
        (0..total).any(|mut code| {
            let images: Vec<usize> = (0..n)
                .map(|_| {
                    let t = code % m;
                    code /= m;
                    t
                })
                .collect();
            f.arcs().into_iter().all(|(u, v)| d.has_arc(images[u], images[v]))
        })
    }

    #[test]
    fn hom_examples() {
        let p3 = OrientedGraph::directed_path(3);
        let t3 = OrientedGraph::transitive_tournament(3);
        let w = hom_exists(&p3, &t3).unwrap();
        assert!(w.is_homomorphism(&p3, &t3));
        for k in 2..=7 {
            let pk = OrientedGraph::directed_path(k);
            assert!(hom_exists(&pk, &OrientedGraph::transitive_tournament(k - 1)).is_none());
        }
        let c3 = OrientedGraph::directed_cycle(3);
        for k in 1..=7 {
            assert!(hom_exists(&c3, &OrientedGraph::transitive_tournament(k)).is_none());
        }
    }

    #[test]
    fn hom_may_identify_non_adjacent_vertices() {
        let m2 = OrientedGraph::matching(2);
        let arc = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        let w = hom_exists(&m2, &arc).unwrap();
        assert_eq!(w.images().unwrap(), vec![0, 1, 0, 1]);
        assert!(!w.is_injective());
        assert!(w.is_homomorphism(&m2, &arc));
    }

    #[test]
    fn hom_agrees_with_brute_force() {
        let small = crate::canon::enumerate_oriented_graphs(3, None).unwrap();
        let targets: Vec<_> = (1..=4)
            .flat_map(|k| crate::canon::enumerate_oriented_graphs(k, None).unwrap())
            .collect();
        for f in &small {
            for d in &targets {
                let got = hom_exists(f, d);
                assert_eq!(got.is_some(), brute_hom(f, d), "{f} -> {d}");
                if let Some(w) = got {
                    assert!(w.is_homomorphism(f, d));
                }
            }
        }
    }

    #[test]
    fn compressibility_examples() {
        let arc = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert_eq!(compressibility(&arc).unwrap().value(), Some(2));
        for k in 3..=5 {
            let res = compressibility(&OrientedGraph::directed_path(k)).unwrap();
            assert_eq!(res.value(), Some(k));
            let CompressibilityResult::Finite { witness, .. } = res else {
                unreachable!()
            };
            assert_eq!(witness.n(), k - 1);
            assert!(witness.is_tournament());
            assert!(hom_exists(&OrientedGraph::directed_path(k), &witness).is_none());
        }
        assert_eq!(
            compressibility(&OrientedGraph::transitive_tournament(3))
                .unwrap()
                .value(),
            Some(4)
        );
        assert_eq!(
            compressibility(&OrientedGraph::directed_cycle(3)).unwrap(),
            CompressibilityResult::Infinite
        );
        assert!(matches!(
            compressibility(&OrientedGraph::empty(3).unwrap()),
            Err(Error::EmptyPattern)
        ));
    }

    #[test]
    fn antidirected_and_cycles() {
        assert!(is_antidirected(&OrientedGraph::antidirected_path(4)));
        assert!(!is_antidirected(&OrientedGraph::directed_path(3)));
        assert!(is_antidirected(&OrientedGraph::matching(2)));
        assert!(has_directed_cycle(&OrientedGraph::directed_cycle(3)));
        assert!(has_directed_cycle(&OrientedGraph::directed_cycle(4)));
        assert!(!has_directed_cycle(&OrientedGraph::transitive_tournament(6)));
        assert_eq!(longest_path_vertices(&OrientedGraph::transitive_tournament(5)), Some(5));
        assert_eq!(longest_path_vertices(&OrientedGraph::directed_cycle(3)), None);
    }
}
