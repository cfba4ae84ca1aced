//! Non-induced subdigraph containment and the universal containment checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{enumerate_tournaments, MAX_ENUMERATION_ORDER};
use crate::digraph::{OrientedGraph, UndirectedGraph};
use crate::error::{Error, Result};
use crate::homomorphism::{MapSearch, VertexMap};

/// Largest host edge count accepted by [`all_orientations_contain`].
pub const MAX_ORIENTATION_EDGES: usize = 24;

/// Outcome of a "does every member of the family contain the pattern" check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalCheck {
    pub holds: bool,
    /// The first member, in enumeration order, that avoids the pattern.
    pub counterexample: Option<OrientedGraph>,
}

impl UniversalCheck {
    fn from_counterexample(counterexample: Option<OrientedGraph>) -> Self {
        Self {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

/// An injective arc-preserving map from `pattern` into `host`, if any.
pub fn contains_copy(host: &OrientedGraph, pattern: &OrientedGraph) -> Option<VertexMap> {
    if pattern.n() > host.n() || pattern.arc_count() > host.arc_count() {
        return None;
    }
    MapSearch::new(pattern, host, true).solve()
}

/// A copy of `pattern` in `host` that uses host vertex `v`, if any.
pub fn contains_copy_through(host: &OrientedGraph, pattern: &OrientedGraph, v: usize) -> Option<VertexMap> {
    if pattern.n() > host.n() || pattern.arc_count() > host.arc_count() {
        return None;
    }
    (0..pattern.n())
        .filter(|&x| pattern.out_degree(x) <= host.out_degree(v) && pattern.in_degree(x) <= host.in_degree(v))
        .find_map(|x| {
            let mut search = MapSearch::new(pattern, host, true);
            search.pin(x, v);
            search.solve()
        })
}

pub fn is_free(host: &OrientedGraph, pattern: &OrientedGraph) -> bool {
    contains_copy(host, pattern).is_none()
}

/// Checks whether every `k`-vertex tournament contains `pattern`.
pub fn all_tournaments_contain(k: usize, pattern: &OrientedGraph) -> Result<UniversalCheck> {
    if k > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge {
            what: "tournament order",
            limit: MAX_ENUMERATION_ORDER,
            got: k,
        });
    }
    let tournaments = enumerate_tournaments(k)?;
    let bad = tournaments.par_iter().find_first(|t| is_free(t, pattern)).cloned();
    Ok(UniversalCheck::from_counterexample(bad))
}

/// Checks whether every orientation of `host` contains `pattern`.
///
/// Orientations are visited in Gray-code order over the edge bitmask (see
/// [`UndirectedGraph::orientation`]), so consecutive hosts differ in a single
/// arc; the reported counterexample is the first one in that order.
pub fn all_orientations_contain(host: &UndirectedGraph, pattern: &OrientedGraph) -> Result<UniversalCheck> {
    let m = host.edge_count();
    if m > MAX_ORIENTATION_EDGES {
        return Err(Error::TooLarge {
            what: "host edge count",
            limit: MAX_ORIENTATION_EDGES,
            got: m,
        });
    }
    let total = 1u64 << m;
    let chunk = total.min(1 << 12);
    let bad = (0..total / chunk).into_par_iter().find_map_first(|c| {
        let start = c * chunk;
        let mut mask = start ^ (start >> 1);
        let mut g = host.orientation(mask);
        for i in start..start + chunk {
            if i > start {
                let bit = i.trailing_zeros() as usize;
                let (a, b) = host.edges()[bit];
                if mask >> bit & 1 == 1 {
                    g.remove_arc(b, a);
                    g.insert_arc_unchecked(a, b);
                } else {
                    g.remove_arc(a, b);
                    g.insert_arc_unchecked(b, a);
                }
                mask ^= 1 << bit;
            }
            if is_free(&g, pattern) {
                return Some(g);
            }
        }
        None
    });
    Ok(UniversalCheck::from_counterexample(bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_contains(host: &OrientedGraph, pattern: &OrientedGraph) -> bool {
        fn go(host: &OrientedGraph, pattern: &OrientedGraph, img: &mut Vec<usize>) -> bool {
            if img.len() == pattern.n() {
                return pattern.arcs().into_iter().all(|(u, v)| host.has_arc(img[u], img[v]));
            }
            for t in 0..host.n() {
                if !img.contains(&t) {
                    img.push(t);
                    if go(host, pattern, img) {
                        return true;
                    }
                    img.pop();
                }
            }
            false
        }
        go(host, pattern, &mut Vec::new())
    }

    fn oc4() -> OrientedGraph {
        OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn contains_examples() {
        let t3 = OrientedGraph::transitive_tournament(3);
        let p3 = OrientedGraph::directed_path(3);
        let w = contains_copy(&t3, &p3).unwrap();
        assert!(w.is_embedding(&p3, &t3));
        let k22 = OrientedGraph::from_arcs(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(contains_copy(&k22, &p3).is_none());
        // cyclic C4 on 0..4 with chord 0->2 and arc 3->1
        let host = OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1)]).unwrap();
        let w = contains_copy(&host, &oc4()).unwrap();
        assert!(w.is_embedding(&oc4(), &host));
    }

    #[test]
    fn freeness_examples() {
        let n = 7;
        let k = OrientedGraph::from_arcs(n, (0..n / 2).flat_map(|a| (n / 2..n).map(move |b| (a, b)))).unwrap();
        assert!(is_free(&k, &OrientedGraph::star(1, 1)));
        assert!(is_free(&OrientedGraph::directed_cycle(5), &OrientedGraph::star(0, 2)));
        assert!(!is_free(
            &OrientedGraph::transitive_tournament(4),
            &OrientedGraph::directed_path(4)
        ));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let patterns: Vec<_> = (1..=3)
            .flat_map(|k| crate::canon::enumerate_oriented_graphs(k, None).unwrap())
            .collect();
        let hosts = crate::canon::enumerate_oriented_graphs(4, None).unwrap();
        for h in &hosts {
            for p in &patterns {
                let got = contains_copy(h, p);
                assert_eq!(got.is_some(), naive_contains(h, p), "{p} in {h}");
                if let Some(w) = got {
                    assert!(w.is_embedding(p, h));
                }
                for v in 0..h.n() {
                    let through = contains_copy_through(h, p, v);
                    if let Some(w) = &through {
                        assert!(w.is_embedding(p, h));
                        assert!(w.assignment.contains(&Some(v)));
                    }
                    let naive = naive_contains(h, p) && !naive_contains(&h.remove_vertex(v), p);
                    if naive {
                        assert!(through.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn tournament_checks() {
        let res = all_tournaments_contain(4, &oc4()).unwrap();
        assert!(res.holds);
        let res = all_tournaments_contain(3, &OrientedGraph::directed_cycle(3)).unwrap();
        assert!(!res.holds);
        let ce = res.counterexample.unwrap();
        assert!(crate::canon::is_isomorphic(&ce, &OrientedGraph::transitive_tournament(3)).unwrap());
        for k in 1..=6 {
            assert!(
                all_tournaments_contain(k, &OrientedGraph::directed_path(k))
                    .unwrap()
                    .holds
            );
        }
        assert!(all_tournaments_contain(8, &oc4()).is_err());
    }

    #[test]
    fn orientation_checks() {
        let h = UndirectedGraph::complete_bipartite(2, 4)
            .unwrap()
            .with_edge(2, 3)
            .unwrap();
        let f = OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (3, 2)]).unwrap();
        assert!(all_orientations_contain(&h, &f).unwrap().holds);

        let edge = UndirectedGraph::new(2, vec![(0, 1)]).unwrap();
        let arc = OrientedGraph::from_arcs(2, [(0, 1)]).unwrap();
        assert!(all_orientations_contain(&edge, &arc).unwrap().holds);

        let res =
            all_orientations_contain(&UndirectedGraph::cycle(4).unwrap(), &OrientedGraph::directed_path(3)).unwrap();
        assert!(!res.holds);
        let ce = res.counterexample.unwrap();
        assert!(crate::homomorphism::is_antidirected(&ce));
        assert_eq!(ce.arc_count(), 4);

        let big = UndirectedGraph::complete_bipartite(5, 5).unwrap();
        assert!(all_orientations_contain(&big, &arc).is_err());
    }

    #[test]
    fn gray_code_counterexample_is_first_in_order() {
        let p3 = OrientedGraph::directed_path(3);
        assert!(
            all_orientations_contain(&UndirectedGraph::cycle(5).unwrap(), &p3)
                .unwrap()
                .holds
        );
        let h = UndirectedGraph::cycle(6).unwrap();
        let expected = (0u64..1 << h.edge_count())
            .map(|i| h.orientation(i ^ (i >> 1)))
            .find(|g| is_free(g, &p3));
        assert_eq!(all_orientations_contain(&h, &p3).unwrap().counterexample, expected);
        assert!(expected.is_some());
    }

    #[test]
    fn reversal_symmetry() {
        let hosts = crate::canon::enumerate_oriented_graphs(4, None).unwrap();
        let p = OrientedGraph::star(1, 2);
        for h in &hosts {
            assert_eq!(
                contains_copy(h, &p).is_some(),
                contains_copy(&h.reverse(), &p.reverse()).is_some()
            );
        }
    }
}
