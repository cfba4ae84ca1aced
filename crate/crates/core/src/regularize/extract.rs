use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{BipartiteDigraph, Digraph};
use crate::error::{Error, Result};

/// Default number of random starting partitions tried by [`extract_bipartite`].
pub const DEFAULT_EXTRACT_ATTEMPTS: usize = 64;

/// Local-search state for one balanced bipartition `(X, Y)`.
struct Split<'a, G: Digraph> {
    g: &'a G,
    in_x: Vec<bool>,
    /// number of in-neighbours lying in `X`
    from_x: Vec<usize>,
    /// number of out-neighbours lying in `Y`
    to_y: Vec<usize>,
}

impl<'a, G: Digraph> Split<'a, G> {
    fn new(g: &'a G, in_x: Vec<bool>) -> Self {
        let n = g.vertex_count();
        let mut from_x = vec![0; n];
        let mut to_y = vec![0; n];
        for v in 0..n {
            from_x[v] = g.in_neighbors(v).filter(|&u| in_x[u]).count();
            to_y[v] = g.out_neighbors(v).filter(|&u| !in_x[u]).count();
        }
        Self { g, in_x, from_x, to_y }
    }

    fn retained(&self) -> usize {
        (0..self.in_x.len())
            .filter(|&v| self.in_x[v])
            .map(|v| self.to_y[v])
            .sum()
    }

    /// Change in retained arcs when `v` alone switches sides.
    fn gain(&self, v: usize) -> i64 {
        let (a, b) = (self.from_x[v] as i64, self.to_y[v] as i64);
        if self.in_x[v] {
            a - b
        } else {
            b - a
        }
    }

    fn flip(&mut self, v: usize) {
        let leaving_x = self.in_x[v];
        self.in_x[v] = !leaving_x;
        for w in self.g.out_neighbors(v) {
            if leaving_x {
                self.from_x[w] -= 1;
            } else {
                self.from_x[w] += 1;
            }
        }
        for w in self.g.in_neighbors(v) {
            if leaving_x {
                self.to_y[w] += 1;
            } else {
                self.to_y[w] -= 1;
            }
        }
    }

    /// Best improving swap `(x, y)` with `x` in `X`, `y` in `Y`, if any.
    ///
    /// Swapping gains `gain(x) + gain(y) + [x ~ y]`: an arc `x -> y` is lost
    /// once but subtracted twice, and an arc `y -> x` is won but counted by neither.
    fn improving_swap(&self) -> Option<(usize, usize)> {
        let n = self.in_x.len();
        let best_of = |side: bool| {
            (0..n)
                .filter(|&v| self.in_x[v] == side)
                .max_by_key(|&v| (self.gain(v), std::cmp::Reverse(v)))
        };
        let (x, y) = (best_of(true)?, best_of(false)?);
        let top = self.gain(x) + self.gain(y);
        if top > 0 {
            return Some((x, y));
        }
        if top < 0 {
            return None;
        }
        let gx = self.gain(x);
        let gy = self.gain(y);
        for a in (0..n).filter(|&v| self.in_x[v] && self.gain(v) == gx) {
            let adjacent = self
                .g
                .out_neighbors(a)
                .chain(self.g.in_neighbors(a))
                .filter(|&b| !self.in_x[b] && self.gain(b) == gy)
                .min();
            if let Some(b) = adjacent {
                return Some((a, b));
            }
        }
        None
    }

    fn climb(&mut self) {
        while let Some((x, y)) = self.improving_swap() {
            self.flip(x);
            self.flip(y);
        }
    }
}

/// A spanning bipartite subdigraph `H(X ∪ Y, X -> Y)` keeping at least a
/// quarter of the arcs of `g`, with `|X|` and `|Y|` differing by at most one.
///
/// Each attempt draws a uniformly random balanced bipartition and improves it
/// by swapping pairs across the parts while that strictly increases the
/// number of `X -> Y` arcs. Labels of the result are the vertex ids of `g`.
pub fn extract_bipartite<G: Digraph>(g: &G, seed: u64, max_attempts: usize) -> Result<BipartiteDigraph> {
    let n = g.vertex_count();
    let need = g.arc_count().div_ceil(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..max_attempts {
        order.shuffle(&mut rng);
        let mut in_x = vec![false; n];
        for &v in &order[..n / 2] {
            in_x[v] = true;
        }
        let mut split = Split::new(g, in_x);
        split.climb();
        if split.retained() >= need {
            let xs: Vec<usize> = (0..n).filter(|&v| split.in_x[v]).collect();
            let ys: Vec<usize> = (0..n).filter(|&v| !split.in_x[v]).collect();
            let arcs: Vec<(usize, usize)> = xs
                .iter()
                .flat_map(|&x| g.out_neighbors(x).filter(|&y| !split.in_x[y]).map(move |y| (x, y)))
                .collect();
            let h = BipartiteDigraph::new(xs, ys, &arcs)?;
            debug_assert_eq!(h.arc_count(), split.retained());
            return Ok(h);
        }
    }
    Err(Error::AttemptsExhausted(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::OrientedGraph;

    fn check(g: &OrientedGraph, seed: u64) -> BipartiteDigraph {
        let h = extract_bipartite(g, seed, DEFAULT_EXTRACT_ATTEMPTS).unwrap();
        assert!(h.arc_count() >= g.arc_count().div_ceil(4));
        assert!(h.u_len().abs_diff(h.w_len()) <= 1);
        assert_eq!(h.order(), g.n());
        for (a, b) in h.labelled_arcs() {
            assert!(g.has_arc(a, b));
        }
        h
    }

    /// Best `X -> Y` count over every balanced bipartition.
    fn best_balanced(g: &OrientedGraph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|m| (m.count_ones() as usize) == n / 2 || (m.count_ones() as usize) == n.div_ceil(2))
            .map(|m| {
                g.arcs()
                    .iter()
                    .filter(|&&(a, b)| m >> a & 1 == 1 && m >> b & 1 == 0)
                    .count()
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        assert_eq!(check(&OrientedGraph::matching(1), 0).arc_count(), 1);
        assert!(check(&OrientedGraph::directed_cycle(4), 1).arc_count() >= 1);
        assert_eq!(best_balanced(&OrientedGraph::directed_cycle(4)), 2);
        assert!(check(&OrientedGraph::transitive_tournament(4), 2).arc_count() >= 2);
    }

    #[test]
    fn quarter_bound_on_every_small_class() {
        for n in 2..=5 {
            for g in crate::canon::enumerate_oriented_graphs(n, None).unwrap() {
                let h = check(&g, n as u64);
                assert!(best_balanced(&g) >= h.arc_count());
            }
        }
    }

    #[test]
    fn works_on_large_graphs() {
        let n = 300;
        let arcs = (0..n).flat_map(|u| (u + 1..n).filter(move |v| (u * 7 + v * 3) % 5 < 2).map(move |v| (u, v)));
        let g = crate::digraph::LargeOrientedGraph::from_arcs(n, arcs).unwrap();
        let h = extract_bipartite(&g, 9, 4).unwrap();
        assert!(h.arc_count() >= g.arc_count().div_ceil(4));
        assert_eq!(h, extract_bipartite(&g, 9, 4).unwrap());
    }

    #[test]
    fn empty_graph_is_fine() {
        let h = check(&OrientedGraph::empty(5).unwrap(), 3);
        assert_eq!(h.arc_count(), 0);
    }
}
