use std::collections::BTreeSet;

use serde::Serialize;

use crate::digraph::{BipartiteDigraph, Digraph};
use crate::error::{Error, Result};
use crate::extremal::turan_part_sizes;

/// Output of [`almost_regular_subdigraph`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularizeResult {
    #[serde(skip)]
    pub subgraph: BipartiteDigraph,
    pub epsilon: f64,
    pub t: usize,
    /// Almost-regularity constant `20 t`.
    #[serde(rename = "K")]
    pub k: usize,
    pub n_s: usize,
    pub arcs: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `d / δ` for the average degree `d`.
    #[serde(rename = "K1")]
    pub k1: f64,
    /// `d / Δ`.
    #[serde(rename = "K2")]
    pub k2: f64,
    pub c_input: f64,
    /// Density constant `4e / m^(1+ε)` of the level that returned.
    pub c_exit: f64,
    /// Vertex count at each recursion level, outermost first.
    pub level_sizes: Vec<usize>,
}

/// Default `t = ceil(2^(1/ε² + 1))`; `None` when `ε = 0`.
pub fn default_t(r: usize) -> Option<usize> {
    if r < 2 {
        return None;
    }
    let eps = 1.0 - 1.0 / r as f64;
    let t = 2f64.powf(1.0 / (eps * eps) + 1.0).ceil();
    (t < usize::MAX as f64).then_some(t as usize)
}

fn degrees(h: &BipartiteDigraph) -> Vec<usize> {
    (0..h.order()).map(|v| h.out_degree(v) + h.in_degree(v)).collect()
}

fn split_sides(h: &BipartiteDigraph, vs: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let nu = h.u_len();
    let mut us: Vec<usize> = vs.iter().copied().filter(|&v| v < nu).collect();
    let mut ws: Vec<usize> = vs.iter().copied().filter(|&v| v >= nu).map(|v| v - nu).collect();
    us.sort_unstable();
    ws.sort_unstable();
    (us, ws)
}

fn induced_on(h: &BipartiteDigraph, vs: &[usize]) -> BipartiteDigraph {
    let (us, ws) = split_sides(h, vs);
    h.induced(&us, &ws)
}

/// Deletes vertices of degree `< d0` one at a time, smallest degree first,
/// until none remain; `deg * 10m < e` stands for `deg < e / (10m)`.
fn prune(h: &BipartiteDigraph, e: usize, m: usize) -> BipartiteDigraph {
    let n = h.order();
    let mut deg = degrees(h);
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let low = |d: usize| (d as u128) * 10 * (m as u128) < e as u128;
    while let Some(&(d, v)) = queue.first() {
        if !low(d) {
            break;
        }
        queue.pop_first();
        alive[v] = false;
        for w in h.out_neighbors(v).chain(h.in_neighbors(v)) {
            if alive[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    induced_on(h, &keep)
}

/// A `K`-almost-regular subgraph of `h` that keeps a constant fraction of
/// the density, with `ε = 1 - 1/r` and `K = 20t`.
///
/// Each level orders the vertices by degree (descending, ties by index) into
/// `2t` near-equal buckets. If at most half the arcs touch the top bucket it
/// is deleted and low-degree vertices are stripped; otherwise the search
/// recurses on the top bucket together with whichever other bucket spans the
/// most arcs with it. `c` is only reported: the density constant is
/// re-measured at every level.
pub fn almost_regular_subdigraph(
    h: &BipartiteDigraph,
    c: f64,
    r: usize,
    t_override: Option<usize>,
) -> Result<RegularizeResult> {
    if r == 0 {
        return Err(Error::BadParams("r must be at least 1".into()));
    }
    let t = match t_override.or_else(|| default_t(r)) {
        Some(t) => t,
        None => return Err(Error::BadParams(format!("r = {r} gives ε = 0 and needs an explicit t"))),
    };
    if t < 2 {
        return Err(Error::BadParams(format!("t must be at least 2, got {t}")));
    }
    let eps = 1.0 - 1.0 / r as f64;
    let k = 20 * t;
    let mut current = h.clone();
    let mut level_sizes = Vec::new();
    let (result, c_exit) = loop {
        let m = current.order();
        let e = current.arc_count();
        level_sizes.push(m);
        if 2 * t > m {
            return Err(Error::TooSmall(format!(
                "level {} has {m} vertices, fewer than 2t = {}",
                level_sizes.len() - 1,
                2 * t
            )));
        }
        let c_level = 4.0 * e as f64 / (m as f64).powf(1.0 + eps);
        let deg = degrees(&current);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let mut buckets = Vec::with_capacity(2 * t);
        let mut start = 0;
        for size in turan_part_sizes(m, 2 * t) {
            buckets.push(&order[start..start + size]);
            start += size;
        }
        let mut in_top = vec![false; m];
        for &v in buckets[0] {
            in_top[v] = true;
        }
        let touching = current.arcs().iter().filter(|&&(a, b)| in_top[a] || in_top[b]).count();
        if 2 * touching <= e {
            let rest: Vec<usize> = (0..m).filter(|&v| !in_top[v]).collect();
            break (prune(&induced_on(&current, &rest), e, m), c_level);
        }
        let mut best: Option<(usize, BipartiteDigraph)> = None;
        for bucket in &buckets[1..] {
            let mut vs = buckets[0].to_vec();
            vs.extend_from_slice(bucket);
            let sub = induced_on(&current, &vs);
            if best.as_ref().is_none_or(|(a, _)| sub.arc_count() > *a) {
                best = Some((sub.arc_count(), sub));
            }
        }
        current = best.expect("at least two buckets").1;
    };
    let n_s = result.order();
    let arcs = result.arc_count();
    let deg = degrees(&result);
    let min_degree = deg.iter().copied().min().unwrap_or(0);
    let max_degree = deg.iter().copied().max().unwrap_or(0);
    if max_degree > k * min_degree {
        return Err(Error::InvariantViolation(format!(
            "Δ = {max_degree} exceeds K·δ = {k}·{min_degree}"
        )));
    }
    let floor = c_exit / 10.0 * (n_s as f64).powf(1.0 + eps);
    if (arcs as f64) < floor {
        return Err(Error::InvariantViolation(format!(
            "{arcs} arcs below (c/10)·nS^(1+ε) = {floor}"
        )));
    }
    let avg = if n_s == 0 { 0.0 } else { 2.0 * arcs as f64 / n_s as f64 };
    Ok(RegularizeResult {
        subgraph: result,
        epsilon: eps,
        t,
        k,
        n_s,
        arcs,
        min_degree,
        max_degree,
        k1: avg / min_degree as f64,
        k2: avg / max_degree as f64,
        c_input: c,
        c_exit,
        level_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(m: usize) -> BipartiteDigraph {
        let arcs: Vec<_> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
        BipartiteDigraph::from_local(m, m, &arcs).unwrap()
    }

    #[test]
    fn default_t_values() {
        assert_eq!(default_t(1), None);
        assert_eq!(default_t(2), Some(32));
        assert_eq!(default_t(3), Some(10));
    }

    #[test]
    fn complete_bipartite_exits_at_once() {
        let h = complete(8);
        let res = almost_regular_subdigraph(&h, 1.0, 2, Some(2)).unwrap();
        assert_eq!(res.level_sizes, vec![16]);
        assert_eq!(res.n_s, 12);
        assert!(res.max_degree <= 2 * res.min_degree);
        assert!((res.k1 * res.min_degree as f64 - res.k2 * res.max_degree as f64).abs() < 1e-9);
    }

    #[test]
    fn hub_forces_a_recursion() {
        // hub 0 -> every W vertex; the other U vertices form a 3-regular ring
        let (nu, nw) = (41, 40);
        let mut arcs: Vec<(usize, usize)> = (0..nw).map(|j| (0, j)).collect();
        for i in 1..nu {
            arcs.extend((0..3).map(|k| (i, (i + k) % nw)));
        }
        let h = BipartiteDigraph::from_local(nu, nw, &arcs).unwrap();
        let deg = degrees(&h);
        let mut order: Vec<usize> = (0..h.order()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let top: Vec<usize> = order[..h.order().div_ceil(4)].to_vec();
        let touching = h
            .arcs()
            .iter()
            .filter(|(a, b)| top.contains(a) || top.contains(b))
            .count();
        assert!(2 * touching > h.arc_count());
        let res = almost_regular_subdigraph(&h, 1.0, 2, Some(2)).unwrap();
        assert!(res.level_sizes.len() >= 2);
        assert!(res.max_degree <= res.k * res.min_degree);
    }

    #[test]
    fn rejects_bad_parameters() {
        let h = complete(3);
        assert!(matches!(
            almost_regular_subdigraph(&h, 1.0, 1, None),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            almost_regular_subdigraph(&h, 1.0, 2, Some(1)),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            almost_regular_subdigraph(&complete(1), 1.0, 2, Some(2)),
            Err(Error::TooSmall(_))
        ));
    }

    #[test]
    fn output_labels_come_from_input() {
        let h = complete(10);
        let res = almost_regular_subdigraph(&h, 1.0, 2, Some(3)).unwrap();
        for (a, b) in res.subgraph.labelled_arcs() {
            assert!(a < 10 && b >= 10);
        }
    }
}
