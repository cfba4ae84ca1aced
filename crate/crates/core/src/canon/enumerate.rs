//! Isomorph-free generation by canonical deletion.
//!
//! A child is a canonical parent plus one new vertex. It is kept when deleting
//! the vertex that lands in the child's last canonical position gives back the
//! parent's class; isomorphic siblings of one parent are merged by code. Each
//! class is therefore produced by exactly one parent, exactly once.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{canonical_code, canonical_form, CanonicalCode};
use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};

/// Largest order accepted by the enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// How a new vertex may attach to the existing ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ExtensionMode {
    /// no arc, an out-arc or an in-arc to each existing vertex
    Any,
    /// exactly one arc to each existing vertex
    Tournament,
}

/// Attachment patterns `(out, in)` for a new vertex next to `k` existing ones,
/// densest first.
fn extensions(k: usize, mode: ExtensionMode) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    match mode {
        ExtensionMode::Tournament => {
            for mask in 0..1u64 << k {
                out.push((mask, !mask & ((1u64 << k) - 1)));
            }
        }
        ExtensionMode::Any => {
            for mut code in 0..3u64.pow(k as u32) {
                let (mut o, mut i) = (0u64, 0u64);
                for v in 0..k {
                    match code % 3 {
                        1 => o |= 1 << v,
                        2 => i |= 1 << v,
                        _ => {}
                    }
                    code /= 3;
                }
                out.push((o, i));
            }
            out.sort_by_key(|&(o, i)| std::cmp::Reverse((o | i).count_ones()));
        }
    }
    out
}

/// Canonical children of `parent` (which must be in canonical form with code
/// `parent_code`). `keep` sees each raw child, new vertex last, and can veto it
/// before any canonical labelling is done.
pub(crate) fn augment<F>(
    parent: &OrientedGraph,
    parent_code: CanonicalCode,
    mode: ExtensionMode,
    mut keep: F,
) -> Result<Vec<(OrientedGraph, CanonicalCode)>>
where
    F: FnMut(&OrientedGraph) -> bool,
{
    let k = parent.n();
    let mut seen = HashSet::new();
    let mut children = Vec::new();
    for (out_mask, in_mask) in extensions(k, mode) {
        let mut child = parent.clone();
        let new = child.push_vertex()?;
        for v in crate::digraph::bits(out_mask) {
            child.insert_arc_unchecked(new, v);
        }
        for v in crate::digraph::bits(in_mask) {
            child.insert_arc_unchecked(v, new);
        }
        if !keep(&child) {
            continue;
        }
        let form = canonical_form(&child)?;
        let last = form.order[k];
        if last != new && canonical_code(&child.remove_vertex(last))? != parent_code {
            continue;
        }
        if seen.insert(form.code) {
            children.push((child.relabel(&form.relabelling()), form.code));
        }
    }
    Ok(children)
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_ORDER {
        Err(Error::TooLarge {
            what: "enumeration order",
            limit: MAX_ENUMERATION_ORDER,
            got: n,
        })
    } else {
        Ok(())
    }
}

type Predicate<'a> = Option<&'a (dyn Fn(&OrientedGraph) -> bool + Sync)>;

fn root() -> (OrientedGraph, CanonicalCode) {
    let g = OrientedGraph::empty(1).expect("one vertex");
    let code = canonical_code(&g).expect("one vertex");
    (g, code)
}

fn dfs<V>(
    g: &OrientedGraph,
    code: CanonicalCode,
    target: usize,
    mode: ExtensionMode,
    predicate: Predicate<'_>,
    visit: &mut V,
) -> Result<()>
where
    V: FnMut(&OrientedGraph, CanonicalCode),
{
    if g.n() == target {
        visit(g, code);
        return Ok(());
    }
    let children = augment(g, code, mode, |c| predicate.is_none_or(|p| p(c)))?;
    for (child, child_code) in children {
        dfs(&child, child_code, target, mode, predicate, visit)?;
    }
    Ok(())
}

fn generate(n: usize, mode: ExtensionMode, predicate: Predicate<'_>) -> Result<Vec<OrientedGraph>> {
    check_order(n)?;
    if n == 0 {
        let g = OrientedGraph::empty(0)?;
        return Ok(if predicate.is_none_or(|p| p(&g)) {
            vec![g]
        } else {
            vec![]
        });
    }
    let (r, rc) = root();
    if predicate.is_some_and(|p| !p(&r)) {
        return Ok(Vec::new());
    }
    // Fan out from a shallow frontier.
    let split = n.min(4);
    let mut frontier = Vec::new();
    dfs(&r, rc, split, mode, predicate, &mut |g, c| {
        frontier.push((g.clone(), c))
    })?;
    let chunks: Vec<Result<Vec<(CanonicalCode, OrientedGraph)>>> = frontier
        .par_iter()
        .map(|(g, c)| {
            let mut found = Vec::new();
            dfs(g, *c, n, mode, predicate, &mut |h, hc| found.push((hc, h.clone())))?;
            Ok(found)
        })
        .collect();
    let mut all = Vec::new();
    for chunk in chunks {
        all.extend(chunk?);
    }
    all.sort_unstable_by_key(|(c, _)| *c);
    debug_assert!(all.windows(2).all(|w| w[0].0 != w[1].0), "duplicate class");
    Ok(all.into_iter().map(|(_, g)| g).collect())
}

/// One representative per isomorphism class of `k`-vertex tournaments, in
/// canonical form, sorted by code.
pub fn enumerate_tournaments(k: usize) -> Result<Vec<OrientedGraph>> {
    generate(k, ExtensionMode::Tournament, None)
}

/// One canonical representative per class of `n`-vertex oriented graphs,
/// sorted by code. The predicate must be closed under deleting arcs and
/// vertices; it is applied at every level and prunes whole subtrees.
pub fn enumerate_oriented_graphs(n: usize, predicate: Predicate<'_>) -> Result<Vec<OrientedGraph>> {
    generate(n, ExtensionMode::Any, predicate)
}

/// Streaming variant of [`enumerate_oriented_graphs`]: single-threaded, in
/// generation order.
pub fn for_each_oriented_graph<V>(n: usize, predicate: Predicate<'_>, mut visit: V) -> Result<()>
where
    V: FnMut(&OrientedGraph, CanonicalCode),
{
    check_order(n)?;
    if n == 0 {
        let g = OrientedGraph::empty(0)?;
        if predicate.is_none_or(|p| p(&g)) {
            visit(&g, canonical_code(&g)?);
        }
        return Ok(());
    }
    let (r, rc) = root();
    if predicate.is_some_and(|p| !p(&r)) {
        return Ok(());
    }
    dfs(&r, rc, n, ExtensionMode::Any, predicate, &mut visit)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::canon::{automorphism_count, code_as_labelled};

    /// Every labelled oriented graph on n vertices, bucketed by canonical code.
    fn labelled_classes(
        n: usize,
        tournaments_only: bool,
        pred: impl Fn(&OrientedGraph) -> bool,
    ) -> BTreeSet<CanonicalCode> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let base: u64 = if tournaments_only { 2 } else { 3 };
        let mut classes = BTreeSet::new();
        for mut code in 0..base.pow(pairs.len() as u32) {
            let mut g = OrientedGraph::empty(n).unwrap();
            for &(i, j) in &pairs {
                let digit = if tournaments_only { code % 2 + 1 } else { code % 3 };
                match digit {
                    1 => g.insert_arc_unchecked(i, j),
                    2 => g.insert_arc_unchecked(j, i),
                    _ => {}
                }
                code /= base;
            }
            if pred(&g) {
                classes.insert(canonical_code(&g).unwrap());
            }
        }
        classes
    }

    fn codes(gs: &[OrientedGraph]) -> BTreeSet<CanonicalCode> {
        gs.iter().map(|g| canonical_code(g).unwrap()).collect()
    }

    #[test]
    fn tournament_counts_small() {
        let counts: Vec<usize> = (1..=4).map(|k| enumerate_tournaments(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4]);
    }

    #[test]
    fn tournaments_match_labelled_bucketing() {
        for k in 1..=5 {
            let gen = enumerate_tournaments(k).unwrap();
            assert!(gen.iter().all(OrientedGraph::is_tournament));
            assert_eq!(codes(&gen), labelled_classes(k, true, |_| true), "k = {k}");
        }
    }

    #[test]
    fn oriented_graph_classes_match_labelled_bucketing() {
        for n in 0..=4 {
            let gen = enumerate_oriented_graphs(n, None).unwrap();
            assert_eq!(gen.len(), codes(&gen).len());
            assert_eq!(codes(&gen), labelled_classes(n, false, |_| true), "n = {n}");
        }
        assert_eq!(enumerate_oriented_graphs(2, None).unwrap().len(), 2);
        assert_eq!(enumerate_oriented_graphs(3, None).unwrap().len(), 7);
    }

    #[test]
    fn filtered_enumeration_prunes() {
        let max_out_one = |g: &OrientedGraph| (0..g.n()).all(|v| g.out_degree(v) < 2);
        let gen = enumerate_oriented_graphs(3, Some(&max_out_one)).unwrap();
        assert_eq!(gen.len(), 5);
        assert_eq!(codes(&gen), labelled_classes(3, false, max_out_one));
        let gen5 = enumerate_oriented_graphs(5, Some(&max_out_one)).unwrap();
        assert_eq!(codes(&gen5), labelled_classes(5, false, max_out_one));
    }

    #[test]
    fn emitted_graphs_are_in_canonical_form() {
        for g in enumerate_oriented_graphs(5, None).unwrap() {
            assert_eq!(code_as_labelled(&g).unwrap(), canonical_code(&g).unwrap());
        }
    }

    #[test]
    fn streaming_matches_collected() {
        let mut streamed = BTreeSet::new();
        for_each_oriented_graph(4, None, |_, c| {
            assert!(streamed.insert(c));
        })
        .unwrap();
        assert_eq!(streamed, codes(&enumerate_oriented_graphs(4, None).unwrap()));
    }

    #[test]
    fn double_counting_identity_for_six_vertex_tournaments() {
        let k = 6u64;
        let classes = enumerate_tournaments(k as usize).unwrap();
        assert_eq!(classes.len(), 56);
        let fact: u64 = (1..=k).product();
        let total: u64 = classes.iter().map(|t| fact / automorphism_count(t).unwrap()).sum();
        assert_eq!(total, 1 << (k * (k - 1) / 2));
    }

    #[test]
    fn caps() {
        assert!(matches!(enumerate_tournaments(8), Err(Error::TooLarge { .. })));
        assert!(matches!(
            enumerate_oriented_graphs(8, None),
            Err(Error::TooLarge { .. })
        ));
    }
}
