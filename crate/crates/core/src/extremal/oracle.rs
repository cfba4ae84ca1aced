use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{choose2, formula_value, Budget, ExtremalRecord, PatternSpec};
use crate::canon::{augment, canonical_code, CanonicalCode, ExtensionMode, MAX_CANON_ORDER};
use crate::containment::{contains_copy_through, is_free};
use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};

/// Largest `n` the oracle accepts. Exhaustive answers are practical up to 7;
/// beyond that a budget turns the run into a lower-bound search.
pub const MAX_ORACLE_ORDER: usize = MAX_CANON_ORDER;

type Best = Option<(usize, CanonicalCode, OrientedGraph)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if (y.0, std::cmp::Reverse(y.1)) > (x.0, std::cmp::Reverse(x.1)) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

struct Search<'a> {
    n: usize,
    pattern: &'a OrientedGraph,
    /// `smaller[j]` is the exact answer for `j` vertices, `j < n`.
    smaller: &'a [usize],
    best: &'a AtomicUsize,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget: Budget,
    started: Instant,
}

impl Search<'_> {
    /// Most arcs any completion of a `k`-vertex F-free graph with `e` arcs can reach.
    fn bound(&self, k: usize, e: usize) -> usize {
        let rest = self.n - k;
        e + (choose2(self.n) - choose2(k)).min(k * rest + self.smaller[rest])
    }

    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| visited > m);
        let over_time = visited.is_multiple_of(256) && self.budget.max_time.is_some_and(|t| self.started.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn children(&self, g: &OrientedGraph, code: CanonicalCode) -> Result<Vec<(OrientedGraph, CanonicalCode)>> {
        let k = g.n() + 1;
        augment(g, code, ExtensionMode::Any, |child| {
            self.bound(k, child.arc_count()) >= self.best.load(Ordering::Relaxed)
                && contains_copy_through(child, self.pattern, k - 1).is_none()
        })
    }

    fn dfs(&self, g: &OrientedGraph, code: CanonicalCode, found: &mut Best) -> Result<()> {
        if g.n() == self.n {
            let e = g.arc_count();
            self.best.fetch_max(e, Ordering::Relaxed);
            *found = better(found.take(), Some((e, code, g.clone())));
            return Ok(());
        }
        if !self.tick() {
            return Ok(());
        }
        for (child, child_code) in self.children(g, code)? {
            if self.bound(child.n(), child.arc_count()) >= self.best.load(Ordering::Relaxed) {
                self.dfs(&child, child_code, found)?;
            }
        }
        Ok(())
    }

    fn frontier(
        &self,
        g: &OrientedGraph,
        code: CanonicalCode,
        depth: usize,
        out: &mut Vec<(OrientedGraph, CanonicalCode)>,
    ) -> Result<()> {
        if g.n() == depth || g.n() == self.n {
            out.push((g.clone(), code));
            return Ok(());
        }
        for (child, child_code) in self.children(g, code)? {
            self.frontier(&child, child_code, depth, out)?;
        }
        Ok(())
    }
}

/// Exact `exo(n, F)` with a witness: the maximum arc count of an `n`-vertex
/// oriented graph avoiding `pattern`.
///
/// The search walks pattern-free graphs by canonical augmentation, one vertex
/// at a time, checking only the copies through the newest vertex, and cuts a
/// branch when even a complete fill of the remaining pairs cannot reach the
/// best value found. Among maximum graphs the one with the smallest canonical
/// code is returned. When the budget runs out the error carries the best
/// graph seen so far, a certified lower bound.
pub fn oracle_exo(n: usize, pattern: &PatternSpec, budget: &Budget) -> Result<ExtremalRecord> {
    if n > MAX_ORACLE_ORDER {
        return Err(Error::TooLarge {
            what: "oracle order",
            limit: MAX_ORACLE_ORDER,
            got: n,
        });
    }
    let f = pattern.expand()?;
    if f.arc_count() == 0 {
        return Err(Error::EmptyPattern);
    }
    let started = Instant::now();
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut smaller = vec![0usize; n.max(1)];
    let mut last: Best = None;
    for m in 1..=n {
        let found = solve(m, &f, &smaller, &nodes, &stop, budget, started)?;
        if stop.load(Ordering::Relaxed) {
            let best = if m == n { found } else { None };
            let record = finish(n, pattern, &f, best.or_else(|| empty_best(n)))?;
            return Err(Error::BudgetExceeded { best: Box::new(record) });
        }
        if m < n {
            smaller[m] = found.as_ref().map_or(0, |b| b.0);
        } else {
            last = found;
        }
    }
    if n == 0 {
        last = empty_best(0);
    }
    finish(n, pattern, &f, last)
}

fn empty_best(n: usize) -> Best {
    let g = OrientedGraph::empty(n).ok()?;
    let code = canonical_code(&g).ok()?;
    Some((0, code, g))
}

fn solve(
    n: usize,
    f: &OrientedGraph,
    smaller: &[usize],
    nodes: &AtomicU64,
    stop: &AtomicBool,
    budget: &Budget,
    started: Instant,
) -> Result<Best> {
    let best = AtomicUsize::new(0);
    let search = Search {
        n,
        pattern: f,
        smaller,
        best: &best,
        nodes,
        stop,
        budget: *budget,
        started,
    };
    let root = OrientedGraph::empty(1)?;
    let root_code = canonical_code(&root)?;
    let mut frontier = Vec::new();
    search.frontier(&root, root_code, n.min(4), &mut frontier)?;
    let results: Vec<Result<Best>> = frontier
        .par_iter()
        .map(|(g, code)| {
            let mut found = None;
            search.dfs(g, *code, &mut found)?;
            Ok(found)
        })
        .collect();
    let mut overall = None;
    for r in results {
        overall = better(overall, r?);
    }
    Ok(overall.or_else(|| empty_best(n)))
}

fn finish(n: usize, pattern: &PatternSpec, f: &OrientedGraph, best: Best) -> Result<ExtremalRecord> {
    let (value, witness_code, witness) =
        best.ok_or_else(|| Error::InvariantViolation("oracle produced no witness".into()))?;
    if witness.arc_count() != value || !is_free(&witness, f) {
        return Err(Error::InvariantViolation(format!(
            "oracle witness {witness_code} failed verification"
        )));
    }
    let formula = formula_value(pattern, n).ok().map(|fv| fv.value);
    Ok(ExtremalRecord {
        n,
        pattern: pattern.clone(),
        value,
        witness,
        witness_code,
        formula_value: formula,
        matches_formula: formula.map(|x| x == value),
    })
}
