//! Canonical labelling and isomorphism-free enumeration.
//!
//! The canonical code of a graph on `n` vertices is the ternary string over
//! the pairs `(i, j)`, `i < j`, in row-major order `(0,1), (0,2), …, (0,n-1),
//! (1,2), …` with digit `0` for no arc, `1` for `i -> j` and `2` for `j -> i`,
//! minimised lexicographically over all relabellings. The minimum is found by
//! branching on which vertex takes the next position, refining the remaining
//! positions by their relation to the chosen vertex, and pruning as soon as a
//! completed row exceeds the best code's row.

mod enumerate;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};

pub(crate) use enumerate::{augment, ExtensionMode};
pub use enumerate::{enumerate_oriented_graphs, enumerate_tournaments, for_each_oriented_graph, MAX_ENUMERATION_ORDER};

/// Largest order accepted by the exact canonical search.
pub const MAX_CANON_ORDER: usize = 10;

const MAX_DIGITS: usize = MAX_CANON_ORDER * (MAX_CANON_ORDER - 1) / 2;

const POW3: [u128; MAX_DIGITS + 1] = {
    let mut t = [1u128; MAX_DIGITS + 1];
    let mut i = 1;
    while i <= MAX_DIGITS {
        t[i] = t[i - 1] * 3;
        i += 1;
    }
    t
};

/// Isomorphism certificate: the lexicographically least code, stored as a
/// base-3 number (same-length strings compare like their numeric values).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    value: u128,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn digit_count(&self) -> usize {
        self.n() * self.n().saturating_sub(1) / 2
    }

    /// The raw digit string, without the `n:` prefix.
    pub fn digits(&self) -> String {
        let len = self.digit_count();
        let mut out = vec![b'0'; len];
        let mut v = self.value;
        for slot in out.iter_mut().rev() {
            *slot = b'0' + (v % 3) as u8;
            v /= 3;
        }
        String::from_utf8(out).expect("ascii digits")
    }

    /// Rebuilds the canonical representative the code describes.
    pub fn to_graph(&self) -> OrientedGraph {
        let n = self.n();
        let mut g = OrientedGraph::empty(n).expect("code order is bounded");
        let digits = self.digits();
        let mut d = digits.bytes();
        for i in 0..n {
            for j in i + 1..n {
                match d.next() {
                    Some(b'1') => g.insert_arc_unchecked(i, j),
                    Some(b'2') => g.insert_arc_unchecked(j, i),
                    _ => {}
                }
            }
        }
        g
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.digits())
    }
}

impl FromStr for CanonicalCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let (n, digits) = s.split_once(':').ok_or_else(|| bad(1, "expected \"n:digits\""))?;
        let n: usize = n.parse().map_err(|_| bad(1, "bad vertex count"))?;
        if n > MAX_CANON_ORDER {
            return Err(Error::TooLarge {
                what: "canonical code order",
                limit: MAX_CANON_ORDER,
                got: n,
            });
        }
        if digits.len() != n * n.saturating_sub(1) / 2 {
            return Err(bad(n.to_string().len() + 2, "digit count does not match n(n-1)/2"));
        }
        let mut value = 0u128;
        for (k, b) in digits.bytes().enumerate() {
            if !(b'0'..=b'2').contains(&b) {
                return Err(bad(n.to_string().len() + 2 + k, "digits must be 0, 1 or 2"));
            }
            value = value * 3 + (b - b'0') as u128;
        }
        Ok(Self { n: n as u8, value })
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A canonical code together with one labelling that attains it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    /// `new_of_old` permutation for [`OrientedGraph::relabel`].
    pub fn relabelling(&self) -> Vec<usize> {
        let mut new_of_old = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            new_of_old[v] = p;
        }
        new_of_old
    }
}

fn check_order(g: &OrientedGraph) -> Result<()> {
    if g.n() > MAX_CANON_ORDER {
        Err(Error::TooLarge {
            what: "graph order for canonical labelling",
            limit: MAX_CANON_ORDER,
            got: g.n(),
        })
    } else {
        Ok(())
    }
}

#[inline]
fn relation(g: &OrientedGraph, a: usize, b: usize) -> u8 {
    if g.has_arc(a, b) {
        1
    } else if g.has_arc(b, a) {
        2
    } else {
        0
    }
}

struct Search<'a> {
    g: &'a OrientedGraph,
    n: usize,
    /// Digits remaining after row `k` (exclusive prefix end).
    tail_digits: [usize; MAX_CANON_ORDER],
    best: Option<u128>,
    best_prefix: [u128; MAX_CANON_ORDER],
    best_order: [u8; MAX_CANON_ORDER],
}

impl Search<'_> {
    fn record(&mut self, value: u128, seq: &[u8; MAX_CANON_ORDER]) {
        self.best = Some(value);
        self.best_order = *seq;
        for k in 0..self.n {
            self.best_prefix[k] = value / POW3[self.tail_digits[k]];
        }
    }

    /// Positions `< k` are fixed; `starts` lists the first position of each
    /// remaining cell (`starts[0] == k`).
    fn run(&mut self, k: usize, seq: [u8; MAX_CANON_ORDER], starts: &[u8], prefix: u128) {
        let n = self.n;
        if k + 1 >= n {
            if self.best.is_none_or(|b| prefix < b) {
                self.record(prefix, &seq);
            }
            return;
        }
        let first_end = starts.get(1).map_or(n, |&s| s as usize);
        let row_len = n - 1 - k;
        for p in k..first_end {
            let mut next = seq;
            next.swap(k, p);
            let v = next[k] as usize;

            // Refine cells after position k by relation to v; emit row k.
            let mut refined = [0u8; MAX_CANON_ORDER];
            let mut new_starts: Vec<u8> = Vec::with_capacity(n);
            let mut row = 0u128;
            let mut cell_bounds = Vec::with_capacity(starts.len());
            cell_bounds.push(k + 1);
            cell_bounds.extend(starts.iter().skip(1).map(|&s| s as usize));
            cell_bounds.push(n);
            let mut write = k + 1;
            for w in cell_bounds.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                if lo >= hi {
                    continue;
                }
                for rel in 0..3u8 {
                    let begin = write;
                    for &x in &next[lo..hi] {
                        let x = x as usize;
                        if relation(self.g, v, x) == rel {
                            refined[write] = x as u8;
                            write += 1;
                            row = row * 3 + rel as u128;
                        }
                    }
                    if write > begin {
                        new_starts.push(begin as u8);
                    }
                }
            }
            next[k + 1..n].copy_from_slice(&refined[k + 1..n]);
            let new_prefix = prefix * POW3[row_len] + row;
            if self.best.is_some() && new_prefix > self.best_prefix[k] {
                continue;
            }
            self.run(k + 1, next, &new_starts, new_prefix);
        }
    }
}

/// Exact canonical form for graphs of order at most [`MAX_CANON_ORDER`].
pub fn canonical_form(g: &OrientedGraph) -> Result<CanonicalForm> {
    check_order(g)?;
    let n = g.n();
    if n <= 1 {
        return Ok(CanonicalForm {
            code: CanonicalCode { n: n as u8, value: 0 },
            order: (0..n).collect(),
        });
    }
    let mut tail_digits = [0usize; MAX_CANON_ORDER];
    let total = n * (n - 1) / 2;
    let mut used = 0;
    for (k, slot) in tail_digits.iter_mut().enumerate().take(n) {
        used += n - 1 - k;
        *slot = total - used;
    }
    let mut seq = [0u8; MAX_CANON_ORDER];
    for (v, s) in seq.iter_mut().enumerate().take(n) {
        *s = v as u8;
    }
    let mut search = Search {
        g,
        n,
        tail_digits,
        best: None,
        best_prefix: [0; MAX_CANON_ORDER],
        best_order: [0; MAX_CANON_ORDER],
    };
    search.run(0, seq, &[0], 0);
    let value = search.best.expect("at least one leaf");
    Ok(CanonicalForm {
        code: CanonicalCode { n: n as u8, value },
        order: search.best_order[..n].iter().map(|&v| v as usize).collect(),
    })
}

pub fn canonical_code(g: &OrientedGraph) -> Result<CanonicalCode> {
    Ok(canonical_form(g)?.code)
}

/// The graph relabelled into canonical form.
pub fn canonical_graph(g: &OrientedGraph) -> Result<OrientedGraph> {
    let form = canonical_form(g)?;
    Ok(g.relabel(&form.relabelling()))
}

/// Code read off the graph's current labelling (no minimisation).
pub fn code_as_labelled(g: &OrientedGraph) -> Result<CanonicalCode> {
    check_order(g)?;
    let n = g.n();
    let mut value = 0u128;
    for i in 0..n {
        for j in i + 1..n {
            value = value * 3 + relation(g, i, j) as u128;
        }
    }
    Ok(CanonicalCode { n: n as u8, value })
}

fn sorted_degrees(g: &OrientedGraph) -> Vec<(usize, usize)> {
    let mut d: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.out_degree(v), g.in_degree(v))).collect();
    d.sort_unstable();
    d
}

/// Isomorphism test: degree-sequence prefilter, then canonical code equality.
pub fn is_isomorphic(g: &OrientedGraph, h: &OrientedGraph) -> Result<bool> {
    if g.n() != h.n() || g.arc_count() != h.arc_count() || sorted_degrees(g) != sorted_degrees(h) {
        return Ok(false);
    }
    Ok(canonical_code(g)? == canonical_code(h)?)
}

/// |Aut(g)|, by backtracking over arc-consistent partial maps.
pub fn automorphism_count(g: &OrientedGraph) -> Result<u64> {
    check_order(g)?;
    fn extend(g: &OrientedGraph, image: &mut Vec<usize>, used: u64) -> u64 {
        let v = image.len();
        if v == g.n() {
            return 1;
        }
        let mut count = 0;
        for t in 0..g.n() {
            if used >> t & 1 == 1 || g.out_degree(t) != g.out_degree(v) || g.in_degree(t) != g.in_degree(v) {
                continue;
            }
            let consistent = image
                .iter()
                .enumerate()
                .all(|(u, &iu)| relation(g, u, v) == relation(g, iu, t));
            if consistent {
                image.push(t);
                count += extend(g, image, used | 1 << t);
                image.pop();
            }
        }
        count
    }
    Ok(extend(g, &mut Vec::with_capacity(g.n()), 0))
}

/// Total order on graphs by canonical code.
pub fn cmp_by_code(a: &OrientedGraph, b: &OrientedGraph) -> Result<Ordering> {
    Ok(canonical_code(a)?.cmp(&canonical_code(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == used.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// Minimum over all relabellings, by brute force.
    fn brute_code(g: &OrientedGraph) -> CanonicalCode {
        all_permutations(g.n())
            .into_iter()
            .map(|p| code_as_labelled(&g.relabel(&p)).unwrap())
            .min()
            .unwrap()
    }

    #[test]
    fn single_arc_code_is_one() {
        let g = OrientedGraph::from_arcs(2, [(1, 0)]).unwrap();
        assert_eq!(canonical_code(&g).unwrap().to_string(), "2:1");
    }

    #[test]
    fn cyclic_triangle_is_relabelling_invariant() {
        let c = OrientedGraph::directed_cycle(3);
        let base = canonical_code(&c).unwrap();
        for p in all_permutations(3) {
            assert_eq!(canonical_code(&c.relabel(&p)).unwrap(), base);
        }
    }

    #[test]
    fn transitive_and_cyclic_triangles_differ() {
        let t = OrientedGraph::transitive_tournament(3);
        let c = OrientedGraph::directed_cycle(3);
        // brute-force oracle over all 6 relabellings of each
        assert_eq!(brute_code(&t).to_string(), "3:111");
        assert_eq!(brute_code(&c).to_string(), "3:121");
        assert_eq!(canonical_code(&t).unwrap(), brute_code(&t));
        assert_eq!(canonical_code(&c).unwrap(), brute_code(&c));
        assert_ne!(canonical_code(&t).unwrap(), canonical_code(&c).unwrap());
    }

    #[test]
    fn matches_brute_force_on_every_labelled_graph_with_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        for mut code in 0..3usize.pow(6) {
            let mut g = OrientedGraph::empty(4).unwrap();
            for &(i, j) in &pairs {
                match code % 3 {
                    1 => g.insert_arc_unchecked(i, j),
                    2 => g.insert_arc_unchecked(j, i),
                    _ => {}
                }
                code /= 3;
            }
            let form = canonical_form(&g).unwrap();
            assert_eq!(form.code, brute_code(&g));
            // the reported labelling really attains the code
            assert_eq!(code_as_labelled(&g.relabel(&form.relabelling())).unwrap(), form.code);
        }
    }

    #[test]
    fn code_string_round_trip() {
        let g = OrientedGraph::directed_path(4);
        let code = canonical_code(&g).unwrap();
        let parsed: CanonicalCode = code.to_string().parse().unwrap();
        assert_eq!(parsed, code);
        assert!(is_isomorphic(&code.to_graph(), &g).unwrap());
        assert!("3:12".parse::<CanonicalCode>().is_err());
        assert!("3:113".parse::<CanonicalCode>().is_err());
        assert_eq!("1:".parse::<CanonicalCode>().unwrap().n(), 1);
    }

    #[test]
    fn isomorphism_examples() {
        let p3 = OrientedGraph::directed_path(3);
        assert!(is_isomorphic(&p3, &p3.relabel(&[2, 0, 1])).unwrap());
        assert!(!is_isomorphic(
            &OrientedGraph::transitive_tournament(3),
            &OrientedGraph::directed_cycle(3)
        )
        .unwrap());
        assert!(is_isomorphic(&OrientedGraph::star(1, 1), &p3).unwrap());
    }

    #[test]
    fn too_large() {
        let g = OrientedGraph::empty(11).unwrap();
        assert!(matches!(canonical_code(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&OrientedGraph::directed_cycle(5)).unwrap(), 5);
        assert_eq!(automorphism_count(&OrientedGraph::transitive_tournament(5)).unwrap(), 1);
        assert_eq!(automorphism_count(&OrientedGraph::empty(4).unwrap()).unwrap(), 24);
    }
}
