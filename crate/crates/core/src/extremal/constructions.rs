use serde::{Deserialize, Serialize};

use super::{turan_part_sizes, PatternSpec};
use crate::digraph::{OrientedGraph, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::homomorphism::{compressibility, CompressibilityResult};

/// The lower-bound constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Construction {
    /// `T(n, r)` with part `i` sent to part `j` whenever `base` has the arc
    /// `i -> j`; with no base the parts follow the transitive order, which for
    /// `r = 2` is the antidirected complete bipartite graph.
    Turan { r: usize, base: Option<OrientedGraph> },
    /// `i -> i + d (mod n)` for `d = 1..q-1`.
    CyclePower { q: usize },
    /// Parts `C` and `D` with `|D| = floor((n + q - p) / 2)`, every arc from
    /// `C` to `D`, and cycle powers of order `p` inside `C` and `q` inside `D`.
    Star { p: usize, q: usize },
    /// Antidirected complete bipartite graph from the smaller part to the
    /// larger, plus a directed cycle through the larger part.
    Thm32,
    /// Arc `v -> u` with `u -> w -> v` for every other vertex `w`.
    Prop26,
    /// Arc `v -> u` with `u -> w` and `v -> w` for every other vertex `w`.
    Prop27,
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Turan { .. } => "turan",
            Self::CyclePower { .. } => "cyclepower",
            Self::Star { .. } => "star",
            Self::Thm32 => "thm32",
            Self::Prop26 => "prop26",
            Self::Prop27 => "prop27",
        }
    }
}

fn bad(msg: String) -> Error {
    Error::BadParams(msg)
}

fn cycle_power(g: &mut OrientedGraph, verts: &[usize], q: usize) -> Result<()> {
    let m = verts.len();
    if q <= 1 {
        return Ok(());
    }
    if m < 2 * q - 1 {
        return Err(bad(format!(
            "a cycle power with out-degree {} needs at least {} vertices, got {m}",
            q - 1,
            2 * q - 1
        )));
    }
    for i in 0..m {
        for d in 1..q {
            g.insert_arc(verts[i], verts[(i + d) % m])?;
        }
    }
    Ok(())
}

/// Builds construction `c` on `n` vertices.
pub fn build_construction(c: &Construction, n: usize) -> Result<OrientedGraph> {
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "construction order",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let mut g = OrientedGraph::empty(n)?;
    match c {
        Construction::Turan { r, base } => {
            let r = *r;
            if r == 0 {
                return Err(bad("the Turán construction needs at least one part".into()));
            }
            if let Some(t) = base {
                if t.n() != r || !t.is_tournament() {
                    return Err(bad(format!("base must be a tournament on {r} vertices")));
                }
            }
            let mut part = Vec::with_capacity(n);
            for (i, size) in turan_part_sizes(n, r).into_iter().enumerate() {
                part.extend(std::iter::repeat_n(i, size));
            }
            for u in 0..n {
                for v in 0..n {
                    let (a, b) = (part[u], part[v]);
                    let forward = match base {
                        Some(t) => t.has_arc(a, b),
                        None => a < b,
                    };
                    if a != b && forward {
                        g.insert_arc(u, v)?;
                    }
                }
            }
        }
        Construction::CyclePower { q } => {
            if *q == 0 {
                return Err(bad("cycle power needs q >= 1".into()));
            }
            let all: Vec<usize> = (0..n).collect();
            cycle_power(&mut g, &all, *q)?;
        }
        Construction::Star { p, q } => {
            let (p, q) = (*p, *q);
            if p > q {
                return Err(bad(format!("star construction expects p <= q, got p = {p}, q = {q}")));
            }
            if p == 0 {
                return Err(bad("for p = 0 use the cycle power construction".into()));
            }
            if q - p > n {
                return Err(bad(format!("n = {n} too small for q - p = {}", q - p)));
            }
            let d = (n + q - p) / 2;
            let c_part: Vec<usize> = (0..n - d).collect();
            let d_part: Vec<usize> = (n - d..n).collect();
            cycle_power(&mut g, &c_part, p)?;
            cycle_power(&mut g, &d_part, q)?;
            for &u in &c_part {
                for &w in &d_part {
                    g.insert_arc(u, w)?;
                }
            }
        }
        Construction::Thm32 => {
            if n < 5 {
                return Err(bad(format!("needs n >= 5 so the larger part holds a cycle, got {n}")));
            }
            let small = n / 2;
            for u in 0..small {
                for w in small..n {
                    g.insert_arc(u, w)?;
                }
            }
            for w in small..n {
                let next = if w + 1 == n { small } else { w + 1 };
                g.insert_arc(w, next)?;
            }
        }
        Construction::Prop26 | Construction::Prop27 => {
            if n < 2 {
                return Err(bad(format!("needs n >= 2, got {n}")));
            }
            let (v, u) = (0, 1);
            g.insert_arc(v, u)?;
            for w in 2..n {
                g.insert_arc(u, w)?;
                if matches!(c, Construction::Prop26) {
                    g.insert_arc(w, v)?;
                } else {
                    g.insert_arc(v, w)?;
                }
            }
        }
    }
    Ok(g)
}

/// The construction giving the lower bound for `pattern` at order `n`, when
/// one exists there.
pub fn paired_construction(pattern: &PatternSpec, n: usize) -> Result<Option<Construction>> {
    use PatternSpec::*;
    Ok(match *pattern {
        DirectedPath { k } if k >= 2 => Some(Construction::Turan { r: k - 1, base: None }),
        DirectedCycle { k } if k >= 3 => Some(Construction::Turan {
            r: n.max(1),
            base: None,
        }),
        TransitiveTournament { k } if k >= 2 => match compressibility(&pattern.expand()?)? {
            CompressibilityResult::Finite { k: z, witness } => Some(Construction::Turan {
                r: z - 1,
                base: Some(witness),
            }),
            CompressibilityResult::Infinite => None,
        },
        Star { p, q } => {
            let (p, q) = (p.min(q), p.max(q));
            match p {
                0 if q >= 1 && n >= 2 * q - 1 => Some(Construction::CyclePower { q }),
                0 => None,
                _ => {
                    let d = (n + q - p) / 2;
                    let c = n.saturating_sub(d);
                    let fits = q - p <= n && (p == 1 || c >= 2 * p - 1) && (q == 1 || d >= 2 * q - 1);
                    fits.then_some(Construction::Star { p, q })
                }
            }
        }
        OrientedC4 => Some(Construction::Turan { r: 3, base: None }),
        Prop23Graph | Prop23Mirror => Some(Construction::Turan { r: 2, base: None }),
        AntidirectedPath { k: 4 } if n >= 2 => Some(Construction::Prop26),
        P3PlusArc if n >= 2 => Some(Construction::Prop27),
        Thm32Graph if n >= 5 => Some(Construction::Thm32),
        _ => None,
    })
}
