//! Oriented Turán numbers: named patterns, closed forms, the exhaustive
//! oracle, and the extremal constructions.

mod constructions;
mod oracle;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalCode;
use crate::digraph::{OrientedGraph, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::homomorphism::compressibility;

pub use constructions::{build_construction, paired_construction, Construction};
pub use oracle::{oracle_exo, MAX_ORACLE_ORDER};
pub use verify::{union_reduction_table, verify_against_formula, FormulaReport, FormulaRow, FormulaStatus, UnionRow};

/// A forbidden pattern, either one of the named families or an explicit graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternSpec {
    DirectedPath { k: usize },
    DirectedCycle { k: usize },
    TransitiveTournament { k: usize },
    Star { p: usize, q: usize },
    Matching { k: usize },
    AntidirectedPath { k: usize },
    OrientedC4,
    Prop23Graph,
    Prop23Mirror,
    P3PlusArc,
    Thm32Graph,
    Custom { graph: OrientedGraph },
}

impl PatternSpec {
    /// The concrete graph, with the vertex numbering documented per kind.
    pub fn expand(&self) -> Result<OrientedGraph> {
        let too_big = |what: &'static str, got: usize| Error::TooLarge {
            what,
            limit: MAX_VERTICES,
            got,
        };
        Ok(match *self {
            Self::DirectedPath { k } => {
                if k > MAX_VERTICES {
                    return Err(too_big("path order", k));
                }
                OrientedGraph::directed_path(k)
            }
            Self::DirectedCycle { k } => {
                if k < 3 {
                    return Err(Error::BadParams(format!("a directed cycle needs k >= 3, got {k}")));
                }
                if k > MAX_VERTICES {
                    return Err(too_big("cycle order", k));
                }
                OrientedGraph::directed_cycle(k)
            }
            Self::TransitiveTournament { k } => {
                if k > MAX_VERTICES {
                    return Err(too_big("tournament order", k));
                }
                OrientedGraph::transitive_tournament(k)
            }
            Self::Star { p, q } => {
                if p + q + 1 > MAX_VERTICES {
                    return Err(too_big("star order", p + q + 1));
                }
                OrientedGraph::star(p, q)
            }
            Self::Matching { k } => {
                if 2 * k > MAX_VERTICES {
                    return Err(too_big("matching order", 2 * k));
                }
                OrientedGraph::matching(k)
            }
            Self::AntidirectedPath { k } => {
                if k > MAX_VERTICES {
                    return Err(too_big("path order", k));
                }
                OrientedGraph::antidirected_path(k)
            }
            Self::OrientedC4 => OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])?,
            Self::Prop23Graph => OrientedGraph::from_arcs(4, [(0, 1), (1, 2), (3, 2)])?,
            Self::Prop23Mirror => OrientedGraph::from_arcs(4, [(1, 0), (1, 2), (2, 3)])?,
            Self::P3PlusArc => OrientedGraph::from_arcs(5, [(0, 1), (2, 1), (3, 4)])?,
            // x = 0, y1 = 1, y2 = 2, z = 3
            Self::Thm32Graph => OrientedGraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])?,
            Self::Custom { ref graph } => graph.clone(),
        })
    }

    /// Short name accepted by [`PatternSpec::from_str`]; `custom` for explicit graphs.
    pub fn name(&self) -> String {
        match *self {
            Self::DirectedPath { k } => format!("dpath{k}"),
            Self::DirectedCycle { k } => format!("dcycle{k}"),
            Self::TransitiveTournament { k } => format!("ttour{k}"),
            Self::Star { p, q } => format!("star:{p},{q}"),
            Self::Matching { k } => format!("matching{k}"),
            Self::AntidirectedPath { k } => format!("adpath{k}"),
            Self::OrientedC4 => "oc4".into(),
            Self::Prop23Graph => "prop23".into(),
            Self::Prop23Mirror => "prop23m".into(),
            Self::P3PlusArc => "p3plusarc".into(),
            Self::Thm32Graph => "thm32".into(),
            Self::Custom { .. } => "custom".into(),
        }
    }

    /// Every accepted name form, for help texts.
    pub const NAME_FORMS: &'static [&'static str] = &[
        "dpath<k>",
        "dcycle<k>",
        "c<k>",
        "ttour<k>",
        "star:<p>,<q>",
        "matching<k>",
        "adpath<k>",
        "oc4",
        "prop23",
        "prop23m",
        "p3plusarc",
        "thm32",
    ];
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || {
            Error::BadParams(format!(
                "unknown pattern name {s:?}; expected one of {}",
                Self::NAME_FORMS.join(", ")
            ))
        };
        let number = |digits: &str| digits.parse::<usize>().map_err(|_| bad());
        let fixed = match s {
            "oc4" => Some(Self::OrientedC4),
            "prop23" => Some(Self::Prop23Graph),
            "prop23m" => Some(Self::Prop23Mirror),
            "p3plusarc" => Some(Self::P3PlusArc),
            "thm32" => Some(Self::Thm32Graph),
            _ => None,
        };
        if let Some(spec) = fixed {
            return Ok(spec);
        }
        if let Some(rest) = s.strip_prefix("star:") {
            let (p, q) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(Self::Star {
                p: number(p.trim())?,
                q: number(q.trim())?,
            });
        }
        type Make = fn(usize) -> PatternSpec;
        let prefixes: [(&str, Make); 7] = [
            ("dpath", |k| Self::DirectedPath { k }),
            ("dcycle", |k| Self::DirectedCycle { k }),
            ("ttour", |k| Self::TransitiveTournament { k }),
            ("matching", |k| Self::Matching { k }),
            ("adpath", |k| Self::AntidirectedPath { k }),
            ("c", |k| Self::DirectedCycle { k }),
            ("m", |k| Self::Matching { k }),
        ];
        for (prefix, make) in prefixes {
            if let Some(rest) = s.strip_prefix(prefix) {
                if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                    return Ok(make(number(rest)?));
                }
            }
        }
        Err(bad())
    }
}

/// Which range of `n` a closed form is asserted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    AllN,
    AtLeast(usize),
    SufficientlyLarge,
}

impl Validity {
    /// Whether the formula is claimed to be exact at `n`.
    pub fn asserted_at(&self, n: usize) -> bool {
        match *self {
            Self::AllN => true,
            Self::AtLeast(n0) => n >= n0,
            Self::SufficientlyLarge => false,
        }
    }

    pub fn note(&self) -> String {
        match *self {
            Self::AllN => "all n".into(),
            Self::AtLeast(n0) => format!("all n >= {n0}"),
            Self::SufficientlyLarge => "sufficiently large n".into(),
        }
    }
}

/// A closed-form prediction for `exo(n, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: usize,
    pub validity: Validity,
}

pub(crate) fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Edge count of the Turán graph `T(n, r)`: `C(n,2)` minus the pairs inside parts.
pub fn turan_arc_count(n: usize, r: usize) -> usize {
    if r == 0 {
        return 0;
    }
    choose2(n) - turan_part_sizes(n, r).into_iter().map(choose2).sum::<usize>()
}

/// Part sizes of `T(n, r)`, larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Closed-form value of `exo(n, F)` for a named pattern.
pub fn formula_value(pattern: &PatternSpec, n: usize) -> Result<FormulaValue> {
    use PatternSpec::*;
    use Validity::*;
    let quarter = |m: usize| m * m / 4;
    let (value, validity) = match *pattern {
        DirectedPath { k } if k >= 2 => (turan_arc_count(n, k - 1), AllN),
        DirectedCycle { k } if k >= 3 => (choose2(n), AllN),
        TransitiveTournament { k } if k >= 2 => {
            let z = compressibility(&pattern.expand()?)?
                .value()
                .ok_or_else(|| Error::NoFormula(pattern.name()))?;
            (turan_arc_count(n, z - 1), AllN)
        }
        Star { p, q } if p + q >= 1 => {
            let (p, q) = if p <= q { (p, q) } else { (q, p) };
            if p == 0 {
                ((q - 1) * n, AtLeast(2 * q - 1))
            } else {
                ((p - 1) * n + quarter(n + q - p), SufficientlyLarge)
            }
        }
        Matching { k } if k >= 1 => {
            let f = |n: usize| (k - 1) * (n + 1).saturating_sub(k) + choose2(k - 1);
            let floor = choose2(2 * k - 1);
            let n0 = (2 * k - 1..)
                .find(|&m| f(m) >= floor)
                .expect("the linear term eventually dominates");
            (f(n), AtLeast(n0))
        }
        AntidirectedPath { k: 2 } => (0, AllN),
        AntidirectedPath { k: 3 } => (n, AtLeast(3)),
        AntidirectedPath { k: 4 } => ((2 * n).saturating_sub(3), AtLeast(2)),
        OrientedC4 => (turan_arc_count(n, 3), AllN),
        Prop23Graph | Prop23Mirror => (quarter(n), SufficientlyLarge),
        P3PlusArc => ((2 * n).saturating_sub(3), SufficientlyLarge),
        Thm32Graph => (quarter(n) + n.div_ceil(2), SufficientlyLarge),
        _ => return Err(Error::NoFormula(pattern.name())),
    };
    Ok(FormulaValue { value, validity })
}

/// Search limits for [`oracle_exo`]; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

/// Result of an exact extremal computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: PatternSpec,
    pub value: usize,
    pub witness: OrientedGraph,
    pub witness_code: CanonicalCode,
    pub formula_value: Option<usize>,
    pub matches_formula: Option<bool>,
}
