use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::{build_construction, formula_value, oracle_exo, paired_construction, Budget, PatternSpec};
use crate::canon::CanonicalCode;
use crate::containment::is_free;
use crate::digraph::OrientedGraph;
use crate::error::{Error, Result};

/// Oracle value compared with the closed form at one `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormulaStatus {
    Match,
    OracleHigher,
    OracleLower,
}

impl FormulaStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Match => "MATCH",
            Self::OracleHigher => "ORACLE_HIGHER",
            Self::OracleLower => "ORACLE_LOWER",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRow {
    pub n: usize,
    pub oracle: usize,
    pub formula: usize,
    pub validity_note: String,
    /// Whether the closed form is claimed to be exact at this `n`.
    pub asserted: bool,
    pub status: FormulaStatus,
    pub witness_code: CanonicalCode,
    /// Arc count of the paired construction, when one exists at this `n`.
    pub construction: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub pattern: PatternSpec,
    pub rows: Vec<FormulaRow>,
}

impl FormulaReport {
    /// Rows where the oracle undercuts the closed form; constructions rule these out.
    pub fn hard_failures(&self) -> Vec<&FormulaRow> {
        self.rows
            .iter()
            .filter(|r| r.status == FormulaStatus::OracleLower)
            .collect()
    }

    /// Rows where an asserted-exact formula disagrees with the oracle.
    pub fn asserted_mismatches(&self) -> Vec<&FormulaRow> {
        self.rows
            .iter()
            .filter(|r| r.asserted && r.status != FormulaStatus::Match)
            .collect()
    }

    /// Smallest tested `n` from which every later row matches.
    pub fn matching_from(&self) -> Option<usize> {
        let tail = self
            .rows
            .iter()
            .rev()
            .take_while(|r| r.status == FormulaStatus::Match)
            .count();
        (tail > 0).then(|| self.rows[self.rows.len() - tail].n)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pattern {}", self.pattern.name());
        let _ = writeln!(
            out,
            "{:>3}  {:>6}  {:>7}  {:<22}  {:<13}  witness",
            "n", "oracle", "formula", "validity", "status"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>3}  {:>6}  {:>7}  {:<22}  {:<13}  {}",
                r.n,
                r.oracle,
                r.formula,
                r.validity_note,
                r.status.label(),
                r.witness_code
            );
        }
        out
    }
}

/// Runs the oracle over `ns` and classifies each value against the closed form.
///
/// Fails with [`Error::InvariantViolation`] if a paired construction is not
/// pattern-free or has more arcs than the oracle found.
pub fn verify_against_formula(
    pattern: &PatternSpec,
    ns: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<FormulaReport> {
    let f = pattern.expand()?;
    let mut rows = Vec::new();
    for n in ns {
        let fv = formula_value(pattern, n)?;
        let record = oracle_exo(n, pattern, budget)?;
        let construction = match paired_construction(pattern, n)? {
            Some(c) => {
                let g = build_construction(&c, n)?;
                if !is_free(&g, &f) {
                    return Err(Error::InvariantViolation(format!(
                        "{} construction at n = {n} contains {}",
                        c.name(),
                        pattern.name()
                    )));
                }
                if g.arc_count() > record.value {
                    return Err(Error::InvariantViolation(format!(
                        "{} construction at n = {n} has {} arcs, above the oracle's {}",
                        c.name(),
                        g.arc_count(),
                        record.value
                    )));
                }
                Some(g.arc_count())
            }
            None => None,
        };
        let status = match record.value.cmp(&fv.value) {
            std::cmp::Ordering::Equal => FormulaStatus::Match,
            std::cmp::Ordering::Greater => FormulaStatus::OracleHigher,
            std::cmp::Ordering::Less => FormulaStatus::OracleLower,
        };
        rows.push(FormulaRow {
            n,
            oracle: record.value,
            formula: fv.value,
            validity_note: fv.validity.note(),
            asserted: fv.validity.asserted_at(n),
            status,
            witness_code: record.witness_code,
            construction,
        });
    }
    Ok(FormulaReport {
        pattern: pattern.clone(),
        rows,
    })
}

/// One line of the disjoint-union comparison `exo(n, F1 + F2)` vs `exo(n, F2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionRow {
    pub n: usize,
    pub union_value: usize,
    pub larger_part_value: usize,
    pub equal: bool,
}

/// Compares `exo(n, F1 + F2)` with `exo(n, F2)` across `ns`, where `F1 + F2`
/// is the vertex-disjoint union.
pub fn union_reduction_table(
    f1: &OrientedGraph,
    f2: &OrientedGraph,
    ns: RangeInclusive<usize>,
    budget: &Budget,
) -> Result<Vec<UnionRow>> {
    let union = PatternSpec::Custom {
        graph: f1.disjoint_union(f2)?,
    };
    let part = PatternSpec::Custom { graph: f2.clone() };
    ns.map(|n| {
        let u = oracle_exo(n, &union, budget)?.value;
        let p = oracle_exo(n, &part, budget)?.value;
        Ok(UnionRow {
            n,
            union_value: u,
            larger_part_value: p,
            equal: u == p,
        })
    })
    .collect()
}
