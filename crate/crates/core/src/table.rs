//! Desk-scale reproduction of the summary tables: for every family and every
//! small instance, compare the closed-form bounds, the explicit construction
//! and the solver.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::{big, exact_or_upper};
use crate::constructions::{construct, ConstructParams};
use crate::error::{Error, Result};
use crate::graph::{build_with_budget, GraphSpec, Orientation};
use crate::solver::{exact_gamma, exact_gamma_from, is_dominating, Budget, SolveStatus};
use crate::words::count_words;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    /// Directed graphs.
    Table1,
    /// Undirected graphs.
    Table2,
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" | "1" => Ok(Table::Table1),
            "table2" | "2" => Ok(Table::Table2),
            other => Err(Error::Parse(format!("unknown table {other:?}"))),
        }
    }
}

/// A row of the summary tables: which instances it covers and which
/// construction, if any, backs its upper bound.
#[derive(Debug, Clone, Copy)]
pub struct Family {
    pub id: &'static str,
    pub orientation: Orientation,
    /// Theorem id passed to [`construct`], if the family has a construction.
    pub construction: Option<&'static str>,
    /// Whether `(d, t, n)` belongs to the family.
    pub member: fn(usize, usize, usize) -> bool,
}

const DIRECTED: Orientation = Orientation::Directed;
const UNDIRECTED: Orientation = Orientation::Undirected;

pub const TABLE1: [Family; 6] = [
    Family {
        id: "thm1",
        orientation: DIRECTED,
        construction: None,
        member: |_, t, _| t == 1,
    },
    Family {
        id: "thm5",
        orientation: DIRECTED,
        construction: None,
        member: |_, t, _| t == 2,
    },
    Family {
        id: "thm9",
        orientation: DIRECTED,
        construction: Some("thm9"),
        member: |d, t, n| t == 3 && d >= 3 && n >= 4,
    },
    Family {
        id: "thm11",
        orientation: DIRECTED,
        construction: Some("thm11"),
        member: |d, t, n| t >= 2 && t <= d && t < n,
    },
    Family {
        id: "thm13",
        orientation: DIRECTED,
        construction: Some("thm13"),
        member: |d, t, n| d == t && t == n,
    },
    Family {
        id: "thm15",
        orientation: DIRECTED,
        construction: Some("thm15"),
        member: |d, t, n| t == n && d > n,
    },
];

pub const TABLE2: [Family; 10] = [
    Family {
        id: "thm2",
        orientation: UNDIRECTED,
        construction: Some("thm2"),
        member: |_, t, n| t == 1 && n == 2,
    },
    Family {
        id: "thm3",
        orientation: UNDIRECTED,
        construction: Some("thm3"),
        member: |_, t, n| t == 1 && n == 3,
    },
    Family {
        id: "thm4",
        orientation: UNDIRECTED,
        construction: Some("thm4"),
        member: |_, t, n| t == 1 && n >= 4,
    },
    Family {
        id: "thm6",
        orientation: UNDIRECTED,
        construction: Some("thm6"),
        member: |_, t, n| t == 2 && n == 2,
    },
    Family {
        id: "thm7",
        orientation: UNDIRECTED,
        construction: Some("thm7"),
        member: |_, t, n| t == 2 && n == 3,
    },
    Family {
        id: "thm8",
        orientation: UNDIRECTED,
        construction: Some("thm8"),
        member: |_, t, n| t == 2 && n >= 4,
    },
    Family {
        id: "thm10",
        orientation: UNDIRECTED,
        construction: Some("thm10"),
        member: |d, t, n| t == 3 && d >= 3 && n >= 4,
    },
    Family {
        id: "cor",
        orientation: UNDIRECTED,
        construction: Some("cor"),
        member: |d, t, n| t >= 3 && t <= d && t < n,
    },
    Family {
        id: "thm14",
        orientation: UNDIRECTED,
        construction: Some("thm14"),
        member: |d, t, n| d == t && t == n,
    },
    Family {
        id: "thm16",
        orientation: UNDIRECTED,
        construction: Some("thm16"),
        member: |d, t, n| t == n && n >= 3 && d > n,
    },
];

impl Table {
    pub fn families(self) -> &'static [Family] {
        match self {
            Table::Table1 => &TABLE1,
            Table::Table2 => &TABLE2,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TableOptions {
    pub max_d: usize,
    pub max_n: usize,
    pub max_vertices: u64,
    /// Instances above this size get bounds and constructions but no solver run.
    pub max_solver_vertices: u64,
    pub budget: Budget,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            max_d: 6,
            max_n: 7,
            max_vertices: 200,
            max_solver_vertices: 200,
            budget: Budget::nodes(2_000_000),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub family: &'static str,
    pub d: usize,
    pub t: usize,
    pub n: usize,
    #[serde(with = "crate::bigint_text")]
    pub lower: BigUint,
    #[serde(with = "crate::bigint_text::option")]
    pub upper: Option<BigUint>,
    #[serde(with = "crate::bigint_text::option")]
    pub exact: Option<BigUint>,
    pub gamma_lo: Option<usize>,
    pub gamma_hi: Option<usize>,
    pub construction: Option<usize>,
    pub verdict: Verdict,
    /// Why the row is a violation; empty when consistent.
    pub problems: Vec<String>,
}

pub const CSV_HEADER: &str =
    "family,d,t,n,lower,upper,exact,gamma_lo,gamma_hi,construction,verdict";

fn cell<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl TableRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.d,
            self.t,
            self.n,
            self.lower,
            cell(&self.upper),
            cell(&self.exact),
            cell(&self.gamma_lo),
            cell(&self.gamma_hi),
            cell(&self.construction),
            self.verdict
        )
    }

    /// The solver finished with an exact value.
    pub fn solved(&self) -> Option<usize> {
        match (self.gamma_lo, self.gamma_hi) {
            (Some(lo), Some(hi)) if lo == hi => Some(hi),
            _ => None,
        }
    }
}

/// Every `(d, t, n)` of the family within the option limits, in lexicographic
/// order.
pub fn instances(family: &Family, opts: &TableOptions) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    for d in 2..=opts.max_d {
        for n in 2..=opts.max_n {
            for t in 1..=d.min(n) {
                if !(family.member)(d, t, n) {
                    continue;
                }
                let fits = count_words(d, t, n).is_ok_and(|v| v <= big(opts.max_vertices as usize));
                if fits {
                    out.push(GraphSpec::new(d, t, n, family.orientation).expect("in range"));
                }
            }
        }
    }
    out
}

fn construct_params(spec: &GraphSpec) -> ConstructParams {
    ConstructParams {
        d: Some(spec.d),
        t: Some(spec.t),
        n: Some(spec.n),
        c: (spec.t == spec.n).then(|| spec.d - spec.n),
    }
}

/// Bounds, construction and solver for one instance.
pub fn evaluate(family: &Family, spec: GraphSpec, opts: &TableOptions) -> Result<TableRow> {
    let report = exact_or_upper(&spec);
    let graph = build_with_budget(spec, opts.max_vertices)?;
    let mut problems = Vec::new();
    if !report.is_consistent() {
        problems.push("bounds disagree".to_string());
    }

    let mut construction = None;
    let mut seed = None;
    if let Some(id) = family.construction {
        let c = construct(id, construct_params(&spec))?;
        if !c.size_matches() {
            problems.push(format!(
                "{id} size {} vs claim {}",
                c.set.len(),
                c.claimed_size
            ));
        }
        if !is_dominating(&graph, &c.set)? {
            problems.push(format!("{id} set is not dominating"));
        }
        construction = Some(c.set.len());
        seed = Some(c.set);
    }

    let (mut gamma_lo, mut gamma_hi) = (None, None);
    if graph.vertex_count() as u64 <= opts.max_solver_vertices {
        let r = match &seed {
            Some(s) => exact_gamma_from(&graph, opts.budget, s)?,
            None => exact_gamma(&graph, opts.budget),
        };
        gamma_lo = Some(match r.status {
            SolveStatus::Exact => r.gamma_high,
            SolveStatus::Bounded => r.gamma_low,
        });
        gamma_hi = Some(r.gamma_high);
    }

    let lower = report.lower.clone();
    let ceiling = report.exact.as_ref().or(report.upper.as_ref());
    if let Some(hi) = gamma_hi {
        if lower > big(hi) {
            problems.push(format!("lower {lower} above solver's {hi}"));
        }
        if let (Some(ex), SolveStatus::Exact) = (&report.exact, status_of(gamma_lo, gamma_hi)) {
            if *ex != big(hi) {
                problems.push(format!("exact {ex} but solver found {hi}"));
            }
        }
    }
    if let Some(lo) = gamma_lo {
        if let Some(up) = ceiling {
            if big(lo) > *up {
                problems.push(format!("solver's lower {lo} above {up}"));
            }
        }
        if let Some(k) = construction {
            if lo > k {
                problems.push(format!("solver's lower {lo} above construction {k}"));
            }
        }
    }
    if let Some(k) = construction {
        if lower > big(k) {
            problems.push(format!("lower {lower} above construction {k}"));
        }
    }

    Ok(TableRow {
        family: family.id,
        d: spec.d,
        t: spec.t,
        n: spec.n,
        lower,
        upper: report.upper,
        exact: report.exact,
        gamma_lo,
        gamma_hi,
        construction,
        verdict: if problems.is_empty() {
            Verdict::Consistent
        } else {
            Verdict::Violation
        },
        problems,
    })
}

fn status_of(lo: Option<usize>, hi: Option<usize>) -> SolveStatus {
    if lo.is_some() && lo == hi {
        SolveStatus::Exact
    } else {
        SolveStatus::Bounded
    }
}

/// All rows of one table.
pub fn run_table(table: Table, opts: &TableOptions) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for family in table.families() {
        for spec in instances(family, opts) {
            rows.push(evaluate(family, spec, opts)?);
        }
    }
    Ok(rows)
}
