//! Explicit dominating sets for the graph families with known upper bounds.
//!
//! Each generator returns a [`Construction`]: the vertex set, bound to the
//! graph it is meant to dominate, together with the closed-form size it
//! should have. Nothing here checks domination; that is the solver's job.

mod partition;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds::{big, formulas};
use crate::error::{Error, Result};
use crate::graph::{build, GraphSpec, DEFAULT_MAX_VERTICES};
use crate::set::VertexSet;
use crate::words::Word;

pub use partition::{
    a_partition, partial_perm_directed, partial_perm_undirected, select_blocks_directed,
    select_ublocks, thm16_level_parts, APartition, Block, LevelPick, UBlock,
};

/// How the set size relates to `claimed_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClaim {
    Exact,
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub set: VertexSet,
    pub claimed_size: BigUint,
    pub claim: SizeClaim,
    pub formula_id: &'static str,
}

impl Construction {
    fn exact(set: VertexSet, claimed_size: BigUint, formula_id: &'static str) -> Self {
        Construction {
            set,
            claimed_size,
            claim: SizeClaim::Exact,
            formula_id,
        }
    }

    /// Set size agrees with the claimed formula.
    pub fn size_matches(&self) -> bool {
        let size = big(self.set.len());
        match self.claim {
            SizeClaim::Exact => size == self.claimed_size,
            SizeClaim::AtMost => size <= self.claimed_size,
        }
    }

    pub fn to_json(&self) -> Result<ConstructionJson> {
        Ok(ConstructionJson {
            spec: *self.set.spec(),
            members: self.set.words()?,
            claimed_size: self.claimed_size.clone(),
            claim: self.claim,
            formula_id: self.formula_id.to_string(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub spec: GraphSpec,
    pub members: Vec<Word>,
    #[serde(with = "crate::bigint_text")]
    pub claimed_size: BigUint,
    pub claim: SizeClaim,
    pub formula_id: String,
}

fn out_of_range(id: &'static str, reason: impl Into<String>) -> Error {
    Error::OutOfRange {
        id,
        reason: reason.into(),
    }
}

/// All words of `spec` satisfying `keep`, in index order.
fn select(spec: GraphSpec, keep: impl Fn(&[u8]) -> bool) -> Result<VertexSet> {
    let space = spec.space()?;
    if space.count() > DEFAULT_MAX_VERTICES {
        return Err(Error::BudgetExceeded {
            count: space.count().to_string(),
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let members = space
        .iter()
        .enumerate()
        .filter(|(_, w)| keep(w.symbols()))
        .map(|(i, _)| i as u32)
        .collect();
    Ok(VertexSet::new(spec, members))
}

fn from_symbols(spec: GraphSpec, words: Vec<Vec<u8>>) -> Result<VertexSet> {
    let words: Vec<Word> = words.into_iter().map(Word::new).collect();
    VertexSet::from_words(spec, &words)
}

fn sym(x: usize) -> u8 {
    x as u8
}

/// `{(1, x) : x != 1}` in the undirected de Bruijn graph with n = 2.
pub fn db_undirected_n2(d: usize) -> Result<Construction> {
    let spec = GraphSpec::undirected(d, 1, 2)?;
    let set = select(spec, |w| w[0] == 1 && w[1] != 1)?;
    Ok(Construction::exact(set, formulas::thm2(d), "thm2"))
}

/// `{(2i, x, 2i-1)}` for all `i <= d/2`, plus `{(d, x, d)}` when d is odd.
pub fn db_undirected_n3(d: usize) -> Result<Construction> {
    let spec = GraphSpec::undirected(d, 1, 3)?;
    let mut words = Vec::new();
    for i in 1..=d / 2 {
        for x in 1..=d {
            words.push(vec![sym(2 * i), sym(x), sym(2 * i - 1)]);
        }
    }
    if d % 2 == 1 {
        for x in 1..=d {
            words.push(vec![sym(d), sym(x), sym(d)]);
        }
    }
    Ok(Construction::exact(
        from_symbols(spec, words)?,
        formulas::thm3(d),
        "thm3",
    ))
}

/// Words with `x_{n-1} != x_1` and `x_n = x_2`.
pub fn db_undirected_general(d: usize, n: usize) -> Result<Construction> {
    if n < 4 {
        return Err(out_of_range("thm4", "n < 4"));
    }
    let spec = GraphSpec::undirected(d, 1, n)?;
    let set = select(spec, |w| w[n - 2] != w[0] && w[n - 1] == w[1])?;
    Ok(Construction::exact(set, formulas::thm4_upper(d, n), "thm4"))
}

/// The n = 2 de Bruijn set `{(1, x) : x != 1}` taken in the Kautz graph, where
/// every member is already 2-constrained.
pub fn kautz_undirected_n2(d: usize) -> Result<Construction> {
    let spec = GraphSpec::undirected(d, 2, 2)?;
    let set = select(spec, |w| w[0] == 1)?;
    Ok(Construction::exact(set, formulas::thm6(d), "thm6"))
}

/// Undirected Kautz graph, n = 3.
///
/// Even d: `(b, x, b-1)` and `(b, b-1, 2)` for even b, `(1, b+1, b)` for odd b.
/// Odd d: `(b, x, b-1)` and `(b, b-1, d)` for even b, then `(d, b+1, b)` for
/// odd `b < d` and `(d, b-1, b)` for even `b < d`. The last family gives every
/// odd middle symbol below d a member starting with d.
pub fn kautz_undirected_n3(d: usize) -> Result<Construction> {
    let spec = GraphSpec::undirected(d, 2, 3)?;
    let mut words = Vec::new();
    for b in (2..=d).step_by(2) {
        for x in (1..=d).filter(|&x| x != b && x != b - 1) {
            words.push(vec![sym(b), sym(x), sym(b - 1)]);
        }
    }
    if d.is_multiple_of(2) {
        for b in (2..=d).step_by(2) {
            words.push(vec![sym(b), sym(b - 1), 2]);
        }
        for b in (1..d).step_by(2) {
            words.push(vec![1, sym(b + 1), sym(b)]);
        }
    } else {
        for b in (2..d).step_by(2) {
            words.push(vec![sym(b), sym(b - 1), sym(d)]);
        }
        for b in (1..d - 1).step_by(2) {
            words.push(vec![sym(d), sym(b + 1), sym(b)]);
        }
        for b in (2..d).step_by(2) {
            words.push(vec![sym(d), sym(b - 1), sym(b)]);
        }
    }
    Ok(Construction::exact(
        from_symbols(spec, words)?,
        formulas::thm7_upper(d),
        "thm7",
    ))
}

/// Undirected Kautz graph, n >= 4: words `(1, i, ...)` with `i != d`,
/// `(1, d, i, ...)` with `i != 1`, and `(d, 1, d, 1, ...)`.
pub fn kautz_undirected_general(d: usize, n: usize) -> Result<Construction> {
    if n < 4 {
        return Err(out_of_range("thm8", "n < 4"));
    }
    let spec = GraphSpec::undirected(d, 2, n)?;
    let top = sym(d);
    let set = select(spec, |w| {
        (w[0] == 1 && w[1] != top)
            || (w[0] == 1 && w[1] == top && w[2] != 1)
            || (w[0] == top && w[1] == 1 && w[2] == top && w[3] == 1)
    })?;
    Ok(Construction::exact(set, formulas::thm8_upper(d, n), "thm8"))
}

/// Directed 3-constrained graph: words starting with a pair `(i, i+1)` for odd
/// i or `(i, i-1)` for even i. For odd d the pair starting at d does not exist
/// and is replaced by words `(x, d, y, ...)` with `x = min([d] \ {d, y})`.
pub fn directed_t3(d: usize, n: usize) -> Result<Construction> {
    if d < 3 || n < 4 {
        return Err(out_of_range("thm9", "d < 3 or n < 4"));
    }
    let spec = GraphSpec::directed(d, 3, n)?;
    let top = sym(d);
    let paired = |w: &[u8]| {
        let (a, b) = (w[0], w[1]);
        (a % 2 == 1 && a != top && b == a + 1) || (a % 2 == 0 && b == a - 1)
    };
    if d.is_multiple_of(2) {
        let set = select(spec, paired)?;
        return Ok(Construction::exact(set, formulas::thm9_even(d, n), "thm9"));
    }
    let set = select(spec, |w| {
        let lead = (1..top).find(|&x| x != w[2]);
        paired(w) || (w[1] == top && Some(w[0]) == lead)
    })?;
    Ok(Construction::exact(
        set,
        formulas::thm9_odd_upper(d, n),
        "thm9",
    ))
}

/// Undirected 3-constrained graph: every word starting with 1.
pub fn undirected_t3(d: usize, n: usize) -> Result<Construction> {
    if d < 3 || n < 4 {
        return Err(out_of_range("thm10", "d < 3 or n < 4"));
    }
    let spec = GraphSpec::undirected(d, 3, n)?;
    let set = select(spec, |w| w[0] == 1)?;
    Ok(Construction::exact(
        set,
        formulas::thm10_upper(d, n),
        "thm10",
    ))
}

/// Directed t-constrained graph, `t < n`: words starting with 1, plus words
/// with 1 at a position `3 <= i <= t` whose first symbol is the smallest one
/// missing from positions `2..=t`.
pub fn directed_general_t(d: usize, t: usize, n: usize) -> Result<Construction> {
    if t < 2 || t > d || t >= n {
        return Err(out_of_range("thm11", "need 2 <= t <= d and t < n"));
    }
    let spec = GraphSpec::directed(d, t, n)?;
    let set = select(spec, |w| {
        if w[0] == 1 {
            return true;
        }
        let window = &w[1..t];
        window[1..].contains(&1) && (1..=d as u8).find(|x| !window.contains(x)) == Some(w[0])
    })?;
    Ok(Construction::exact(
        set,
        formulas::thm11_upper(d, t, n),
        "thm11",
    ))
}

/// [`directed_general_t`] viewed in the undirected graph, for `t >= 3`.
pub fn undirected_general_t(d: usize, t: usize, n: usize) -> Result<Construction> {
    if t < 3 {
        return Err(out_of_range("cor", "t < 3"));
    }
    let c = directed_general_t(d, t, n)?;
    Ok(Construction {
        set: c.set.rebind(GraphSpec::undirected(d, t, n)?)?,
        formula_id: "cor",
        ..c
    })
}

/// Every other vertex along each rotation cycle of the permutation graph.
pub fn perm_directed(n: usize) -> Result<Construction> {
    let spec = GraphSpec::directed(n, n, n)?;
    let set = pick_along_cycles(spec, 2)?;
    Ok(Construction::exact(set, formulas::thm13(n), "thm13"))
}

/// Every third vertex along each cycle of the undirected permutation graph,
/// starting from the cycle's smallest word.
pub fn perm_undirected(n: usize) -> Result<Construction> {
    let spec = GraphSpec::undirected(n, n, n)?;
    let set = pick_along_cycles(spec, 3)?;
    Ok(Construction::exact(set, formulas::thm14(n), "thm14"))
}

fn pick_along_cycles(spec: GraphSpec, step: usize) -> Result<VertexSet> {
    let g = build(spec)?;
    let members = g
        .cycle_decomposition()?
        .into_iter()
        .flat_map(|c| c.into_iter().step_by(step))
        .collect();
    Ok(VertexSet::new(spec, members))
}

/// Theorem identifiers accepted by [`construct`].
pub const THEOREM_IDS: [&str; 14] = [
    "thm2", "thm3", "thm4", "thm6", "thm7", "thm8", "thm9", "thm10", "thm11", "cor", "thm13",
    "thm14", "thm15", "thm16",
];

/// Parameters for [`construct`]; which fields are read depends on the theorem.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstructParams {
    pub d: Option<usize>,
    pub t: Option<usize>,
    pub n: Option<usize>,
    pub c: Option<usize>,
}

/// Dispatch by theorem identifier.
pub fn construct(id: &str, p: ConstructParams) -> Result<Construction> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::Parse(format!("{id} needs --{name}")))
    };
    // t = n families take either c or d = n + c
    let extra = |n: usize| -> Result<usize> {
        match (p.c, p.d) {
            (Some(c), _) => Ok(c),
            (None, Some(d)) if d >= n => Ok(d - n),
            (None, Some(_)) => Err(Error::Parse(format!("{id} needs d >= n"))),
            (None, None) => Err(Error::Parse(format!("{id} needs --c or --d"))),
        }
    };
    match id {
        "thm2" => db_undirected_n2(need(p.d, "d")?),
        "thm3" => db_undirected_n3(need(p.d, "d")?),
        "thm4" => db_undirected_general(need(p.d, "d")?, need(p.n, "n")?),
        "thm6" => kautz_undirected_n2(need(p.d, "d")?),
        "thm7" => kautz_undirected_n3(need(p.d, "d")?),
        "thm8" => kautz_undirected_general(need(p.d, "d")?, need(p.n, "n")?),
        "thm9" => directed_t3(need(p.d, "d")?, need(p.n, "n")?),
        "thm10" => undirected_t3(need(p.d, "d")?, need(p.n, "n")?),
        "thm11" => directed_general_t(need(p.d, "d")?, need(p.t, "t")?, need(p.n, "n")?),
        "cor" => undirected_general_t(need(p.d, "d")?, need(p.t, "t")?, need(p.n, "n")?),
        "thm13" => perm_directed(need(p.n, "n")?),
        "thm14" => perm_undirected(need(p.n, "n")?),
        "thm15" => {
            let n = need(p.n, "n")?;
            partial_perm_directed(n, extra(n)?)
        }
        "thm16" => {
            let n = need(p.n, "n")?;
            partial_perm_undirected(n, extra(n)?)
        }
        other => Err(Error::Parse(format!(
            "unknown theorem {other:?}; expected one of {}",
            THEOREM_IDS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{exact_gamma, is_dominating, Budget};

    fn dominates(c: &Construction) -> bool {
        let g = build(*c.set.spec()).unwrap();
        is_dominating(&g, &c.set).unwrap()
    }

    fn gamma(spec: GraphSpec) -> usize {
        exact_gamma(&build(spec).unwrap(), Budget::unlimited())
            .gamma()
            .unwrap()
    }

    #[test]
    fn thm2_examples() {
        let c = db_undirected_n2(2).unwrap();
        assert_eq!(c.set.words().unwrap(), vec!["1,2".parse::<Word>().unwrap()]);
        assert_eq!(db_undirected_n2(3).unwrap().set.len(), 2);
        let c = db_undirected_n2(5).unwrap();
        assert_eq!(c.set.len(), 4);
        assert!(dominates(&c));
        assert_eq!(gamma(GraphSpec::undirected(5, 1, 2).unwrap()), 4);
    }

    #[test]
    fn thm3_examples() {
        let c = db_undirected_n3(3).unwrap();
        assert_eq!(c.set.len(), 6);
        assert!(dominates(&c));
        assert_eq!(gamma(GraphSpec::undirected(3, 1, 3).unwrap()), 6);
        assert_eq!(db_undirected_n3(4).unwrap().set.len(), 8);
        let c = db_undirected_n3(2).unwrap();
        assert_eq!(c.set.len(), 2);
        assert_eq!(gamma(GraphSpec::undirected(2, 1, 3).unwrap()), 2);
    }

    #[test]
    fn thm4_examples() {
        assert_eq!(db_undirected_general(3, 4).unwrap().set.len(), 18);
        let c = db_undirected_general(2, 4).unwrap();
        assert_eq!(c.set.len(), 4);
        assert_eq!(gamma(GraphSpec::undirected(2, 1, 4).unwrap()), 4);
        for d in 2..=3 {
            for n in 4..=5 {
                assert!(dominates(&db_undirected_general(d, n).unwrap()));
            }
        }
        assert!(matches!(
            db_undirected_general(3, 3),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn thm7_examples() {
        assert_eq!(kautz_undirected_n3(4).unwrap().set.len(), 8);
        let c = kautz_undirected_n3(3).unwrap();
        assert_eq!(c.set.len(), 4);
        assert!(dominates(&c));
        let g = gamma(GraphSpec::undirected(3, 2, 3).unwrap());
        assert!((3..=4).contains(&g));
        assert_eq!(kautz_undirected_n3(5).unwrap().set.len(), 12);
    }

    #[test]
    fn thm8_examples() {
        assert_eq!(kautz_undirected_general(3, 4).unwrap().set.len(), 7);
        assert_eq!(kautz_undirected_general(2, 4).unwrap().set.len(), 1);
        let c = kautz_undirected_general(3, 5).unwrap();
        assert_eq!(c.set.len(), 14);
        assert!(dominates(&c));
    }

    #[test]
    fn thm9_examples() {
        let c = directed_t3(4, 4).unwrap();
        assert_eq!(c.set.len(), 16);
        assert!(dominates(&c));
        assert_eq!(directed_t3(3, 4).unwrap().set.len(), 4);
        let c = directed_t3(5, 4).unwrap();
        assert_eq!(c.set.len(), 48);
        assert!(dominates(&c));
    }

    #[test]
    fn thm10_examples() {
        assert_eq!(undirected_t3(4, 4).unwrap().set.len(), 12);
        let c = undirected_t3(3, 4).unwrap();
        assert_eq!(c.set.len(), 2);
        assert!(dominates(&c));
        assert_eq!(undirected_t3(5, 5).unwrap().set.len(), 108);
    }

    #[test]
    fn thm11_examples() {
        for (d, n) in [(3, 3), (4, 4), (5, 3)] {
            let c = directed_general_t(d, 2, n).unwrap();
            assert_eq!(big(c.set.len()), formulas::thm5(d, n));
        }
        assert_eq!(directed_general_t(4, 3, 4).unwrap().set.len(), 18);
        let c = directed_general_t(5, 3, 4).unwrap();
        assert_eq!(c.set.len(), 48);
        assert!(dominates(&c));
        assert!(directed_general_t(4, 4, 4).is_err());
        assert!(directed_general_t(4, 5, 6).is_err());
    }

    #[test]
    fn thm13_thm14_examples() {
        let c = perm_directed(3).unwrap();
        assert_eq!(c.set.len(), 4);
        assert_eq!(gamma(GraphSpec::directed(3, 3, 3).unwrap()), 4);
        assert_eq!(perm_directed(4).unwrap().set.len(), 12);
        assert_eq!(perm_directed(2).unwrap().set.len(), 1);

        assert_eq!(perm_undirected(3).unwrap().set.len(), 2);
        assert_eq!(perm_undirected(4).unwrap().set.len(), 12);
        assert_eq!(gamma(GraphSpec::undirected(4, 4, 4).unwrap()), 12);
        let c = perm_undirected(5).unwrap();
        assert_eq!(c.set.len(), 48);
        assert!(dominates(&c));
    }

    #[test]
    fn members_respect_constraint() {
        let all = [
            db_undirected_n3(5).unwrap(),
            kautz_undirected_n3(5).unwrap(),
            kautz_undirected_n3(6).unwrap(),
            directed_t3(5, 5).unwrap(),
            directed_general_t(6, 4, 6).unwrap(),
        ];
        for c in &all {
            let t = c.set.spec().t;
            assert!(c.set.words().unwrap().iter().all(|w| w.is_t_constrained(t)));
            assert!(c.size_matches());
        }
    }

    #[test]
    fn dispatch() {
        let c = construct(
            "thm13",
            ConstructParams {
                n: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.set.len(), 12);
        assert!(construct(
            "thm4",
            ConstructParams {
                d: Some(3),
                n: Some(3),
                ..Default::default()
            }
        )
        .is_err());
        let c = construct(
            "thm8",
            ConstructParams {
                d: Some(3),
                n: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.set.len(), 7);
        assert!(construct("thm99", ConstructParams::default()).is_err());
    }

    #[test]
    fn json_shape() {
        let c = db_undirected_n2(3).unwrap();
        let v = serde_json::to_value(c.to_json().unwrap()).unwrap();
        assert_eq!(v["members"], serde_json::json!(["1,2", "1,3"]));
        assert_eq!(v["claimed_size"], "2");
        assert_eq!(v["formula_id"], "thm2");
        assert_eq!(v["spec"]["d"], 3);
    }
}
