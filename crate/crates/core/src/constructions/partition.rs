//! A-partitions of the partial permutation graphs `(n + c, n, n)` and the
//! block structures built on top of them.

use std::collections::HashMap;

use super::{out_of_range, Construction, SizeClaim};
use crate::bounds::{formulas, thm16_recurrence};
use crate::error::{Error, Result};
use crate::graph::{GraphSpec, DEFAULT_MAX_VERTICES};
use crate::set::VertexSet;
use crate::words::{Word, WordSpace};

/// Vertices of `(n + c, n, n)` split by where the largest symbol sits.
/// `parts[0]` holds the words without it, `parts[i]` those with it at
/// position i (1-based).
#[derive(Debug, Clone)]
pub struct APartition {
    pub n: usize,
    pub c: usize,
    space: WordSpace,
    parts: Vec<Vec<u32>>,
}

impl APartition {
    pub fn space(&self) -> &WordSpace {
        &self.space
    }

    pub fn part(&self, i: usize) -> &[u32] {
        &self.parts[i]
    }

    /// Part `i` as a set in the given orientation.
    pub fn part_set(&self, i: usize, spec: GraphSpec) -> VertexSet {
        VertexSet::new(spec, self.parts[i].clone())
    }

    fn symbols(&self, v: u32) -> Vec<u8> {
        let mut out = vec![0; self.n];
        self.space.unrank_into(v as u64, &mut out);
        out
    }

    fn directed_spec(&self) -> GraphSpec {
        GraphSpec::directed(self.n + self.c, self.n, self.n).expect("validated")
    }

    fn undirected_spec(&self) -> GraphSpec {
        GraphSpec::undirected(self.n + self.c, self.n, self.n).expect("validated")
    }
}

pub fn a_partition(n: usize, c: usize) -> Result<APartition> {
    let d = n + c;
    let spec = GraphSpec::directed(d, n, n)?;
    let space = spec.space()?;
    if space.count() > DEFAULT_MAX_VERTICES {
        return Err(Error::BudgetExceeded {
            count: space.count().to_string(),
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let mut parts = vec![Vec::new(); n + 1];
    let mut buf = vec![0u8; n];
    for v in 0..space.count() {
        space.unrank_into(v, &mut buf);
        let at = buf
            .iter()
            .position(|&s| s as usize == d)
            .map_or(0, |p| p + 1);
        parts[at].push(v as u32);
    }
    Ok(APartition { n, c, space, parts })
}

/// Words of one part that differ only in the first position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub part: usize,
    pub members: VertexSet,
}

/// Words of one part that differ only in the first and last positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UBlock {
    pub part: usize,
    pub core: Word,
    pub members: VertexSet,
}

/// Groups `part` by the key `key(word)`, keeping first-seen order.
fn group_by<K, F>(p: &APartition, part: usize, key: F) -> Vec<(K, Vec<u32>)>
where
    K: std::hash::Hash + Eq + Clone,
    F: Fn(&[u8]) -> K,
{
    let mut slot: HashMap<K, usize> = HashMap::new();
    let mut groups: Vec<(K, Vec<u32>)> = Vec::new();
    for &v in p.part(part) {
        let k = key(&p.symbols(v));
        let at = *slot.entry(k.clone()).or_insert_with(|| {
            groups.push((k, Vec::new()));
            groups.len() - 1
        });
        groups[at].1.push(v);
    }
    groups
}

/// Blocks of `A_i` and the set `S_i` holding the smallest word of each block.
/// `S_i` dominates `A_{i-1}` in the directed graph.
pub fn select_blocks_directed(p: &APartition, i: usize) -> Result<(Vec<Block>, VertexSet)> {
    if i < 2 || i > p.n {
        return Err(out_of_range("blocks", format!("need 2 <= i <= {}", p.n)));
    }
    let spec = p.directed_spec();
    let groups = group_by(p, i, |w| w[1..].to_vec());
    // parts are listed in index order, which is lexicographic
    let reps = groups.iter().map(|(_, m)| m[0]).collect();
    let blocks = groups
        .into_iter()
        .map(|(_, m)| Block {
            part: i,
            members: VertexSet::new(spec, m),
        })
        .collect();
    Ok((blocks, VertexSet::new(spec, reps)))
}

/// U-blocks of `A_i` and the union of their rotation sets `C_j`.
/// `S_i` dominates `A_{i-1}` and `A_{i+1}` in the undirected graph.
pub fn select_ublocks(p: &APartition, i: usize) -> Result<(Vec<UBlock>, VertexSet)> {
    if i < 2 || i + 1 > p.n {
        return Err(out_of_range(
            "ublocks",
            format!("need 2 <= i <= {}", p.n - 1),
        ));
    }
    let spec = p.undirected_spec();
    let d = (p.n + p.c) as u8;
    let n = p.n;
    let mut chosen = Vec::new();
    let mut blocks = Vec::new();
    for (core, members) in group_by(p, i, |w| w[1..n - 1].to_vec()) {
        let free: Vec<u8> = (1..=d).filter(|s| !core.contains(s)).collect();
        let s = free.len();
        for k in 0..s {
            let (first, last) = (free[(k + 1) % s], free[k]);
            let mut w = Vec::with_capacity(n);
            w.push(first);
            w.extend_from_slice(&core);
            w.push(last);
            chosen.push(p.space.rank_unchecked(&w) as u32);
        }
        blocks.push(UBlock {
            part: i,
            core: Word::new(core),
            members: VertexSet::new(spec, members),
        });
    }
    Ok((blocks, VertexSet::new(spec, chosen)))
}

/// `A_1` together with `S_3, ..., S_n`, dominating the directed graph
/// `(n + c, n, n)`.
pub fn partial_perm_directed(n: usize, c: usize) -> Result<Construction> {
    if c == 0 {
        return Err(out_of_range("thm15", "c = 0 is the permutation graph"));
    }
    let p = a_partition(n, c)?;
    let mut members = p.part(1).to_vec();
    for i in 3..=n {
        members.extend_from_slice(select_blocks_directed(&p, i)?.1.members());
    }
    Ok(Construction {
        set: VertexSet::new(p.directed_spec(), members),
        claimed_size: formulas::thm15_upper(n, c),
        claim: SizeClaim::Exact,
        formula_id: "thm15",
    })
}

/// Which set is taken from part `i` at one level of the undirected scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelPick {
    /// Rotation set from the u-blocks of `A_i`.
    Undirected(usize),
    /// Block representatives of `A_i`.
    Directed(usize),
}

/// Sets taken from `A_1, ..., A_n` at one level: `S_{i+1}, S_{i+2}` for each
/// full run `A_i..A_{i+3}`, then the remainder.
pub fn thm16_level_parts(n: usize) -> Vec<LevelPick> {
    let mut picks = Vec::new();
    let mut i = 1;
    while i + 3 <= n {
        picks.push(LevelPick::Undirected(i + 1));
        picks.push(LevelPick::Undirected(i + 2));
        i += 4;
    }
    match n + 1 - i {
        0 => {}
        1 => picks.push(LevelPick::Undirected(n - 1)),
        _ => {
            picks.push(LevelPick::Undirected(n - 1));
            picks.push(LevelPick::Directed(n));
        }
    }
    picks
}

/// Dominating set of the undirected graph `(n + c, n, n)`: per level, the
/// picks of [`thm16_level_parts`], then the same scheme on `A_0` (the graph
/// one symbol smaller) down to the permutation graph.
pub fn partial_perm_undirected(n: usize, c: usize) -> Result<Construction> {
    if n < 3 {
        return Err(out_of_range("thm16", "n < 3"));
    }
    let spec = GraphSpec::undirected(n + c, n, n)?;
    let top = spec.space()?;
    if top.count() > DEFAULT_MAX_VERTICES {
        return Err(Error::BudgetExceeded {
            count: top.count().to_string(),
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let mut members = Vec::new();
    let mut lift = |space: &WordSpace, local: &[u32]| {
        let mut buf = vec![0u8; n];
        for &v in local {
            space.unrank_into(v as u64, &mut buf);
            members.push(top.rank_unchecked(&buf) as u32);
        }
    };
    for level in (1..=c).rev() {
        let p = a_partition(n, level)?;
        for pick in thm16_level_parts(n) {
            let s = match pick {
                LevelPick::Undirected(i) => select_ublocks(&p, i)?.1,
                LevelPick::Directed(i) => select_blocks_directed(&p, i)?.1,
            };
            lift(p.space(), s.members());
        }
    }
    let base = super::perm_undirected(n)?;
    lift(&base.set.spec().space()?, base.set.members());
    let set = VertexSet::new(spec, members);
    Ok(Construction {
        set,
        claimed_size: thm16_recurrence(n, c),
        claim: SizeClaim::AtMost,
        formula_id: "thm16",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;
    use crate::solver::is_dominating;
    use num_traits::ToPrimitive;

    fn size(x: num_bigint::BigUint) -> usize {
        x.to_usize().unwrap()
    }

    #[test]
    fn partition_cardinalities() {
        let p = a_partition(3, 1).unwrap();
        let sizes: Vec<_> = (0..=3).map(|i| p.part(i).len()).collect();
        assert_eq!(sizes, vec![6, 6, 6, 6]);
        let p = a_partition(2, 2).unwrap();
        let sizes: Vec<_> = (0..=2).map(|i| p.part(i).len()).collect();
        assert_eq!(sizes, vec![6, 3, 3]);
        assert!(a_partition(4, 0).unwrap().part(0).is_empty());
    }

    #[test]
    fn blocks_n3_c1() {
        let p = a_partition(3, 1).unwrap();
        let (blocks, s3) = select_blocks_directed(&p, 3).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.members.len() == 2));
        assert_eq!(s3.len(), 3);
        for b in &blocks {
            let words = b.members.words().unwrap();
            assert!(words
                .iter()
                .all(|w| w.symbols()[1..] == words[0].symbols()[1..]));
        }
        let g = build(GraphSpec::directed(4, 3, 3).unwrap()).unwrap();
        for &v in p.part(2) {
            assert!(g.adjacent(v as usize).iter().any(|_| true));
            let hit = s3
                .members()
                .iter()
                .any(|&s| g.adjacent(s as usize).contains(&v));
            assert!(hit, "A_2 vertex {v} undominated");
        }
    }

    #[test]
    fn ublocks_n3_c1() {
        let p = a_partition(3, 1).unwrap();
        let (blocks, s2) = select_ublocks(&p, 2).unwrap();
        assert!(blocks.iter().all(|b| b.members.len() == 6));
        assert_eq!(s2.len(), size(formulas::blocks_per_part(3, 1)));
        let g = build(GraphSpec::undirected(4, 3, 3).unwrap()).unwrap();
        for &v in p.part(1).iter().chain(p.part(3)) {
            let hit = s2
                .members()
                .iter()
                .any(|&s| g.adjacent(s as usize).contains(&v));
            assert!(hit);
        }
    }

    #[test]
    fn level_picks() {
        use LevelPick::*;
        assert_eq!(thm16_level_parts(3), vec![Undirected(2), Directed(3)]);
        assert_eq!(thm16_level_parts(4), vec![Undirected(2), Undirected(3)]);
        assert_eq!(
            thm16_level_parts(5),
            vec![Undirected(2), Undirected(3), Undirected(4)]
        );
        assert_eq!(
            thm16_level_parts(6),
            vec![Undirected(2), Undirected(3), Undirected(5), Directed(6)]
        );
    }

    #[test]
    fn thm15_sizes() {
        assert_eq!(partial_perm_directed(3, 1).unwrap().set.len(), 9);
        assert_eq!(partial_perm_directed(2, 2).unwrap().set.len(), 3);
        for (n, c) in [(3, 1), (3, 2), (4, 1)] {
            let k = partial_perm_directed(n, c).unwrap();
            assert!(k.size_matches());
            let g = build(*k.set.spec()).unwrap();
            assert!(is_dominating(&g, &k.set).unwrap());
        }
    }

    #[test]
    fn thm16_sets() {
        for (n, c) in [(3, 1), (4, 1), (3, 2)] {
            let k = partial_perm_undirected(n, c).unwrap();
            assert!(k.size_matches());
            let g = build(*k.set.spec()).unwrap();
            assert!(is_dominating(&g, &k.set).unwrap());
        }
        assert_eq!(partial_perm_undirected(3, 1).unwrap().set.len(), 8);
    }
}
