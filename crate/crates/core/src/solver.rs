//! Exact minimum dominating set by branch and bound.
//!
//! A vertex `v` covers its closed neighbourhood: `N+(v) ∪ {v}` in a directed
//! graph, `N(v) ∪ {v}` in an undirected one. The search always branches on
//! the lowest-index uncovered vertex `u`, trying every still-allowed vertex
//! that covers `u` in order of decreasing fresh coverage. After a candidate's
//! subtree is finished the candidate is excluded from its later siblings, so
//! every dominating set is reached at most once.
//!
//! Two lower bounds prune a node:
//! - `ceil(uncovered / (Δ + 1))`;
//! - a fractional bound: if `m(u)` is the largest fresh coverage among the
//!   allowed vertices covering `u`, any completion has at least
//!   `sum_u 1 / m(u)` vertices. It is evaluated exactly in integers by
//!   scaling with `lcm(1..=Δ+1)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::set::VertexSet;
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    /// Root subtrees are spread over this many threads when above 1.
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time_limit: Some(Duration::from_secs(60)),
            node_limit: Some(100_000_000),
            workers: 1,
        }
    }
}

impl Budget {
    pub fn nodes(limit: u64) -> Self {
        Budget {
            time_limit: None,
            node_limit: Some(limit),
            workers: 1,
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            time_limit: None,
            node_limit: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Exact,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub gamma_low: usize,
    pub gamma_high: usize,
    /// A dominating set of size `gamma_high`.
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SolveResult {
    pub fn gamma(&self) -> Option<usize> {
        (self.status == SolveStatus::Exact).then_some(self.gamma_high)
    }

    pub fn to_json(&self) -> Result<SolveResultJson> {
        Ok(SolveResultJson {
            status: self.status,
            gamma_low: self.gamma_low,
            gamma_high: self.gamma_high,
            witness: self.witness.words()?,
            nodes_explored: self.nodes_explored,
            elapsed_ms: self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveResultJson {
    pub status: SolveStatus,
    pub gamma_low: usize,
    pub gamma_high: usize,
    pub witness: Vec<Word>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

/// Closed neighbourhoods in both directions, as flat index lists.
#[derive(Clone)]
struct CoverTable {
    vertex_count: usize,
    cover_off: Vec<usize>,
    cover: Vec<u32>,
    coverer_off: Vec<usize>,
    coverer: Vec<u32>,
    max_cover: usize,
    /// `lcm(1..=max_cover)` when small enough for exact fractional bounds.
    scale: Option<u64>,
}

impl CoverTable {
    fn new(g: &Graph) -> Self {
        let lists = (0..g.vertex_count())
            .map(|u| {
                let mut l: Vec<u32> = g.adjacent(u).to_vec();
                l.push(u as u32);
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        CoverTable::from_lists(lists)
    }

    fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        let v = lists.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); v];
        for (u, l) in lists.iter().enumerate() {
            for &w in l {
                rev[w as usize].push(u as u32);
            }
        }
        let max_cover = lists.iter().map(Vec::len).max().unwrap_or(1);
        let (cover_off, cover) = flatten(&mut lists);
        let (coverer_off, coverer) = flatten(&mut rev);
        let mut scale = Some(1u64);
        for k in 1..=max_cover as u64 {
            scale = scale.map(|s| s.lcm(&k)).filter(|&s| s < (1 << 40));
        }
        CoverTable {
            vertex_count: v,
            cover_off,
            cover,
            coverer_off,
            coverer,
            max_cover,
            scale,
        }
    }

    /// Weakly connected pieces, each as its sorted global vertex ids and a
    /// table over local ids.
    fn components(&self) -> Vec<(Vec<u32>, CoverTable)> {
        let v = self.vertex_count;
        let mut comp = vec![u32::MAX; v];
        let mut pieces = Vec::new();
        for root in 0..v {
            if comp[root] != u32::MAX {
                continue;
            }
            let id = pieces.len() as u32;
            comp[root] = id;
            let mut members = vec![root as u32];
            let mut head = 0;
            while head < members.len() {
                let x = members[head] as usize;
                head += 1;
                for &y in self.covers(x).iter().chain(self.coverers(x)) {
                    if comp[y as usize] == u32::MAX {
                        comp[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            pieces.push(members);
        }
        if pieces.len() == 1 {
            return vec![(pieces.pop().unwrap(), self.clone())];
        }
        let mut local = vec![0u32; v];
        for members in &pieces {
            for (i, &g) in members.iter().enumerate() {
                local[g as usize] = i as u32;
            }
        }
        pieces
            .into_iter()
            .map(|members| {
                let lists = members
                    .iter()
                    .map(|&g| {
                        self.covers(g as usize)
                            .iter()
                            .map(|&w| local[w as usize])
                            .collect()
                    })
                    .collect();
                (members, CoverTable::from_lists(lists))
            })
            .collect()
    }

    fn covers(&self, v: usize) -> &[u32] {
        &self.cover[self.cover_off[v]..self.cover_off[v + 1]]
    }

    fn coverers(&self, u: usize) -> &[u32] {
        &self.coverer[self.coverer_off[u]..self.coverer_off[u + 1]]
    }
}

fn flatten(lists: &mut [Vec<u32>]) -> (Vec<usize>, Vec<u32>) {
    let mut off = Vec::with_capacity(lists.len() + 1);
    off.push(0);
    let mut flat = Vec::new();
    for l in lists.iter_mut() {
        flat.append(l);
        off.push(flat.len());
    }
    (off, flat)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(len: usize) -> Self {
        let mut w = vec![!0u64; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            *w.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
        }
        Bits(w)
    }

    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    fn first_set_from(&self, word: usize) -> Option<usize> {
        self.0[word..]
            .iter()
            .position(|&w| w != 0)
            .map(|k| (word + k) * 64 + self.0[word + k].trailing_zeros() as usize)
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// True iff every vertex is in `s` or has an (out-)neighbour in `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> Result<bool> {
    s.check_against(g)?;
    let mut covered = vec![false; g.vertex_count()];
    for &v in s.members() {
        covered[v as usize] = true;
        for &w in g.adjacent(v as usize) {
            covered[w as usize] = true;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Repeatedly takes the vertex covering the most uncovered vertices, smallest index on ties.
pub fn greedy_dominating(g: &Graph) -> VertexSet {
    let table = CoverTable::new(g);
    VertexSet::new(*g.spec(), greedy(&table))
}

fn greedy(table: &CoverTable) -> Vec<u32> {
    let v = table.vertex_count;
    let mut fresh: Vec<usize> = (0..v).map(|x| table.covers(x).len()).collect();
    // fresh counts only fall, so a stale heap entry is re-pushed with its current count
    let mut heap: BinaryHeap<(usize, Reverse<u32>)> =
        (0..v).map(|x| (fresh[x], Reverse(x as u32))).collect();
    let mut covered = vec![false; v];
    let mut remaining = v;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (f, Reverse(best)) = heap.pop().expect("uncovered vertices have coverers");
        if f != fresh[best as usize] {
            heap.push((fresh[best as usize], Reverse(best)));
            continue;
        }
        chosen.push(best);
        for &u in table.covers(best as usize) {
            if !covered[u as usize] {
                covered[u as usize] = true;
                remaining -= 1;
                for &c in table.coverers(u as usize) {
                    fresh[c as usize] -= 1;
                }
            }
        }
    }
    chosen
}

/// Node and time accounting shared by every search of one solve.
struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    stop: AtomicBool,
}

impl Meter {
    fn new(budget: Budget, start: Instant) -> Self {
        Meter {
            budget,
            start,
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = self.budget.node_limit {
            if n > limit {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        if n.is_multiple_of(256) {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() >= limit {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stopped()
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

struct Shared<'a> {
    table: &'a CoverTable,
    meter: &'a Meter,
    best: AtomicUsize,
    witness: Mutex<Vec<u32>>,
}

impl Shared<'_> {
    fn offer(&self, chosen: &[u32]) {
        let mut w = self.witness.lock().unwrap();
        if chosen.len() < self.best.load(Ordering::SeqCst) {
            *w = chosen.to_vec();
            self.best.store(chosen.len(), Ordering::SeqCst);
        }
    }
}

/// Per-worker search state.
struct Search<'a> {
    shared: &'a Shared<'a>,
    uncovered: Bits,
    uncovered_count: usize,
    excluded: Bits,
    chosen: Vec<u32>,
    /// Vertices newly covered by each entry of `chosen`.
    trail: Vec<Vec<u32>>,
    fresh: Vec<u32>,
}

struct Frame {
    cands: Vec<u32>,
    pos: usize,
    depth: usize,
    lower: usize,
    hint: usize,
}

impl<'a> Search<'a> {
    fn new(shared: &'a Shared<'a>) -> Self {
        let v = shared.table.vertex_count;
        Search {
            shared,
            uncovered: Bits::full(v),
            uncovered_count: v,
            excluded: Bits::empty(v),
            chosen: Vec::new(),
            trail: Vec::new(),
            fresh: vec![0; v],
        }
    }

    fn choose(&mut self, v: u32) {
        let mut newly = Vec::new();
        for &u in self.shared.table.covers(v as usize) {
            if self.uncovered.get(u as usize) {
                self.uncovered.clear(u as usize);
                newly.push(u);
            }
        }
        self.uncovered_count -= newly.len();
        self.chosen.push(v);
        self.trail.push(newly);
    }

    fn unchoose(&mut self) {
        self.chosen.pop();
        let newly = self.trail.pop().unwrap();
        self.uncovered_count += newly.len();
        for u in newly {
            self.uncovered.set(u as usize);
        }
    }

    fn fresh_of(&self, v: u32) -> usize {
        self.shared
            .table
            .covers(v as usize)
            .iter()
            .filter(|&&u| self.uncovered.get(u as usize))
            .count()
    }

    /// Lower bound on the number of further vertices, or `None` if some
    /// uncovered vertex has no allowed coverer left.
    fn lower_bound(&mut self) -> Option<usize> {
        let table = self.shared.table;
        let cnt = self.uncovered_count;
        if cnt == 0 {
            return Some(0);
        }
        let simple = cnt.div_ceil(table.max_cover);

        for u in self.uncovered.iter_ones() {
            for &c in table.coverers(u) {
                self.fresh[c as usize] = 0;
            }
        }
        for u in self.uncovered.iter_ones() {
            for &c in table.coverers(u) {
                self.fresh[c as usize] += 1;
            }
        }
        let mut total: u64 = 0;
        for u in self.uncovered.iter_ones() {
            let m = table
                .coverers(u)
                .iter()
                .filter(|&&c| !self.excluded.get(c as usize))
                .map(|&c| self.fresh[c as usize])
                .max()
                .unwrap_or(0);
            if m == 0 {
                return None;
            }
            if let Some(scale) = table.scale {
                total += scale / m as u64;
            }
        }
        let fractional = table.scale.map(|s| total.div_ceil(s) as usize).unwrap_or(0);
        Some(simple.max(fractional))
    }

    /// Evaluates the current node. Returns a frame to expand, or `None` when
    /// the node is a leaf or pruned.
    fn open(&mut self, hint: usize) -> Option<Frame> {
        if self.shared.meter.tick() {
            return None;
        }
        if self.uncovered_count == 0 {
            self.shared.offer(&self.chosen);
            return None;
        }
        let lower = self.lower_bound()?;
        if self.chosen.len() + lower >= self.shared.best.load(Ordering::SeqCst) {
            return None;
        }
        let u = self.uncovered.first_set_from(hint).unwrap();
        let mut cands: Vec<(usize, u32)> = self
            .shared
            .table
            .coverers(u)
            .iter()
            .filter(|&&c| !self.excluded.get(c as usize))
            .map(|&c| (self.fresh_of(c), c))
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Some(Frame {
            cands: cands.into_iter().map(|(_, c)| c).collect(),
            pos: 0,
            depth: self.chosen.len(),
            lower,
            hint: u >> 6,
        })
    }

    /// Depth-first search below the current state, restoring it on return.
    fn run(&mut self, root_hint: usize) {
        let mut stack: Vec<Frame> = Vec::new();
        if let Some(f) = self.open(root_hint) {
            stack.push(f);
        }
        while let Some(top) = stack.last_mut() {
            let best = self.shared.best.load(Ordering::SeqCst);
            let stop = self.shared.meter.stopped();
            if stop || top.pos >= top.cands.len() || top.depth + top.lower >= best {
                let done = stack.pop().unwrap();
                for &c in &done.cands[..done.pos.saturating_sub(1)] {
                    self.excluded.clear(c as usize);
                }
                if done.pos > 0 {
                    self.unchoose();
                }
                continue;
            }
            if top.pos > 0 {
                let prev = top.cands[top.pos - 1];
                self.excluded.set(prev as usize);
                self.unchoose();
            }
            let v = top.cands[top.pos];
            top.pos += 1;
            let hint = top.hint;
            self.choose(v);
            if let Some(child) = self.open(hint) {
                stack.push(child);
            }
        }
    }
}

fn root_lower_bound(table: &CoverTable) -> usize {
    let meter = Meter::new(Budget::unlimited(), Instant::now());
    let shared = Shared {
        table,
        meter: &meter,
        best: AtomicUsize::new(usize::MAX),
        witness: Mutex::new(Vec::new()),
    };
    let mut s = Search::new(&shared);
    s.lower_bound().unwrap_or(0)
}

struct Outcome {
    best: Vec<u32>,
    lower: usize,
    finished: bool,
}

/// Searches one connected piece, starting from the smaller of the greedy set
/// and `seed`.
fn solve_piece(
    table: &CoverTable,
    meter: &Meter,
    workers: usize,
    seed: Option<Vec<u32>>,
) -> Outcome {
    let mut incumbent = greedy(table);
    if let Some(seed) = seed {
        if seed.len() < incumbent.len() {
            incumbent = seed;
        }
    }
    let root_lower = root_lower_bound(table);
    if root_lower >= incumbent.len() {
        return Outcome {
            lower: incumbent.len(),
            best: incumbent,
            finished: true,
        };
    }
    let shared = Shared {
        table,
        meter,
        best: AtomicUsize::new(incumbent.len()),
        witness: Mutex::new(incumbent),
    };
    if workers <= 1 {
        Search::new(&shared).run(0);
    } else {
        run_parallel(&shared, workers);
    }
    let finished = !meter.stopped();
    let best = shared.witness.into_inner().unwrap();
    Outcome {
        lower: if finished { best.len() } else { root_lower },
        best,
        finished,
    }
}

/// Minimum dominating set within `budget`.
///
/// Each weakly connected component is solved on its own. Exhausting every
/// search yields an exact result; running out of budget yields a bounded one
/// whose interval runs from the sum of per-component lower bounds to the best
/// dominating set found.
pub fn exact_gamma(g: &Graph, budget: Budget) -> SolveResult {
    solve(g, budget, None)
}

/// [`exact_gamma`] starting from a known dominating set, which is used
/// wherever it beats the greedy one.
pub fn exact_gamma_from(g: &Graph, budget: Budget, seed: &VertexSet) -> Result<SolveResult> {
    seed.check_against(g)?;
    Ok(solve(g, budget, Some(seed)))
}

fn solve(g: &Graph, budget: Budget, seed: Option<&VertexSet>) -> SolveResult {
    let start = Instant::now();
    let meter = Meter::new(budget, start);
    let table = CoverTable::new(g);
    let seed = seed.filter(|s| is_dominating(g, s).unwrap_or(false));

    let mut witness = Vec::new();
    let (mut lower, mut finished) = (0, true);
    for (members, piece) in table.components() {
        let local_seed = seed.map(|s| {
            members
                .iter()
                .enumerate()
                .filter(|(_, &v)| s.contains(v))
                .map(|(i, _)| i as u32)
                .collect()
        });
        let out = solve_piece(&piece, &meter, budget.workers, local_seed);
        lower += out.lower;
        finished &= out.finished;
        witness.extend(out.best.into_iter().map(|i| members[i as usize]));
    }

    let best = witness.len();
    SolveResult {
        status: if finished {
            SolveStatus::Exact
        } else {
            SolveStatus::Bounded
        },
        gamma_low: if finished { best } else { lower.min(best) },
        gamma_high: best,
        witness: VertexSet::new(*g.spec(), witness),
        nodes_explored: meter.nodes.load(Ordering::SeqCst),
        elapsed: start.elapsed(),
    }
}

/// Splits the root's branching over threads; sibling `i` excludes siblings `0..i`.
fn run_parallel(shared: &Shared<'_>, workers: usize) {
    let mut root = Search::new(shared);
    let Some(frame) = root.open(0) else {
        return;
    };
    let next = AtomicUsize::new(0);
    let cands = &frame.cands;
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut s = Search::new(shared);
                loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= cands.len() || shared.meter.stopped() {
                        break;
                    }
                    if frame.lower >= shared.best.load(Ordering::SeqCst) {
                        break;
                    }
                    for &c in &cands[..i] {
                        s.excluded.set(c as usize);
                    }
                    s.choose(cands[i]);
                    s.run(frame.hint);
                    s.unchoose();
                    for &c in &cands[..i] {
                        s.excluded.clear(c as usize);
                    }
                }
            });
        }
    });
}
