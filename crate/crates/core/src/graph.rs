//! Directed and undirected t-constrained de Bruijn graphs.
//!
//! Vertices are the words of `V(d, t, n)`, indexed by [`WordSpace::rank`].
//! An arc joins `(x1, ..., xn)` to `(x2, ..., xn, y)` whenever both ends are
//! t-constrained. The undirected graph forgets directions and drops loops and
//! duplicate pairs.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Word, WordSpace};

/// Vertex budget used by [`build`].
pub const DEFAULT_MAX_VERTICES: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub d: usize,
    pub t: usize,
    pub n: usize,
    pub orientation: Orientation,
}

impl GraphSpec {
    pub fn new(d: usize, t: usize, n: usize, orientation: Orientation) -> Result<Self> {
        let spec = GraphSpec {
            d,
            t,
            n,
            orientation,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn directed(d: usize, t: usize, n: usize) -> Result<Self> {
        Self::new(d, t, n, Orientation::Directed)
    }

    pub fn undirected(d: usize, t: usize, n: usize) -> Result<Self> {
        Self::new(d, t, n, Orientation::Undirected)
    }

    pub fn validate(&self) -> Result<()> {
        let (d, t, n) = (self.d, self.t, self.n);
        let reason = if d < 2 || n < 2 {
            "graphs need d >= 2 and n >= 2"
        } else if t < 1 || t > d.min(n) {
            "need 1 <= t <= min(d, n)"
        } else if d > u8::MAX as usize {
            "alphabet larger than 255 symbols"
        } else {
            return Ok(());
        };
        Err(Error::InvalidParams {
            d,
            t,
            n,
            reason: reason.into(),
        })
    }

    pub fn is_directed(&self) -> bool {
        self.orientation == Orientation::Directed
    }

    pub fn with_orientation(self, orientation: Orientation) -> Self {
        GraphSpec {
            orientation,
            ..self
        }
    }

    pub fn space(&self) -> Result<WordSpace> {
        WordSpace::new(self.d, self.t, self.n)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plus = if self.is_directed() { "+" } else { "" };
        write!(f, "cDB{plus}({},{},{})", self.d, self.t, self.n)
    }
}

fn check_word(w: &Word, spec: &GraphSpec) -> Result<WordSpace> {
    spec.validate()?;
    let space = spec.space()?;
    space.rank(w)?;
    Ok(space)
}

/// Last symbol choices `y` such that `(w2, ..., wn, y)` stays t-constrained.
fn successor_symbols<'a>(symbols: &'a [u8], d: usize, t: usize) -> impl Iterator<Item = u8> + 'a {
    let n = symbols.len();
    let window = &symbols[(n + 1).saturating_sub(t).max(1).min(n)..];
    (1..=d as u8).filter(move |y| !window.contains(y))
}

fn shifted_left(symbols: &[u8], y: u8) -> Vec<u8> {
    let mut v = Vec::with_capacity(symbols.len());
    v.extend_from_slice(&symbols[1..]);
    v.push(y);
    v
}

fn shifted_right(symbols: &[u8], y: u8) -> Vec<u8> {
    let mut v = Vec::with_capacity(symbols.len());
    v.push(y);
    v.extend_from_slice(&symbols[..symbols.len() - 1]);
    v
}

/// Out-neighbours of `w`, in lexicographic order. Always `d - t + 1` of them.
pub fn successors(w: &Word, spec: &GraphSpec) -> Result<Vec<Word>> {
    check_word(w, spec)?;
    Ok(successor_symbols(w.symbols(), spec.d, spec.t)
        .map(|y| Word::new(shifted_left(w.symbols(), y)))
        .collect())
}

/// In-neighbours of `w`, in lexicographic order.
pub fn predecessors(w: &Word, spec: &GraphSpec) -> Result<Vec<Word>> {
    check_word(w, spec)?;
    let s = w.symbols();
    let window = &s[..spec.t.saturating_sub(1).min(s.len() - 1)];
    Ok((1..=spec.d as u8)
        .filter(|y| !window.contains(y))
        .map(|y| Word::new(shifted_right(s, y)))
        .collect())
}

/// Undirected neighbourhood: successors and predecessors without `w` itself.
pub fn neighbors(w: &Word, spec: &GraphSpec) -> Result<Vec<Word>> {
    if spec.is_directed() {
        return Err(Error::NotUndirected);
    }
    let mut all = successors(w, spec)?;
    all.extend(predecessors(w, spec)?);
    all.retain(|v| v != w);
    all.sort();
    all.dedup();
    Ok(all)
}

/// Materialized graph over dense vertex indices, stored as compressed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    spec: GraphSpec,
    space: WordSpace,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

/// Builds the graph with the default vertex budget.
pub fn build(spec: GraphSpec) -> Result<Graph> {
    build_with_budget(spec, DEFAULT_MAX_VERTICES)
}

pub fn build_with_budget(spec: GraphSpec, max_vertices: u64) -> Result<Graph> {
    spec.validate()?;
    let count = crate::words::count_words(spec.d, spec.t, spec.n)?;
    if count > max_vertices.min(u32::MAX as u64).into() {
        return Err(Error::BudgetExceeded {
            count: count.to_string(),
            limit: max_vertices,
        });
    }
    let space = spec.space()?;
    let v = space.count() as usize;
    let n = spec.n;
    let mut buf = vec![0u8; n];
    let mut next = vec![0u8; n];

    let mut out_lists: Vec<Vec<u32>> = Vec::with_capacity(v);
    for i in 0..v {
        space.unrank_into(i as u64, &mut buf);
        next[..n - 1].copy_from_slice(&buf[1..]);
        let mut outs: Vec<u32> = successor_symbols(&buf, spec.d, spec.t)
            .map(|y| {
                next[n - 1] = y;
                space.rank_unchecked(&next) as u32
            })
            .collect();
        outs.sort_unstable();
        out_lists.push(outs);
    }

    let lists = match spec.orientation {
        Orientation::Directed => out_lists,
        Orientation::Undirected => {
            let mut adj: Vec<Vec<u32>> = vec![Vec::new(); v];
            for (u, outs) in out_lists.iter().enumerate() {
                for &w in outs {
                    if w as usize != u {
                        adj[u].push(w);
                        adj[w as usize].push(u as u32);
                    }
                }
            }
            for list in &mut adj {
                list.sort_unstable();
                list.dedup();
            }
            adj
        }
    };
    Ok(Graph::from_lists(spec, space, lists))
}

impl Graph {
    fn from_lists(spec: GraphSpec, space: WordSpace, lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for l in lists {
            targets.extend_from_slice(&l);
            offsets.push(targets.len());
        }
        Graph {
            spec,
            space,
            offsets,
            targets,
        }
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn space(&self) -> &WordSpace {
        &self.space
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Out-neighbours (directed) or neighbours (undirected) of vertex `v`.
    pub fn adjacent(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Maximum out-degree (directed) or degree (undirected), loops included.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.adjacent(v).len())
            .max()
            .unwrap_or(0)
    }

    /// Number of arcs (directed) or edges (undirected).
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Arcs `(u, v)` in index order; for undirected graphs each edge once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let directed = self.spec.is_directed();
        (0..self.vertex_count()).flat_map(move |u| {
            self.adjacent(u)
                .iter()
                .filter(move |&&v| directed || (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn word(&self, v: usize) -> Word {
        let mut out = vec![0u8; self.spec.n];
        self.space.unrank_into(v as u64, &mut out);
        Word::new(out)
    }

    pub fn index_of(&self, w: &Word) -> Result<usize> {
        Ok(self.space.rank(w)? as usize)
    }

    /// Splits a `t = n = d` graph into its `(n-1)!` rotation cycles.
    ///
    /// Each cycle starts at its smallest vertex and follows the (unique)
    /// out-arc, so consecutive entries are joined by an arc in the directed
    /// graph and by an edge in the undirected one.
    pub fn cycle_decomposition(&self) -> Result<Vec<Vec<u32>>> {
        let GraphSpec { d, t, n, .. } = self.spec;
        if !(d == t && t == n) {
            return Err(Error::NotPermutationGraph { d, t, n });
        }
        let v = self.vertex_count();
        let mut seen = vec![false; v];
        let mut buf = vec![0u8; n];
        let mut cycles = Vec::new();
        for start in 0..v {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::with_capacity(n);
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur as u32);
                self.space.unrank_into(cur as u64, &mut buf);
                buf.rotate_left(1);
                cur = self.space.rank_unchecked(&buf) as usize;
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    pub fn export(&self, format: ExportFormat) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_export(format, &mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn write_export<W: Write>(&self, format: ExportFormat, out: &mut W) -> std::io::Result<()> {
        match format {
            ExportFormat::Dot => self.write_dot(out),
            ExportFormat::CsvEdges => self.write_csv(out),
            ExportFormat::Json => {
                serde_json::to_writer(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    fn write_dot<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let (kind, arrow) = if self.spec.is_directed() {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        writeln!(out, "{kind} \"{}\" {{", self.spec)?;
        let labels: Vec<String> = (0..self.vertex_count())
            .map(|v| self.word(v).to_string())
            .collect();
        for l in &labels {
            writeln!(out, "  \"{l}\";")?;
        }
        for (u, v) in self.edges() {
            writeln!(
                out,
                "  \"{}\" {arrow} \"{}\";",
                labels[u as usize], labels[v as usize]
            )?;
        }
        writeln!(out, "}}")
    }

    fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "src,dst")?;
        let labels: Vec<String> = (0..self.vertex_count())
            .map(|v| self.word(v).to_string())
            .collect();
        for (u, v) in self.edges() {
            writeln!(out, "\"{}\",\"{}\"", labels[u as usize], labels[v as usize])?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            spec: self.spec,
            vertices: (0..self.vertex_count()).map(|v| self.word(v)).collect(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Rebuilds a graph from its JSON export, checking the vertex labelling
    /// against the dense indexing of its spec.
    pub fn from_json(text: &str) -> Result<Graph> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let spec = parsed.spec;
        spec.validate()?;
        let space = spec.space()?;
        if parsed.vertices.len() as u64 != space.count() {
            return Err(Error::Parse(format!(
                "{} vertices listed, {spec} has {}",
                parsed.vertices.len(),
                space.count()
            )));
        }
        for (i, w) in parsed.vertices.iter().enumerate() {
            if space.rank(w)? != i as u64 {
                return Err(Error::Parse(format!("vertex {w} listed at position {i}")));
            }
        }
        let v = parsed.vertices.len();
        let mut lists = vec![Vec::new(); v];
        for [a, b] in parsed.edges {
            if a as usize >= v || b as usize >= v {
                return Err(Error::Parse(format!("edge [{a},{b}] out of range")));
            }
            lists[a as usize].push(b);
            if !spec.is_directed() {
                lists[b as usize].push(a);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Graph::from_lists(spec, space, lists))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub spec: GraphSpec,
    pub vertices: Vec<Word>,
    pub edges: Vec<[u32; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    CsvEdges,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "csv" | "csv-edges" => Ok(ExportFormat::CsvEdges),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}
