//! Domination in t-constrained de Bruijn graphs.
//!
//! Words of length n over `[d]` in which any t consecutive symbols are
//! distinct form the vertices; shifting a word by one symbol gives the arcs.
//! The crate enumerates these graphs, builds the known dominating sets,
//! evaluates the closed-form bounds and computes exact domination numbers
//! with a branch-and-bound solver.

mod bigint_text;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod set;
pub mod solver;
pub mod table;
pub mod words;

pub use bounds::{exact_or_upper, lower_bound, BoundReport, Source};
pub use constructions::{construct, ConstructParams, Construction, ConstructionJson, SizeClaim};
pub use error::{Error, Result};
pub use graph::{build, build_with_budget, ExportFormat, Graph, GraphSpec, Orientation};
pub use set::{VertexSet, VertexSetJson};
pub use solver::{
    exact_gamma, exact_gamma_from, greedy_dominating, is_dominating, Budget, SolveResult,
    SolveStatus,
};
pub use words::{count_words, Word, WordSpace};
