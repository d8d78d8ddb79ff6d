//! `cdbg`: build, export, dominate and solve t-constrained de Bruijn graphs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use cdbg_core::graph::{build_with_budget, DEFAULT_MAX_VERTICES};
use cdbg_core::table::{run_table, Table, TableOptions, Verdict, CSV_HEADER};
use cdbg_core::{
    construct, count_words, exact_gamma, exact_or_upper, is_dominating, Budget, ConstructParams,
    Error, ExportFormat, Graph, GraphSpec, Orientation, SolveStatus, VertexSet, VertexSetJson,
};
use clap::{Args, Parser, Subcommand};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cdbg",
    version,
    about = "Domination in t-constrained de Bruijn graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and export it.
    Graph {
        #[command(flatten)]
        spec: SpecArgs,
        /// dot, csv or json.
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of t-constrained words (vertices), exact.
    Count {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
    /// Emit the dominating set from a theorem's proof and verify it.
    Construct {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Extra symbols for the t = n families (d = n + c).
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a vertex set (JSON file, `-` for stdin) is dominating.
    Verify { set: PathBuf },
    /// Domination number by branch and bound.
    Gamma {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a summary table as CSV.
    Table {
        /// table1 (directed) or table2 (undirected).
        which: String,
        #[arg(long, default_value_t = 200)]
        max_vertices: u64,
        #[arg(long, default_value_t = 6)]
        max_d: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Solver node budget per instance.
        #[arg(long, default_value_t = 2_000_000)]
        max_nodes: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form bounds that apply to a graph.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    #[arg(long)]
    undirected: bool,
}

impl SpecArgs {
    fn spec(&self) -> Result<GraphSpec, Failure> {
        let o = if self.undirected {
            Orientation::Undirected
        } else {
            Orientation::Directed
        };
        Ok(GraphSpec::new(self.d, self.t, self.n, o)?)
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock limit in seconds (per instance for `table`).
    #[arg(long)]
    budget_secs: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl BudgetArgs {
    fn budget(&self, default_secs: Option<f64>, node_limit: Option<u64>) -> Budget {
        Budget {
            time_limit: self
                .budget_secs
                .or(default_secs)
                .map(Duration::from_secs_f64),
            node_limit,
            workers: self.workers.max(1),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("bad JSON: {e}"),
        }
    }
}

fn max_vertices() -> Result<u64, Failure> {
    match std::env::var("CDBG_MAX_VERTICES") {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: EXIT_USAGE,
            message: format!("CDBG_MAX_VERTICES={v:?} is not a number"),
        }),
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
    }
}

fn load(spec: GraphSpec) -> Result<Graph, Failure> {
    Ok(build_with_budget(spec, max_vertices()?)?)
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), Failure> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Graph { spec, format, out } => {
            let format: ExportFormat = format.parse()?;
            let g = load(spec.spec()?)?;
            let mut w = sink(&out)?;
            g.write_export(format, &mut w)?;
            w.flush()?;
            eprintln!(
                "{}: {} vertices, {} edges",
                g.spec(),
                g.vertex_count(),
                g.edge_count()
            );
            Ok(0)
        }
        Command::Count { d, t, n } => {
            let count = count_words(d, t, n)?;
            println!("{count}");
            Ok(0)
        }
        Command::Construct {
            theorem,
            d,
            t,
            n,
            c,
            out,
        } => {
            let k = construct(&theorem, ConstructParams { d, t, n, c })?;
            let g = load(*k.set.spec())?;
            let verified = is_dominating(&g, &k.set)?;
            let mut value = serde_json::to_value(k.to_json()?)?;
            value["size"] = k.set.len().into();
            value["verified"] = verified.into();
            emit_json(&out, &value)?;
            eprintln!(
                "{theorem} on {}: {} vertices, claimed {}, {}",
                k.set.spec(),
                k.set.len(),
                k.claimed_size,
                if verified {
                    "dominating"
                } else {
                    "NOT dominating"
                }
            );
            Ok(if verified && k.size_matches() {
                0
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Verify { set } => {
            let text = if set.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&set)?
            };
            let parsed: VertexSetJson = serde_json::from_str(&text)?;
            let s = VertexSet::try_from(parsed)?;
            let g = load(*s.spec())?;
            let ok = is_dominating(&g, &s)?;
            let value = serde_json::json!({
                "spec": s.spec(),
                "size": s.len(),
                "dominating": ok,
            });
            emit_json(&None, &value)?;
            eprintln!(
                "{} vertices in {}: {}",
                s.len(),
                s.spec(),
                if ok { "dominating" } else { "NOT dominating" }
            );
            Ok(if ok { 0 } else { EXIT_VIOLATION })
        }
        Command::Gamma { spec, budget, out } => {
            let g = load(spec.spec()?)?;
            let r = exact_gamma(&g, budget.budget(Some(60.0), None));
            emit_json(&out, &serde_json::to_value(r.to_json()?)?)?;
            match r.status {
                SolveStatus::Exact => eprintln!("gamma({}) = {}", g.spec(), r.gamma_high),
                SolveStatus::Bounded => eprintln!(
                    "gamma({}) in [{}, {}] (budget exhausted after {} nodes)",
                    g.spec(),
                    r.gamma_low,
                    r.gamma_high,
                    r.nodes_explored
                ),
            }
            Ok(0)
        }
        Command::Table {
            which,
            max_vertices,
            max_d,
            max_n,
            max_nodes,
            budget,
            out,
        } => {
            let table: Table = which.parse()?;
            let opts = TableOptions {
                max_d,
                max_n,
                max_vertices,
                max_solver_vertices: max_vertices,
                budget: budget.budget(None, Some(max_nodes)),
            };
            let rows = run_table(table, &opts)?;
            let mut w = sink(&out)?;
            writeln!(w, "{CSV_HEADER}")?;
            for r in &rows {
                writeln!(w, "{}", r.csv_line())?;
            }
            w.flush()?;
            let bad: Vec<_> = rows
                .iter()
                .filter(|r| r.verdict == Verdict::Violation)
                .collect();
            for r in &bad {
                eprintln!(
                    "violation: {} ({},{},{}): {}",
                    r.family,
                    r.d,
                    r.t,
                    r.n,
                    r.problems.join("; ")
                );
            }
            let solved = rows.iter().filter(|r| r.solved().is_some()).count();
            eprintln!(
                "{} rows, {solved} solved exactly, {} violations",
                rows.len(),
                bad.len()
            );
            Ok(if bad.is_empty() { 0 } else { EXIT_VIOLATION })
        }
        Command::Bounds { spec } => {
            let report = exact_or_upper(&spec.spec()?);
            emit_json(&None, &serde_json::to_value(&report)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
