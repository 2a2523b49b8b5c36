use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use gbtc_core::bounds::{lower_bound, stable_report, BoundError, BoundQuery, CONNECTED_REQUIRED};
use gbtc_core::checks::verify_all;
use gbtc_core::config_space::{
    betti, build_complex, nonvanishing_check, sufficient_subdivision, ConfigSpaceError,
    DEFAULT_CELL_BUDGET,
};
use gbtc_core::corpus::{sweep, CorpusRow};
use gbtc_core::local::{local_quotient, LambdaGraph, LocalGraphError};
use gbtc_core::{EquivRelation, Graph, GraphError};

const BUDGET_VAR: &str = "GBTC_CELL_BUDGET";

#[derive(Parser)]
#[command(
    name = "gbtc",
    version,
    about = "Bounds on higher topological complexity of graph configuration spaces"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count essential vertices by kind.
    #[command(long_about = "Counts, on the normalized graph, the essential vertices of valence \
at least 4 (n0), the separating trivalent vertices (n1) and the non-separating trivalent \
vertices (n2), with m = n0 + n1 + n2. The graph must be connected.")]
    Classify { file: PathBuf },

    /// Lower and upper bounds on TC_r(B_k(Γ)).
    #[command(long_about = "For r > 1 and a connected graph with m ≥ 2 essential vertices, \
TC_r(B_k(Γ)) ≥ (r − 2)·min(⌊k/2⌋, m) + 2(c0 + c1) + c2 for every choice of c_i ≤ n_i with \
k ≥ 2(c0 + c2) + 3·c1; the best choice is reported. The upper bound TC_r ≤ r·m holds for \
k ≥ 2m and is flagged outside that range.")]
    Bound {
        file: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Also check the homology input on the cubical model.
        #[arg(long)]
        verify_homology: bool,
    },

    /// Stable value of TC_r(B_k(Γ)) and the range where it is attained.
    #[command(long_about = "If a connected graph with m ≥ 2 essential vertices has no \
non-separating trivalent vertex, then TC_r(B_k(Γ)) = r·m for all k ≥ k0 = 2m + n1. \
Otherwise no stable value is reported.")]
    Stable {
        file: PathBuf,
        #[arg(long)]
        r: usize,
    },

    /// The graph Λ_k(π) at an essential vertex.
    #[command(long_about = "Builds the relation π on the edges at an essential vertex \
(two edges related iff they lead into the same component of the graph minus the vertex) \
and the finite graph Λ_k(π) whose fundamental group is that of k particles on the local \
graph with sinks. Vertices are block-indexed compositions of k and k − 1; each edge moves \
one particle between the centre and a sink.")]
    Lambda {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Emit Graphviz text instead of JSON.
        #[arg(long)]
        dot: bool,
    },

    /// Machine checks of the free-group facts behind the lower bound.
    #[command(long_about = "Checks that ⟨[γ1,γ2]⟩ and ⟨[γ2,γ3]⟩ have disjoint conjugates \
in the free group of rank n − 1 and that ⟨x1·x3⟩ and ⟨x2·x3⟩ do in rank 3, recomputes these \
subgroups from loop models, verifies that sink stabilizations are isomorphisms on π_1 for \
the indiscrete relation and split injections for the discrete one, and cross-checks the \
kernel criterion (ψ injective on H0 and trivial on H1 implies disjoint conjugates) against \
the fibre-product decision on random instances.")]
    VerifyLemmas {
        /// Largest number of edges for the commutator checks.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },

    /// Rational Betti numbers of B_k(Γ) from the cubical model.
    #[command(long_about = "Computes the rational homology of the unordered configuration \
space of k points on the graph from its discretized cubical model, and reports whether it \
is nonzero in degree min(⌊k/2⌋, m). The cell budget can be set with GBTC_CELL_BUDGET.")]
    Homology {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the boundary matrices as (row, col, value) triplets.
        #[arg(long)]
        dump_boundary: Option<PathBuf>,
    },

    /// Summary over the bundled graphs.
    #[command(long_about = "For each bundled graph, reports its classification, the stable \
value r·m and threshold k0 = 2m + n1 where they apply, and whether the lower bound with \
every c_i maximal closes to r·m.")]
    Corpus {
        /// Orders r to report.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3, 4, 5, 6])]
        r: Vec<usize>,
        /// Print a text table instead of JSON.
        #[arg(long)]
        table: bool,
    },
}

/// Failures, by exit code.
enum Failure {
    /// Unreadable or malformed input, or a failed check: exit 1.
    Input(String),
    /// Hypotheses of the requested statement do not hold: exit 2.
    Inapplicable(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Inapplicable(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Inapplicable(m) => m,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected => Failure::Inapplicable(CONNECTED_REQUIRED.to_string()),
            GraphError::NotEssential(..) => Failure::Inapplicable(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        Failure::Inapplicable(e.to_string())
    }
}

impl From<LocalGraphError> for Failure {
    fn from(e: LocalGraphError) -> Self {
        match e {
            LocalGraphError::Graph(g) => g.into(),
            other => Failure::Inapplicable(other.to_string()),
        }
    }
}

impl From<ConfigSpaceError> for Failure {
    fn from(e: ConfigSpaceError) -> Self {
        match e {
            ConfigSpaceError::Graph(g) => g.into(),
            ConfigSpaceError::Overflow | ConfigSpaceError::BoundaryNotClosed(_) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Inapplicable(other.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Graph::from_json(&text)?)
}

fn cell_budget() -> Result<usize, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{BUDGET_VAR} must be a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CELL_BUDGET),
    }
}

fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    }
}

#[derive(Serialize)]
struct LambdaOutput<'a> {
    vertex: &'a str,
    relation: &'a EquivRelation,
    k: usize,
    pi1_rank: usize,
    vertices: &'a [Vec<usize>],
    edges: &'a [gbtc_core::local::LambdaEdge],
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    checks: Vec<gbtc_core::checks::CheckResult>,
}

fn corpus_table(rows: &[CorpusRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<10} {:>3} {:>3} {:>3} {:>3} {:>3} {:>2}  per r: stable/k0/lower/chain", "graph", "V", "E", "n0", "n1", "n2", "m");
    for row in rows {
        let c = row.classification;
        let _ = write!(
            s,
            "{:<10} {:>3} {:>3} {:>3} {:>3} {:>3} {:>2} ",
            row.name, row.vertices, row.edges, c.n0, c.n1, c.n2, c.m
        );
        for e in &row.stable {
            let cell = match &e.report {
                None => "n/a".to_string(),
                Some(rep) if rep.stable_value.is_none() => "unstable".to_string(),
                Some(rep) => {
                    let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
                    format!(
                        "{}/{}/{}/{}",
                        show(rep.stable_value),
                        show(rep.k0),
                        show(rep.lower),
                        if e.proof_chain { "ok" } else { "-" }
                    )
                }
            };
            let _ = write!(s, " r={}:{:<12}", e.r, cell);
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Result<String, Failure> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Classify { file } => {
            let g = read_graph(&file)?;
            Ok(to_json(&g.classify()?, pretty))
        }
        Command::Bound {
            file,
            r,
            k,
            verify_homology,
        } => {
            let graph = read_graph(&file)?;
            let mut report = lower_bound(&BoundQuery {
                graph: graph.clone(),
                r,
                k,
            })?;
            if verify_homology {
                match nonvanishing_check(&graph, k, cell_budget()?) {
                    Ok(h) => report = report.with_homology(&h),
                    Err(ConfigSpaceError::BudgetExceeded { budget }) => report
                        .caveats
                        .push(format!("homology unverified at desk scale (cell budget {budget})")),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(to_json(&report, pretty))
        }
        Command::Stable { file, r } => {
            let g = read_graph(&file)?;
            Ok(to_json(&stable_report(&g, r)?, pretty))
        }
        Command::Lambda { file, vertex, k, dot } => {
            let g = read_graph(&file)?;
            let pi = local_quotient(&g, &vertex)?;
            let k = usize::try_from(k).map_err(|_| Failure::Input("k too large".to_string()))?;
            let l = LambdaGraph::build(&pi, k)?;
            if dot {
                return Ok(l.to_dot().trim_end().to_string());
            }
            Ok(to_json(
                &LambdaOutput {
                    vertex: &vertex,
                    relation: l.relation(),
                    k,
                    pi1_rank: l.pi1_rank(),
                    vertices: l.vertices(),
                    edges: l.edges(),
                },
                pretty,
            ))
        }
        Command::VerifyLemmas { n } => {
            let checks = verify_all(n)?;
            let passed = checks.iter().all(|c| c.passed);
            let out = to_json(&VerifyOutput { passed, checks }, pretty);
            if passed {
                Ok(out)
            } else {
                print_out(&out);
                Err(Failure::Input("some checks failed".to_string()))
            }
        }
        Command::Homology {
            file,
            k,
            dump_boundary,
        } => {
            let g = read_graph(&file)?;
            let budget = cell_budget()?;
            let report = nonvanishing_check(&g, k, budget)?;
            if let Some(path) = dump_boundary {
                let complex = build_complex(&sufficient_subdivision(&g, k), k, budget)?;
                debug_assert_eq!(betti(&complex)?, report.betti);
                std::fs::write(&path, complex.boundary_triplets())
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(to_json(&report, pretty))
        }
        Command::Corpus { r, table } => {
            let rows = sweep(&r)?;
            if table {
                Ok(corpus_table(&rows).trim_end().to_string())
            } else {
                Ok(to_json(&rows, pretty))
            }
        }
    }
}

fn print_out(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
