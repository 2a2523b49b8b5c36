//! The bundled example graphs and a summary sweep over them.

use serde::Serialize;

use crate::bounds::{proof_chain_check, stable_report, BoundReport};
use crate::graph::{Graph, GraphError, VertexClassification};

pub struct CorpusEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub json: &'static str,
}

macro_rules! entry {
    ($name:literal, $file:literal) => {
        CorpusEntry {
            name: $name,
            file: $file,
            json: include_str!(concat!("../corpus/", $file)),
        }
    };
}

pub const ENTRIES: [CorpusEntry; 7] = [
    entry!("star3", "star3.json"),
    entry!("star4", "star4.json"),
    entry!("star5", "star5.json"),
    entry!("h_graph", "h_graph.json"),
    entry!("theta", "theta.json"),
    entry!("spider", "spider.json"),
    entry!("random10", "random10.json"),
];

impl CorpusEntry {
    pub fn graph(&self) -> Graph {
        Graph::from_json(self.json).expect("bundled graphs are well formed")
    }
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// One line of the corpus summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusRow {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub classification: VertexClassification,
    pub stable: Vec<StableEntry>,
}

/// The stable report for one order `r`, or why the bounds do not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableEntry {
    pub r: usize,
    pub report: Option<BoundReport>,
    pub inapplicable: Option<String>,
    pub proof_chain: bool,
}

fn summarize(entry: &CorpusEntry, orders: &[usize]) -> Result<CorpusRow, GraphError> {
    let g = entry.graph();
    let classification = g.classify()?;
    Ok(CorpusRow {
        name: entry.name.to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        classification,
        stable: orders
            .iter()
            .map(|&r| {
                let (report, inapplicable) = match stable_report(&g, r) {
                    Ok(rep) => (Some(rep), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                StableEntry {
                    r,
                    report,
                    inapplicable,
                    proof_chain: proof_chain_check(&g, r),
                }
            })
            .collect(),
    })
}

/// Summaries of every bundled graph for the given orders `r`, computed on
/// one thread per graph and returned in corpus order.
pub fn sweep(orders: &[usize]) -> Result<Vec<CorpusRow>, GraphError> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = ENTRIES
            .iter()
            .map(|e| scope.spawn(move || summarize(e, orders)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    })
}
