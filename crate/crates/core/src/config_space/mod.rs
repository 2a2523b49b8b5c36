//! The discretized cubical model of the unordered configuration space of
//! `k` points on a graph (no sinks), and its rational Betti numbers.
//!
//! A cell is a set of `k` cells of the graph (vertices and closed edges)
//! with pairwise disjoint closures; its dimension is the number of edges.
//! After enough subdivision this complex is a deformation retract of the
//! configuration space.

mod rank;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use rank::SparseMatrix;

pub const DEFAULT_CELL_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigSpaceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the cubical model does not support sinks")]
    Sinks,
    #[error("graph must have no self-loops or multiple edges")]
    NotSimple,
    #[error("cell budget of {budget} exceeded; unverified at desk scale")]
    BudgetExceeded { budget: usize },
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundaryNotClosed(usize),
}

/// Normalizes `g` and, for `k >= 2`, lengthens every chain of bivalent
/// vertices to at least `k + 1` edges. Every path between essential
/// vertices and every embedded cycle then has at least `k + 1` edges.
pub fn sufficient_subdivision(g: &Graph, k: usize) -> Graph {
    let g = g.normalize();
    if k <= 1 {
        return g;
    }
    let mut counts = vec![0; g.edge_count()];
    for chain in g.chains() {
        if chain.len() < k + 1 {
            counts[chain[0]] = k + 1 - chain.len();
        }
    }
    g.subdivide(&counts)
}

/// The cubical complex with its boundary matrices.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    k: usize,
    graph: Graph,
    /// `cells[d]`: flattened sorted `k`-tuples of graph-cell indices
    /// (vertices first, then `vertex_count + edge`), in lexicographic order.
    cells: Vec<Vec<u32>>,
    /// `boundaries[d]` is `∂_d : C_d → C_{d-1}`; entry 0 is the zero map.
    boundaries: Vec<SparseMatrix>,
}

impl CubicalComplex {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dimension(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cells_in_degree(&self, d: usize) -> usize {
        match self.cells.get(d) {
            Some(c) if self.k > 0 => c.len() / self.k,
            Some(_) => 1,
            None => 0,
        }
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        (0..self.cells.len()).map(|d| self.cells_in_degree(d)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cell_counts().iter().sum()
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(d)
    }

    /// Whether `∂_{d-1} ∘ ∂_d = 0` for every `d`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|d| {
            self.boundaries[d - 1]
                .mul(&self.boundaries[d])
                .is_some_and(|m| m.nonzeros() == 0)
        })
    }

    /// Boundary matrices as `(row, col, value)` triplet text, one block per
    /// degree headed by `# d rows cols`.
    pub fn boundary_triplets(&self) -> String {
        let mut s = String::new();
        for (d, m) in self.boundaries.iter().enumerate().skip(1) {
            s.push_str(&format!("# {d} {} {}\n", m.rows, m.cols()));
            s.push_str(&m.to_triplets());
        }
        s
    }
}

/// Enumerates the cells of the model on `g` (which must be simple and
/// sink-free) and assembles the boundary maps. Refuses to produce more than
/// `budget` cells.
pub fn build_complex(g: &Graph, k: usize, budget: usize) -> Result<CubicalComplex, ConfigSpaceError> {
    if !g.sinks().is_empty() {
        return Err(ConfigSpaceError::Sinks);
    }
    if g.has_self_loops() || g.has_multi_edges() {
        return Err(ConfigSpaceError::NotSimple);
    }
    let nv = g.vertex_count();
    let ends: Vec<(usize, usize)> = g.edges().to_vec();
    let cells = enumerate_cells(nv, &ends, k, budget)?;
    let mut boundaries = vec![SparseMatrix::new(0, vec![Vec::new(); count(&cells[0], k)])];
    for d in 1..cells.len() {
        let rows = count(&cells[d - 1], k);
        let mut columns = Vec::with_capacity(count(&cells[d], k));
        for cell in cells[d].chunks(k) {
            let mut col: Vec<(usize, i64)> = Vec::with_capacity(2 * d);
            let mut sign = 1i64;
            for (pos, &c) in cell.iter().enumerate() {
                let c = c as usize;
                if c < nv {
                    continue;
                }
                let (tail, head) = ends[c - nv];
                for (end, s) in [(head, sign), (tail, -sign)] {
                    let mut face = cell.to_vec();
                    face[pos] = end as u32;
                    face.sort_unstable();
                    let row = find(&cells[d - 1], k, &face).expect("faces are cells");
                    col.push((row, s));
                }
                sign = -sign;
            }
            col.sort_unstable();
            columns.push(col);
        }
        boundaries.push(SparseMatrix::new(rows, columns));
    }
    let complex = CubicalComplex {
        k,
        graph: g.clone(),
        cells,
        boundaries,
    };
    if let Some(d) = (2..complex.boundaries.len()).find(|&d| {
        complex.boundaries[d - 1]
            .mul(&complex.boundaries[d])
            .is_none_or(|m| m.nonzeros() != 0)
    }) {
        return Err(ConfigSpaceError::BoundaryNotClosed(d));
    }
    Ok(complex)
}

fn count(cells: &[u32], k: usize) -> usize {
    cells.len().checked_div(k).unwrap_or(1)
}

fn find(cells: &[u32], k: usize, key: &[u32]) -> Option<usize> {
    let n = cells.len() / k;
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match cells[mid * k..(mid + 1) * k].cmp(key) {
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid,
            std::cmp::Ordering::Equal => return Some(mid),
        }
    }
    None
}

/// Depth-first enumeration of `k`-sets of graph cells with disjoint
/// closures, in lexicographic order, split by dimension.
fn enumerate_cells(
    nv: usize,
    ends: &[(usize, usize)],
    k: usize,
    budget: usize,
) -> Result<Vec<Vec<u32>>, ConfigSpaceError> {
    struct Search<'a> {
        nv: usize,
        ends: &'a [(usize, usize)],
        k: usize,
        budget: usize,
        total: usize,
        occupied: Vec<bool>,
        chosen: Vec<u32>,
        edges_chosen: usize,
        out: Vec<Vec<u32>>,
    }
    impl Search<'_> {
        fn go(&mut self, next: usize) -> Result<(), ConfigSpaceError> {
            if self.chosen.len() == self.k {
                self.total += 1;
                if self.total > self.budget {
                    return Err(ConfigSpaceError::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                if self.out.len() <= self.edges_chosen {
                    self.out.resize(self.edges_chosen + 1, Vec::new());
                }
                self.out[self.edges_chosen].extend_from_slice(&self.chosen);
                return Ok(());
            }
            let n = self.nv + self.ends.len();
            let needed = self.k - self.chosen.len();
            for c in next..n {
                if n - c < needed {
                    break;
                }
                let (pair, len) = if c < self.nv {
                    ([c, c], 1)
                } else {
                    let (a, b) = self.ends[c - self.nv];
                    ([a, b], 2)
                };
                let touched = &pair[..len];
                if touched.iter().any(|&v| self.occupied[v]) {
                    continue;
                }
                for &v in touched {
                    self.occupied[v] = true;
                }
                self.chosen.push(c as u32);
                self.edges_chosen += usize::from(c >= self.nv);
                self.go(c + 1)?;
                self.edges_chosen -= usize::from(c >= self.nv);
                self.chosen.pop();
                for &v in touched {
                    self.occupied[v] = false;
                }
            }
            Ok(())
        }
    }
    let mut s = Search {
        nv,
        ends,
        k,
        budget,
        total: 0,
        occupied: vec![false; nv],
        chosen: Vec::with_capacity(k),
        edges_chosen: 0,
        out: vec![Vec::new()],
    };
    s.go(0)?;
    Ok(s.out)
}

/// Rational Betti numbers `β_0, β_1, …` of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, d: usize) -> usize {
        self.0.get(d).copied().unwrap_or(0)
    }
}

/// `β_d = dim C_d − rank ∂_d − rank ∂_{d+1}`, with the ranks of different
/// degrees computed on separate threads.
pub fn betti(c: &CubicalComplex) -> Result<BettiVector, ConfigSpaceError> {
    let ranks: Vec<Result<usize, ConfigSpaceError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = c
            .boundaries
            .iter()
            .map(|m| scope.spawn(move || m.rank()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("rank worker panicked"))
            .collect()
    });
    let ranks = ranks.into_iter().collect::<Result<Vec<_>, _>>()?;
    let counts = c.cell_counts();
    let betti = (0..counts.len())
        .map(|d| counts[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect();
    Ok(BettiVector(betti))
}

/// Outcome of checking that homology is nonzero in degree
/// `min(⌊k/2⌋, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub k: usize,
    pub m: usize,
    pub degree: usize,
    pub betti: BettiVector,
    pub nonvanishing: bool,
    pub cells: Vec<usize>,
    pub subdivided_vertices: usize,
    pub subdivided_edges: usize,
}

/// Builds the model on a sufficient subdivision of `g` and reports whether
/// `β_d ≠ 0` for `d = min(⌊k/2⌋, m)`.
pub fn nonvanishing_check(g: &Graph, k: usize, budget: usize) -> Result<HomologyReport, ConfigSpaceError> {
    let m = g.classify()?.m;
    let sub = sufficient_subdivision(g, k);
    let complex = build_complex(&sub, k, budget)?;
    let betti = betti(&complex)?;
    let degree = (k / 2).min(m);
    Ok(HomologyReport {
        k,
        m,
        degree,
        nonvanishing: betti.get(degree) != 0,
        betti,
        cells: complex.cell_counts(),
        subdivided_vertices: sub.vertex_count(),
        subdivided_edges: sub.edge_count(),
    })
}
