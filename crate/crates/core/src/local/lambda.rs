use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::LocalGraphError;
use crate::relation::EquivRelation;

/// All vectors of `parts` nonnegative integers summing to `total`, in
/// reverse lexicographic order (so `(total, 0, .., 0)` comes first).
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// An edge of `Λ_k(π)`: a single particle moving between the central vertex
/// (at `lower`, a composition of `k - 1`) and the sink of its block (at
/// `upper`), along the local-graph edge `label`. Oriented lower → upper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaEdge {
    pub lower: usize,
    pub upper: usize,
    pub label: usize,
}

/// The finite graph `Λ_k(π)` modelling `k` particles on the local graph of
/// `π`, with at most one particle off the sinks.
///
/// Vertices are compositions of `k` (every particle on a sink) followed by
/// compositions of `k - 1` (one particle at the centre), each block-indexed
/// in canonical block order and listed in reverse lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaGraph {
    k: usize,
    #[serde(rename = "relation")]
    pi: EquivRelation,
    vertices: Vec<Vec<usize>>,
    edges: Vec<LambdaEdge>,
    #[serde(skip)]
    index: HashMap<Vec<usize>, usize>,
}

impl LambdaGraph {
    pub fn build(pi: &EquivRelation, k: usize) -> Result<Self, LocalGraphError> {
        if k == 0 {
            return Err(LocalGraphError::ZeroParticles);
        }
        if pi.size() == 0 {
            return Err(LocalGraphError::EmptyGroundSet);
        }
        let b = pi.block_count();
        let mut vertices = compositions(k, b);
        let upper_count = vertices.len();
        vertices.extend(compositions(k - 1, b));
        let index: HashMap<Vec<usize>, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for lower in upper_count..vertices.len() {
            for label in 0..pi.size() {
                let mut p = vertices[lower].clone();
                p[pi.block_of(label)] += 1;
                edges.push(LambdaEdge {
                    lower,
                    upper: index[&p],
                    label,
                });
            }
        }
        Ok(Self {
            k,
            pi: pi.clone(),
            vertices,
            edges,
            index,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn relation(&self) -> &EquivRelation {
        &self.pi
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[LambdaEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, composition: &[usize]) -> Option<usize> {
        self.index.get(composition).copied()
    }

    /// The edge joining `lower` to the sink of `label`'s block.
    pub fn edge_index(&self, lower: usize, label: usize) -> Option<usize> {
        let first_lower = self.vertices.len() - self.lower_count();
        lower
            .checked_sub(first_lower)
            .filter(|_| label < self.pi.size())
            .map(|l| l * self.pi.size() + label)
    }

    fn lower_count(&self) -> usize {
        self.edges.len() / self.pi.size()
    }

    /// `#edges - #vertices + 1`; the graph is always connected.
    pub fn pi1_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Number of connected components, by traversal.
    pub fn component_count(&self) -> usize {
        let mut uf = crate::graph::UnionFind::new(self.vertices.len());
        let mut merges = 0;
        for e in &self.edges {
            if uf.union(e.lower, e.upper) {
                merges += 1;
            }
        }
        self.vertices.len() - merges
    }

    fn vertex_name(&self, v: usize) -> String {
        let parts: Vec<String> = self.vertices[v].iter().map(usize::to_string).collect();
        let centre = if v < self.vertices.len() - self.lower_count() { "" } else { "+c" };
        format!("({}){}", parts.join(","), centre)
    }

    /// Graphviz rendering; vertex names are the compositions, with `+c`
    /// marking a particle at the centre.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph lambda {\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", self.vertex_name(v));
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -- v{} [label=\"{}\"];", e.lower, e.upper, e.label + 1);
        }
        s.push_str("}\n");
        s
    }
}
