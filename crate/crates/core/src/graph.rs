//! Finite multigraphs with optional sinks, subdivision, and the vertex
//! classification (valence, separation) that every bound is built from.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relation::EquivRelation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex `{0}` is not essential (valence {1} < 3)")]
    NotEssential(String, usize),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// On-disk representation: `{"vertices": [..], "edges": [[a, b], ..], "sinks": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub sinks: Vec<String>,
}

/// A finite graph, possibly with self-loops and multiple edges.
///
/// Each edge is stored as an ordered pair `(tail, head)`, which doubles as
/// its parametrization. The order of the edge list fixes the order of the
/// edges at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    sinks: BTreeSet<usize>,
}

/// One end of an edge at a vertex: the edge index and the vertex at the
/// other end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge {
    pub edge: usize,
    pub far: usize,
}

impl Graph {
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S)],
        sinks: &[S],
    ) -> Result<Self, GraphError> {
        let mut ids = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), ids.len()).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            ids.push(v);
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(s.as_ref().to_string()))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let sinks = sinks.iter().map(lookup).collect::<Result<_, _>>()?;
        Ok(Self {
            ids,
            index,
            edges,
            sinks,
        })
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> = file
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let vertices: Vec<&str> = file.vertices.iter().map(String::as_str).collect();
        let sinks: Vec<&str> = file.sinks.iter().map(String::as_str).collect();
        Self::new(&vertices, &edges, &sinks)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.ids.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.ids[a].clone(), self.ids[b].clone()])
                .collect(),
            sinks: self.sinks.iter().map(|&s| self.ids[s].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sinks(&self) -> &BTreeSet<usize> {
        &self.sinks
    }

    /// Half-edges at `v` in edge-list order. A self-loop contributes two.
    pub fn half_edges(&self, v: usize) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(HalfEdge { edge: e, far: b });
            }
            if b == v {
                out.push(HalfEdge { edge: e, far: a });
            }
        }
        out
    }

    pub fn valence_at(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Number of local branches at `v`; a self-loop counts twice.
    pub fn valence(&self, id: &str) -> Result<usize, GraphError> {
        Ok(self.valence_at(self.index_of(id)?))
    }

    fn valences(&self) -> Vec<usize> {
        let mut d = vec![0; self.ids.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_essential_at(&self, v: usize) -> bool {
        self.valence_at(v) >= 3
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges
            .iter()
            .any(|&(a, b)| !seen.insert((a.min(b), a.max(b))))
    }

    /// Connected-component label for every vertex, numbered in order of
    /// first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        self.component_labels_without(None)
    }

    fn component_labels_without(&self, removed: Option<usize>) -> Vec<usize> {
        let mut uf = UnionFind::new(self.ids.len());
        for &(a, b) in &self.edges {
            if Some(a) != removed && Some(b) != removed {
                uf.union(a, b);
            }
        }
        let mut label_of_root = HashMap::new();
        (0..self.ids.len())
            .map(|v| {
                let next = label_of_root.len();
                *label_of_root.entry(uf.find(v)).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number `E - V + #components`.
    pub fn betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.ids.len()
    }

    fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Component of `Γ ∖ {v}` reached by each half-edge at `v`.
    ///
    /// The interior of a self-loop at `v` is a component of its own, shared
    /// by both of its half-edges.
    fn far_side_classes(&self, v: usize) -> Vec<(HalfEdge, FarSide)> {
        let labels = self.component_labels_without(Some(v));
        self.half_edges(v)
            .into_iter()
            .map(|h| {
                let side = if h.far == v {
                    FarSide::Loop(h.edge)
                } else {
                    FarSide::Component(labels[h.far])
                };
                (h, side)
            })
            .collect()
    }

    fn complement_component_count(&self, v: usize) -> usize {
        let labels = self.component_labels_without(Some(v));
        let rest: BTreeSet<usize> = (0..self.ids.len())
            .filter(|&w| w != v)
            .map(|w| labels[w])
            .collect();
        let loops = self.edges.iter().filter(|&&(a, b)| a == v && b == v).count();
        rest.len() + loops
    }

    pub fn is_separating_at(&self, v: usize) -> Result<bool, GraphError> {
        self.require_connected()?;
        Ok(self.complement_component_count(v) > 1)
    }

    /// Whether deleting `id` disconnects the rest of the graph.
    pub fn is_separating(&self, id: &str) -> Result<bool, GraphError> {
        self.is_separating_at(self.index_of(id)?)
    }

    /// Half-edges at an essential vertex, in edge-list order except that,
    /// when the vertex is separating, the first two lie in different
    /// components of the complement.
    pub fn ordered_half_edges(&self, id: &str) -> Result<Vec<HalfEdge>, GraphError> {
        let v = self.index_of(id)?;
        let d = self.valence_at(v);
        if d < 3 {
            return Err(GraphError::NotEssential(id.to_string(), d));
        }
        let mut classes = self.far_side_classes(v);
        if let Some(pos) = classes.iter().position(|(_, c)| *c != classes[0].1) {
            let item = classes.remove(pos);
            classes.insert(1, item);
        }
        Ok(classes.into_iter().map(|(h, _)| h).collect())
    }

    /// The relation on the edges at an essential vertex `id`: two edges are
    /// related iff their far sides lie in the same component of `Γ ∖ {v}`.
    ///
    /// Ground-set element `i` is the `i`th entry of [`Graph::ordered_half_edges`].
    pub fn components_without(&self, id: &str) -> Result<EquivRelation, GraphError> {
        let order = self.ordered_half_edges(id)?;
        let v = self.index_of(id)?;
        let classes = self.far_side_classes(v);
        let labels: Vec<FarSide> = order
            .iter()
            .map(|h| {
                classes
                    .iter()
                    .find(|(g, _)| g == h)
                    .map(|(_, c)| *c)
                    .expect("half-edge belongs to v")
            })
            .collect();
        Ok(EquivRelation::from_class_labels(&labels))
    }

    /// Replaces edge `e` by a path of `counts[e] + 1` edges. New vertices get
    /// ids derived from the endpoints; the edge-list position is kept so the
    /// edge order at every old vertex is unchanged.
    pub fn subdivide(&self, counts: &[usize]) -> Graph {
        assert_eq!(counts.len(), self.edges.len());
        let mut ids = self.ids.clone();
        let mut index = self.index.clone();
        let mut edges = Vec::with_capacity(self.edges.len() + counts.iter().sum::<usize>());
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let mut prev = a;
            for j in 1..=counts[e] {
                let mut name = format!("{}~{}.{}", self.ids[a], self.ids[b], j);
                while index.contains_key(&name) {
                    name.push('\'');
                }
                let x = ids.len();
                index.insert(name.clone(), x);
                ids.push(name);
                edges.push((prev, x));
                prev = x;
            }
            edges.push((prev, b));
        }
        Graph {
            ids,
            index,
            edges,
            sinks: self.sinks.clone(),
        }
    }

    /// Subdivides until there are no self-loops, no multiple edges, and every
    /// neighbour of an essential vertex is bivalent. A graph that already has
    /// these properties is returned unchanged.
    pub fn normalize(&self) -> Graph {
        let loops: Vec<usize> = self
            .edges
            .iter()
            .map(|&(a, b)| if a == b { 2 } else { 0 })
            .collect();
        let g = self.subdivide(&loops);

        let mut seen = HashSet::new();
        let parallel: Vec<usize> = g
            .edges
            .iter()
            .map(|&(a, b)| usize::from(!seen.insert((a.min(b), a.max(b)))))
            .collect();
        let g = g.subdivide(&parallel);

        let d = g.valences();
        let near_essential: Vec<usize> = g
            .edges
            .iter()
            .map(|&(a, b)| usize::from((d[a] >= 3 && d[b] != 2) || (d[b] >= 3 && d[a] != 2)))
            .collect();
        g.subdivide(&near_essential)
    }

    pub fn is_normalized(&self) -> bool {
        if self.has_self_loops() || self.has_multi_edges() {
            return false;
        }
        let d = self.valences();
        self.edges
            .iter()
            .all(|&(a, b)| !((d[a] >= 3 && d[b] != 2) || (d[b] >= 3 && d[a] != 2)))
    }

    /// Counts of valence ≥ 4, separating trivalent and non-separating
    /// trivalent vertices. Computed on the normalization.
    pub fn classify(&self) -> Result<VertexClassification, GraphError> {
        self.require_connected()?;
        let g = self.normalize();
        let mut c = VertexClassification::default();
        for v in 0..g.vertex_count() {
            match g.valence_at(v) {
                0..=2 => {}
                3 => {
                    if g.complement_component_count(v) > 1 {
                        c.n1 += 1;
                    } else {
                        c.n2 += 1;
                    }
                }
                _ => c.n0 += 1,
            }
        }
        c.m = c.n0 + c.n1 + c.n2;
        c.trivalent_total = c.n1 + c.n2;
        Ok(c)
    }

    /// Maximal paths whose interior vertices are all bivalent, as lists of
    /// edge indices. Each edge lies in exactly one chain. Chains forming a
    /// cycle of bivalent vertices are included.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let d = self.valences();
        let mut used = vec![false; self.edges.len()];
        let mut chains = Vec::new();
        let walk = |start: usize, first: usize, used: &mut Vec<bool>| {
            let mut chain = vec![first];
            used[first] = true;
            let (a, b) = self.edges[first];
            let mut at = if a == start { b } else { a };
            while d[at] == 2 && at != start {
                let next = self
                    .half_edges(at)
                    .into_iter()
                    .find(|h| !used[h.edge])
                    .map(|h| h.edge);
                let Some(e) = next else { break };
                used[e] = true;
                chain.push(e);
                let (a, b) = self.edges[e];
                at = if a == at { b } else { a };
            }
            chain
        };
        for v in 0..self.ids.len() {
            if d[v] == 2 {
                continue;
            }
            for h in self.half_edges(v) {
                if !used[h.edge] {
                    chains.push(walk(v, h.edge, &mut used));
                }
            }
        }
        for e in 0..self.edges.len() {
            if !used[e] {
                let start = self.edges[e].0;
                chains.push(walk(start, e, &mut used));
            }
        }
        chains
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FarSide {
    Component(usize),
    Loop(usize),
}

/// Vertex counts driving the bounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClassification {
    /// Vertices of valence at least 4.
    pub n0: usize,
    /// Separating trivalent vertices.
    pub n1: usize,
    /// Non-separating trivalent vertices.
    pub n2: usize,
    /// Essential vertices, `n0 + n1 + n2`.
    pub m: usize,
    pub trivalent_total: usize,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Small named graphs used throughout the tests and the bundled corpus.
pub mod named {
    use super::Graph;

    /// Cone on `n` points: center `c`, leaves `l1..ln`.
    pub fn star(n: usize) -> Graph {
        let mut vertices = vec!["c".to_string()];
        let mut edges = Vec::new();
        for i in 1..=n {
            vertices.push(format!("l{i}"));
            edges.push(("c".to_string(), format!("l{i}")));
        }
        Graph::new::<String>(&vertices, &edges, &[]).expect("star is well formed")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Graph {
        Graph::new(&["a", "b"], &[("a", "b"), ("a", "b"), ("a", "b")], &[]).unwrap()
    }

    /// Two trivalent vertices joined by an edge, each carrying two leaves.
    pub fn h_graph() -> Graph {
        Graph::new(
            &["u", "v", "u1", "u2", "v1", "v2"],
            &[("u", "v"), ("u", "u1"), ("u", "u2"), ("v", "v1"), ("v", "v2")],
            &[],
        )
        .unwrap()
    }

    /// Two valence-4 vertices joined by an edge, each carrying three leaves.
    pub fn spider() -> Graph {
        Graph::new(
            &["u", "v", "u1", "u2", "u3", "v1", "v2", "v3"],
            &[
                ("u", "v"),
                ("u", "u1"),
                ("u", "u2"),
                ("u", "u3"),
                ("v", "v1"),
                ("v", "v2"),
                ("v", "v3"),
            ],
            &[],
        )
        .unwrap()
    }

    /// Path with `n` edges.
    pub fn path(n: usize) -> Graph {
        let vertices: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (vertices[i].clone(), vertices[i + 1].clone()))
            .collect();
        Graph::new::<String>(&vertices, &edges, &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    /// Independent oracle: classify by brute force on the raw graph, with
    /// valence from incidence counting and separation by exhaustive
    /// reachability after deletion (self-loop interiors counted as their
    /// own pieces).
    fn classify_bruteforce(g: &Graph) -> (usize, usize, usize) {
        let n = g.vertex_count();
        let (mut n0, mut n1, mut n2) = (0, 0, 0);
        for v in 0..n {
            let mut d = 0;
            for &(a, b) in g.edges() {
                if a == v {
                    d += 1;
                }
                if b == v {
                    d += 1;
                }
            }
            if d < 3 {
                continue;
            }
            if d >= 4 {
                n0 += 1;
                continue;
            }
            let mut pieces = 0;
            let mut seen = vec![false; n];
            seen[v] = true;
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                pieces += 1;
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(x) = stack.pop() {
                    for &(a, b) in g.edges() {
                        for (p, q) in [(a, b), (b, a)] {
                            if p == x && !seen[q] {
                                seen[q] = true;
                                stack.push(q);
                            }
                        }
                    }
                }
            }
            pieces += g.edges().iter().filter(|&&(a, b)| a == v && b == v).count();
            if pieces > 1 {
                n1 += 1;
            } else {
                n2 += 1;
            }
        }
        (n0, n1, n2)
    }

    fn triple(c: VertexClassification) -> (usize, usize, usize) {
        (c.n0, c.n1, c.n2)
    }

    #[test]
    fn valence_examples() {
        let s = star(3);
        assert_eq!(s.valence("c").unwrap(), 3);
        assert_eq!(s.valence("l2").unwrap(), 1);
        let g = Graph::new(&["a", "b"], &[("a", "a"), ("a", "b")], &[]).unwrap();
        assert_eq!(g.valence("a").unwrap(), 3);
        assert_eq!(
            g.valence("z"),
            Err(GraphError::UnknownVertex("z".to_string()))
        );
    }

    #[test]
    fn normalize_theta() {
        let t = theta();
        let n = t.normalize();
        assert_eq!(n.vertex_count(), 5);
        assert_eq!(t.betti_number(), 2);
        assert_eq!(n.betti_number(), 2);
        assert!(n.is_normalized());
    }

    #[test]
    fn normalize_single_loop_is_triangle() {
        let g = Graph::new(&["a"], &[("a", "a")], &[]).unwrap();
        let n = g.normalize();
        assert_eq!((n.vertex_count(), n.edge_count()), (3, 3));
        assert!(n.vertex_ids().iter().all(|v| n.valence(v).unwrap() == 2));
        assert_eq!(n.betti_number(), 1);
    }

    #[test]
    fn normalize_is_identity_on_normalized() {
        let p = path(4);
        assert_eq!(p.normalize(), p);
        let s = star(4).normalize();
        assert_eq!(s.normalize(), s);
    }

    #[test]
    fn normalize_keeps_edge_order_at_old_vertices() {
        let s = star(3);
        let n = s.normalize();
        let c = n.index_of("c").unwrap();
        let fars: Vec<&str> = n
            .half_edges(c)
            .iter()
            .map(|h| n.id(h.far))
            .collect();
        assert_eq!(fars, vec!["c~l1.1", "c~l2.1", "c~l3.1"]);
    }

    #[test]
    fn fresh_ids_avoid_collisions() {
        let g = Graph::new(&["a", "b", "a~b.1"], &[("a", "b"), ("a", "a~b.1")], &[]).unwrap();
        let s = g.subdivide(&[1, 0]);
        assert!(s.vertex_ids().contains(&"a~b.1'".to_string()));
        assert_eq!(s.vertex_count(), 4);
    }

    #[test]
    fn separation_examples() {
        let h = h_graph();
        assert!(h.is_separating("u").unwrap());
        assert!(!h.is_separating("u1").unwrap());
        let t = theta();
        assert!(!t.is_separating("a").unwrap());
        assert!(!t.is_separating("b").unwrap());
        let two = Graph::new(&["a", "b", "c"], &[("a", "b")], &[]).unwrap();
        assert_eq!(two.is_separating("a"), Err(GraphError::Disconnected));
    }

    #[test]
    fn loop_interior_separates() {
        let g = Graph::new(&["a", "b"], &[("a", "a"), ("a", "b")], &[]).unwrap();
        assert!(g.is_separating("a").unwrap());
        assert_eq!(g.classify().unwrap().n1, 1);
    }

    #[test]
    fn classify_examples() {
        let c = star(4).classify().unwrap();
        assert_eq!((triple(c), c.m), ((1, 0, 0), 1));
        let c = h_graph().classify().unwrap();
        assert_eq!((triple(c), c.m), ((0, 2, 0), 2));
        let c = theta().classify().unwrap();
        assert_eq!((triple(c), c.m), ((0, 0, 2), 2));
        assert_eq!(c.trivalent_total, 2);
        let c = spider().classify().unwrap();
        assert_eq!((triple(c), c.m), ((2, 0, 0), 2));
        let bad = Graph::new(&["a", "b"], &[], &[]).unwrap();
        assert_eq!(bad.classify(), Err(GraphError::Disconnected));
    }

    #[test]
    fn components_without_examples() {
        let s = star(3).normalize();
        assert!(s.components_without("c").unwrap().is_discrete());
        let t = theta().normalize();
        let r = t.components_without("a").unwrap();
        assert!(r.is_indiscrete());
        assert_eq!(r.size(), 3);
        let h = h_graph().normalize();
        let r = h.components_without("u").unwrap();
        assert_eq!(r.block_sizes(), vec![1, 1, 1]);
        assert!(matches!(
            h.components_without("u1"),
            Err(GraphError::NotEssential(_, 1))
        ));
    }

    #[test]
    fn separating_order_puts_distinct_components_first() {
        // Edges at `a`: two into a cycle, one to a leaf listed last.
        let g = Graph::new(
            &["a", "b", "c", "x"],
            &[("a", "b"), ("b", "c"), ("c", "a"), ("a", "x")],
            &[],
        )
        .unwrap()
        .normalize();
        let r = g.components_without("a").unwrap();
        assert!(!r.related(0, 1));
        assert_eq!(r.block_sizes(), vec![2, 1]);
    }

    #[test]
    fn chains_partition_edges() {
        let t = theta().normalize();
        let chains = t.chains();
        assert_eq!(chains.len(), 3);
        let mut all: Vec<usize> = chains.concat();
        all.sort_unstable();
        assert_eq!(all, (0..t.edge_count()).collect::<Vec<_>>());
        let circle = Graph::new(&["a"], &[("a", "a")], &[]).unwrap().normalize();
        assert_eq!(circle.chains(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn json_round_trip() {
        let g = h_graph();
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert!(matches!(
            Graph::from_json(r#"{"vertices":["a"],"edges":[["a","q"]]}"#),
            Err(GraphError::UnknownVertex(_))
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_connected_graph() -> impl Strategy<Value = Graph> {
            (2usize..=8).prop_flat_map(|n| {
                let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
                let extra = proptest::collection::vec((0..n, 0..n), 0..5);
                (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
                    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                    let mut edges = Vec::new();
                    for (i, idx) in tree.iter().enumerate() {
                        let child = i + 1;
                        let parent = idx.index(child);
                        edges.push((vertices[parent].clone(), vertices[child].clone()));
                    }
                    for (a, b) in extra {
                        edges.push((vertices[a].clone(), vertices[b].clone()));
                    }
                    Graph::new::<String>(&vertices, &edges, &[]).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn classify_matches_bruteforce(g in arb_connected_graph()) {
                let c = g.classify().unwrap();
                prop_assert_eq!(triple(c), classify_bruteforce(&g));
                prop_assert_eq!(c.m, c.n0 + c.n1 + c.n2);
            }

            #[test]
            fn normalize_invariants(g in arb_connected_graph()) {
                let n = g.normalize();
                prop_assert!(n.is_normalized());
                prop_assert_eq!(n.betti_number(), g.betti_number());
                prop_assert_eq!(n.normalize(), n.clone());
                prop_assert_eq!(classify_bruteforce(&n), classify_bruteforce(&g));
            }

            #[test]
            fn non_separating_iff_single_class(g in arb_connected_graph()) {
                let n = g.normalize();
                for v in 0..n.vertex_count() {
                    if n.valence_at(v) < 3 {
                        continue;
                    }
                    let id = n.id(v).to_string();
                    let r = n.components_without(&id).unwrap();
                    prop_assert_eq!(!n.is_separating(&id).unwrap(), r.block_count() == 1);
                }
            }
        }
    }
}
