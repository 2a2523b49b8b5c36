use std::collections::VecDeque;

use serde::Serialize;

use super::{LambdaGraph, LocalGraphError};
use crate::free_group::FreeWord;
use crate::graph::UnionFind;

/// One edge traversal in a walk; `forward` means lower → upper.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn forward(edge: usize) -> Self {
        Self { edge, forward: true }
    }

    pub fn backward(edge: usize) -> Self {
        Self { edge, forward: false }
    }

    pub fn reversed(self) -> Self {
        Self {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// A spanning tree of a `LambdaGraph` and the free basis of `π_1` it
/// determines: generator `i` (1-based) is the loop running from the
/// basepoint through the tree, across the `i`th non-tree edge in edge order,
/// and back through the tree.
#[derive(Clone, Debug, Serialize)]
pub struct FreeBasis {
    base: usize,
    tree_edges: Vec<usize>,
    generators: Vec<usize>,
    #[serde(skip)]
    letter_of: Vec<Option<i32>>,
    #[serde(skip)]
    parent: Vec<Option<Step>>,
    #[serde(skip)]
    ends: Vec<(usize, usize)>,
}

impl FreeBasis {
    /// Breadth-first tree from `base`, scanning the edges at each vertex by
    /// label and then by index.
    pub fn bfs(l: &LambdaGraph, base: usize) -> Result<Self, LocalGraphError> {
        Self::check_vertex(l, base)?;
        let adjacency = adjacency(l);
        let mut seen = vec![false; l.vertex_count()];
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        let mut tree = Vec::new();
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(e);
                    queue.push_back(w);
                }
            }
        }
        Self::from_tree(l, base, &tree)
    }

    /// Basis from an explicit spanning tree.
    pub fn from_tree(l: &LambdaGraph, base: usize, tree: &[usize]) -> Result<Self, LocalGraphError> {
        Self::check_vertex(l, base)?;
        let n = l.vertex_count();
        let ends: Vec<(usize, usize)> = l.edges().iter().map(|e| (e.lower, e.upper)).collect();
        let mut in_tree = vec![false; ends.len()];
        let mut uf = UnionFind::new(n);
        for &e in tree {
            if e >= ends.len() || in_tree[e] || !uf.union(ends[e].0, ends[e].1) {
                return Err(LocalGraphError::NotSpanningTree);
            }
            in_tree[e] = true;
        }
        if tree.len() + 1 != n {
            return Err(LocalGraphError::NotSpanningTree);
        }
        let mut parent: Vec<Option<Step>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        let adjacency = adjacency(l);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adjacency[v] {
                if in_tree[e] && !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(Step {
                        edge: e,
                        forward: ends[e].1 == w,
                    });
                    queue.push_back(w);
                }
            }
        }
        let generators: Vec<usize> = (0..ends.len()).filter(|&e| !in_tree[e]).collect();
        let mut letter_of = vec![None; ends.len()];
        for (i, &e) in generators.iter().enumerate() {
            letter_of[e] = Some(i as i32 + 1);
        }
        let mut tree_edges = tree.to_vec();
        tree_edges.sort_unstable();
        Ok(Self {
            base,
            tree_edges,
            generators,
            letter_of,
            parent,
            ends,
        })
    }

    fn check_vertex(l: &LambdaGraph, v: usize) -> Result<(), LocalGraphError> {
        if v < l.vertex_count() {
            Ok(())
        } else {
            Err(LocalGraphError::UnknownVertex(v))
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    /// Non-tree edges; the `i`th one carries generator `i + 1`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.letter_of[e].is_none()
    }

    /// The generator letter of edge `e` read forward, or `None` on the tree.
    pub fn letter(&self, e: usize) -> Option<i32> {
        self.letter_of[e]
    }

    /// The tree path from the basepoint to `v`.
    pub fn path_from_base(&self, mut v: usize) -> Vec<Step> {
        let mut rev = Vec::new();
        while let Some(step) = self.parent[v] {
            rev.push(step);
            v = self.tail(step);
        }
        rev.reverse();
        rev
    }

    fn tail(&self, s: Step) -> usize {
        let (lo, up) = self.ends[s.edge];
        if s.forward {
            lo
        } else {
            up
        }
    }

    fn head(&self, s: Step) -> usize {
        let (lo, up) = self.ends[s.edge];
        if s.forward {
            up
        } else {
            lo
        }
    }

    /// Closed walk at the basepoint representing generator `i` (1-based).
    pub fn generator_loop(&self, i: usize) -> Vec<Step> {
        let e = self.generators[i - 1];
        let (lo, up) = self.ends[e];
        let mut walk = self.path_from_base(lo);
        walk.push(Step::forward(e));
        walk.extend(self.path_from_base(up).into_iter().rev().map(Step::reversed));
        walk
    }

    /// Endpoint of `walk` started at `start`, or `None` if consecutive steps
    /// do not meet.
    pub fn follow(&self, start: usize, walk: &[Step]) -> Option<usize> {
        let mut at = start;
        for &s in walk {
            if s.edge >= self.ends.len() || self.tail(s) != at {
                return None;
            }
            at = self.head(s);
        }
        Some(at)
    }

    /// The element of `π_1` carried by a walk, read in this basis. For a
    /// closed walk at `v` this is the loop conjugated into the basepoint by
    /// the tree path to `v`.
    pub fn word(&self, walk: &[Step]) -> FreeWord {
        let letters: Vec<i32> = walk
            .iter()
            .filter_map(|s| self.letter_of[s.edge].map(|x| if s.forward { x } else { -x }))
            .collect();
        FreeWord::reduce(self.rank(), &letters).expect("letters within rank")
    }
}

/// Incident `(edge, far vertex)` pairs at each vertex, sorted by label then
/// edge index.
fn adjacency(l: &LambdaGraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); l.vertex_count()];
    for (i, e) in l.edges().iter().enumerate() {
        adj[e.lower].push((e.label, i, e.upper));
        adj[e.upper].push((e.label, i, e.lower));
    }
    adj.into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.into_iter().map(|(_, e, w)| (e, w)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::EquivRelation;

    #[test]
    fn rank_matches_betti_number() {
        let rels = [
            EquivRelation::discrete(3),
            EquivRelation::indiscrete(4),
            EquivRelation::from_blocks(4, vec![vec![0, 2], vec![1], vec![3]]).unwrap(),
        ];
        for pi in &rels {
            for k in 1..=4 {
                let l = LambdaGraph::build(pi, k).unwrap();
                for base in [0, l.vertex_count() - 1] {
                    let b = FreeBasis::bfs(&l, base).unwrap();
                    assert_eq!(b.rank(), l.pi1_rank());
                    assert_eq!(b.tree_edges().len() + 1, l.vertex_count());
                }
            }
        }
    }

    #[test]
    fn generator_loops_read_back_as_generators() {
        let pi = EquivRelation::from_blocks(3, vec![vec![0], vec![1, 2]]).unwrap();
        let l = LambdaGraph::build(&pi, 3).unwrap();
        let b = FreeBasis::bfs(&l, 0).unwrap();
        for i in 1..=b.rank() {
            let walk = b.generator_loop(i);
            assert_eq!(b.follow(0, &walk), Some(0));
            assert_eq!(b.word(&walk), FreeWord::generator(b.rank(), i).unwrap());
        }
    }

    #[test]
    fn indiscrete_tree_is_first_edge() {
        let l = LambdaGraph::build(&EquivRelation::indiscrete(4), 2).unwrap();
        let b = FreeBasis::bfs(&l, 0).unwrap();
        assert_eq!(b.tree_edges(), &[0]);
        assert_eq!(b.generators(), &[1, 2, 3]);
    }

    #[test]
    fn trees_and_cycles() {
        let tree = LambdaGraph::build(&EquivRelation::discrete(1), 3).unwrap();
        assert_eq!(FreeBasis::bfs(&tree, 0).unwrap().rank(), 0);
        let circle = LambdaGraph::build(&EquivRelation::discrete(3), 2).unwrap();
        let b = FreeBasis::bfs(&circle, 0).unwrap();
        assert_eq!(b.rank(), 1);
        let walk = b.generator_loop(1);
        assert_eq!(b.follow(0, &walk), Some(0));
        assert_eq!(b.word(&walk).letters(), &[1]);
    }

    #[test]
    fn rejects_bad_trees() {
        let l = LambdaGraph::build(&EquivRelation::indiscrete(3), 2).unwrap();
        assert_eq!(
            FreeBasis::from_tree(&l, 0, &[0, 1]).unwrap_err(),
            LocalGraphError::NotSpanningTree
        );
        assert_eq!(
            FreeBasis::from_tree(&l, 0, &[]).unwrap_err(),
            LocalGraphError::NotSpanningTree
        );
        assert_eq!(
            FreeBasis::bfs(&l, 9).unwrap_err(),
            LocalGraphError::UnknownVertex(9)
        );
    }
}
