//! Stallings core graphs of finitely generated subgroups and their fibre
//! products.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{FreeGroupError, FreeWord};
use crate::graph::UnionFind;

/// A labelled arc `src --label--> dst`, with `label` a positive generator
/// index. Reading it backwards spells the inverse generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arc {
    pub src: usize,
    pub label: u32,
    pub dst: usize,
}

/// The folded core graph of a subgroup, based at state 0.
///
/// States are numbered canonically (breadth-first from the basepoint,
/// exploring signed labels in the order `+1, -1, +2, -2, ..`), so two
/// automata of the same subgroup compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldedAutomaton {
    rank: usize,
    states: usize,
    arcs: Vec<Arc>,
    #[serde(skip)]
    forward: Vec<Vec<Option<usize>>>,
    #[serde(skip)]
    backward: Vec<Vec<Option<usize>>>,
}

impl FoldedAutomaton {
    pub fn rank_context(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    /// Rank of the subgroup: `#arcs - #states + 1`.
    pub fn subgroup_rank(&self) -> usize {
        self.arcs.len() + 1 - self.states
    }

    pub fn is_trivial(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Follows the signed letter `l` from `state`.
    pub fn step(&self, state: usize, l: i32) -> Option<usize> {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            self.forward[state][g]
        } else {
            self.backward[state][g]
        }
    }

    /// Whether `w` lies in the subgroup. `w` must live in the same free group.
    pub fn contains(&self, w: &FreeWord) -> bool {
        debug_assert_eq!(w.rank(), self.rank);
        let mut s = 0;
        for &l in w.letters() {
            match self.step(s, l) {
                Some(t) => s = t,
                None => return false,
            }
        }
        s == 0
    }

    /// No two arcs with one label share a source, or share a target.
    pub fn is_folded(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inc = BTreeSet::new();
        self.arcs
            .iter()
            .all(|a| out.insert((a.src, a.label)) && inc.insert((a.dst, a.label)))
    }

    /// Every non-basepoint state has degree at least 2.
    pub fn is_core(&self) -> bool {
        let mut deg = vec![0usize; self.states];
        for a in &self.arcs {
            deg[a.src] += 1;
            deg[a.dst] += 1;
        }
        deg.iter().skip(1).all(|&d| d >= 2)
    }

    fn from_parts(rank: usize, states: usize, arcs: Vec<Arc>) -> Self {
        let mut forward = vec![vec![None; rank]; states];
        let mut backward = vec![vec![None; rank]; states];
        for a in &arcs {
            forward[a.src][a.label as usize - 1] = Some(a.dst);
            backward[a.dst][a.label as usize - 1] = Some(a.src);
        }
        Self {
            rank,
            states,
            arcs,
            forward,
            backward,
        }
    }
}

/// Builds the folded core automaton of `⟨gens⟩` in the free group of the
/// given rank. An empty generating set gives the basepoint alone.
pub fn stallings_core(rank: usize, gens: &[FreeWord]) -> Result<FoldedAutomaton, FreeGroupError> {
    if let Some(bad) = gens.iter().find(|w| w.rank() != rank) {
        return Err(FreeGroupError::RankMismatch {
            expected: rank,
            found: bad.rank(),
        });
    }
    // Bouquet of petals, one per generator.
    let mut states = 1;
    let mut arcs = Vec::new();
    for w in gens {
        let n = w.len();
        let mut prev = 0;
        for (i, &l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                states += 1;
                states - 1
            };
            let label = l.unsigned_abs();
            if l > 0 {
                arcs.push(Arc { src: prev, label, dst: next });
            } else {
                arcs.push(Arc { src: next, label, dst: prev });
            }
            prev = next;
        }
    }
    let (states, arcs) = fold(states, arcs);
    let (states, arcs) = prune_to_core(states, arcs);
    Ok(canonicalize(rank, states, arcs))
}

/// Identifies states until no two arcs with the same label leave, or enter,
/// the same state.
fn fold(states: usize, mut arcs: Vec<Arc>) -> (usize, Vec<Arc>) {
    let mut uf = UnionFind::new(states);
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, i64), usize> = HashMap::new();
        for a in &arcs {
            let (s, t) = (uf.find(a.src), uf.find(a.dst));
            let keys = [((s, a.label as i64), t), ((t, -(a.label as i64)), s)];
            for (key, target) in keys {
                match seen.get(&key) {
                    Some(&other) => {
                        if uf.union(other, target) {
                            changed = true;
                        }
                    }
                    None => {
                        seen.insert(key, target);
                    }
                }
            }
        }
        let mut rewritten: Vec<Arc> = arcs
            .iter()
            .map(|a| Arc {
                src: uf.find(a.src),
                label: a.label,
                dst: uf.find(a.dst),
            })
            .collect();
        rewritten.sort_unstable();
        rewritten.dedup();
        let deduped = rewritten.len() != arcs.len();
        arcs = rewritten;
        if !changed && !deduped {
            break;
        }
    }
    (states, arcs)
}

/// Repeatedly removes non-basepoint states of degree at most one.
fn prune_to_core(states: usize, mut arcs: Vec<Arc>) -> (usize, Vec<Arc>) {
    loop {
        let mut deg = vec![0usize; states];
        for a in &arcs {
            deg[a.src] += 1;
            deg[a.dst] += 1;
        }
        let before = arcs.len();
        arcs.retain(|a| (a.src == 0 || deg[a.src] >= 2) && (a.dst == 0 || deg[a.dst] >= 2));
        if arcs.len() == before {
            return (states, arcs);
        }
    }
}

/// Renumbers states reachable from the basepoint breadth-first and drops
/// the rest.
fn canonicalize(rank: usize, states: usize, arcs: Vec<Arc>) -> FoldedAutomaton {
    let mut out_of: Vec<Vec<Option<usize>>> = vec![vec![None; rank]; states];
    let mut into: Vec<Vec<Option<usize>>> = vec![vec![None; rank]; states];
    for a in &arcs {
        out_of[a.src][a.label as usize - 1] = Some(a.dst);
        into[a.dst][a.label as usize - 1] = Some(a.src);
    }
    // Folding always keeps the smallest index as representative, so the
    // basepoint is still state 0.
    let root = 0;
    let mut number = vec![None; states];
    number[root] = Some(0);
    let mut next = 1;
    let mut queue = VecDeque::from([root]);
    while let Some(s) = queue.pop_front() {
        for g in 0..rank {
            for t in [out_of[s][g], into[s][g]].into_iter().flatten() {
                if number[t].is_none() {
                    number[t] = Some(next);
                    next += 1;
                    queue.push_back(t);
                }
            }
        }
    }
    let mut renamed: Vec<Arc> = arcs
        .iter()
        .filter_map(|a| {
            Some(Arc {
                src: number[a.src]?,
                label: a.label,
                dst: number[a.dst]?,
            })
        })
        .collect();
    renamed.sort_unstable();
    FoldedAutomaton::from_parts(rank, next, renamed)
}

/// The fibre product of two core graphs, viewed as an undirected
/// multigraph on pairs of states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackGraph {
    /// `(state of A, state of B)`.
    pub states: Vec<(usize, usize)>,
    /// `(from, label, to)` as indices into `states`.
    pub arcs: Vec<(usize, u32, usize)>,
}

impl PullbackGraph {
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.states.len());
        let mut merges = 0;
        for &(s, _, t) in &self.arcs {
            if uf.union(s, t) {
                merges += 1;
            }
        }
        self.states.len() - merges
    }

    /// Total first Betti number over all components.
    pub fn cycle_rank(&self) -> usize {
        self.arcs.len() + self.component_count() - self.states.len()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }
}

/// Fibre product over the bouquet: pairs of states, joined by pairs of arcs
/// carrying equal labels.
pub fn pullback(a: &FoldedAutomaton, b: &FoldedAutomaton) -> Result<PullbackGraph, FreeGroupError> {
    if a.rank != b.rank {
        return Err(FreeGroupError::RankMismatch {
            expected: a.rank,
            found: b.rank,
        });
    }
    let nb = b.states;
    let states: Vec<(usize, usize)> = (0..a.states)
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .collect();
    let mut arcs = Vec::new();
    for ea in &a.arcs {
        for eb in b.arcs.iter().filter(|e| e.label == ea.label) {
            arcs.push((ea.src * nb + eb.src, ea.label, ea.dst * nb + eb.dst));
        }
    }
    Ok(PullbackGraph { states, arcs })
}
