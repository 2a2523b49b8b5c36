use serde::Serialize;

use super::{FreeBasis, LambdaGraph, LocalGraphError, SinkStabilization, Step};
use crate::free_group::{FreeHom, FreeWord};

/// `{[γ_{1+a}, γ_{2+a}]}` in the free group on `γ_1, …, γ_{n-1}`, where
/// `γ_i` moves a particle in along leg `i` and out along leg `i + 1`.
pub fn commutator_pair_subgroup(n: usize, a: usize) -> Result<Vec<FreeWord>, LocalGraphError> {
    if a > 1 {
        return Err(LocalGraphError::BadOffset(a));
    }
    let min = 3 + a;
    if n < min {
        return Err(LocalGraphError::TooFewEdges { n, min });
    }
    let g = |i: usize| FreeWord::generator(n - 1, i).expect("in range");
    Ok(vec![FreeWord::commutator(&g(1 + a), &g(2 + a))])
}

/// `{x_{1+a} x_3}` in the free group of rank 3.
pub fn product_pair_subgroup(a: usize) -> Result<Vec<FreeWord>, LocalGraphError> {
    if a > 1 {
        return Err(LocalGraphError::BadOffset(a));
    }
    let x = |i: usize| FreeWord::generator(3, i).expect("in range");
    Ok(vec![x(1 + a).mul(&x(3))])
}

/// The walk `γ_i` (1-based) in `Λ_k` of the indiscrete relation on `n`
/// edges: in along edge `i`, out along edge `i + 1`, at the upper vertex.
pub fn gamma_loop(l: &LambdaGraph, i: usize) -> Result<Vec<Step>, LocalGraphError> {
    let n = l.relation().size();
    if !l.relation().is_indiscrete() || i == 0 || i >= n {
        return Err(LocalGraphError::BadLegs(n));
    }
    let lower = l.vertex_count() - 1;
    let e = |label| l.edge_index(lower, label).expect("label in range");
    Ok(vec![Step::backward(e(i - 1)), Step::forward(e(i))])
}

/// Rewrites words in `γ_1, …, γ_{n-1}` into the breadth-first basis of the
/// indiscrete model, whose tree is edge 1: `γ_1 ↦ x_1`,
/// `γ_i ↦ x_{i-1}⁻¹ x_i`.
pub fn gamma_to_tree_basis(n: usize) -> FreeHom {
    let rank = n.saturating_sub(1);
    let x = |i: usize| FreeWord::generator(rank, i).expect("in range");
    let images = (1..=rank)
        .map(|i| if i == 1 { x(1) } else { x(i - 1).inverse().mul(&x(i)) })
        .collect();
    FreeHom::new(rank, images).expect("same rank")
}

/// The loop in `Λ_2(π)` in which, with legs `j1, j2, j3`, one particle
/// waits at the end of `j1` while the other runs from `j2` to `j3`, then
/// the waiting roles pass to `j3` and `j2` in turn. Returns the start
/// vertex (both particles at the ends of `j1` and `j2`) and the walk.
pub fn epsilon_loop(l: &LambdaGraph, legs: [usize; 3]) -> Result<(usize, Vec<Step>), LocalGraphError> {
    let pi = l.relation();
    let n = pi.size();
    let [j1, j2, j3] = legs;
    if j1 == j2 || j2 == j3 || j1 == j3 || legs.iter().any(|&j| j >= n) {
        return Err(LocalGraphError::BadLegs(n));
    }
    if l.k() != 2 {
        return Err(LocalGraphError::ParticleCount {
            expected: 2,
            found: l.k(),
        });
    }
    let b = pi.block_count();
    let unit = |j: usize| {
        let mut p = vec![0; b];
        p[pi.block_of(j)] = 1;
        l.vertex_index(&p).expect("composition of 1")
    };
    let edge = |parked: usize, j: usize| l.edge_index(unit(parked), j).expect("lower vertex");
    let walk = vec![
        Step::backward(edge(j1, j2)),
        Step::forward(edge(j1, j3)),
        Step::backward(edge(j3, j1)),
        Step::forward(edge(j3, j2)),
        Step::backward(edge(j2, j3)),
        Step::forward(edge(j2, j1)),
    ];
    let mut start = vec![0; b];
    start[pi.block_of(j1)] += 1;
    start[pi.block_of(j2)] += 1;
    Ok((l.vertex_index(&start).expect("composition of 2"), walk))
}

/// The class of the ε loop with the given legs in `Λ_k(π)`: built at two
/// particles, pushed forward along sink stabilizations at `blocks` (one per
/// extra particle, in order), and read in the breadth-first basis at
/// vertex 0 of the final graph, which is returned alongside.
pub fn epsilon_word(
    pi: &crate::relation::EquivRelation,
    legs: [usize; 3],
    blocks: &[usize],
) -> Result<(FreeWord, LambdaGraph), LocalGraphError> {
    let l2 = LambdaGraph::build(pi, 2)?;
    let (_, mut walk) = epsilon_loop(&l2, legs)?;
    let mut current = l2;
    for &s in blocks {
        let stab = SinkStabilization::new(&current, s)?;
        walk = stab.map_walk(&walk);
        current = stab.target;
    }
    let basis = FreeBasis::bfs(&current, 0)?;
    Ok((basis.word(&walk), current))
}

/// A permutation of generators combined with inversions: generator `i`
/// (1-based) is sent to `target[i-1]`, inverted when `invert[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPermutation {
    pub target: Vec<usize>,
    pub invert: Vec<bool>,
}

impl SignedPermutation {
    pub fn all(rank: usize) -> Vec<Self> {
        fn permutations(rest: &[usize]) -> Vec<Vec<usize>> {
            if rest.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for (i, &x) in rest.iter().enumerate() {
                let mut others = rest.to_vec();
                others.remove(i);
                for mut tail in permutations(&others) {
                    tail.insert(0, x);
                    out.push(tail);
                }
            }
            out
        }
        let perms = permutations(&(1..=rank).collect::<Vec<_>>());
        let mut out = Vec::new();
        for p in perms {
            for mask in 0..(1u32 << rank) {
                out.push(Self {
                    target: p.clone(),
                    invert: (0..rank).map(|i| mask >> i & 1 == 1).collect(),
                });
            }
        }
        out
    }

    pub fn as_hom(&self) -> FreeHom {
        let rank = self.target.len();
        let images = self
            .target
            .iter()
            .zip(&self.invert)
            .map(|(&t, &inv)| {
                let g = FreeWord::generator(rank, t).expect("in range");
                if inv {
                    g.inverse()
                } else {
                    g
                }
            })
            .collect();
        FreeHom::new(rank, images).expect("same rank")
    }
}

/// Signed permutations carrying each `found[a]` to a conjugate of
/// `expected[a]` or of its inverse, simultaneously for every `a`.
pub fn labeling_scan(found: &[FreeWord], expected: &[FreeWord]) -> Vec<SignedPermutation> {
    let Some(rank) = found.first().map(FreeWord::rank) else {
        return Vec::new();
    };
    let matches = |w: &FreeWord, e: &FreeWord| {
        let c = w.conjugacy_normal_form();
        c == e.conjugacy_normal_form() || c == e.inverse().conjugacy_normal_form()
    };
    SignedPermutation::all(rank)
        .into_iter()
        .filter(|s| {
            let h = s.as_hom();
            found
                .iter()
                .zip(expected)
                .all(|(w, e)| h.apply(w).is_ok_and(|img| matches(&img, e)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::parse_word;
    use crate::relation::EquivRelation;

    #[test]
    fn transcribed_subgroups() {
        assert_eq!(commutator_pair_subgroup(4, 0).unwrap()[0].to_string(), "g1 g2 g1^-1 g2^-1");
        assert_eq!(commutator_pair_subgroup(4, 1).unwrap()[0].to_string(), "g2 g3 g2^-1 g3^-1");
        assert_eq!(commutator_pair_subgroup(3, 0).unwrap()[0].rank(), 2);
        assert_eq!(
            commutator_pair_subgroup(3, 1),
            Err(LocalGraphError::TooFewEdges { n: 3, min: 4 })
        );
        assert_eq!(product_pair_subgroup(0).unwrap()[0].to_string(), "g1 g3");
        assert_eq!(product_pair_subgroup(1).unwrap()[0].to_string(), "g2 g3");
        assert_eq!(product_pair_subgroup(2), Err(LocalGraphError::BadOffset(2)));
    }

    #[test]
    fn gamma_loops_match_change_of_basis() {
        for n in 2..=6 {
            for k in 2..=4 {
                let l = LambdaGraph::build(&EquivRelation::indiscrete(n), k).unwrap();
                let basis = FreeBasis::bfs(&l, 0).unwrap();
                let change = gamma_to_tree_basis(n);
                for i in 1..n {
                    let walk = gamma_loop(&l, i).unwrap();
                    assert_eq!(basis.follow(0, &walk), Some(0));
                    assert_eq!(basis.word(&walk), change.images()[i - 1]);
                }
            }
        }
    }

    #[test]
    fn epsilon_is_a_closed_walk() {
        let pi = EquivRelation::from_blocks(4, vec![vec![0, 3], vec![1], vec![2]]).unwrap();
        let l = LambdaGraph::build(&pi, 2).unwrap();
        let basis = FreeBasis::bfs(&l, 0).unwrap();
        for legs in [[0, 1, 2], [1, 2, 3], [3, 0, 2]] {
            let (start, walk) = epsilon_loop(&l, legs).unwrap();
            assert_eq!(basis.follow(start, &walk), Some(start));
        }
        assert_eq!(epsilon_loop(&l, [0, 0, 1]).unwrap_err(), LocalGraphError::BadLegs(4));
    }

    #[test]
    fn epsilon_in_indiscrete_model_is_a_commutator() {
        let (w, _) = epsilon_word(&EquivRelation::indiscrete(3), [0, 1, 2], &[]).unwrap();
        assert_eq!(w, parse_word(2, "g1^-1 g2 g1 g2^-1").unwrap());
        let gamma = gamma_to_tree_basis(3)
            .apply(&parse_word(2, "[g2,g1]").unwrap())
            .unwrap();
        assert_eq!(w, gamma);
    }

    #[test]
    fn signed_permutations_count() {
        let all = SignedPermutation::all(3);
        assert_eq!(all.len(), 48);
        let mut uniq = all.clone();
        uniq.dedup();
        assert_eq!(uniq.len(), 48);
    }
}
