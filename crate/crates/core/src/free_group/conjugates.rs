//! Deciding whether two subgroups have disjoint conjugates, whether a
//! homomorphism restricts injectively, and an enumerative oracle for both.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::automaton::{pullback, stallings_core};
use super::{FreeGroupError, FreeHom, FreeWord};

/// Whether `f` restricted to `⟨h⟩` is injective.
///
/// `f(⟨h⟩) = ⟨f(h)⟩` is a quotient of `⟨h⟩`; finitely generated free groups
/// are Hopfian, so the restriction is injective iff both have the same rank.
pub fn restriction_injective(f: &FreeHom, h: &[FreeWord]) -> Result<bool, FreeGroupError> {
    let source = stallings_core(f.domain_rank(), h)?;
    let image = stallings_core(f.codomain_rank(), &f.apply_all(h)?)?;
    Ok(source.subgroup_rank() == image.subgroup_rank())
}

/// Whether `g⟨h0⟩g⁻¹ ∩ ⟨h1⟩ = 1` for every `g` in the free group of rank
/// `rank`.
///
/// Components of the fibre product of the two core graphs carry the
/// intersections `⟨h0⟩^g ∩ ⟨h1⟩` over all double cosets; a nontrivial one
/// exists iff some component has a cycle.
pub fn disjoint_conjugates(
    h0: &[FreeWord],
    h1: &[FreeWord],
    rank: usize,
) -> Result<bool, FreeGroupError> {
    let a = stallings_core(rank, h0)?;
    let b = stallings_core(rank, h1)?;
    if a.is_trivial() || b.is_trivial() {
        return Ok(true);
    }
    Ok(pullback(&a, &b)?.is_forest())
}

/// Outcome of the enumerative search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BruteForceVerdict {
    /// `g h g⁻¹ = k` with `h ∈ ⟨h0⟩`, `k ∈ ⟨h1⟩`, both nontrivial.
    Violation {
        g: FreeWord,
        h: FreeWord,
        k: FreeWord,
    },
    /// Nothing found among elements of reduced length at most `max_len`.
    NoViolationUpTo(usize),
}

impl BruteForceVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, BruteForceVerdict::Violation { .. })
    }
}

/// Elements of `⟨gens⟩` reachable as products of at most `max_factors`
/// generators or inverses, keeping those of reduced length at most
/// `max_len`. Intermediate products longer than `3 * max_len` plus the
/// longest generator are not extended further.
pub fn subgroup_ball(
    rank: usize,
    gens: &[FreeWord],
    max_factors: usize,
    max_len: usize,
) -> Vec<FreeWord> {
    let longest = gens.iter().map(FreeWord::len).max().unwrap_or(0);
    let cutoff = 3 * max_len + longest;
    let mut factors: Vec<FreeWord> = Vec::new();
    for g in gens {
        if !g.is_identity() {
            factors.push(g.clone());
            factors.push(g.inverse());
        }
    }
    let mut seen: HashSet<FreeWord> = HashSet::from([FreeWord::identity(rank)]);
    let mut frontier = vec![FreeWord::identity(rank)];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for w in &frontier {
            for f in &factors {
                let p = w.mul_unchecked(f);
                if p.len() <= cutoff && seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out: Vec<FreeWord> = seen.into_iter().filter(|w| w.len() <= max_len).collect();
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Searches for nontrivial `h ∈ ⟨h0⟩` and `k ∈ ⟨h1⟩`, each of reduced
/// length at most `max_len` and a product of at most `max_len` generators,
/// that are conjugate in the ambient free group. Conjugacy is decided by
/// comparing cyclic reductions up to rotation; the returned `g` satisfies
/// `g h g⁻¹ = k`.
///
/// A violation proves the subgroups do not have disjoint conjugates; the
/// absence of one is evidence only up to the search bound.
pub fn disjoint_conjugates_bruteforce(
    h0: &[FreeWord],
    h1: &[FreeWord],
    rank: usize,
    max_len: usize,
) -> Result<BruteForceVerdict, FreeGroupError> {
    for w in h0.iter().chain(h1) {
        if w.rank() != rank {
            return Err(FreeGroupError::RankMismatch {
                expected: rank,
                found: w.rank(),
            });
        }
    }
    let max_len = max_len.max(1);
    let ball1 = subgroup_ball(rank, h1, max_len, max_len);
    let mut by_class: HashMap<Vec<i32>, FreeWord> = HashMap::new();
    for k in ball1.into_iter().filter(|k| !k.is_identity()) {
        by_class.entry(k.conjugacy_normal_form()).or_insert(k);
    }
    for h in subgroup_ball(rank, h0, max_len, max_len) {
        if h.is_identity() {
            continue;
        }
        if let Some(k) = by_class.get(&h.conjugacy_normal_form()) {
            let g = conjugator(&h, k);
            debug_assert_eq!(&h.conjugate_by(&g), k);
            return Ok(BruteForceVerdict::Violation {
                g,
                h,
                k: k.clone(),
            });
        }
    }
    Ok(BruteForceVerdict::NoViolationUpTo(max_len))
}

/// Every reduced word of length at most `max_len` over `rank` generators,
/// shortest first.
pub fn words_up_to(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![FreeWord::identity(rank)];
    let mut layer = vec![Vec::<i32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| FreeWord::reduce(rank, v).expect("in range")));
        layer = next;
    }
    out
}

/// Literal search: every conjugator `g` of length at most `conj_len` and
/// every nontrivial `h ∈ ⟨h0⟩` of length at most `elem_len`, testing
/// whether `g h g⁻¹` lies in a precomputed ball of `⟨h1⟩`. Membership is by
/// lookup only, so no folding is involved.
pub fn conjugator_search(
    h0: &[FreeWord],
    h1: &[FreeWord],
    rank: usize,
    conj_len: usize,
    elem_len: usize,
) -> Result<BruteForceVerdict, FreeGroupError> {
    for w in h0.iter().chain(h1) {
        if w.rank() != rank {
            return Err(FreeGroupError::RankMismatch {
                expected: rank,
                found: w.rank(),
            });
        }
    }
    let reach = 2 * conj_len + elem_len;
    let targets: HashSet<FreeWord> = subgroup_ball(rank, h1, reach, reach).into_iter().collect();
    let sources: Vec<FreeWord> = subgroup_ball(rank, h0, elem_len, elem_len)
        .into_iter()
        .filter(|h| !h.is_identity())
        .collect();
    for g in words_up_to(rank, conj_len) {
        for h in &sources {
            let k = h.conjugate_by(&g);
            if targets.contains(&k) {
                return Ok(BruteForceVerdict::Violation {
                    g,
                    h: h.clone(),
                    k,
                });
            }
        }
    }
    Ok(BruteForceVerdict::NoViolationUpTo(conj_len))
}

/// Some `g` with `g h g⁻¹ = k`, for conjugate `h` and `k`.
fn conjugator(h: &FreeWord, k: &FreeWord) -> FreeWord {
    let rank = h.rank();
    let (u, c) = h.cyclic_decomposition();
    let (v, d) = k.cyclic_decomposition();
    // d is a rotation of c: c = x y, d = y x = x⁻¹ c x.
    let n = c.len();
    let shift = (0..n.max(1))
        .find(|&s| {
            let mut r = c.letters()[s.min(n)..].to_vec();
            r.extend_from_slice(&c.letters()[..s.min(n)]);
            r == d.letters()
        })
        .expect("words are conjugate");
    let x = FreeWord::reduce(rank, &c.letters()[..shift.min(n)]).expect("same rank");
    // k = v x⁻¹ u⁻¹ h u x v⁻¹
    v.mul(&x.inverse()).mul(&u.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::parse_word;

    fn words(rank: usize, ws: &[&str]) -> Vec<FreeWord> {
        ws.iter().map(|w| parse_word(rank, w).unwrap()).collect()
    }

    #[test]
    fn restriction_examples() {
        let psi = FreeHom::new(3, words(3, &["g1", "g2", "1"])).unwrap();
        assert!(restriction_injective(&psi, &words(3, &["[g1,g2]"])).unwrap());
        assert!(!restriction_injective(&psi, &words(3, &["[g2,g3]"])).unwrap());
        let id = FreeHom::identity(3);
        assert!(restriction_injective(&id, &words(3, &["g1 g2", "g3^2", "[g1,g3]"])).unwrap());
        // Two generators collapsing onto one.
        let fold = FreeHom::new(1, words(1, &["g1", "g1"])).unwrap();
        assert!(!restriction_injective(&fold, &words(2, &["g1", "g2"])).unwrap());
    }

    #[test]
    fn disjointness_examples() {
        assert!(disjoint_conjugates(&words(3, &["[g1,g2]"]), &words(3, &["[g2,g3]"]), 3).unwrap());
        assert!(disjoint_conjugates(&words(3, &["g1 g3"]), &words(3, &["g2 g3"]), 3).unwrap());
        assert!(!disjoint_conjugates(&words(2, &["g1"]), &words(2, &["g1"]), 2).unwrap());
        assert!(!disjoint_conjugates(&words(2, &["g1 g2 g1^-1"]), &words(2, &["g2"]), 2).unwrap());
        assert!(disjoint_conjugates(&words(2, &[]), &words(2, &["g2"]), 2).unwrap());
        // A power of a conjugate still meets.
        assert!(!disjoint_conjugates(&words(2, &["g2 g1^2 g2^-1"]), &words(2, &["g1^3"]), 2).unwrap());
    }

    #[test]
    fn bruteforce_examples() {
        match disjoint_conjugates_bruteforce(&words(2, &["g1"]), &words(2, &["g1"]), 2, 2).unwrap() {
            BruteForceVerdict::Violation { g, h, k } => {
                assert!(g.is_identity());
                assert_eq!(h.len(), 1);
                assert_eq!(h, k);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
        let v = disjoint_conjugates_bruteforce(
            &words(3, &["[g1,g2]"]),
            &words(3, &["[g2,g3]"]),
            3,
            6,
        )
        .unwrap();
        assert_eq!(v, BruteForceVerdict::NoViolationUpTo(6));
        match disjoint_conjugates_bruteforce(&words(2, &["g1 g2 g1^-1"]), &words(2, &["g2"]), 2, 3)
            .unwrap()
        {
            BruteForceVerdict::Violation { g, h, k } => {
                assert_eq!(g, parse_word(2, "g1^-1").unwrap());
                assert_eq!(h.conjugate_by(&g), k);
                assert_eq!(k.len(), 1);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn conjugator_handles_rotation() {
        let h = parse_word(3, "g3 g1 g2 g3^-1").unwrap();
        let k = parse_word(3, "g1^-1 g2 g1^2").unwrap();
        let g = conjugator(&h, &k);
        assert_eq!(h.conjugate_by(&g), k);
    }

    #[test]
    fn literal_search_examples() {
        assert_eq!(words_up_to(2, 2).len(), 1 + 4 + 12);
        let v = conjugator_search(&words(2, &["g1 g2 g1^-1"]), &words(2, &["g2"]), 2, 1, 3).unwrap();
        match v {
            BruteForceVerdict::Violation { g, h, k } => assert_eq!(h.conjugate_by(&g), k),
            other => panic!("expected a violation, got {other:?}"),
        }
        let v = conjugator_search(&words(3, &["[g1,g2]"]), &words(3, &["[g2,g3]"]), 3, 3, 8).unwrap();
        assert_eq!(v, BruteForceVerdict::NoViolationUpTo(3));
    }

    #[test]
    fn ball_members_are_products() {
        let gens = words(2, &["g1^2", "g1 g2"]);
        let core = stallings_core(2, &gens).unwrap();
        let ball = subgroup_ball(2, &gens, 4, 6);
        assert!(ball.len() > 5);
        assert!(ball.iter().all(|w| core.contains(w)));
    }
}
