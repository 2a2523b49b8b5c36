//! Seeded random instances for cross-checking the kernel criterion, the
//! pullback decision and the enumerative oracle against each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    disjoint_conjugates, disjoint_conjugates_bruteforce, restriction_injective, FreeHom, FreeWord,
};

/// Uniform reduced word of exactly `len` letters drawn from `alphabet`
/// (positive generator indices) and their inverses.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, alphabet: &[usize], len: usize) -> FreeWord {
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    if alphabet.is_empty() {
        return FreeWord::identity(rank);
    }
    while letters.len() < len {
        let g = alphabet[rng.gen_range(0..alphabet.len())] as i32;
        let l = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    FreeWord::reduce(rank, &letters).expect("alphabet within rank")
}

/// Two subgroups and a homomorphism that kills a chosen set of generators.
#[derive(Clone, Debug, Serialize)]
pub struct KernelInstance {
    pub rank: usize,
    pub h0: Vec<FreeWord>,
    pub h1: Vec<FreeWord>,
    #[serde(skip)]
    pub psi: FreeHom,
}

/// Draws an instance of rank at most `max_rank` with generator words of
/// length at most `max_len`. Most instances put `h1` inside the kernel of
/// `psi` so the kernel criterion has something to say.
pub fn kernel_instance<R: Rng>(rng: &mut R, max_rank: usize, max_len: usize) -> KernelInstance {
    let rank = rng.gen_range(2..=max_rank.max(2));
    let mut killed: Vec<usize> = (1..=rank).filter(|_| rng.gen_bool(0.4)).collect();
    if killed.is_empty() {
        killed.push(rng.gen_range(1..=rank));
    }
    let kept: Vec<usize> = (1..=rank).filter(|g| !killed.contains(g)).collect();
    let images = (1..=rank)
        .map(|g| {
            if killed.contains(&g) {
                FreeWord::identity(rank)
            } else if rng.gen_bool(0.6) {
                FreeWord::generator(rank, g).expect("in range")
            } else {
                let len = rng.gen_range(1..=2);
                random_word(rng, rank, &kept, len)
            }
        })
        .collect();
    let psi = FreeHom::new(rank, images).expect("same rank");
    let all: Vec<usize> = (1..=rank).collect();
    let h0 = (0..rng.gen_range(1..=2))
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_word(rng, rank, &all, len)
        })
        .collect();
    let h1_alphabet = if rng.gen_bool(0.75) { &killed } else { &all };
    let h1 = (0..rng.gen_range(1..=2))
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            random_word(rng, rank, h1_alphabet, len)
        })
        .collect();
    KernelInstance { rank, h0, h1, psi }
}

/// Tallies of a consistency sweep. Every field ending in `_disagreements`
/// must be zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub instances: usize,
    pub kernel_criterion_applied: usize,
    pub kernel_disagreements: usize,
    pub pushforward_applied: usize,
    pub pushforward_disagreements: usize,
    pub oracle_violations: usize,
    pub oracle_disagreements: usize,
    pub symmetry_disagreements: usize,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.kernel_disagreements == 0
            && self.pushforward_disagreements == 0
            && self.oracle_disagreements == 0
            && self.symmetry_disagreements == 0
    }
}

/// Runs `count` seeded instances and checks:
/// * kernel criterion (`psi` injective on `h0`, trivial on `h1`) implies the
///   pullback decision says disjoint;
/// * `psi` injective on `h0` with disjoint images implies disjoint;
/// * an oracle violation (search bound `oracle_len`) implies the pullback
///   decision says not disjoint;
/// * the decision is symmetric in `h0`, `h1`.
pub fn kernel_consistency_sweep(seed: u64, count: usize, oracle_len: usize) -> ConsistencyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConsistencyReport::default();
    for _ in 0..count {
        let inst = kernel_instance(&mut rng, 4, 6);
        report.instances += 1;
        let decided = disjoint_conjugates(&inst.h0, &inst.h1, inst.rank).expect("same rank");
        let swapped = disjoint_conjugates(&inst.h1, &inst.h0, inst.rank).expect("same rank");
        if decided != swapped {
            report.symmetry_disagreements += 1;
        }
        let injective = restriction_injective(&inst.psi, &inst.h0).expect("same rank");
        let img0 = inst.psi.apply_all(&inst.h0).expect("same rank");
        let img1 = inst.psi.apply_all(&inst.h1).expect("same rank");
        if injective && img1.iter().all(FreeWord::is_identity) {
            report.kernel_criterion_applied += 1;
            if !decided {
                report.kernel_disagreements += 1;
            }
        }
        if injective
            && disjoint_conjugates(&img0, &img1, inst.psi.codomain_rank()).expect("same rank")
        {
            report.pushforward_applied += 1;
            if !decided {
                report.pushforward_disagreements += 1;
            }
        }
        let oracle = disjoint_conjugates_bruteforce(&inst.h0, &inst.h1, inst.rank, oracle_len)
            .expect("same rank");
        if oracle.is_violation() {
            report.oracle_violations += 1;
            if decided {
                report.oracle_disagreements += 1;
            }
        }
    }
    report
}
