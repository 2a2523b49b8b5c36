//! Finitely generated subgroups of finite-rank free groups: reduced words,
//! homomorphisms, Stallings core graphs, fibre products, and the
//! disjoint-conjugates decision.

mod automaton;
mod conjugates;
mod hom;
pub mod random;
mod word;

use thiserror::Error;

pub use automaton::{pullback, stallings_core, Arc, FoldedAutomaton, PullbackGraph};
pub use conjugates::{
    conjugator_search, disjoint_conjugates, disjoint_conjugates_bruteforce, restriction_injective,
    subgroup_ball, words_up_to, BruteForceVerdict,
};
pub use hom::FreeHom;
pub use word::{parse_word, FreeWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeGroupError {
    #[error("letter {letter} out of range for rank {rank}")]
    GeneratorOutOfRange { letter: i32, rank: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("cannot parse word: {0}")]
    Parse(String),
}
