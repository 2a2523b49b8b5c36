//! Local graphs at an essential vertex: the relation on its edges, the
//! finite graphs `Λ_k(π)` modelling `k` particles near the vertex, free bases
//! of their fundamental groups, sink stabilization, and the explicit
//! subgroups whose conjugates must be disjoint.

mod basis;
mod lambda;
mod stabilization;
mod subgroups;

use thiserror::Error;

use crate::free_group::FreeGroupError;
use crate::graph::{Graph, GraphError};
use crate::relation::EquivRelation;

pub use basis::{FreeBasis, Step};
pub use lambda::{compositions, LambdaEdge, LambdaGraph};
pub use stabilization::{SinkStabilization, SplitRetraction};
pub use subgroups::{
    commutator_pair_subgroup, epsilon_loop, epsilon_word, gamma_loop, gamma_to_tree_basis,
    labeling_scan, product_pair_subgroup, SignedPermutation,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalGraphError {
    #[error("particle count must be at least 1")]
    ZeroParticles,
    #[error("relation has an empty ground set")]
    EmptyGroundSet,
    #[error("block {block} out of range ({blocks} blocks)")]
    UnknownBlock { block: usize, blocks: usize },
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("need n >= {min}, got {n}")]
    TooFewEdges { n: usize, min: usize },
    #[error("offset must be 0 or 1, got {0}")]
    BadOffset(usize),
    #[error("expected {expected} particles, got {found}")]
    ParticleCount { expected: usize, found: usize },
    #[error("legs must be three distinct labels below {0}")]
    BadLegs(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
}

/// The relation `π_v` on the edges at `v`: related iff they lead into the
/// same component of `Γ ∖ {v}`. The graph is normalized first, which does
/// not change the relation.
pub fn local_quotient(g: &Graph, v: &str) -> Result<EquivRelation, LocalGraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(g.normalize().components_without(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn quotient_examples() {
        assert!(local_quotient(&named::star(3), "c").unwrap().is_discrete());
        let theta = local_quotient(&named::theta(), "a").unwrap();
        assert!(theta.is_indiscrete());
        assert_eq!(theta.size(), 3);
        let h = local_quotient(&named::h_graph(), "u").unwrap();
        assert_eq!(h.block_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn quotient_errors() {
        assert!(matches!(
            local_quotient(&named::star(3), "l1"),
            Err(LocalGraphError::Graph(GraphError::NotEssential(_, 1)))
        ));
        let two = Graph::new(&["a", "b"], &[], &[]).unwrap();
        assert_eq!(
            local_quotient(&two, "a"),
            Err(LocalGraphError::Graph(GraphError::Disconnected))
        );
    }
}
