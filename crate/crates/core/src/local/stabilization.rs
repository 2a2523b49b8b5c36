use serde::Serialize;

use super::{FreeBasis, LambdaGraph, LocalGraphError, Step};
use crate::free_group::{restriction_injective, stallings_core, FreeHom, FreeWord};
use crate::graph::UnionFind;

/// The map `Λ_k(π) → Λ_{k+1}(π)` adding a particle at the sink of one
/// block, `v_p ↦ v_{p + e_s}`, and the homomorphism it induces between the
/// breadth-first bases at vertex 0 and at its image.
#[derive(Clone, Debug, Serialize)]
pub struct SinkStabilization {
    pub block: usize,
    #[serde(skip)]
    pub source: LambdaGraph,
    #[serde(skip)]
    pub target: LambdaGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    #[serde(skip)]
    pub source_basis: FreeBasis,
    #[serde(skip)]
    pub target_basis: FreeBasis,
    pub images: Vec<FreeWord>,
    #[serde(skip)]
    hom: FreeHom,
}

/// Bases in which the stabilization sends generators to generators, and a
/// left inverse `rho` of the induced map `psi`.
#[derive(Clone, Debug)]
pub struct SplitRetraction {
    pub target_basis: FreeBasis,
    pub psi: FreeHom,
    pub rho: FreeHom,
}

impl SplitRetraction {
    /// Whether `rho ∘ psi` is the identity.
    pub fn splits(&self) -> bool {
        self.psi
            .then(&self.rho)
            .is_ok_and(|c| c == FreeHom::identity(self.psi.domain_rank()))
    }
}

impl SinkStabilization {
    pub fn new(source: &LambdaGraph, block: usize) -> Result<Self, LocalGraphError> {
        let pi = source.relation();
        if block >= pi.block_count() {
            return Err(LocalGraphError::UnknownBlock {
                block,
                blocks: pi.block_count(),
            });
        }
        let target = LambdaGraph::build(pi, source.k() + 1)?;
        let vertex_map: Vec<usize> = source
            .vertices()
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q[block] += 1;
                target.vertex_index(&q).expect("shifted composition exists")
            })
            .collect();
        let edge_map: Vec<usize> = source
            .edges()
            .iter()
            .map(|e| {
                target
                    .edge_index(vertex_map[e.lower], e.label)
                    .expect("lower vertices map to lower vertices")
            })
            .collect();
        let source_basis = FreeBasis::bfs(source, 0)?;
        let target_basis = FreeBasis::bfs(&target, vertex_map[0])?;
        let images = images_in(&source_basis, &target_basis, &edge_map);
        let hom = FreeHom::new(target_basis.rank(), images.clone())?;
        Ok(Self {
            block,
            source: source.clone(),
            target,
            vertex_map,
            edge_map,
            source_basis,
            target_basis,
            images,
            hom,
        })
    }

    pub fn hom(&self) -> &FreeHom {
        &self.hom
    }

    /// Maps a walk in the source to the corresponding walk in the target.
    pub fn map_walk(&self, walk: &[Step]) -> Vec<Step> {
        walk.iter()
            .map(|s| Step {
                edge: self.edge_map[s.edge],
                forward: s.forward,
            })
            .collect()
    }

    /// Whether the induced homomorphism is injective.
    pub fn is_injective(&self) -> bool {
        let gens: Vec<FreeWord> = (1..=self.hom.domain_rank())
            .map(|i| FreeWord::generator(self.hom.domain_rank(), i).expect("in range"))
            .collect();
        restriction_injective(&self.hom, &gens).expect("ranks agree")
    }

    /// Whether the induced homomorphism is onto.
    pub fn is_surjective(&self) -> bool {
        let core = stallings_core(self.hom.codomain_rank(), self.hom.images()).expect("ranks agree");
        core.state_count() == 1 && core.arcs().len() == self.hom.codomain_rank()
    }

    /// Extends the image of the source tree to a spanning tree of the
    /// target, so each source generator maps to a target generator.
    pub fn split_retraction(&self) -> Result<SplitRetraction, LocalGraphError> {
        let n = self.target.vertex_count();
        let mut uf = UnionFind::new(n);
        let mut tree = Vec::with_capacity(n - 1);
        let target_edges = self.target.edges();
        let image_tree = self.source_basis.tree_edges().iter().map(|&e| self.edge_map[e]);
        for e in image_tree.chain(0..target_edges.len()) {
            if uf.union(target_edges[e].lower, target_edges[e].upper) {
                tree.push(e);
            }
        }
        let target_basis = FreeBasis::from_tree(&self.target, self.vertex_map[0], &tree)?;
        let psi = FreeHom::new(
            target_basis.rank(),
            images_in(&self.source_basis, &target_basis, &self.edge_map),
        )?;
        let source_rank = self.source_basis.rank();
        let rho_images = target_basis
            .generators()
            .iter()
            .map(|&t| {
                self.edge_map
                    .iter()
                    .position(|&m| m == t)
                    .and_then(|e| self.source_basis.letter(e))
                    .map_or(FreeWord::identity(source_rank), |x| {
                        FreeWord::generator(source_rank, x as usize).expect("in range")
                    })
            })
            .collect();
        let rho = FreeHom::new(source_rank, rho_images)?;
        Ok(SplitRetraction {
            target_basis,
            psi,
            rho,
        })
    }
}

fn images_in(source: &FreeBasis, target: &FreeBasis, edge_map: &[usize]) -> Vec<FreeWord> {
    (1..=source.rank())
        .map(|i| {
            let walk: Vec<Step> = source
                .generator_loop(i)
                .into_iter()
                .map(|s| Step {
                    edge: edge_map[s.edge],
                    forward: s.forward,
                })
                .collect();
            target.word(&walk)
        })
        .collect()
}
