use super::{FreeGroupError, FreeWord};

/// A homomorphism between free groups of finite rank, given by the images
/// of the domain generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeHom {
    domain_rank: usize,
    codomain_rank: usize,
    images: Vec<FreeWord>,
}

impl FreeHom {
    pub fn new(codomain_rank: usize, images: Vec<FreeWord>) -> Result<Self, FreeGroupError> {
        if let Some(bad) = images.iter().find(|w| w.rank() != codomain_rank) {
            return Err(FreeGroupError::RankMismatch {
                expected: codomain_rank,
                found: bad.rank(),
            });
        }
        Ok(Self {
            domain_rank: images.len(),
            codomain_rank,
            images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank)
            .map(|i| FreeWord::generator(rank, i).expect("in range"))
            .collect();
        Self {
            domain_rank: rank,
            codomain_rank: rank,
            images,
        }
    }

    pub fn domain_rank(&self) -> usize {
        self.domain_rank
    }

    pub fn codomain_rank(&self) -> usize {
        self.codomain_rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    /// Substitutes generator images into `w` and reduces.
    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord, FreeGroupError> {
        if w.rank() != self.domain_rank {
            return Err(FreeGroupError::RankMismatch {
                expected: self.domain_rank,
                found: w.rank(),
            });
        }
        let mut out = FreeWord::identity(self.codomain_rank);
        for &l in w.letters() {
            let image = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out = out.mul_unchecked(image);
            } else {
                out = out.mul_unchecked(&image.inverse());
            }
        }
        Ok(out)
    }

    pub fn apply_all(&self, ws: &[FreeWord]) -> Result<Vec<FreeWord>, FreeGroupError> {
        ws.iter().map(|w| self.apply(w)).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FreeHom) -> Result<FreeHom, FreeGroupError> {
        if other.domain_rank != self.codomain_rank {
            return Err(FreeGroupError::RankMismatch {
                expected: self.codomain_rank,
                found: other.domain_rank,
            });
        }
        let images = self
            .images
            .iter()
            .map(|w| other.apply(w))
            .collect::<Result<_, _>>()?;
        FreeHom::new(other.codomain_rank, images)
    }
}
