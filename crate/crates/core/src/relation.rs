//! Equivalence relations on small finite ground sets.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("element {0} is outside the ground set of size {1}")]
    OutOfRange(usize, usize),
    #[error("element {0} appears in more than one block")]
    Overlap(usize),
    #[error("element {0} is not covered by any block")]
    Uncovered(usize),
    #[error("blocks must be nonempty")]
    EmptyBlock,
}

/// An equivalence relation on `{0, .., n-1}`, stored as its blocks.
///
/// Blocks are kept in canonical order: each block sorted, blocks sorted by
/// their smallest element. Two relations are equal iff they have the same
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EquivRelation {
    size: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl EquivRelation {
    pub fn from_blocks(size: usize, blocks: Vec<Vec<usize>>) -> Result<Self, RelationError> {
        let mut owner = vec![None; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(RelationError::EmptyBlock);
            }
            for &x in block {
                if x >= size {
                    return Err(RelationError::OutOfRange(x, size));
                }
                if owner[x].replace(b).is_some() {
                    return Err(RelationError::Overlap(x));
                }
            }
        }
        if let Some(x) = owner.iter().position(Option::is_none) {
            return Err(RelationError::Uncovered(x));
        }
        Ok(Self::canonical(size, blocks))
    }

    /// Builds the relation whose classes are the fibres of `class_of`.
    pub fn from_class_labels<T: PartialEq>(class_of: &[T]) -> Self {
        let mut reps: Vec<&T> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, c) in class_of.iter().enumerate() {
            match reps.iter().position(|r| *r == c) {
                Some(b) => blocks[b].push(i),
                None => {
                    reps.push(c);
                    blocks.push(vec![i]);
                }
            }
        }
        Self::canonical(class_of.len(), blocks)
    }

    pub fn discrete(size: usize) -> Self {
        Self::canonical(size, (0..size).map(|i| vec![i]).collect())
    }

    pub fn indiscrete(size: usize) -> Self {
        if size == 0 {
            return Self::canonical(0, Vec::new());
        }
        Self::canonical(size, vec![(0..size).collect()])
    }

    fn canonical(size: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; size];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                block_of[x] = b;
            }
        }
        Self {
            size,
            blocks,
            block_of,
        }
    }

    /// Size of the ground set.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `x`. Panics if `x` is out of range.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.size
    }

    pub fn is_indiscrete(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// Sorted block sizes, largest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_by_smallest_element() {
        let r = EquivRelation::from_blocks(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(r.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(r.block_of(3), 1);
        assert!(r.related(0, 2));
        assert!(!r.related(0, 1));
    }

    #[test]
    fn labels_give_fibres() {
        let r = EquivRelation::from_class_labels(&["x", "y", "x"]);
        assert_eq!(r.blocks(), &[vec![0, 2], vec![1]]);
        assert_eq!(r.block_sizes(), vec![2, 1]);
    }

    #[test]
    fn rejects_bad_blocks() {
        assert_eq!(
            EquivRelation::from_blocks(2, vec![vec![0]]),
            Err(RelationError::Uncovered(1))
        );
        assert_eq!(
            EquivRelation::from_blocks(2, vec![vec![0, 1], vec![1]]),
            Err(RelationError::Overlap(1))
        );
        assert_eq!(
            EquivRelation::from_blocks(2, vec![vec![0, 2]]),
            Err(RelationError::OutOfRange(2, 2))
        );
        assert_eq!(
            EquivRelation::from_blocks(1, vec![vec![0], vec![]]),
            Err(RelationError::EmptyBlock)
        );
    }

    #[test]
    fn extremes() {
        assert!(EquivRelation::discrete(3).is_discrete());
        assert!(EquivRelation::indiscrete(3).is_indiscrete());
        assert_eq!(EquivRelation::indiscrete(3).block_count(), 1);
    }
}
