//! Degree bookkeeping for graded vector spaces whose basis is sorted by
//! degree, and subspaces that are sums of their homogeneous parts.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::gf2::{BitVec, SparseVec, Subspace};

/// A maximal run of basis vectors sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub degree: i32,
    pub range: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Grading {
    degrees: Vec<i32>,
    blocks: Vec<Block>,
    block_of: Vec<u32>,
}

impl Grading {
    /// `degrees` must be nondecreasing.
    pub fn new(degrees: Vec<i32>) -> Result<Self> {
        if let Some(w) = degrees.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::InvalidModule(format!(
                "basis degrees must be sorted, found {} before {}",
                w[0], w[1]
            )));
        }
        let mut blocks: Vec<Block> = Vec::new();
        let mut block_of = Vec::with_capacity(degrees.len());
        for (i, &d) in degrees.iter().enumerate() {
            match blocks.last_mut() {
                Some(b) if b.degree == d => b.range.end = i + 1,
                _ => blocks.push(Block {
                    degree: d,
                    range: i..i + 1,
                }),
            }
            block_of.push(blocks.len() as u32 - 1);
        }
        Ok(Grading {
            degrees,
            blocks,
            block_of,
        })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    #[inline]
    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    #[inline]
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i] as usize
    }

    pub fn block_index(&self, degree: i32) -> Option<usize> {
        self.blocks.binary_search_by_key(&degree, |b| b.degree).ok()
    }

    /// Indices of degree `d`; empty if there are none.
    pub fn range(&self, degree: i32) -> Range<usize> {
        self.block_index(degree)
            .map_or(0..0, |k| self.blocks[k].range.clone())
    }

    pub fn dim_in(&self, degree: i32) -> usize {
        self.range(degree).len()
    }

    /// `(degree, dimension)` for every nonzero degree.
    pub fn graded_dims(&self) -> Vec<(i32, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.degree, b.range.len()))
            .collect()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.first().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.last().copied()
    }

    /// Common degree of the entries of a sparse vector.
    pub fn homogeneous_degree(&self, v: &[u32]) -> Option<i32> {
        let d = self.degree(*v.first()? as usize);
        v.iter().all(|&i| self.degree(i as usize) == d).then_some(d)
    }
}

/// Subspace of a graded space, stored degree by degree in local coordinates.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    grading: Grading,
    parts: Vec<Subspace>,
}

impl GradedSubspace {
    pub fn new(grading: &Grading) -> Self {
        GradedSubspace {
            parts: grading
                .blocks()
                .iter()
                .map(|b| Subspace::new(b.range.len()))
                .collect(),
            grading: grading.clone(),
        }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    fn local(&self, k: usize, v: &[u32]) -> BitVec {
        let r = &self.grading.blocks()[k].range;
        BitVec::from_indices(r.len(), v.iter().map(|&i| i as usize - r.start))
    }

    fn global(&self, k: usize, v: &BitVec) -> SparseVec {
        let start = self.grading.blocks()[k].range.start as u32;
        v.ones().map(|i| i as u32 + start).collect()
    }

    /// Splits `v` into homogeneous pieces, each tagged with its block.
    fn pieces(&self, v: &[u32]) -> Vec<(usize, BitVec)> {
        let mut out: Vec<(usize, Vec<u32>)> = Vec::new();
        for &i in v {
            let k = self.grading.block_of(i as usize);
            match out.last_mut() {
                Some((kk, vs)) if *kk == k => vs.push(i),
                _ => out.push((k, vec![i])),
            }
        }
        out.into_iter()
            .map(|(k, vs)| (k, self.local(k, &vs)))
            .collect()
    }

    /// Inserts every homogeneous component of `v`; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut grew = false;
        for (k, local) in self.pieces(v) {
            grew |= self.parts[k].insert(local);
        }
        grew
    }

    /// Inserts a homogeneous vector and returns its reduced form if it was new.
    pub fn insert_reduced(&mut self, v: &[u32]) -> Option<SparseVec> {
        let (k, mut local) = self.pieces(v).into_iter().next()?;
        self.parts[k].reduce(&mut local);
        if local.is_zero() {
            return None;
        }
        let g = self.global(k, &local);
        self.parts[k].insert(local);
        Some(g)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.pieces(v)
            .into_iter()
            .all(|(k, local)| self.parts[k].contains(&local))
    }

    /// Normal form of `v` modulo the subspace: supported on non-pivot columns.
    pub fn reduce(&self, v: &[u32]) -> SparseVec {
        let mut out = Vec::new();
        for (k, mut local) in self.pieces(v) {
            self.parts[k].reduce(&mut local);
            out.extend(self.global(k, &local));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn dim_in(&self, degree: i32) -> usize {
        self.grading
            .block_index(degree)
            .map_or(0, |k| self.parts[k].dim())
    }

    /// Non-pivot columns in ascending order: a basis of the quotient.
    pub fn complement(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            let start = self.grading.blocks()[k].range.start;
            out.extend(part.complement().into_iter().map(|c| c + start));
        }
        out
    }

    /// Basis vectors in global coordinates, grouped by degree.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for (k, part) in self.parts.iter().enumerate() {
            for row in part.basis() {
                out.push(self.global(k, row));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn same_as(&self, other: &GradedSubspace) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a.same_as(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_ranges() {
        let g = Grading::new(vec![0, 1, 1, 3]).unwrap();
        assert_eq!(g.blocks().len(), 3);
        assert_eq!(g.range(1), 1..3);
        assert_eq!(g.range(2), 0..0);
        assert_eq!(g.block_of(2), 1);
        assert!(Grading::new(vec![1, 0]).is_err());
    }

    #[test]
    fn graded_subspace_reduces_by_degree() {
        let g = Grading::new(vec![0, 1, 1, 1, 2]).unwrap();
        let mut s = GradedSubspace::new(&g);
        assert!(s.insert(&[1, 3]));
        assert!(!s.insert(&[1, 3]));
        assert!(s.contains(&[1, 3]));
        assert!(!s.contains(&[1]));
        assert_eq!(s.reduce(&[3, 4]), vec![1, 4]);
        assert_eq!(s.complement(), vec![0, 1, 2, 4]);
        assert_eq!(s.dim_in(1), 1);
    }
}
