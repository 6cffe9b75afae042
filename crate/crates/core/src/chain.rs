//! Finite free chain complexes over the integers and their homology.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::snf::{smith, SnfResult, SparseMatrix};

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Graded free abelian groups with boundary maps. `boundaries[k]` maps
/// degree `k` to degree `k - 1` (columns indexed by the degree-`k` basis);
/// `boundaries[0]` is the zero map to the zero group.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Self {
        assert_eq!(dims.len(), boundaries.len());
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!(b.ncols(), dims[k], "boundary {k} has wrong column count");
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            assert_eq!(b.nrows(), rows, "boundary {k} has wrong row count");
        }
        ChainComplex { dims, boundaries }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` for every `k`. `None` signals an `i64`
    /// overflow in the product.
    pub fn squares_to_zero(&self) -> Option<bool> {
        for k in 2..self.boundaries.len() {
            if !self.boundaries[k - 1]
                .checked_mul(&self.boundaries[k])?
                .is_zero()
            {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Euler characteristic of the chain groups.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Homology in every degree `0..=top`.
    pub fn homology(&self) -> Vec<HomologyGroup> {
        let snf: Vec<SnfResult> = self.boundaries.par_iter().map(smith).collect();
        (0..self.dims.len())
            .map(|k| {
                let out_rank = snf[k].rank;
                let (in_rank, torsion) = match snf.get(k + 1) {
                    Some(s) => (s.rank, s.divisors.clone()),
                    None => (0, Vec::new()),
                };
                HomologyGroup {
                    rank: self.dims[k] - out_rank - in_rank,
                    torsion,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_homology() {
        // two vertices, two edges between them
        let d1 = SparseMatrix::from_dense(&[vec![-1, -1], vec![1, 1]]);
        let c = ChainComplex::new(vec![2, 2], vec![SparseMatrix::zeros(0, 2), d1]);
        let h = c.homology();
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.squares_to_zero(), Some(true));
    }

    #[test]
    fn display() {
        let g = HomologyGroup {
            rank: 3,
            torsion: vec![BigInt::from(2)],
        };
        assert_eq!(g.to_string(), "Z^3 + Z/2");
        assert_eq!(HomologyGroup::default().to_string(), "0");
    }
}
