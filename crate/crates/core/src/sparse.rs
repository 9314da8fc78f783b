//! Sparse nonnegative vectors over a fixed vocabulary dimension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector in vocabulary space storing only its nonzero entries.
///
/// Entries are kept sorted by index with no duplicates and no stored zeros,
/// so a vector is the zero vector exactly when it has no entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds a vector from `(index, value)` pairs in any order.
    ///
    /// Duplicate indices are summed and exact zeros are dropped. Indices must
    /// be below `dim`.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut entries: Vec<(u32, f64)> = pairs.into_iter().collect();
        if let Some(&(idx, _)) = entries.iter().find(|(i, _)| *i as usize >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: idx as usize + 1,
            });
        }
        entries.sort_by_key(|&(i, _)| i);
        let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|&(_, v)| v != 0.0);
        Ok(Self {
            dim,
            entries: merged,
        })
    }

    pub fn from_dense(values: &[f64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32, *v))
            .collect();
        Self {
            dim: values.len(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|&(i, v)| (i as usize, v))
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.entries.binary_search_by_key(&(index as u32), |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &(i, v) in &self.entries {
            out[i as usize] = v;
        }
        out
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v * v).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &SparseVector) -> Result<f64> {
        self.check_dim(other.dim)?;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut acc = 0.0;
        while let (Some(&&(i, x)), Some(&&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a.next();
                    b.next();
                }
            }
        }
        Ok(acc)
    }

    /// Cosine of the angle between two vectors; 0 when either is zero.
    pub fn cosine_similarity(&self, other: &SparseVector) -> Result<f64> {
        let dot = self.dot(other)?;
        let denom = self.norm() * other.norm();
        Ok(if denom > 0.0 { dot / denom } else { 0.0 })
    }

    /// Elementwise product with a dense weight slice of the same dimension.
    pub fn hadamard(&self, weights: &[f64]) -> Result<SparseVector> {
        self.check_dim(weights.len())?;
        let entries = self
            .entries
            .iter()
            .map(|&(i, v)| (i, v * weights[i as usize]))
            .filter(|&(_, v)| v != 0.0)
            .collect();
        Ok(SparseVector {
            dim: self.dim,
            entries,
        })
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            });
        }
        Ok(())
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(u32, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(i, v)| (i as usize) < dim && v != 0.0));
        Self { dim, entries }
    }
}

/// Scales `v` to unit Euclidean length. The zero vector is returned unchanged.
pub fn unit_normalize(v: &SparseVector) -> SparseVector {
    let norm = v.norm();
    if norm == 0.0 || !norm.is_finite() {
        return v.clone();
    }
    let entries = v
        .entries
        .iter()
        .map(|&(i, x)| (i, x / norm))
        .filter(|&(_, x)| x != 0.0)
        .collect();
    SparseVector {
        dim: v.dim,
        entries,
    }
}
