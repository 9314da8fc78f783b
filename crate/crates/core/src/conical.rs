//! Box-membership classifier over unit-normalized document vectors.
//!
//! Training records, for every dimension, the largest and smallest value
//! seen across the training vectors. A vector is in-topic when it is nonzero
//! and lies between those two bounds in every dimension (bounds inclusive).
//! The zero vector is excluded explicitly: it carries none of the topic's
//! terms.
//!
//! All weights are nonnegative, so a lower bound is only informative for a
//! dimension that every training vector uses. Those "required" dimensions
//! are checked first; after that only the stored entries of the query need
//! an upper-bound check. Evaluation stops at the first violated dimension.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

/// Vectors whose norm differs from 1 by more than this are rejected by `fit`.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    InTopic,
    OutOfTopic,
}

impl Label {
    pub fn is_in_topic(self) -> bool {
        self == Label::InTopic
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::InTopic => "in-topic",
            Label::OutOfTopic => "out-of-topic",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: Label,
    /// Dimensions compared before the decision was reached.
    pub dims_checked: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictOptions {
    /// Stop at the first violated dimension.
    pub short_circuit: bool,
}

impl Default for PredictOptions {
    fn default() -> Self {
        Self {
            short_circuit: true,
        }
    }
}

/// Per-dimension upper and lower bounds of a training corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BoundsRepr", into = "BoundsRepr")]
pub struct ConicalBox {
    dim: usize,
    max: Vec<f64>,
    min: Vec<f64>,
    // Dimensions with a positive lower bound, in evaluation order.
    required: Vec<u32>,
    tolerance: f64,
}

#[derive(Serialize, Deserialize)]
struct BoundsRepr {
    dim: usize,
    tolerance: f64,
    max_vector: Vec<(u32, f64)>,
    min_vector: Vec<(u32, f64)>,
}

impl ConicalBox {
    /// Fits the elementwise bounds of `vectors`.
    ///
    /// Every vector must share one dimension and have unit norm; a zero
    /// vector is reported as a degenerate document.
    pub fn fit(vectors: &[SparseVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptyCorpus)?;
        let dim = first.dim();
        let mut max = vec![0.0f64; dim];
        let mut min = vec![f64::INFINITY; dim];
        let mut support = vec![0usize; dim];
        for (index, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::BatchDimensionMismatch {
                    index,
                    expected: dim,
                    found: v.dim(),
                });
            }
            if v.is_zero() {
                return Err(Error::DegenerateDocument { index });
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > UNIT_NORM_TOLERANCE {
                return Err(Error::InvalidArgument(format!(
                    "training vector {index} is not unit norm (norm {norm})"
                )));
            }
            for (d, x) in v.iter() {
                if x < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "training vector {index} has negative weight at dimension {d}"
                    )));
                }
                max[d] = max[d].max(x);
                min[d] = min[d].min(x);
                support[d] += 1;
            }
        }
        let n = vectors.len();
        for d in 0..dim {
            if support[d] < n {
                min[d] = 0.0;
            }
        }
        Self::from_dense_bounds(max, min, 0.0)
    }

    fn from_dense_bounds(max: Vec<f64>, min: Vec<f64>, tolerance: f64) -> Result<Self> {
        if max.len() != min.len() {
            return Err(Error::DimensionMismatch {
                expected: max.len(),
                found: min.len(),
            });
        }
        if let Some(d) = (0..max.len()).find(|&d| !(0.0 <= min[d] && min[d] <= max[d])) {
            return Err(Error::InvalidArgument(format!(
                "bounds at dimension {d} violate 0 <= min <= max"
            )));
        }
        let mut required: Vec<u32> = (0..min.len())
            .filter(|&d| min[d] > 0.0)
            .map(|d| d as u32)
            .collect();
        // Tightest lower bounds first: they are the likeliest to fail.
        required.sort_by(|&a, &b| {
            min[b as usize]
                .total_cmp(&min[a as usize])
                .then(a.cmp(&b))
        });
        Ok(Self {
            dim: max.len(),
            max,
            min,
            required,
            tolerance,
        })
    }

    /// Widens every bound by `tolerance` at prediction time. Defaults to 0.
    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be finite and nonnegative, got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_bound(&self, d: usize) -> f64 {
        self.max[d]
    }

    pub fn min_bound(&self, d: usize) -> f64 {
        self.min[d]
    }

    pub fn max_vector(&self) -> SparseVector {
        SparseVector::from_dense(&self.max)
    }

    pub fn min_vector(&self) -> SparseVector {
        SparseVector::from_dense(&self.min)
    }

    /// Number of dimensions with a nonzero lower bound.
    pub fn required_dims(&self) -> usize {
        self.required.len()
    }

    #[inline]
    fn within(&self, d: usize, x: f64) -> bool {
        self.min[d] - self.tolerance <= x && x <= self.max[d] + self.tolerance
    }

    pub fn predict(&self, v: &SparseVector) -> Result<Prediction> {
        self.predict_with(v, PredictOptions::default())
    }

    pub fn predict_with(&self, v: &SparseVector, opts: PredictOptions) -> Result<Prediction> {
        v.check_dim(self.dim)?;
        if v.is_zero() {
            return Ok(Prediction {
                label: Label::OutOfTopic,
                dims_checked: 0,
            });
        }
        let mut checked = 0;
        let mut inside = true;
        for &d in &self.required {
            let d = d as usize;
            checked += 1;
            if !self.within(d, v.get(d)) {
                inside = false;
                if opts.short_circuit {
                    return Ok(out_of_topic(checked));
                }
            }
        }
        for (d, x) in v.iter() {
            if self.min[d] > 0.0 {
                continue;
            }
            checked += 1;
            if !self.within(d, x) {
                inside = false;
                if opts.short_circuit {
                    return Ok(out_of_topic(checked));
                }
            }
        }
        Ok(Prediction {
            label: if inside {
                Label::InTopic
            } else {
                Label::OutOfTopic
            },
            dims_checked: checked,
        })
    }

    pub fn predict_batch(&self, vectors: &[SparseVector]) -> Result<Vec<Prediction>> {
        self.predict_batch_with(vectors, PredictOptions::default())
    }

    pub fn predict_batch_with(
        &self,
        vectors: &[SparseVector],
        opts: PredictOptions,
    ) -> Result<Vec<Prediction>> {
        vectors
            .iter()
            .enumerate()
            .map(|(index, v)| {
                if v.dim() != self.dim {
                    return Err(Error::BatchDimensionMismatch {
                        index,
                        expected: self.dim,
                        found: v.dim(),
                    });
                }
                self.predict_with(v, opts)
            })
            .collect()
    }

    /// Dense reference check over every dimension, without short-circuiting.
    pub fn brute_force_membership(&self, v: &SparseVector) -> Result<Prediction> {
        v.check_dim(self.dim)?;
        let dense = v.to_dense();
        let nonzero = dense.iter().any(|&x| x != 0.0);
        let mut inside = true;
        for (d, &x) in dense.iter().enumerate() {
            inside &= self.within(d, x);
        }
        Ok(Prediction {
            label: if nonzero && inside {
                Label::InTopic
            } else {
                Label::OutOfTopic
            },
            dims_checked: self.dim,
        })
    }
}

fn out_of_topic(dims_checked: usize) -> Prediction {
    Prediction {
        label: Label::OutOfTopic,
        dims_checked,
    }
}

impl From<ConicalBox> for BoundsRepr {
    fn from(b: ConicalBox) -> Self {
        let sparse = |v: &[f64]| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0.0)
                .map(|(i, x)| (i as u32, *x))
                .collect()
        };
        BoundsRepr {
            dim: b.dim,
            tolerance: b.tolerance,
            max_vector: sparse(&b.max),
            min_vector: sparse(&b.min),
        }
    }
}

impl TryFrom<BoundsRepr> for ConicalBox {
    type Error = Error;

    fn try_from(r: BoundsRepr) -> Result<Self> {
        let dense = |pairs: Vec<(u32, f64)>| -> Result<Vec<f64>> {
            let mut out = vec![0.0; r.dim];
            for (i, x) in pairs {
                *out.get_mut(i as usize).ok_or(Error::DimensionMismatch {
                    expected: r.dim,
                    found: i as usize + 1,
                })? = x;
            }
            Ok(out)
        };
        let max = dense(r.max_vector)?;
        let min = dense(r.min_vector)?;
        Self::from_dense_bounds(max, min, 0.0)?.with_tolerance(r.tolerance)
    }
}
