//! Recovering the convex weights that place a direction between two others.
//!
//! Given unit vectors `x` and `y` and a unit `target` on the arc between
//! them, finds `λx, λy ≥ 0` with `λx + λy = 1` such that `λx·x + λy·y`
//! points along `target`. The search is a binary search on `λx`: it starts
//! at `1/2` and at level `k` moves `λx` by `2^-k` towards whichever endpoint
//! the target lies closer to, relative to the current midpoint.
//!
//! The side test compares `cos(v, x) − cos(v, y)` for the target and for the
//! current midpoint. That quantity increases strictly as `v` sweeps from `y`
//! to `x`, and unlike either cosine alone it has no flat spot at the
//! endpoints.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

pub const MAX_ITERATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

// Angle between unit vectors, accurate near 0 and near pi.
fn angle(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
    let sum: Vec<f64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
    2.0 * norm(&diff).atan2(norm(&sum))
}

fn combine(lambda_x: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    let lambda_y = 1.0 - lambda_x;
    x.iter().zip(y).map(|(a, b)| lambda_x * a + lambda_y * b).collect()
}

fn side(v: &[f64], x: &[f64], y: &[f64]) -> f64 {
    (dot(v, x) - dot(v, y)) / norm(v)
}

fn check_unit(name: &str, v: &[f64]) -> Result<()> {
    let n = norm(v);
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "{name} must be unit norm, got norm {n}"
        )));
    }
    Ok(())
}

/// Finds the convex weights of `target` between `x` and `y`.
///
/// `tol` is a cosine tolerance: the target must lie on the arc from `x` to
/// `y` to within the angle whose cosine is `1 − tol`, and the reconstructed
/// direction must reach cosine similarity `1 − tol` with the target.
pub fn decompose_between(
    x: &SparseVector,
    y: &SparseVector,
    target: &SparseVector,
    tol: f64,
) -> Result<DecompositionResult> {
    y.check_dim(x.dim())?;
    target.check_dim(x.dim())?;
    decompose_dense(&x.to_dense(), &y.to_dense(), &target.to_dense(), tol)
}

pub fn decompose_dense(x: &[f64], y: &[f64], target: &[f64], tol: f64) -> Result<DecompositionResult> {
    let mut trace = Vec::new();
    decompose_traced(x, y, target, tol, &mut trace)
}

/// Like [`decompose_dense`], also recording the `λx` visited at every level.
pub fn decompose_traced(
    x: &[f64],
    y: &[f64],
    target: &[f64],
    tol: f64,
    trace: &mut Vec<f64>,
) -> Result<DecompositionResult> {
    if y.len() != x.len() || target.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: if y.len() != x.len() { y.len() } else { target.len() },
        });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "cosine tolerance must lie in (0, 1), got {tol}"
        )));
    }
    check_unit("x", x)?;
    check_unit("y", y)?;
    check_unit("target", target)?;
    let antipodal: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    if norm(&antipodal) < 1e-12 {
        return Err(Error::InvalidArgument("x and y are antipodal".into()));
    }

    let max_angle_gap = 2.0 * (tol / 2.0).sqrt().asin();
    let gap = angle(x, target) + angle(target, y) - angle(x, y);
    if gap > max_angle_gap {
        return Err(Error::TargetOutsideSegment);
    }

    let target_side = side(target, x, y);
    let mut lambda_x = 0.5;
    let mut level = 1;
    let mut iterations = 0;
    trace.push(lambda_x);
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mid_side = side(&combine(lambda_x, x, y), x, y);
        if mid_side == target_side {
            break;
        }
        level += 1;
        let step = 2f64.powi(-level);
        if target_side > mid_side {
            lambda_x += step;
        } else {
            lambda_x -= step;
        }
        trace.push(lambda_x);
        if step <= f64::EPSILON {
            break;
        }
    }

    let mid = combine(lambda_x, x, y);
    let cosine = dot(&mid, target) / norm(&mid);
    if cosine < 1.0 - tol {
        return Err(Error::NonConvergence(iterations));
    }
    Ok(DecompositionResult {
        lambda_x,
        lambda_y: 1.0 - lambda_x,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::unit_normalize;

    fn unit(xs: &[f64]) -> SparseVector {
        unit_normalize(&SparseVector::from_dense(xs))
    }

    #[test]
    fn symmetric_midpoint() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = decompose_between(&unit(&[1.0, 0.0]), &unit(&[0.0, 1.0]), &unit(&[h, h]), 1e-9)
            .unwrap();
        assert_eq!(r.lambda_x, 0.5);
        assert_eq!(r.lambda_y, 0.5);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn endpoint_target() {
        let x = unit(&[1.0, 0.0]);
        let r = decompose_between(&x, &unit(&[0.0, 1.0]), &x, 1e-9).unwrap();
        assert!((r.lambda_x - 1.0).abs() < 1e-12);
        assert!(r.lambda_y.abs() < 1e-12);
        assert!(r.iterations <= MAX_ITERATIONS);
    }

    #[test]
    fn three_to_one_mix() {
        let r = decompose_between(
            &unit(&[1.0, 0.0]),
            &unit(&[0.0, 1.0]),
            &unit(&[0.75, 0.25]),
            1e-9,
        )
        .unwrap();
        assert!((r.lambda_x - 0.75).abs() < 1e-12);
        assert!((r.lambda_y - 0.25).abs() < 1e-12);
        // The recovered combination is parallel to the target: 0.75:0.25.
        assert!((r.lambda_x * 0.25 - r.lambda_y * 0.75).abs() < 1e-12);
    }

    #[test]
    fn rejects_target_off_the_arc() {
        let x = unit(&[1.0, 0.0, 0.0]);
        let y = unit(&[0.0, 1.0, 0.0]);
        assert!(matches!(
            decompose_between(&x, &y, &unit(&[0.0, 0.0, 1.0]), 1e-6),
            Err(Error::TargetOutsideSegment)
        ));
        assert!(matches!(
            decompose_between(&x, &y, &unit(&[1.0, 1.0, 0.5]), 1e-6),
            Err(Error::TargetOutsideSegment)
        ));
        assert!(matches!(
            decompose_dense(&[1.0, 0.0], &[0.0, 1.0], &[-0.6, 0.8], 1e-6),
            Err(Error::TargetOutsideSegment)
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(decompose_dense(&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], 1e-6).is_err());
        assert!(decompose_dense(&[2.0, 0.0], &[0.0, 1.0], &[0.0, 1.0], 1e-6).is_err());
        assert!(decompose_dense(&[1.0, 0.0], &[0.0, 1.0], &[0.0, 1.0], 0.0).is_err());
        assert!(decompose_dense(&[1.0, 0.0], &[0.0, 1.0], &[1.0], 1e-6).is_err());
    }

    #[test]
    fn trace_starts_at_half_and_halves_steps() {
        let mut trace = Vec::new();
        decompose_traced(&[1.0, 0.0], &[0.0, 1.0], unit(&[0.9, 0.1]).to_dense().as_slice(), 1e-9, &mut trace)
            .unwrap();
        assert_eq!(trace[0], 0.5);
        assert_eq!(trace[1], 0.75);
        assert_eq!(trace[2], 0.875);
        for w in trace.windows(3) {
            let (a, b) = ((w[1] - w[0]).abs(), (w[2] - w[1]).abs());
            assert_eq!(b, a / 2.0);
        }
    }
}
