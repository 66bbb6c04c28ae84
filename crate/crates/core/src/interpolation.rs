//! Gaussian h-spline interpolation.
//!
//! The interpolant of data `(x_j, y_j)` is `s(x) = sum_j c_j e^{-beta |x - x_j|^2}`
//! with coefficients solving the symmetric positive definite Gram system
//! `A c = y`, `A_ij = e^{-beta |x_i - x_j|^2}`. The Gaussian is positive
//! definite of order m = 0, so no polynomial part or moment conditions arise.
//!
//! The Gram matrix is mathematically SPD but numerically loses definiteness
//! rapidly as `beta * spacing^2` shrinks. The builder factors with Cholesky
//! first; when that fails it falls back to a truncated-SVD least-squares
//! solve and says so in the report. Either way the solution is polished by
//! iterative refinement and the one-norm condition estimate is reported;
//! nothing is regularized silently.

use nalgebra::{DMatrix, DVector};

use crate::error::{require_positive, Error, Result};

/// A built Gaussian interpolant. Immutable; safe to share across threads.
#[derive(Debug, Clone)]
pub struct Interpolant {
    beta: f64,
    dimension: usize,
    centers: Vec<Vec<f64>>,
    coefficients: Vec<f64>,
}

/// Diagnostics from [`build`].
#[derive(Debug, Clone, Copy)]
pub struct SolveReport {
    /// One-norm condition estimate `||A||_1 * ||A^{-1}||_1` of the Gram
    /// matrix (pseudo-inverse on the fallback path).
    pub condition_estimate: f64,
    /// `max_i |s(x_i) - y_i|` of the returned interpolant.
    pub max_node_residual: f64,
    /// True when Cholesky failed and the least-squares fallback was used.
    pub fallback: bool,
}

/// The Gaussian kernel `e^{-beta |x - y|^2}`.
pub fn kernel(x: &[f64], y: &[f64], beta: f64) -> Result<f64> {
    require_positive("beta", beta)?;
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok((-beta * squared_distance(x, y)).exp())
}

fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Builds the interpolant of `values` at `centers`.
///
/// Centers must be pairwise distinct (exact coordinate equality; near
/// duplicates are legal but show up in `condition_estimate`).
pub fn build(centers: &[Vec<f64>], values: &[f64], beta: f64) -> Result<(Interpolant, SolveReport)> {
    require_positive("beta", beta)?;
    if centers.is_empty() {
        return Err(Error::EmptyCenters);
    }
    let n = centers.len();
    let dimension = centers[0].len();
    for c in centers {
        if c.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: c.len(),
            });
        }
    }
    if values.len() != n {
        return Err(Error::Domain(format!(
            "expected {n} values for {n} centers, got {}",
            values.len()
        )));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if centers[i] == centers[j] {
                return Err(Error::DuplicateCenters {
                    first: i,
                    second: j,
                });
            }
        }
    }

    let gram = DMatrix::from_fn(n, n, |i, j| {
        (-beta * squared_distance(&centers[i], &centers[j])).exp()
    });
    let y = DVector::from_column_slice(values);

    let (coefficients, condition_estimate, fallback) = match gram.clone().cholesky() {
        Some(chol) => {
            let c = refine(&gram, &y, |r| chol.solve(r));
            let cond = one_norm(&gram) * one_norm(&chol.inverse());
            (c, cond, false)
        }
        None => {
            let svd = gram.clone().svd(true, true);
            let s_max = svd.singular_values.max();
            let s_min = svd.singular_values.min();
            let cutoff = s_max * n as f64 * f64::EPSILON;
            let pinv = svd
                .pseudo_inverse(cutoff)
                .map_err(|e| Error::Domain(format!("svd fallback failed: {e}")))?;
            let c = refine(&gram, &y, |r| &pinv * r);
            // the truncated pseudo-inverse hides the spectrum tail; fold in
            // the full-spectrum lower bound ||A^{-1}||_1 >= 1/(s_min sqrt(N))
            let norm_a = one_norm(&gram);
            let mut cond = norm_a * one_norm(&pinv);
            if s_min > 0.0 {
                cond = cond.max(norm_a / (s_min * (n as f64).sqrt()));
            } else {
                cond = f64::MAX;
            }
            (c, cond, true)
        }
    };

    let interpolant = Interpolant {
        beta,
        dimension,
        centers: centers.to_vec(),
        coefficients: coefficients.iter().copied().collect(),
    };
    let max_node_residual = centers
        .iter()
        .zip(values)
        .map(|(x, &v)| (interpolant.evaluate_unchecked(x) - v).abs())
        .fold(0.0, f64::max);

    Ok((
        interpolant,
        SolveReport {
            condition_estimate,
            max_node_residual,
            fallback,
        },
    ))
}

/// Iterative refinement: keeps applying the solve operator to the residual
/// while the residual actually shrinks.
fn refine<F>(a: &DMatrix<f64>, y: &DVector<f64>, solve: F) -> DVector<f64>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let mut c = solve(y);
    let mut best_res = (y - a * &c).abs().max();
    for _ in 0..3 {
        let r = y - a * &c;
        let candidate = &c + solve(&r);
        let res = (y - a * &candidate).abs().max();
        if res < best_res {
            c = candidate;
            best_res = res;
        } else {
            break;
        }
    }
    c
}

impl Interpolant {
    /// Evaluates `s(x) = sum_j c_j e^{-beta |x - x_j|^2}`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: x.len(),
            });
        }
        Ok(self.evaluate_unchecked(x))
    }

    fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        self.centers
            .iter()
            .zip(&self.coefficients)
            .map(|(center, c)| c * (-self.beta * squared_distance(x, center)).exp())
            .sum()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}
