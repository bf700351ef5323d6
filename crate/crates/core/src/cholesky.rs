//! Cholesky factorization `H = R^* R` (R upper triangular) that tolerates
//! positive *semi*definite input.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, ZERO};

/// Default relative tolerance used throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Factor `h = R^* R` with `R` upper triangular and a real, nonnegative diagonal.
///
/// Thresholds are relative to `‖h‖_max`. A pivot `d` with `|d| ≤ tol` is treated as
/// zero: the remaining entries of that row must be at most `√tol` in magnitude and
/// the whole row of `R` is set to zero. A pivot below `-tol`, or a zero pivot with a
/// non-negligible remainder, means `h` is not positive semidefinite.
pub fn psd_cholesky(h: &HermitianMatrix, tol: f64) -> Result<ComplexMatrix> {
    let n = h.dim();
    let a = h.matrix();
    let scale = a.max_norm();
    let mut r = ComplexMatrix::zeros(n, n);
    if scale == 0.0 {
        return Ok(r);
    }
    let pivot_tol = tol * scale;
    let column_tol = tol.sqrt() * scale;

    for k in 0..n {
        let d = a[(k, k)].re - (0..k).map(|s| r[(s, k)].norm_sqr()).sum::<f64>();
        if d < -pivot_tol {
            return Err(Error::NotPositiveSemidefinite { pivot: k, value: d });
        }

        let remainder: Vec<Complex64> = (k + 1..n)
            .map(|j| {
                a[(k, j)]
                    - (0..k)
                        .map(|s| r[(s, k)].conj() * r[(s, j)])
                        .sum::<Complex64>()
            })
            .collect();

        if d <= pivot_tol {
            if let Some(v) = remainder.iter().find(|v| v.norm() > column_tol) {
                return Err(Error::NotPositiveSemidefinite {
                    pivot: k,
                    value: -v.norm(),
                });
            }
            // row k of r stays zero
            continue;
        }

        let root = d.sqrt();
        r[(k, k)] = Complex64::new(root, 0.0);
        for (offset, v) in remainder.into_iter().enumerate() {
            r[(k, k + 1 + offset)] = v / root;
        }
    }
    Ok(r)
}

/// Number of rows of `r` that are not identically zero.
pub fn nonzero_rows(r: &ComplexMatrix) -> usize {
    (0..r.rows())
        .filter(|&i| r.row(i).iter().any(|&z| z != ZERO))
        .count()
}
