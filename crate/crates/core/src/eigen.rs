//! Eigenvalues of Hermitian matrices by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of `h` in ascending order.
///
/// Each rotation first removes the phase of the pivot entry with a diagonal
/// unitary, then annihilates it with a real Givens rotation.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let scale = a.frobenius_norm();
    if n == 0 {
        return Ok(Vec::new());
    }
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let threshold = f64::EPSILON * 1e-2 * scale;

    let off_norm = |a: &crate::matrix::ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= threshold * 1e-3 {
                    continue;
                }

                // Phase: column q times e^{-iφ}, row q times e^{iφ}; a[p][q] becomes |a_pq|.
                let phase = apq / mag;
                let phase_conj = phase.conj();
                for r in 0..n {
                    a[(r, q)] *= phase_conj;
                }
                for r in 0..n {
                    a[(q, r)] *= phase;
                }

                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for r in 0..n {
                    let x = a[(r, p)];
                    let y = a[(r, q)];
                    a[(r, p)] = x * c - y * s;
                    a[(r, q)] = x * s + y * c;
                }
                for r in 0..n {
                    let x = a[(p, r)];
                    let y = a[(q, r)];
                    a[(p, r)] = x * c - y * s;
                    a[(q, r)] = x * s + y * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - t * mag, 0.0);
                a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
            }
        }
    }
    if !converged && off_norm(&a) > threshold * 1e3 {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}
