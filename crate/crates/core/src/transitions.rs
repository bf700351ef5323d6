//! Classical transition probabilities `P[k][j] = [Φ(E_kk)]_jj` induced by a
//! diagonal channel on computational basis states.
//!
//! Indices in the formulas below are 1-based (`k, j = 1..n`, `t_1..t_{n−1}`);
//! storage is zero-based.

use crate::channel::DiagonalChannel;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Entries in `[-CLAMP_TOL, 0)` are rounding noise and are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-12;
/// Largest off-diagonal modulus tolerated in `Φ(E_kk)`.
pub const DIAGONAL_IMAGE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    /// Wraps row-major entries, clamping values in `[-1e-12, 0)` to zero.
    /// Larger negative entries are kept so that [`is_row_stochastic`] can report them.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension {
                op: "TransitionMatrix",
                expected: format!("{n}x{n}"),
                found: "ragged rows".into(),
            });
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|x| {
                if (-CLAMP_TOL..0.0).contains(&x) {
                    0.0
                } else {
                    x
                }
            })
            .collect();
        Ok(Self { n, entries })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `P_kj` with zero-based `k`, `j`.
    #[inline]
    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.entries[k * self.n + j]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.entries[k * self.n..(k + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Matrix product: the transition matrix of "first `self`, then `other`".
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension {
                op: "TransitionMatrix::then",
                expected: format!("{0}x{0}", self.n),
                found: format!("{0}x{0}", other.n),
            });
        }
        let n = self.n;
        let rows = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| (0..n).map(|l| self.get(k, l) * other.get(l, j)).sum())
                    .collect()
            })
            .collect();
        Self::from_rows(rows)
    }
}

/// Reads `P[k][j]` off the diagonal of `Φ(E_kk)`, checking that the image is diagonal.
pub fn transition_direct(channel: &DiagonalChannel) -> Result<TransitionMatrix> {
    let n = channel.dim();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let image = channel.apply(&ComplexMatrix::unit(n, k, k))?;
        let mut off_diag: f64 = 0.0;
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            for l in 0..n {
                if l != j {
                    off_diag = off_diag.max(image[(j, l)].norm());
                }
            }
            row.push(image[(j, j)].re);
        }
        if off_diag > DIAGONAL_IMAGE_TOL {
            return Err(Error::Inconsistent(format!(
                "image of E_{0}{0} has off-diagonal entry of size {off_diag:e}",
                k + 1
            )));
        }
        rows.push(row);
    }
    TransitionMatrix::from_rows(rows)
}

/// Closed-form transition matrix from the traceless-diagonal coefficients `t_1..t_{n−1}`.
pub fn transition_closed_form(t: &[f64], n: usize) -> Result<TransitionMatrix> {
    if n < 2 || t.len() != n - 1 {
        return Err(Error::Dimension {
            op: "transition_closed_form",
            expected: format!("{} coefficients", n.saturating_sub(1)),
            found: format!("{} coefficients", t.len()),
        });
    }
    let nf = n as f64;
    // 1-based accessor for t_i
    let t_at = |i: usize| t[i - 1];
    // tail(k) = Σ_{i=k}^{n−1} t_i / (i(i+1)), empty for k = n
    let tail = |k: usize| -> f64 {
        (k..n)
            .map(|i| {
                let fi = i as f64;
                t_at(i) / (fi * (fi + 1.0))
            })
            .sum()
    };

    let mut rows = Vec::with_capacity(n);
    for k in 1..n {
        let kf = k as f64;
        let s_k = tail(k);
        // the t_{k−1} term is absent for k = 1
        let prev = if k >= 2 { t_at(k - 1) } else { 0.0 };
        let row = (1..=n)
            .map(|j| {
                if j < k {
                    1.0 / nf - prev / kf + s_k
                } else if j == k {
                    1.0 / nf + (kf - 1.0) * prev / kf + s_k
                } else {
                    let jf = j as f64;
                    1.0 / nf - t_at(j - 1) / jf + tail(j)
                }
            })
            .collect();
        rows.push(row);
    }
    let last = t_at(n - 1);
    let mut row_n = vec![1.0 / nf - last / nf; n - 1];
    row_n.push(1.0 / nf + (nf - 1.0) * last / nf);
    rows.push(row_n);

    TransitionMatrix::from_rows(rows)
}

/// All entries `≥ −tol` and every row sums to `1 ± tol`.
pub fn is_row_stochastic(p: &TransitionMatrix, tol: f64) -> bool {
    (0..p.dim()).all(|k| {
        let row = p.row(k);
        row.iter().all(|&x| x >= -tol) && (row.iter().sum::<f64>() - 1.0).abs() <= tol
    })
}
