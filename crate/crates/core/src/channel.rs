//! Diagonal channels: maps whose matrix in the Hermitian basis is diagonal.
//!
//! A channel on `C^{n×n}` is stored as its n² diagonal coefficients in basis order,
//! `(λ0, r_1..r_N, s_1..s_N, t_1..t_{n−1})`, and acts by scaling each expansion
//! coefficient.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::basis::HermitianBasis;
use crate::error::{Bound, Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// Slack added to the closed family intervals.
pub const FAMILY_RANGE_SLACK: f64 = 1e-12;
const COEFF_BOUND_SLACK: f64 = 1e-12;

/// The four parameterized channel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelFamily {
    Depolarizing,
    TransposeDepolarizing,
    HybridDepolarizingClassical,
    HybridTransposeDepolarizingClassical,
}

impl ChannelFamily {
    pub const ALL: [ChannelFamily; 4] = [
        ChannelFamily::Depolarizing,
        ChannelFamily::TransposeDepolarizing,
        ChannelFamily::HybridDepolarizingClassical,
        ChannelFamily::HybridTransposeDepolarizingClassical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelFamily::Depolarizing => "depolarizing",
            ChannelFamily::TransposeDepolarizing => "transpose_depolarizing",
            ChannelFamily::HybridDepolarizingClassical => "hybrid_depolarizing_classical",
            ChannelFamily::HybridTransposeDepolarizingClassical => {
                "hybrid_transpose_depolarizing_classical"
            }
        }
    }

    /// Closed interval of `p` for which the family is a channel in dimension `n`.
    pub fn range(self, n: usize) -> (f64, f64) {
        let n = n as f64;
        match self {
            ChannelFamily::Depolarizing => (-1.0 / (n * n - 1.0), 1.0),
            ChannelFamily::TransposeDepolarizing
            | ChannelFamily::HybridTransposeDepolarizingClassical => {
                (-1.0 / (n - 1.0), 1.0 / (n + 1.0))
            }
            ChannelFamily::HybridDepolarizingClassical => {
                (-1.0 / (2.0 * n - 1.0), 1.0 / ((n - 1.0) * (n - 1.0)))
            }
        }
    }

    /// Signs applied to `p` on the symmetric and antisymmetric blocks; the
    /// traceless diagonal block always gets `+p`.
    fn off_diagonal_signs(self) -> (f64, f64) {
        match self {
            ChannelFamily::Depolarizing => (1.0, 1.0),
            ChannelFamily::TransposeDepolarizing => (1.0, -1.0),
            ChannelFamily::HybridDepolarizingClassical => (-1.0, -1.0),
            ChannelFamily::HybridTransposeDepolarizingClassical => (-1.0, 1.0),
        }
    }

    /// Coefficient vector for parameter `p`, without range validation.
    pub fn coefficients(self, n: usize, p: f64) -> Vec<f64> {
        let pairs = n * (n - 1) / 2;
        let (sym, anti) = self.off_diagonal_signs();
        let mut c = Vec::with_capacity(n * n);
        c.push(1.0);
        c.extend(std::iter::repeat_n(sym * p, pairs));
        c.extend(std::iter::repeat_n(anti * p, pairs));
        c.extend(std::iter::repeat_n(p, n - 1));
        c
    }

    pub fn check_parameter(self, n: usize, p: f64) -> Result<()> {
        let (lower, upper) = self.range(n);
        let violated = if p.is_nan() || p < lower - FAMILY_RANGE_SLACK {
            Some(Bound::Lower)
        } else if p > upper + FAMILY_RANGE_SLACK {
            Some(Bound::Upper)
        } else {
            None
        };
        match violated {
            Some(bound) => Err(Error::ParameterOutOfRange {
                family: self,
                n,
                p,
                lower,
                upper,
                bound,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown channel family '{s}'")))
    }
}

/// Outcome of a complete-positivity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpReport {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug)]
pub struct DiagonalChannel {
    n: usize,
    coefficients: Vec<f64>,
    basis: Arc<HermitianBasis>,
}

impl DiagonalChannel {
    /// Validated construction: `λ0 = 1` and every coefficient in `[−1, 1]`.
    pub fn new(n: usize, coefficients: Vec<f64>) -> Result<Self> {
        let channel = Self::from_raw(n, coefficients)?;
        if channel.coefficients[0] != 1.0 {
            return Err(Error::InvalidChannel(format!(
                "identity coefficient must be exactly 1, got {}",
                channel.coefficients[0]
            )));
        }
        if let Some((idx, c)) = channel
            .coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| c.abs() > 1.0 + COEFF_BOUND_SLACK)
        {
            return Err(Error::InvalidChannel(format!(
                "coefficient {idx} = {c} lies outside [-1, 1]"
            )));
        }
        Ok(channel)
    }

    /// Any finite coefficient vector of length n². Used to examine candidate maps
    /// that may fail trace preservation or contractivity; nothing beyond shape is checked.
    pub fn from_raw(n: usize, coefficients: Vec<f64>) -> Result<Self> {
        let basis = Arc::new(HermitianBasis::new(n)?);
        if coefficients.len() != n * n {
            return Err(Error::Dimension {
                op: "DiagonalChannel",
                expected: format!("{} coefficients", n * n),
                found: format!("{} coefficients", coefficients.len()),
            });
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidChannel("non-finite coefficient".into()));
        }
        Ok(Self {
            n,
            coefficients,
            basis,
        })
    }

    pub fn from_family(family: ChannelFamily, n: usize, p: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "channel dimension must be at least 2, got {n}"
            )));
        }
        family.check_parameter(n, p)?;
        Self::new(n, family.coefficients(n, p))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, vec![1.0; n * n])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn basis(&self) -> &HermitianBasis {
        &self.basis
    }

    /// Coefficients `t_1..t_{n−1}` on the traceless diagonal directions.
    pub fn diagonal_block(&self) -> &[f64] {
        &self.coefficients[self.n * (self.n - 1) + 1..]
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut coeffs = self.basis.expand(a)?;
        for (c, &lambda) in coeffs.iter_mut().zip(&self.coefficients) {
            *c *= lambda;
        }
        self.basis.reconstruct(&coeffs)
    }

    /// The channel "apply `self`, then `other`"; coefficients multiply componentwise.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension {
                op: "compose",
                expected: format!("dimension {}", self.n),
                found: format!("dimension {}", other.n),
            });
        }
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Self {
            n: self.n,
            coefficients,
            basis: Arc::clone(&self.basis),
        })
    }

    /// `C = Σ_ij E_ij ⊗ Φ(E_ij)`.
    pub fn choi(&self) -> Result<ChoiMatrix> {
        let n = self.n;
        let mut c = ComplexMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let image = self.apply(&ComplexMatrix::unit(n, i, j))?;
                c.set_block(i * n, j * n, &image);
            }
        }
        Ok(ChoiMatrix {
            n,
            matrix: HermitianMatrix::new(c)?,
        })
    }

    pub fn is_completely_positive(&self, tol: f64) -> Result<CpReport> {
        let min_eigenvalue = self.choi()?.min_eigenvalue()?;
        Ok(CpReport {
            completely_positive: min_eigenvalue >= -tol,
            min_eigenvalue,
        })
    }

    /// Checks `tr Φ(e_α) = tr e_α` on every basis element.
    pub fn is_trace_preserving(&self, tol: f64) -> Result<bool> {
        for e in self.basis.elements() {
            let image = self.apply(e.matrix())?;
            if (image.trace() - Complex64::new(e.trace(), 0.0)).norm() > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Choi matrix, block (i, j) of size n×n equal to `Φ(E_ij)`.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    n: usize,
    matrix: HermitianMatrix,
}

impl ChoiMatrix {
    /// Dimension of the underlying channel (the matrix itself is n²×n²).
    pub fn channel_dim(&self) -> usize {
        self.n
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.matrix()
    }

    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        self.matrix.matrix().block(i * self.n, j * self.n, self.n)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.matrix.eigenvalues()?[0])
    }

    /// `‖M − I‖_max` where `M[j][i] = tr Φ(E_ij)`; zero iff the map preserves trace.
    ///
    /// For a Kraus representation `Φ(A) = Σ K^* A K` this `M` equals `Σ K K^*`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                let tr = self.block(i, j).trace();
                worst = worst.max((tr - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}
