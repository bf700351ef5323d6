//! Diagonal quantum channels on `C^{n×n}`.
//!
//! A diagonal channel scales each element of an orthonormal Hermitian basis
//! (identity, symmetric and antisymmetric off-diagonal Pauli-type matrices, and
//! traceless diagonal matrices). This crate builds such channels, checks complete
//! positivity and trace preservation through the Choi matrix, extracts Kraus
//! operators from a semidefinite Cholesky factorization of the Choi matrix, and
//! computes the transition probabilities a channel induces on basis states.
//!
//! Kraus operators follow the convention `Φ(A) = Σ K^* A K`.

#![forbid(unsafe_code)]

pub mod basis;
pub mod channel;
pub mod cholesky;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod kraus;
pub mod matrix;
pub mod transitions;

pub use basis::{generalized_pauli, orthonormal_basis, HermitianBasis};
pub use channel::{ChannelFamily, ChoiMatrix, CpReport, DiagonalChannel};
pub use cholesky::{psd_cholesky, DEFAULT_TOL};
pub use eigen::hermitian_eigenvalues;
pub use error::{Error, Result};
pub use kraus::{
    closed_form_coefficients, closed_form_kraus, kraus_from_channel, kraus_from_choi, reshape_row,
    ClosedFormCoefficients, KrausSet,
};
pub use matrix::{ComplexMatrix, DensityMatrix, HermitianMatrix};
pub use num_complex::Complex64;
pub use transitions::{
    is_row_stochastic, transition_closed_form, transition_direct, TransitionMatrix,
};
