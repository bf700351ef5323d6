//! Orthonormal Hermitian basis of `C^{n×n}` built from generalized Pauli matrices.
//!
//! Ordering of the n² elements:
//!
//! ```text
//! e0                      = I / √n
//! e_{1,q}, q = 1..N       = (E_ij + E_ji) / √2            pairs i<j, lexicographic
//! e_{2,q}, q = 1..N       = (−i E_ij + i E_ji) / √2       same pair order
//! e_{3,m}, m = 1..n−1     = diag(1,…,1,−m,0,…,0) / √(m(m+1))   (m ones)
//! ```
//!
//! with `N = n(n−1)/2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, ONE};

/// Imaginary-part tolerance for coefficients of a Hermitian matrix.
const REAL_COEFF_TOL: f64 = 1e-12;

/// Unnormalized generalized Pauli family, with the diagonal σ_3 matrices
/// already replaced by the traceless `A_m`.
#[derive(Clone, Debug)]
pub struct GeneralizedPauli {
    pub identity: ComplexMatrix,
    pub symmetric: Vec<ComplexMatrix>,
    pub antisymmetric: Vec<ComplexMatrix>,
    pub diagonal: Vec<ComplexMatrix>,
}

impl GeneralizedPauli {
    pub fn count(&self) -> usize {
        1 + self.symmetric.len() + self.antisymmetric.len() + self.diagonal.len()
    }
}

/// Off-diagonal index pairs `(i, j)`, `i < j`, in lexicographic order (zero-based).
pub fn index_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "basis dimension must be at least 2, got {n}"
        )));
    }
    Ok(())
}

/// `A_m = diag(1,…,1,−m,0,…,0)` with `m` leading ones.
fn traceless_diagonal(n: usize, m: usize) -> ComplexMatrix {
    let mut d = vec![0.0; n];
    d[..m].fill(1.0);
    d[m] = -(m as f64);
    ComplexMatrix::from_real_diagonal(&d)
}

pub fn generalized_pauli(n: usize) -> Result<GeneralizedPauli> {
    check_dimension(n)?;
    let i = Complex64::new(0.0, 1.0);
    let mut symmetric = Vec::new();
    let mut antisymmetric = Vec::new();
    for (a, b) in index_pairs(n) {
        let mut s = ComplexMatrix::zeros(n, n);
        s[(a, b)] = ONE;
        s[(b, a)] = ONE;
        symmetric.push(s);

        let mut t = ComplexMatrix::zeros(n, n);
        t[(a, b)] = -i;
        t[(b, a)] = i;
        antisymmetric.push(t);
    }
    let diagonal = (1..n).map(|m| traceless_diagonal(n, m)).collect();
    Ok(GeneralizedPauli {
        identity: ComplexMatrix::identity(n),
        symmetric,
        antisymmetric,
        diagonal,
    })
}

/// The orthonormal basis, as an ordered list of n² Hermitian matrices.
#[derive(Clone, Debug)]
pub struct HermitianBasis {
    n: usize,
    elements: Vec<HermitianMatrix>,
}

impl HermitianBasis {
    pub fn new(n: usize) -> Result<Self> {
        let family = generalized_pauli(n)?;
        let sqrt2 = std::f64::consts::SQRT_2;
        let mut elements = Vec::with_capacity(n * n);
        let mut push = |m: ComplexMatrix, norm: f64| -> Result<()> {
            elements.push(HermitianMatrix::new(m.scale_real(1.0 / norm))?);
            Ok(())
        };
        push(family.identity, (n as f64).sqrt())?;
        for s in family.symmetric {
            push(s, sqrt2)?;
        }
        for t in family.antisymmetric {
            push(t, sqrt2)?;
        }
        for (idx, d) in family.diagonal.into_iter().enumerate() {
            let m = (idx + 1) as f64;
            push(d, (m * (m + 1.0)).sqrt())?;
        }
        Ok(Self { n, elements })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `n(n−1)/2`, the number of off-diagonal pairs.
    #[inline]
    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianMatrix] {
        &self.elements
    }

    pub fn get(&self, alpha: usize) -> &HermitianMatrix {
        &self.elements[alpha]
    }

    /// Position of `e_{3,m}` (m = 1..n−1) in the ordered list.
    pub fn diagonal_index(&self, m: usize) -> usize {
        debug_assert!((1..self.n).contains(&m));
        2 * self.pair_count() + m
    }

    /// Coefficients `c_α = ⟨e_α|A⟩`.
    ///
    /// If `a` is Hermitian the coefficients must come out real; an imaginary part
    /// above tolerance is reported as an inconsistency.
    pub fn expand(&self, a: &ComplexMatrix) -> Result<Vec<Complex64>> {
        a.require_shape(self.n, self.n, "expand")?;
        let coeffs = self
            .elements
            .iter()
            .map(|e| e.matrix().hs_inner(a))
            .collect::<Result<Vec<_>>>()?;
        let scale = a.max_norm().max(1.0);
        if a.hermitian_deviation() <= REAL_COEFF_TOL * scale {
            if let Some((alpha, c)) = coeffs
                .iter()
                .enumerate()
                .find(|(_, c)| c.im.abs() > REAL_COEFF_TOL * scale)
            {
                return Err(Error::Inconsistent(format!(
                    "Hermitian input produced complex coefficient {c} at basis index {alpha}"
                )));
            }
        }
        Ok(coeffs)
    }

    /// `Σ_α c_α e_α`.
    pub fn reconstruct(&self, coeffs: &[Complex64]) -> Result<ComplexMatrix> {
        if coeffs.len() != self.elements.len() {
            return Err(Error::Dimension {
                op: "reconstruct",
                expected: format!("{} coefficients", self.elements.len()),
                found: format!("{} coefficients", coeffs.len()),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for (c, e) in coeffs.iter().zip(&self.elements) {
            if *c != Complex64::new(0.0, 0.0) {
                out.add_scaled(*c, e.matrix())?;
            }
        }
        Ok(out)
    }

    /// Gram matrix `G[α][β] = ⟨e_α|e_β⟩`.
    pub fn gram(&self) -> ComplexMatrix {
        let m = self.elements.len();
        let mut g = ComplexMatrix::zeros(m, m);
        for (a, ea) in self.elements.iter().enumerate() {
            for (b, eb) in self.elements.iter().enumerate() {
                g[(a, b)] = ea.matrix().hs_inner(eb.matrix()).expect("same shape");
            }
        }
        g
    }
}

pub fn orthonormal_basis(n: usize) -> Result<HermitianBasis> {
    HermitianBasis::new(n)
}

/// Closed-form expansion of the matrix unit `E_kk` (k is 1-based), real coefficients.
pub fn matrix_unit_coefficients(n: usize, k: usize) -> Vec<f64> {
    let pairs = n * (n - 1) / 2;
    let mut c = vec![0.0; n * n];
    c[0] = 1.0 / (n as f64).sqrt();
    let diag = |q: usize| 2 * pairs + q;
    if k >= 2 {
        let kf = k as f64;
        c[diag(k - 1)] = -((kf - 1.0) / kf).sqrt();
    }
    for q in k..n {
        let qf = q as f64;
        c[diag(q)] = 1.0 / (qf * (qf + 1.0)).sqrt();
    }
    c
}
