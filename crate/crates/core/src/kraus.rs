//! Kraus operators of diagonal channels.
//!
//! Convention throughout: `Φ(A) = Σ_i K_i^* A K_i`, with trace preservation
//! equivalent to `Σ_i K_i K_i^* = I`. To convert to the `ρ ↦ Σ K ρ K^*` form,
//! replace every operator by its conjugate transpose.
//!
//! Two routes are provided:
//! - [`kraus_from_choi`]: factor the Choi matrix as `R^* R` and reshape each
//!   nonzero row of `R` into an n×n operator. Works for every diagonal channel.
//! - [`closed_form_kraus`]: explicit operators for the hybrid depolarizing
//!   classical family, in the same order the elimination produces them.

use num_complex::Complex64;

use crate::channel::{ChannelFamily, ChoiMatrix, DiagonalChannel, FAMILY_RANGE_SLACK};
use crate::cholesky::psd_cholesky;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

#[derive(Clone, Debug)]
pub struct KrausSet {
    n: usize,
    operators: Vec<ComplexMatrix>,
    source_rows: Vec<usize>,
}

impl KrausSet {
    /// Operators are tagged with their position in the list as their source row.
    pub fn new(n: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        let rows = (0..operators.len()).collect();
        Self::with_source_rows(n, operators, rows)
    }

    /// `source_rows[i]` records which row of the Cholesky factor produced operator `i`.
    pub fn with_source_rows(
        n: usize,
        operators: Vec<ComplexMatrix>,
        source_rows: Vec<usize>,
    ) -> Result<Self> {
        if source_rows.len() != operators.len() {
            return Err(Error::Dimension {
                op: "KrausSet",
                expected: format!("{} source rows", operators.len()),
                found: format!("{} source rows", source_rows.len()),
            });
        }
        for k in &operators {
            k.require_shape(n, n, "KrausSet")?;
        }
        Ok(Self {
            n,
            operators,
            source_rows,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn source_rows(&self) -> &[usize] {
        &self.source_rows
    }

    /// Copy without operator `index`.
    pub fn without(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.operators.remove(index);
        out.source_rows.remove(index);
        out
    }

    /// `Σ_i K_i^* A K_i`.
    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        a.require_shape(self.n, self.n, "apply_kraus")?;
        let mut out = ComplexMatrix::zeros(self.n, self.n);
        for k in &self.operators {
            let term = k.adjoint().matmul(a)?.matmul(k)?;
            out.add_scaled(Complex64::new(1.0, 0.0), &term)?;
        }
        Ok(out)
    }

    /// `‖Σ_i K_i K_i^* − I‖_max`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.n, self.n);
        for k in &self.operators {
            let kk = k.matmul(&k.adjoint()).expect("square operators");
            sum.add_scaled(Complex64::new(1.0, 0.0), &kk)
                .expect("same shape");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.n))
            .expect("same shape")
    }

    /// Worst `‖Σ K^* E_ij K − Φ(E_ij)‖_max` over all matrix units.
    pub fn reconstruction_residual(&self, channel: &DiagonalChannel) -> Result<f64> {
        if channel.dim() != self.n {
            return Err(Error::Dimension {
                op: "reconstruction_residual",
                expected: format!("dimension {}", self.n),
                found: format!("dimension {}", channel.dim()),
            });
        }
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                let unit = ComplexMatrix::unit(self.n, i, j);
                let diff = self.apply(&unit)?.max_abs_diff(&channel.apply(&unit)?)?;
                worst = worst.max(diff);
            }
        }
        Ok(worst)
    }
}

/// Row-major reshape of a length-n² row vector into an n×n matrix.
pub fn reshape_row(kappa: &[Complex64], n: usize) -> Result<ComplexMatrix> {
    if kappa.len() != n * n {
        return Err(Error::Dimension {
            op: "reshape_row",
            expected: format!("{} entries", n * n),
            found: format!("{} entries", kappa.len()),
        });
    }
    ComplexMatrix::from_vec(n, n, kappa.to_vec())
}

/// Kraus operators from the rows of the PSD Cholesky factor of `choi`.
/// Rows zeroed by the semidefinite pivot rule are skipped.
pub fn kraus_from_choi(choi: &ChoiMatrix, tol: f64) -> Result<KrausSet> {
    let n = choi.channel_dim();
    let r = psd_cholesky(choi.hermitian(), tol)?;
    let mut operators = Vec::new();
    let mut source_rows = Vec::new();
    for row in 0..r.rows() {
        let kappa = r.row(row);
        if kappa.iter().all(|&z| z == ZERO) {
            continue;
        }
        operators.push(reshape_row(kappa, n)?);
        source_rows.push(row);
    }
    KrausSet::with_source_rows(n, operators, source_rows)
}

/// Shorthand for `kraus_from_choi(&channel.choi()?, tol)`.
pub fn kraus_from_channel(channel: &DiagonalChannel, tol: f64) -> Result<KrausSet> {
    kraus_from_choi(&channel.choi()?, tol)
}

/// Elimination coefficients for the hybrid depolarizing classical family.
///
/// The diagonal-type Choi entries evolve as `a_m = a_{m−1} − b_{m−1}²/a_{m−1}`,
/// `b_m = b_{m−1} − b_{m−1}²/a_{m−1}` from `a_0 = p + (1−p)/n`, `b_0 = −p`, while the
/// remaining pivots stay at `(1−p)/n`. `a` and `b` hold the closed-form values;
/// the `*_recurrence` fields hold the values produced by iterating the recurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormCoefficients {
    pub n: usize,
    pub p: f64,
    /// `a_0..a_{n−1}`
    pub a: Vec<f64>,
    /// `b_0..b_{n−2}`
    pub b: Vec<f64>,
    pub a_recurrence: Vec<f64>,
    pub b_recurrence: Vec<f64>,
    /// Diagonal Choi entry of the (k,k) positions: `p + (1−p)/n`.
    pub alpha: f64,
    /// Choi entry of every off-diagonal position: `(1−p)/n`.
    pub beta: f64,
    /// Coupling between (k,k) positions: `−p`.
    pub gamma: f64,
}

impl ClosedFormCoefficients {
    /// The invariant difference `a_m − b_m = 2p + (1−p)/n`.
    pub fn difference(&self) -> f64 {
        2.0 * self.p + (1.0 - self.p) / self.n as f64
    }
}

const CLOSED_FORM_AGREEMENT: f64 = 1e-12;
const DEGENERACY_TOL: f64 = 1e-12;

pub fn closed_form_coefficients(n: usize, p: f64) -> Result<ClosedFormCoefficients> {
    let family = ChannelFamily::HybridDepolarizingClassical;
    if n < 2 {
        return Err(Error::Domain(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    family.check_parameter(n, p)?;
    let (lower, upper) = family.range(n);
    if (p - lower).abs() <= FAMILY_RANGE_SLACK || (p - upper).abs() <= FAMILY_RANGE_SLACK {
        return Err(Error::Degenerate(format!(
            "p = {p} is a boundary of the admissible interval [{lower}, {upper}]; the Choi matrix is singular"
        )));
    }

    let nf = n as f64;
    let alpha = p + (1.0 - p) / nf;
    let beta = (1.0 - p) / nf;
    let gamma = -p;
    if (alpha * beta).abs() <= DEGENERACY_TOL {
        return Err(Error::Degenerate(format!(
            "(p + (1-p)/n)((1-p)/n) = {} vanishes",
            alpha * beta
        )));
    }

    let diff = 2.0 * p + (1.0 - p) / nf;
    let mut a = vec![alpha];
    let mut b = vec![gamma];
    for m in 1..n {
        let mf = m as f64;
        let denom = -p * mf + diff;
        if denom.abs() <= DEGENERACY_TOL {
            return Err(Error::Degenerate(format!(
                "denominator -p*{m} + 2p + (1-p)/n vanishes"
            )));
        }
        a.push(diff * (1.0 - p / denom));
        if m <= n - 2 {
            b.push(diff * (-p / denom));
        }
    }

    let mut a_rec = vec![alpha];
    let mut b_rec = vec![gamma];
    for m in 1..n {
        let (prev_a, prev_b) = (a_rec[m - 1], b_rec[m - 1]);
        if prev_a.abs() <= DEGENERACY_TOL {
            return Err(Error::Degenerate(format!("pivot a_{} vanishes", m - 1)));
        }
        let shift = prev_b * prev_b / prev_a;
        a_rec.push(prev_a - shift);
        if m <= n - 2 {
            b_rec.push(prev_b - shift);
        }
    }

    for (m, (x, y)) in a.iter().zip(&a_rec).enumerate() {
        if (x - y).abs() > CLOSED_FORM_AGREEMENT * x.abs().max(1.0) {
            return Err(Error::Inconsistent(format!(
                "a_{m}: closed form {x} disagrees with recurrence {y}"
            )));
        }
    }
    for (m, (x, y)) in b.iter().zip(&b_rec).enumerate() {
        if (x - y).abs() > CLOSED_FORM_AGREEMENT * x.abs().max(1.0) {
            return Err(Error::Inconsistent(format!(
                "b_{m}: closed form {x} disagrees with recurrence {y}"
            )));
        }
    }
    if let Some(m) = a[..n - 1].iter().position(|&x| x <= DEGENERACY_TOL) {
        return Err(Error::Degenerate(format!(
            "pivot a_{m} = {} is not positive",
            a[m]
        )));
    }

    Ok(ClosedFormCoefficients {
        n,
        p,
        a,
        b,
        a_recurrence: a_rec,
        b_recurrence: b_rec,
        alpha,
        beta,
        gamma,
    })
}

/// Explicit n² Kraus operators of the hybrid depolarizing classical channel,
/// ordered by the Cholesky row they correspond to.
///
/// Row `k·n + k` gives a diagonal operator with `√a_k` at (k,k) and
/// `b_k/√a_k` at every (j,j), j > k; every other row `i·n + j` gives the single
/// entry `√((1−p)/n)` at (i,j).
pub fn closed_form_kraus(n: usize, p: f64) -> Result<KrausSet> {
    let coeffs = closed_form_coefficients(n, p)?;
    let sqrt_beta = Complex64::new(coeffs.beta.sqrt(), 0.0);
    let mut operators = Vec::with_capacity(n * n);
    for row in 0..n * n {
        let (i, j) = (row / n, row % n);
        let mut k = ComplexMatrix::zeros(n, n);
        if i == j {
            let root = coeffs.a[i].sqrt();
            k[(i, i)] = Complex64::new(root, 0.0);
            if i + 1 < n {
                let off = coeffs.b[i] / root;
                for d in i + 1..n {
                    k[(d, d)] = Complex64::new(off, 0.0);
                }
            }
        } else {
            k[(i, j)] = sqrt_beta;
        }
        operators.push(k);
    }
    KrausSet::new(n, operators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn reshape_examples() {
        let k = reshape_row(&[c(1.0), c(2.0), c(3.0), c(4.0)], 2).unwrap();
        assert_eq!(
            k,
            ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap()
        );

        let flat: Vec<Complex64> = ComplexMatrix::identity(3).as_slice().to_vec();
        assert_eq!(reshape_row(&flat, 3).unwrap(), ComplexMatrix::identity(3));

        assert!(matches!(
            reshape_row(&[c(1.0); 5], 2),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn completely_depolarizing_qubit_extraction() {
        let ch = DiagonalChannel::from_family(ChannelFamily::Depolarizing, 2, 0.0).unwrap();
        let ks = kraus_from_channel(&ch, 1e-10).unwrap();
        assert_eq!(ks.len(), 4);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (idx, k) in ks.operators().iter().enumerate() {
            let expected = ComplexMatrix::unit(2, idx / 2, idx % 2).scale_real(h);
            assert!(k.max_abs_diff(&expected).unwrap() < 1e-15);
        }
        assert!(ks.completeness_residual() < 1e-15);

        let s3 = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(ks.apply(&s3).unwrap().max_norm() < 1e-15);

        let a = ComplexMatrix::from_real_rows(&[vec![2.0, 5.0], vec![-1.0, 3.0]]).unwrap();
        let expected = ComplexMatrix::identity(2).scale_real(2.5);
        assert!(ks.apply(&a).unwrap().max_abs_diff(&expected).unwrap() < 1e-14);

        let deficient = ks.without(0);
        assert!(deficient.completeness_residual() >= 0.4);
    }

    #[test]
    fn identity_channel_has_single_operator() {
        for n in 2..=5 {
            let ks = kraus_from_channel(&DiagonalChannel::identity(n).unwrap(), 1e-10).unwrap();
            assert_eq!(ks.len(), 1);
            assert!(
                ks.operators()[0]
                    .max_abs_diff(&ComplexMatrix::identity(n))
                    .unwrap()
                    < 1e-14
            );
            assert_eq!(ks.source_rows(), &[0]);
        }
    }

    #[test]
    fn identity_set_is_complete_and_acts_trivially() {
        let ks = KrausSet::new(3, vec![ComplexMatrix::identity(3)]).unwrap();
        assert_eq!(ks.completeness_residual(), 0.0);
        let a = ComplexMatrix::unit(3, 2, 0);
        assert_eq!(ks.apply(&a).unwrap(), a);
        assert!(ks.apply(&ComplexMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn hybrid_qubit_first_operator() {
        let ch = DiagonalChannel::from_family(ChannelFamily::HybridDepolarizingClassical, 2, 0.2)
            .unwrap();
        let ks = kraus_from_channel(&ch, 1e-10).unwrap();
        let k1 = ComplexMatrix::from_real_diagonal(&[0.6f64.sqrt(), -0.2 / 0.6f64.sqrt()]);
        assert!(ks.operators()[0].max_abs_diff(&k1).unwrap() < 1e-15);
    }

    #[test]
    fn non_cp_choi_is_rejected() {
        let ch = DiagonalChannel::from_raw(2, vec![1.0, 1.1, 1.1, 1.1]).unwrap();
        assert!(matches!(
            kraus_from_channel(&ch, 1e-10),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn qubit_coefficients() {
        let co = closed_form_coefficients(2, 0.2).unwrap();
        assert!((co.a[0] - 0.6).abs() < 1e-15);
        assert!((co.b[0] + 0.2).abs() < 1e-15);
        assert!((co.a[1] - 8.0 / 15.0).abs() < 1e-15);
        assert_eq!(co.b.len(), 1);
        assert!((co.beta - 0.4).abs() < 1e-15);
    }

    #[test]
    fn zero_parameter_coefficients() {
        for n in 2..=6 {
            let co = closed_form_coefficients(n, 0.0).unwrap();
            assert!(co.a.iter().all(|&x| (x - 1.0 / n as f64).abs() < 1e-15));
            assert!(co.b.iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn constant_difference() {
        for n in 2..=6 {
            for p in [-0.05, 0.01, 0.03] {
                let co = closed_form_coefficients(n, p).unwrap();
                for m in 0..n - 1 {
                    assert!((co.a[m] - co.b[m] - co.difference()).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn degenerate_and_out_of_range_parameters() {
        // n = 2, p = 1 makes (1-p)/n vanish
        assert!(matches!(
            closed_form_coefficients(2, 1.0),
            Err(Error::Degenerate(_))
        ));
        let (lo, hi) = ChannelFamily::HybridDepolarizingClassical.range(4);
        assert!(matches!(
            closed_form_kraus(4, lo),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            closed_form_kraus(4, hi),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            closed_form_kraus(4, 0.5),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn closed_form_qubit_operators() {
        let ks = closed_form_kraus(2, 0.2).unwrap();
        let s = 0.6f64.sqrt();
        let expected = [
            ComplexMatrix::from_real_diagonal(&[s, -0.2 / s]),
            ComplexMatrix::unit(2, 0, 1).scale_real(0.4f64.sqrt()),
            ComplexMatrix::unit(2, 1, 0).scale_real(0.4f64.sqrt()),
            ComplexMatrix::from_real_diagonal(&[0.0, (8.0f64 / 15.0).sqrt()]),
        ];
        assert_eq!(ks.len(), 4);
        for (k, e) in ks.operators().iter().zip(&expected) {
            assert!(k.max_abs_diff(e).unwrap() < 1e-15);
        }
        assert!(ks.completeness_residual() < 1e-15);
    }

    #[test]
    fn closed_form_matches_cholesky_route() {
        for n in 2..=5 {
            let (lo, hi) = ChannelFamily::HybridDepolarizingClassical.range(n);
            for t in [0.1, 0.5, 0.9] {
                let p = lo + t * (hi - lo);
                let ch =
                    DiagonalChannel::from_family(ChannelFamily::HybridDepolarizingClassical, n, p)
                        .unwrap();
                let chol = kraus_from_channel(&ch, 1e-10).unwrap();
                let closed = closed_form_kraus(n, p).unwrap();
                assert_eq!(chol.len(), closed.len());
                for (x, y) in chol.operators().iter().zip(closed.operators()) {
                    assert!(x.max_abs_diff(y).unwrap() < 1e-10, "n={n} p={p}");
                }
                assert!(closed.reconstruction_residual(&ch).unwrap() < 1e-10);
            }
        }
    }
}
