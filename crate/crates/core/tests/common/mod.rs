#![allow(dead_code)]

use diagonal_channels::{ChannelFamily, Complex64, ComplexMatrix, HermitianMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let a = random_matrix(rng, n, n);
    HermitianMatrix::new(a.add(&a.adjoint()).unwrap().scale_real(0.5)).unwrap()
}

/// `B^* B` for a random `rank`×`n` matrix `B`.
pub fn random_psd(rng: &mut impl Rng, n: usize, rank: usize) -> HermitianMatrix {
    let b = random_matrix(rng, rank, n);
    HermitianMatrix::new(b.adjoint().matmul(&b).unwrap()).unwrap()
}

/// Eigenvalues via nalgebra, independent of the crate's Jacobi solver.
pub fn oracle_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    let m = h.matrix();
    let n = m.rows();
    let na = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        let z = m[(i, j)];
        nalgebra::Complex::new(z.re, z.im)
    });
    let mut eig: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Image of the matrix unit `E_ij` under a family channel, written down directly:
/// diagonal units go to `p E_kk + (1-p) I/n` for every family, off-diagonal units
/// go to `±p E_ij` or `±p E_ji` depending on the family.
pub fn family_image_oracle(
    family: ChannelFamily,
    n: usize,
    p: f64,
    i: usize,
    j: usize,
) -> ComplexMatrix {
    if i == j {
        let mut m = ComplexMatrix::identity(n).scale_real((1.0 - p) / n as f64);
        m[(i, i)] += Complex64::new(p, 0.0);
        return m;
    }
    match family {
        ChannelFamily::Depolarizing => ComplexMatrix::unit(n, i, j).scale_real(p),
        ChannelFamily::TransposeDepolarizing => ComplexMatrix::unit(n, j, i).scale_real(p),
        ChannelFamily::HybridDepolarizingClassical => ComplexMatrix::unit(n, i, j).scale_real(-p),
        ChannelFamily::HybridTransposeDepolarizingClassical => {
            ComplexMatrix::unit(n, j, i).scale_real(-p)
        }
    }
}

/// Parameters at which acceptance sweeps evaluate a family: both endpoints and the midpoint.
pub fn endpoints_and_midpoint(family: ChannelFamily, n: usize) -> [f64; 3] {
    let (lo, hi) = family.range(n);
    [lo, 0.5 * (lo + hi), hi]
}
