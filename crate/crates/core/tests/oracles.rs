//! Cross-checks against routes that do not share code with the implementation.

mod common;

use common::*;
use diagonal_channels::{
    hermitian_eigenvalues, kraus_from_channel, reshape_row, transition_closed_form,
    transition_direct, ChannelFamily, Complex64, ComplexMatrix, DiagonalChannel,
};

#[test]
fn family_action_matches_direct_formula() {
    for family in ChannelFamily::ALL {
        for n in 2..=6 {
            for p in endpoints_and_midpoint(family, n) {
                let ch = DiagonalChannel::from_family(family, n, p).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let got = ch.apply(&ComplexMatrix::unit(n, i, j)).unwrap();
                        let want = family_image_oracle(family, n, p, i, j);
                        assert!(
                            got.max_abs_diff(&want).unwrap() < 1e-14,
                            "{family} n={n} p={p} ({i},{j})"
                        );
                    }
                }
            }
        }
    }
}

/// Choi spectra of the families, from their structure (identity plus a scaled
/// projector, swap, or classical coupling).
fn analytic_choi_spectrum(family: ChannelFamily, n: usize, p: f64) -> Vec<f64> {
    let nf = n as f64;
    let beta = (1.0 - p) / nf;
    let pairs = n * (n - 1) / 2;
    let mut eig = Vec::new();
    match family {
        ChannelFamily::Depolarizing => {
            eig.extend(std::iter::repeat_n(beta, n * n - 1));
            eig.push(beta + p * nf);
        }
        ChannelFamily::TransposeDepolarizing
        | ChannelFamily::HybridTransposeDepolarizingClassical => {
            // (kk) states: beta + p; symmetric/antisymmetric pair states: beta ± p
            // (signs swap between the two families but the multiset matches)
            eig.extend(std::iter::repeat_n(beta + p, n + pairs));
            eig.extend(std::iter::repeat_n(beta - p, pairs));
        }
        ChannelFamily::HybridDepolarizingClassical => {
            let alpha = p + beta;
            eig.extend(std::iter::repeat_n(beta, n * n - n));
            eig.extend(std::iter::repeat_n(alpha + p, n - 1));
            eig.push(alpha - (nf - 1.0) * p);
        }
    }
    eig.sort_by(f64::total_cmp);
    eig
}

#[test]
fn choi_spectrum_matches_analytic_and_external_solver() {
    for family in ChannelFamily::ALL {
        for n in 2..=5 {
            for p in endpoints_and_midpoint(family, n) {
                let choi = DiagonalChannel::from_family(family, n, p)
                    .unwrap()
                    .choi()
                    .unwrap();
                let ours = hermitian_eigenvalues(choi.hermitian()).unwrap();
                let theirs = oracle_eigenvalues(choi.hermitian());
                let analytic = analytic_choi_spectrum(family, n, p);
                for ((a, b), c) in ours.iter().zip(&theirs).zip(&analytic) {
                    assert!(
                        (a - b).abs() < 1e-12 && (a - c).abs() < 1e-12,
                        "{family} n={n} p={p}"
                    );
                }
            }
        }
    }
}

#[test]
fn eigenvalues_match_external_solver_on_random_hermitian() {
    let mut rng = rng(7);
    for n in 1..=12 {
        for _ in 0..5 {
            let h = random_hermitian(&mut rng, n);
            let ours = hermitian_eigenvalues(&h).unwrap();
            let theirs = oracle_eigenvalues(&h);
            let scale = h.matrix().max_norm();
            for (a, b) in ours.iter().zip(&theirs) {
                assert!(
                    (a - b).abs() <= 1e-10 * scale,
                    "n={n}: {ours:?} vs {theirs:?}"
                );
            }
        }
    }
}

#[test]
fn reshape_identity_of_rows() {
    // (K^* E_ij K) assembled blockwise equals κ^* κ with κ the concatenated rows of K
    let mut rng = rng(11);
    for n in 2..=5 {
        for _ in 0..4 {
            let k = random_matrix(&mut rng, n, n);
            let kappa = ComplexMatrix::from_vec(1, n * n, k.as_slice().to_vec()).unwrap();
            assert_eq!(reshape_row(kappa.as_slice(), n).unwrap(), k);
            let outer = kappa.adjoint().matmul(&kappa).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let block = k
                        .adjoint()
                        .matmul(&ComplexMatrix::unit(n, i, j))
                        .unwrap()
                        .matmul(&k)
                        .unwrap();
                    assert!(block.max_abs_diff(&outer.block(i * n, j * n, n)).unwrap() < 1e-13);
                }
            }
        }
    }
}

#[test]
fn extracted_kraus_reproduce_channel_on_random_inputs() {
    let mut rng = rng(3);
    for family in ChannelFamily::ALL {
        for n in 2..=4 {
            for p in endpoints_and_midpoint(family, n) {
                let ch = DiagonalChannel::from_family(family, n, p).unwrap();
                let ks = kraus_from_channel(&ch, 1e-10).unwrap();
                let a = random_matrix(&mut rng, n, n);
                let diff = ks
                    .apply(&a)
                    .unwrap()
                    .max_abs_diff(&ch.apply(&a).unwrap())
                    .unwrap();
                assert!(diff < 1e-10, "{family} n={n} p={p}: {diff}");
            }
        }
    }
}

#[test]
fn kraus_count_equals_choi_rank() {
    for family in ChannelFamily::ALL {
        for n in 2..=5 {
            for p in endpoints_and_midpoint(family, n) {
                let ch = DiagonalChannel::from_family(family, n, p).unwrap();
                let choi = ch.choi().unwrap();
                let eig = oracle_eigenvalues(choi.hermitian());
                let rank = eig.iter().filter(|&&e| e > 1e-8).count();
                let ks = kraus_from_channel(&ch, 1e-10).unwrap();
                assert_eq!(ks.len(), rank, "{family} n={n} p={p}");
                assert!(ks.len() <= n * n);
            }
        }
    }
}

#[test]
fn transition_closed_form_matches_hand_evaluation_for_qutrits() {
    // direct substitution into the case formulas with n = 3
    let (t1, t2) = (0.3, -0.2);
    let expected = [
        [
            1.0 / 3.0 + t1 / 2.0 + t2 / 6.0,
            1.0 / 3.0 - t1 / 2.0 + t2 / 6.0,
            1.0 / 3.0 - t2 / 3.0,
        ],
        [
            1.0 / 3.0 - t1 / 2.0 + t2 / 6.0,
            1.0 / 3.0 + t1 / 2.0 + t2 / 6.0,
            1.0 / 3.0 - t2 / 3.0,
        ],
        [
            1.0 / 3.0 - t2 / 3.0,
            1.0 / 3.0 - t2 / 3.0,
            1.0 / 3.0 + 2.0 * t2 / 3.0,
        ],
    ];
    let m = transition_closed_form(&[t1, t2], 3).unwrap();
    for (k, row) in expected.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert!((m.get(k, j) - e).abs() < 1e-15, "({k},{j})");
        }
    }
    let ch = DiagonalChannel::new(3, vec![1.0, 0.1, 0.2, -0.1, 0.0, 0.4, 0.3, t1, t2]).unwrap();
    assert!(transition_direct(&ch).unwrap().max_abs_diff(&m) < 1e-14);
}

#[test]
fn hybrid_classical_first_pivot_row() {
    // First Cholesky row of the n = 3 Choi matrix: √α at (1,1), γ/√α at the other (k,k) slots.
    let p = 0.1;
    let n = 3;
    let ch =
        DiagonalChannel::from_family(ChannelFamily::HybridDepolarizingClassical, n, p).unwrap();
    let ks = kraus_from_channel(&ch, 1e-10).unwrap();
    let alpha: f64 = p + (1.0 - p) / 3.0;
    let expected =
        ComplexMatrix::from_real_diagonal(&[alpha.sqrt(), -p / alpha.sqrt(), -p / alpha.sqrt()]);
    assert!(ks.operators()[0].max_abs_diff(&expected).unwrap() < 1e-15);
    let z = Complex64::new(((1.0 - p) / 3.0).sqrt(), 0.0);
    assert!((ks.operators()[1][(0, 1)] - z).norm() < 1e-15);
}
