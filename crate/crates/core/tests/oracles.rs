//! Independent oracles for the spectral machinery.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

use qwalk_core::matrix::{dense_eigenvalues, multiset_distance};
use qwalk_core::spectral::{
    analytic_block_eigenvalues, block_diagonalize, fourier_matrix, fraction_to_rational,
    off_block_leakage, phase_to_rational,
};
use qwalk_core::walk::build_walk_unitary;
use qwalk_core::{CoinParams, UnitaryMatrix};

/// Smallest denominator `n ≤ q_max` with `|x − m/n| < tol` on the circle,
/// found by exhaustive search.
fn brute_rational(x: f64, q_max: u64, tol: f64) -> Option<(u64, u64)> {
    for n in 1..=q_max {
        let m = (x * n as f64).round();
        let d = (x - m / n as f64).abs();
        if d.min(1.0 - d) < tol {
            let m = (m as u64) % n;
            let g = gcd(m, n);
            return Some(if m == 0 { (0, 1) } else { (m / g, n / g) });
        }
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn block_as_dmatrix(b: &nalgebra::Matrix2<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_iterator(2, 2, b.iter().copied())
}

#[test]
fn one_over_two_pi_has_no_small_convergent() {
    // convergent denominators of 1/(2π): 6, 19, 25, 44, 333, 710, 103993...
    assert_eq!(brute_rational(1.0 / TAU, 10_000, 1e-9), None);
    assert_eq!(
        phase_to_rational(Complex64::from_polar(1.0, 1.0), 10_000, 1e-9).unwrap(),
        None
    );
    // 113/710 is the last one under the cap and misses by ~1.3e-8
    let r = fraction_to_rational(1.0 / TAU, 10_000, 2e-8).unwrap();
    assert_eq!((r.m, r.n), (113, 710));
}

#[test]
fn hadamard_three_cycle_blocks_match_dense_spectrum() {
    let u = build_walk_unitary(3, &CoinParams::hadamard()).unwrap();
    let blocks = block_diagonalize(&u, 3).unwrap();
    let union: Vec<_> = blocks.iter().flat_map(|b| b.eigenvalues).collect();
    assert_eq!(union.len(), 6);
    assert!(multiset_distance(&union, &u.eigenvalues()) < 1e-9);
}

#[test]
fn random_five_cycle_leakage() {
    let p = CoinParams::new(0.123, 2.5, 0.77).unwrap();
    let u = build_walk_unitary(5, &p).unwrap();
    let g = fourier_matrix(5).unwrap().kron(&UnitaryMatrix::identity(2));
    let d = g.as_matrix() * u.as_matrix() * g.as_matrix().adjoint();
    assert!(off_block_leakage(&d) < 1e-12);
}

#[test]
fn fourier_2k_does_not_block_diagonalize() {
    // a plain 2k-point transform mixes coin and position; only F_k ⊗ I₂ works
    let p = CoinParams::new(0.3, 0.4, 0.5).unwrap();
    let u = build_walk_unitary(4, &p).unwrap();
    let f = fourier_matrix(8).unwrap();
    let d = f.as_matrix() * u.as_matrix() * f.as_matrix().adjoint();
    assert!(off_block_leakage(&d) > 1e-3);
}

fn params() -> impl Strategy<Value = CoinParams> {
    (0.0..=1.0f64, 0.0..=PI, 0.0..=PI).prop_map(|(r, a, b)| CoinParams::new(r, a, b).unwrap())
}

proptest! {
    #[test]
    fn analytic_matches_dense_block(k in 1usize..=8, p in params()) {
        let u = build_walk_unitary(k, &p).unwrap();
        for b in block_diagonalize(&u, k).unwrap() {
            let dense = dense_eigenvalues(&block_as_dmatrix(&b.block));
            let analytic = analytic_block_eigenvalues(k, b.l, &p).unwrap();
            prop_assert!(multiset_distance(&analytic, &dense) < 1e-9);
            prop_assert!(multiset_distance(&b.eigenvalues, &dense) < 1e-9);
            for z in analytic {
                prop_assert!((z.norm() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn block_union_is_full_spectrum(k in 3usize..=6, p in params()) {
        let u = build_walk_unitary(k, &p).unwrap();
        let union: Vec<_> = (0..k)
            .flat_map(|l| analytic_block_eigenvalues(k, l, &p).unwrap())
            .collect();
        prop_assert!(multiset_distance(&union, &u.eigenvalues()) < 1e-9);
    }

    #[test]
    fn rational_phases_recovered(n in 1u64..=4096, m_seed in 0u64..1_000_000, noise in -1e-11f64..1e-11) {
        let m = m_seed % n;
        let x = m as f64 / n as f64 + noise;
        let z = Complex64::from_polar(1.0, TAU * x);
        let r = phase_to_rational(z, 4096, 1e-9).unwrap().unwrap();
        let g = gcd(m, n);
        let expected = if m == 0 { (0, 1) } else { (m / g, n / g) };
        prop_assert_eq!((r.m, r.n), expected);
        prop_assert!(r.m < r.n || (r.m, r.n) == (0, 1));
        prop_assert!(r.residual < 1e-9);
    }

    #[test]
    fn continued_fraction_agrees_with_exhaustive_search(x in 0.0f64..1.0) {
        // tol < 1/(2 q_max²), so every qualifying fraction is a convergent
        let got = fraction_to_rational(x, 4096, 1e-9).map(|r| (r.m, r.n));
        prop_assert_eq!(got, brute_rational(x, 4096, 1e-9));
    }

    #[test]
    fn near_rational_agrees_with_exhaustive_search(n in 1u64..=2000, m_seed in 0u64..100_000, noise in -3e-9f64..3e-9) {
        let x = ((m_seed % n) as f64 / n as f64 + noise).rem_euclid(1.0);
        let got = fraction_to_rational(x, 4096, 1e-9).map(|r| (r.m, r.n));
        prop_assert_eq!(got, brute_rational(x, 4096, 1e-9));
    }
}
