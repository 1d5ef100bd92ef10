//! Fourier block diagonalization of walk unitaries, closed-form block
//! eigenvalues, rational phase recovery and period detection.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;
use crate::walk::{circulant_blocks, CoinParams, CoinSequence};
use crate::{DEFAULT_PHASE_TOL, DEFAULT_Q_MAX};

const LEAKAGE_TOL: f64 = 1e-12;
const UNIT_MODULUS_TOL: f64 = 1e-9;

/// `F_{m,n} = e^{2πi mn/M} / √M`.
pub fn fourier_matrix(dim: usize) -> Result<UnitaryMatrix> {
    if dim < 1 {
        return Err(Error::InvalidSize(
            "Fourier dimension must be at least 1".into(),
        ));
    }
    let scale = (dim as f64).sqrt().recip();
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        // reduce mn mod M before converting to keep the angle small
        let e = (r * c) % dim;
        Complex64::from_polar(scale, TAU * e as f64 / dim as f64)
    });
    Ok(UnitaryMatrix::from_unchecked(m))
}

/// One diagonal block of `(F_k ⊗ I₂) U (F_k ⊗ I₂)†`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBlock {
    pub l: usize,
    pub block: Matrix2<Complex64>,
    /// `(λ⁺, λ⁻)` from the 2×2 characteristic polynomial.
    pub eigenvalues: [Complex64; 2],
}

/// Eigenvalues of a 2×2 complex matrix, `tr/2 ± √((a−d)²/4 + bc)`.
pub fn eigenvalues_2x2(m: &Matrix2<Complex64>) -> [Complex64; 2] {
    let half_tr = (m[(0, 0)] + m[(1, 1)]) * 0.5;
    let half_diff = (m[(0, 0)] - m[(1, 1)]) * 0.5;
    let root = (half_diff * half_diff + m[(0, 1)] * m[(1, 0)]).sqrt();
    [half_tr + root, half_tr - root]
}

/// Block `l` computed directly from circulant blocks:
/// `Σ_j B_j e^{−2πi jl/k}`.
pub fn fourier_block(blocks: &[Matrix2<Complex64>], l: usize) -> Matrix2<Complex64> {
    let k = blocks.len();
    blocks
        .iter()
        .enumerate()
        .fold(Matrix2::zeros(), |acc, (j, b)| {
            let e = (j * l) % k;
            acc + b * Complex64::from_polar(1.0, -TAU * e as f64 / k as f64)
        })
}

/// Conjugates `u` by `F_k ⊗ I₂` and returns its `k` diagonal 2×2 blocks.
///
/// Fails with [`Error::NotBlockCirculant`] if `u` lacks block-circulant
/// structure or if the off-block leakage after conjugation exceeds `1e-12`.
pub fn block_diagonalize(u: &UnitaryMatrix, k: usize) -> Result<Vec<SpectralBlock>> {
    circulant_blocks(u, k)?;
    let g = fourier_matrix(k)?.kron(&UnitaryMatrix::identity(2));
    let d = g.as_matrix() * u.as_matrix() * g.as_matrix().adjoint();
    let leakage = off_block_leakage(&d);
    if leakage > LEAKAGE_TOL {
        return Err(Error::NotBlockCirculant { deviation: leakage });
    }
    Ok((0..k)
        .map(|l| {
            let block = d.fixed_view::<2, 2>(2 * l, 2 * l).into_owned();
            SpectralBlock {
                l,
                block,
                eigenvalues: eigenvalues_2x2(&block),
            }
        })
        .collect())
}

/// Largest modulus outside the 2×2 diagonal blocks.
pub fn off_block_leakage(d: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for c in 0..d.ncols() {
        for r in 0..d.nrows() {
            if r / 2 != c / 2 {
                worst = worst.max(d[(r, c)].norm());
            }
        }
    }
    worst
}

/// Closed-form eigenvalues `(λ⁺, λ⁻)` of Fourier block `l` of `U_k(ρ, α, β)`:
///
/// `½ e^{−2πil/k} ((1 − e^{4πil/k + iδ})√ρ ± 2√(e^{4πil/k + iδ}(1 − ρ sin²(2πl/k + δ/2))))`
/// with `δ = α + β`.
pub fn analytic_block_eigenvalues(
    k: usize,
    l: usize,
    params: &CoinParams,
) -> Result<[Complex64; 2]> {
    if k < 1 {
        return Err(Error::InvalidSize("cycle size k must be at least 1".into()));
    }
    if l >= k {
        return Err(Error::IndexOutOfRange { index: l, bound: k });
    }
    let theta = 2.0 * PI * l as f64 / k as f64;
    let delta = params.delta();
    let w = Complex64::from_polar(1.0, 2.0 * theta + delta);
    let s = (theta + delta / 2.0).sin();
    let root = (w * (1.0 - params.rho() * s * s)).sqrt() * 2.0;
    let base = (Complex64::new(1.0, 0.0) - w) * params.rho().sqrt();
    let pre = Complex64::from_polar(0.5, -theta);
    Ok([pre * (base + root), pre * (base - root)])
}

/// A phase `e^{2πi m/n}` recovered as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseRational {
    pub m: u64,
    pub n: u64,
    /// `|phase/2π − m/n|` measured on the circle.
    pub residual: f64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm_capped(a: u64, b: u64, cap: u64) -> Option<u64> {
    let l = (a / gcd(a, b)).checked_mul(b)?;
    (l <= cap).then_some(l)
}

/// Fraction of a full turn, in `[0, 1)`.
pub fn phase_fraction(value: Complex64) -> f64 {
    let x = (value.arg() / TAU).rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if x >= 1.0 {
        0.0
    } else {
        x
    }
}

/// Finds `m/n` with `n ≤ q_max` and `|arg(value)/2π − m/n| < tol` among the
/// continued-fraction convergents of the phase. Returns `None` when no
/// convergent qualifies.
pub fn phase_to_rational(value: Complex64, q_max: u64, tol: f64) -> Result<Option<PhaseRational>> {
    let modulus = value.norm();
    if modulus.is_nan() || (modulus - 1.0).abs() >= UNIT_MODULUS_TOL {
        return Err(Error::NotUnitModulus(modulus));
    }
    Ok(fraction_to_rational(phase_fraction(value), q_max, tol))
}

/// Continued-fraction search on a fraction of a turn `x ∈ [0, 1)`.
pub fn fraction_to_rational(x: f64, q_max: u64, tol: f64) -> Option<PhaseRational> {
    if !x.is_finite() || q_max == 0 {
        return None;
    }
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > u64::MAX as f64 / 2.0 {
            break;
        }
        let a = a as u64;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > q_max {
            break;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        let approx = h as f64 / k as f64;
        let diff = (x - approx).abs();
        let residual = diff.min(1.0 - diff);
        if residual < tol {
            let m = h % k;
            let g = gcd(m, k);
            let (m, n) = if m == 0 { (0, 1) } else { (m / g, k / g) };
            return Some(PhaseRational { m, n, residual });
        }
        let frac = r - r.floor();
        if frac <= f64::EPSILON {
            break;
        }
        r = frac.recip();
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Periodic,
    Chaotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeriodMethod {
    BruteForce,
    Spectral,
    Both,
}

/// Outcome of a periodicity analysis. `period` is in coin-step units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodReport {
    pub verdict: Verdict,
    pub period: Option<u64>,
    pub method: PeriodMethod,
    pub n_max: u64,
    pub tolerance: f64,
}

impl PeriodReport {
    fn from_period(period: Option<u64>, method: PeriodMethod, n_max: u64, tolerance: f64) -> Self {
        PeriodReport {
            verdict: if period.is_some() {
                Verdict::Periodic
            } else {
                Verdict::Chaotic
            },
            period,
            method,
            n_max,
            tolerance,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.verdict == Verdict::Periodic
    }
}

/// Smallest `N ≤ n_max` with `‖U^N − I‖_max < tol`, by repeated multiplication.
pub fn brute_force_period(u: &UnitaryMatrix, n_max: u64, tol: f64) -> Option<u64> {
    let mut acc = UnitaryMatrix::identity(u.dim());
    for n in 1..=n_max {
        acc = u.mul(&acc).expect("same dimension");
        if acc.is_identity(tol) {
            return Some(n);
        }
    }
    None
}

/// `lcm` of the rational-phase denominators of `eigenvalues`, or `None` if
/// some phase is not rational within `tol` or the lcm exceeds `n_max`.
pub fn spectral_period(
    eigenvalues: &[Complex64],
    n_max: u64,
    q_max: u64,
    tol: f64,
) -> Result<Option<u64>> {
    let mut period = 1u64;
    for &ev in eigenvalues {
        match phase_to_rational(ev, q_max, tol)? {
            Some(r) => match lcm_capped(period, r.n, n_max) {
                Some(l) => period = l,
                None => return Ok(None),
            },
            None => return Ok(None),
        }
    }
    Ok(Some(period))
}

/// Minimal period of `u`, computed by brute-force powers and by the lcm of
/// eigenphase denominators. The two must agree; otherwise
/// [`Error::MethodDisagreement`] is returned.
pub fn min_period(u: &UnitaryMatrix, n_max: u64, tol: f64) -> Result<PeriodReport> {
    let brute = brute_force_period(u, n_max, tol);
    let spectral = spectral_period(
        &u.eigenvalues(),
        n_max,
        DEFAULT_Q_MAX,
        tol.max(DEFAULT_PHASE_TOL),
    )?;
    if brute != spectral {
        return Err(Error::MethodDisagreement { brute, spectral });
    }
    Ok(PeriodReport::from_period(
        brute,
        PeriodMethod::Both,
        n_max,
        tol,
    ))
}

/// Smallest step count `t ≤ n_max` at which the time-ordered product of the
/// sequence's walk unitaries is the identity.
///
/// The spectral cross-check works on one pass of the pattern's primitive
/// root, so its candidates are multiples of the root length.
pub fn sequence_min_period(
    seq: &CoinSequence,
    k: usize,
    n_max: u64,
    tol: f64,
) -> Result<PeriodReport> {
    let unitaries = seq.unitaries(k)?;
    let mut acc = UnitaryMatrix::identity(2 * k);
    let mut brute = None;
    for t in 0..n_max {
        acc = unitaries[&seq.letter_at(t as usize)].mul(&acc)?;
        if acc.is_identity(tol) {
            brute = Some(t + 1);
            break;
        }
    }

    let root_len = seq.primitive_len();
    let mut root = UnitaryMatrix::identity(2 * k);
    for t in 0..root_len {
        root = unitaries[&seq.letter_at(t)].mul(&root)?;
    }
    let reps_cap = n_max / root_len as u64;
    let spectral = if reps_cap == 0 {
        None
    } else {
        spectral_period(
            &root.eigenvalues(),
            reps_cap,
            DEFAULT_Q_MAX,
            tol.max(DEFAULT_PHASE_TOL),
        )?
        .map(|r| r * root_len as u64)
    };

    if brute != spectral {
        return Err(Error::MethodDisagreement { brute, spectral });
    }
    Ok(PeriodReport::from_period(
        brute,
        PeriodMethod::Both,
        n_max,
        tol,
    ))
}
