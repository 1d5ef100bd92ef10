//! Eigenvalue-matching conditions for deterministic coin combinations.
//!
//! A sequence such as `AABB` reproduces the spectrum of `CCCC` (and hence
//! its period) when the half-traces of every Fourier block agree. With
//! `α₁ = α₂ = α`, `β₁ = β₂ = β`, matching frequencies reduces this to small
//! algebraic systems in `(ρ₁, ρ₂, ρ)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{block_diagonalize, sequence_min_period, PeriodReport, Verdict};
use crate::walk::{compose_sequence, CoinSequence};
use crate::IDENTITY_TOL;

/// Absolute left/right differences of each matching equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResidual {
    pub values: Vec<f64>,
}

impl MatchResidual {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Half the trace of Fourier block `l` of one pass of the sequence.
pub fn block_half_trace(seq: &CoinSequence, k: usize, l: usize) -> Result<Complex64> {
    if l >= k {
        return Err(Error::IndexOutOfRange { index: l, bound: k });
    }
    let blocks = block_diagonalize(&compose_sequence(seq, k)?, k)?;
    let b = &blocks[l].block;
    Ok((b[(0, 0)] + b[(1, 1)]) * 0.5)
}

/// Largest half-trace difference over all Fourier blocks between `seq` and
/// `reference` (e.g. `ABB` against `CCC`). Zero when the two share block
/// spectra up to determinant.
pub fn half_trace_mismatch(seq: &CoinSequence, reference: &CoinSequence, k: usize) -> Result<f64> {
    let a = block_diagonalize(&compose_sequence(seq, k)?, k)?;
    let b = block_diagonalize(&compose_sequence(reference, k)?, k)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(x, y)| {
            let tx = (x.block[(0, 0)] + x.block[(1, 1)]) * 0.5;
            let ty = (y.block[(0, 0)] + y.block[(1, 1)]) * 0.5;
            (tx - ty).norm()
        })
        .fold(0.0, f64::max))
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange { name, value });
    }
    Ok(())
}

/// Residuals of the `AB = CC` system:
/// `ρ₁ρ₂ = ρ²` and `√(1−ρ₁)√(1−ρ₂) = 1 − ρ`.
pub fn ab_residual(rho1: f64, rho2: f64, rho: f64) -> Result<MatchResidual> {
    check_unit("rho1", rho1)?;
    check_unit("rho2", rho2)?;
    check_unit("rho", rho)?;
    Ok(MatchResidual {
        values: vec![
            (rho1 * rho2 - rho * rho).abs(),
            ((1.0 - rho1).sqrt() * (1.0 - rho2).sqrt() - (1.0 - rho)).abs(),
        ],
    })
}

/// Residuals of the `AABB = CCCC` system:
///
/// ```text
/// ρ₁ + ρ₂ − 2ρ₁ρ₂ + 2√((1−ρ₁)(1−ρ₂)ρ₁ρ₂) = 4ρ − 4ρ²
/// ρ₁ + ρ₂ −  ρ₁ρ₂ + 2√((1−ρ₁)(1−ρ₂)ρ₁ρ₂) = 4ρ − 3ρ²
/// ρ₁ρ₂ = ρ²
/// ```
///
/// The third equation is the difference of the first two, so only two are
/// independent and the third residual never exceeds the sum of the others.
pub fn aabb_residuals(rho1: f64, rho2: f64, rho: f64) -> Result<MatchResidual> {
    check_unit("rho1", rho1)?;
    check_unit("rho2", rho2)?;
    check_unit("rho", rho)?;
    let cross = 2.0 * ((1.0 - rho1) * (1.0 - rho2) * rho1 * rho2).sqrt();
    let p = rho1 * rho2;
    Ok(MatchResidual {
        values: vec![
            (rho1 + rho2 - 2.0 * p + cross - (4.0 * rho - 4.0 * rho * rho)).abs(),
            (rho1 + rho2 - p + cross - (4.0 * rho - 3.0 * rho * rho)).abs(),
            (p - rho * rho).abs(),
        ],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// One root pair of the `AABB` system; the plus branch puts the larger root
/// in `rho1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParrondoSolution {
    pub rho1: f64,
    pub rho2: f64,
    pub rho: f64,
    pub branch: Branch,
    pub degenerate: bool,
}

const ROOT_SLACK: f64 = 1e-12;
const SOLUTION_TOL: f64 = 1e-9;

fn clamp_root(rho: f64, root: f64) -> Result<f64> {
    if (-ROOT_SLACK..=1.0 + ROOT_SLACK).contains(&root) {
        Ok(root.clamp(0.0, 1.0))
    } else {
        Err(Error::RootOutOfRange { rho, root })
    }
}

/// Closed-form solutions `ρ₁,₂ = 3ρ − 4ρ² ± 2√2 √(ρ²(1 − 3ρ + 2ρ²))`,
/// returned as `[plus, minus]`.
///
/// The closed form comes from squaring the system. Below `ρ = 1/3` the roots
/// satisfy only the squared form (the true system then has only the trivial
/// solution `ρ₁ = ρ₂ = ρ`), and [`Error::SpuriousRoots`] is returned.
pub fn solve_aabb(rho: f64) -> Result<[ParrondoSolution; 2]> {
    check_unit("rho", rho)?;
    // 1 − 3ρ + 2ρ² = (1 − ρ)(1 − 2ρ), exact zero at ρ = 1/2
    let discriminant = rho * rho * ((1.0 - rho) * (1.0 - 2.0 * rho));
    if discriminant < 0.0 {
        return Err(Error::OutOfDomain { rho, discriminant });
    }
    let centre = 3.0 * rho - 4.0 * rho * rho;
    let spread = 2.0 * std::f64::consts::SQRT_2 * discriminant.sqrt();
    let hi = clamp_root(rho, centre + spread)?;
    let lo = clamp_root(rho, centre - spread)?;
    let residual = aabb_residuals(hi, lo, rho)?.max();
    if residual > SOLUTION_TOL {
        return Err(Error::SpuriousRoots { rho, residual });
    }
    let degenerate = discriminant == 0.0;
    Ok([
        ParrondoSolution {
            rho1: hi,
            rho2: lo,
            rho,
            branch: Branch::Plus,
            degenerate,
        },
        ParrondoSolution {
            rho1: lo,
            rho2: hi,
            rho,
            branch: Branch::Minus,
            degenerate,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Ordered,
    Chaotic,
}

/// Ordered/chaotic verdict for repeatedly applying `seq`, with the underlying
/// period analysis.
pub fn classify_strategy(
    seq: &CoinSequence,
    k: usize,
    n_max: u64,
) -> Result<(Strategy, PeriodReport)> {
    let report = sequence_min_period(seq, k, n_max, IDENTITY_TOL)?;
    let strategy = match report.verdict {
        Verdict::Periodic => Strategy::Ordered,
        Verdict::Chaotic => Strategy::Chaotic,
    };
    Ok((strategy, report))
}

/// Grid points `(ρ₁, ρ₂)` on an `n × n` lattice over `[0, 1]²` where both
/// `AB` residuals are below `eps`.
pub fn ab_zero_scan(rho: f64, n: usize, eps: f64) -> Result<Vec<(f64, f64)>> {
    check_unit("rho", rho)?;
    let step = if n > 1 { 1.0 / (n - 1) as f64 } else { 0.0 };
    let mut hits = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (r1, r2) = (i as f64 * step, j as f64 * step);
            if ab_residual(r1, r2, rho)?.max() < eps {
                hits.push((r1, r2));
            }
        }
    }
    Ok(hits)
}
