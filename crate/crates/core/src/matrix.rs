//! Dense complex matrices with a unitarity invariant.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::UNITARITY_TOL;

/// A dense square complex matrix known to be unitary.
///
/// Construction through [`UnitaryMatrix::new`] checks `U·U† = I` against
/// [`UNITARITY_TOL`] in the max-abs entry norm. Products of unitary matrices
/// are accepted without re-checking; accumulated drift can be inspected with
/// [`UnitaryMatrix::unitarity_deviation`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tolerance(m, UNITARITY_TOL)
    }

    pub fn with_tolerance(m: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidSize("matrix must be at least 1x1".into()));
        }
        let u = UnitaryMatrix(m);
        let deviation = u.unitarity_deviation();
        if deviation.is_nan() || deviation >= tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    pub(crate) fn from_unchecked(m: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        UnitaryMatrix(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix(self.0.adjoint())
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &UnitaryMatrix) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(UnitaryMatrix(&self.0 * &rhs.0))
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &UnitaryMatrix) -> Self {
        UnitaryMatrix(self.0.kronecker(&rhs.0))
    }

    /// `self^n` by repeated multiplication; `n = 0` gives the identity.
    pub fn pow(&self, n: u64) -> Self {
        let mut acc = DMatrix::identity(self.dim(), self.dim());
        for _ in 0..n {
            acc = &self.0 * acc;
        }
        UnitaryMatrix(acc)
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    /// `‖U − I‖_max`.
    pub fn identity_deviation(&self) -> f64 {
        identity_deviation(&self.0)
    }

    /// `‖U·U† − I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        identity_deviation(&(&self.0 * self.0.adjoint()))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.identity_deviation() < tol
    }

    /// Eigenvalues from a dense complex Schur decomposition.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        dense_eigenvalues(&self.0)
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn identity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for ((r, c), z) in m
        .iter()
        .enumerate()
        .map(|(i, z)| ((i % m.nrows(), i / m.nrows()), z))
    {
        let target = if r == c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        worst = worst.max((z - target).norm());
    }
    worst
}

/// Eigenvalues of an arbitrary square complex matrix.
///
/// The QR iteration can stall at machine epsilon on matrices within rounding
/// of a multiple of the identity, so the deflation threshold is relaxed in
/// steps with a bounded iteration budget.
pub fn dense_eigenvalues(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let budget = 100 * m.nrows().max(1);
    for eps in [f64::EPSILON, 1e-15, 1e-14, 1e-13, 1e-12] {
        if let Some(schur) = m.clone().try_schur(eps, budget) {
            return schur
                .eigenvalues()
                .expect("complex Schur form is triangular")
                .iter()
                .copied()
                .collect();
        }
    }
    m.clone()
        .try_schur(1e-10, 100 * budget)
        .and_then(|s| s.eigenvalues())
        .expect("Schur iteration did not converge")
        .iter()
        .copied()
        .collect()
}

/// Greedy matching of two eigenvalue multisets; returns the worst pairwise
/// distance, or infinity when the lengths differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths match");
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}
