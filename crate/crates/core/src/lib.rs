//! Discrete-time quantum walks on k-cycle graphs.
//!
//! The walk unitary `U_k = S·(I_k ⊗ C₂(ρ, α, β))` is block-circulant, so the
//! Fourier transform over positions splits it into `k` 2×2 blocks with
//! closed-form eigenvalues. A walk is periodic (ordered) when every
//! eigenvalue is a root of unity and chaotic otherwise. Two chaotic coins
//! `A`, `B` can combine into a periodic `AABB` walk; [`parrondo`] solves the
//! matching conditions and [`protocol`] builds an encryption scheme on top.

pub mod error;
pub mod lyapunov;
pub mod matrix;
pub mod parrondo;
pub mod parse;
pub mod presets;
pub mod protocol;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use matrix::UnitaryMatrix;
pub use walk::{CoinParams, CoinSequence, WalkerState};

/// Unitarity and normalization at construction time.
pub const UNITARITY_TOL: f64 = 1e-12;
/// Norm drift allowed after long evolution.
pub const EVOLUTION_TOL: f64 = 1e-10;
/// `‖U − I‖_max` below which an operator counts as the identity.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Denominator cap for rational phase recovery.
pub const DEFAULT_Q_MAX: u64 = 4096;
/// Phase tolerance (fraction of a turn) for rational recovery.
pub const DEFAULT_PHASE_TOL: f64 = 1e-9;
/// Default search cap for periods.
pub const DEFAULT_N_MAX: u64 = 1000;
