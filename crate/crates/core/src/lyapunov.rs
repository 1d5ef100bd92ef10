//! Overlap-based distance and Lyapunov exponent of a walk.
//!
//! `λ = −log₂|⟨Ψ(t)|Ψ(t₀)⟩| / (t − t₀)`, in bits per step. The matching
//! distance profile is `f(λ, τ) = 2(1 − 2^{−λτ})`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::{accumulated_between, evolve_sequence, CoinSequence, WalkerState};
use crate::IDENTITY_TOL;

/// `|2 − 2⟨a|b⟩|`. Zero iff `a = b`, two for orthogonal states.
pub fn distance(a: &WalkerState, b: &WalkerState) -> Result<f64> {
    let overlap = a.inner(b)?;
    Ok((2.0 - 2.0 * overlap).norm())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovReport {
    pub label: String,
    pub t0: usize,
    pub t: usize,
    /// Bits per step.
    pub exponent: f64,
    pub overlap_modulus: f64,
    /// `2(1 − |⟨Ψ(t)|Ψ(t₀)⟩|)`, always in `[0, 2]`.
    pub distance: f64,
    /// `|2 − 2⟨Ψ(t)|Ψ(t₀)⟩|` as returned by [`distance`].
    pub state_distance: f64,
}

/// Evolves `initial` under `seq` and measures the exponent over `[t0, t]`.
///
/// Returns exactly zero when the accumulated operator over the interval is
/// the identity.
pub fn lyapunov_exponent(
    seq: &CoinSequence,
    initial: &WalkerState,
    t0: usize,
    t: usize,
) -> Result<LyapunovReport> {
    if t <= t0 {
        return Err(Error::DegenerateInterval(t0));
    }
    let trajectory = evolve_sequence(initial, seq, t)?;
    let (start, end) = (&trajectory[t0], &trajectory[t]);
    let overlap_modulus = end.inner(start)?.norm().min(1.0);
    let state_distance = distance(end, start)?;
    let span = (t - t0) as f64;

    let exponent = if accumulated_between(seq, initial.k(), t0, t)?.is_identity(IDENTITY_TOL) {
        0.0
    } else {
        -overlap_modulus.log2() / span
    };
    Ok(LyapunovReport {
        label: seq.pattern(),
        t0,
        t,
        exponent,
        overlap_modulus,
        distance: 2.0 * (1.0 - overlap_modulus),
        state_distance,
    })
}

/// `f(λ, τ) = 2(1 − 2^{−λτ})`.
pub fn distance_profile(exponent: f64, span: f64) -> f64 {
    2.0 * (1.0 - (-exponent * span).exp2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::CoinParams;

    #[test]
    fn distance_examples() {
        let a = WalkerState::basis(3, 0, 1).unwrap();
        let b = WalkerState::basis(3, 1, 1).unwrap();
        assert_eq!(distance(&a, &a).unwrap(), 0.0);
        assert_eq!(distance(&a, &b).unwrap(), 2.0);
        let c = WalkerState::basis(4, 0, 1).unwrap();
        assert!(matches!(
            distance(&a, &c),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_interval() {
        let seq = CoinSequence::single('H', CoinParams::hadamard());
        let s = WalkerState::initial(4).unwrap();
        assert!(matches!(
            lyapunov_exponent(&seq, &s, 3, 3),
            Err(Error::DegenerateInterval(3))
        ));
        assert!(lyapunov_exponent(&seq, &s, 4, 3).is_err());
    }

    #[test]
    fn hadamard_four_cycle_zero_at_period() {
        let seq = CoinSequence::single('H', CoinParams::hadamard());
        let s = WalkerState::initial(4).unwrap();
        for t in [8, 16, 24] {
            let r = lyapunov_exponent(&seq, &s, 0, t).unwrap();
            assert_eq!(r.exponent, 0.0);
            assert!(r.distance.abs() < 1e-12);
            assert!(r.state_distance < 1e-12);
        }
        let r = lyapunov_exponent(&seq, &s, 0, 3).unwrap();
        assert!(r.exponent > 0.0);
    }

    #[test]
    fn report_distance_matches_profile() {
        let seq = CoinSequence::single('H', CoinParams::hadamard());
        let s = WalkerState::initial(5).unwrap();
        let r = lyapunov_exponent(&seq, &s, 2, 13).unwrap();
        assert!((distance_profile(r.exponent, 11.0) - r.distance).abs() < 1e-12);
        assert!((0.0..=2.0).contains(&r.distance));
    }
}
