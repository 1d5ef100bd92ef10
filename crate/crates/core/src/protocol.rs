//! Encryption with chaotic walks on a k-cycle.
//!
//! Alice publishes `|ψ_PK⟩ = B²|l⟩|s⟩`. Bob encodes `m` by translating the
//! position register, `(T_m ⊗ I_c)|ψ_PK⟩`. Alice undoes the two `B` steps by
//! finishing the periodic `AABB` cycle, measures the site `m' = l + m mod k`
//! and recovers `m = m' − l mod k`. Decryption works because `T_m`
//! commutes with every walk unitary (both are circulant in position with a
//! position-independent coin).

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;
use crate::presets::paper_coins;
use crate::spectral::{sequence_min_period, Verdict};
use crate::walk::{
    accumulated_operator, basis_index, build_walk_unitary, step, CoinParams, CoinSequence,
    WalkerState,
};
use crate::IDENTITY_TOL;

/// Threshold used when reading out the decrypted position.
pub const MEASUREMENT_TOL: f64 = 1e-6;

/// A validated chaotic pair whose `AABB` cycle closes after `reps` passes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    k: usize,
    coin_a: CoinParams,
    coin_b: CoinParams,
    reps: u64,
}

impl ProtocolConfig {
    /// Checks that `A` and `B` are individually chaotic up to `n_max` steps
    /// and that `AABB` is periodic; `reps` is its period in passes.
    pub fn new(k: usize, coin_a: CoinParams, coin_b: CoinParams, n_max: u64) -> Result<Self> {
        let coins = BTreeMap::from([('A', coin_a), ('B', coin_b)]);
        for letter in ["A", "B"] {
            let seq = CoinSequence::new(coins.clone(), letter)?;
            let report = sequence_min_period(&seq, k, n_max, IDENTITY_TOL)?;
            if report.verdict != Verdict::Chaotic {
                return Err(Error::InvalidConfig(format!(
                    "coin {letter} is periodic with period {:?}",
                    report.period
                )));
            }
        }
        let aabb = CoinSequence::new(coins, "AABB")?;
        let report = sequence_min_period(&aabb, k, n_max, IDENTITY_TOL)?;
        let period = report
            .period
            .ok_or_else(|| Error::InvalidConfig("AABB is not periodic".into()))?;
        if period % 4 != 0 {
            return Err(Error::InvalidConfig(format!(
                "AABB period {period} is not a whole number of passes"
            )));
        }
        Ok(ProtocolConfig {
            k,
            coin_a,
            coin_b,
            reps: period / 4,
        })
    }

    /// The solved pair for `k = 3` or `k = 4`.
    pub fn paper(k: usize) -> Result<Self> {
        let coins = paper_coins(k)
            .ok_or_else(|| Error::InvalidConfig(format!("no built-in coin pair for k = {k}")))?;
        Self::new(k, coins.a, coins.b, crate::DEFAULT_N_MAX)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coin_a(&self) -> &CoinParams {
        &self.coin_a
    }

    pub fn coin_b(&self) -> &CoinParams {
        &self.coin_b
    }

    /// Passes `p` with `(AABB)^p = I`.
    pub fn reps(&self) -> u64 {
        self.reps
    }

    fn sequence(&self, pattern: &str) -> Result<CoinSequence> {
        CoinSequence::new(
            BTreeMap::from([('A', self.coin_a), ('B', self.coin_b)]),
            pattern,
        )
    }

    /// Temporal order of the decryption steps: `AA` followed by `p − 1`
    /// passes of `BBAA`, which together with the key's `BB` completes `p`
    /// passes of the cycle.
    pub fn decryption_pattern(&self) -> String {
        let mut s = String::from("AA");
        for _ in 1..self.reps {
            s.push_str("BBAA");
        }
        s
    }

    /// The decryption operator `D` with `D·B² = I`.
    pub fn decryption_operator(&self) -> Result<UnitaryMatrix> {
        let pattern = self.decryption_pattern();
        accumulated_operator(&self.sequence(&pattern)?, self.k, pattern.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PublicKey {
    pub state: WalkerState,
    pub k: usize,
    pub l: usize,
    pub s: usize,
    /// Pattern applied to `|l⟩|s⟩`, always `"BB"`.
    pub generator: String,
}

pub fn gen_public_key(l: usize, s: usize, cfg: &ProtocolConfig) -> Result<PublicKey> {
    if l >= cfg.k {
        return Err(Error::InvalidPosition {
            position: l,
            k: cfg.k,
        });
    }
    let mut state = WalkerState::basis(cfg.k, l, s)?;
    let b = build_walk_unitary(cfg.k, &cfg.coin_b)?;
    for _ in 0..2 {
        state = step(&state, &b)?;
    }
    Ok(PublicKey {
        state,
        k: cfg.k,
        l,
        s,
        generator: "BB".into(),
    })
}

/// `T_m ⊗ I_c`: moves every site forward by `m`.
pub fn translation(k: usize, m: usize) -> Result<UnitaryMatrix> {
    if k < 1 {
        return Err(Error::InvalidSize("cycle size k must be at least 1".into()));
    }
    let mut t = DMatrix::<Complex64>::zeros(2 * k, 2 * k);
    for i in 0..k {
        for s in 0..2 {
            t[(basis_index((i + m) % k, s), basis_index(i, s))] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(UnitaryMatrix::new(t).expect("permutation matrix"))
}

pub fn encrypt(pk: &PublicKey, m: usize) -> Result<WalkerState> {
    if m >= pk.k {
        return Err(Error::InvalidMessage {
            message: m,
            k: pk.k,
        });
    }
    step(&pk.state, &translation(pk.k, m)?)
}

pub fn decrypt(ct: &WalkerState, cfg: &ProtocolConfig) -> Result<WalkerState> {
    if ct.k() != cfg.k {
        return Err(Error::DimensionMismatch {
            expected: 2 * cfg.k,
            actual: ct.dim(),
        });
    }
    step(ct, &cfg.decryption_operator()?)
}

/// The unique site holding more than `1 − tol` of the probability.
pub fn measure_position(state: &WalkerState, tol: f64) -> Result<usize> {
    let dist = state.distribution();
    let (site, p) = dist
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("k >= 1");
    if p > 1.0 - tol {
        Ok(site)
    } else {
        Err(Error::NotPositionEigenstate { max_probability: p })
    }
}

/// `(m' − l) mod k`.
pub fn recover_message(m_prime: usize, l: usize, k: usize) -> usize {
    (m_prime % k + k - l % k) % k
}

/// Record of one honest protocol run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transcript {
    pub k: usize,
    pub message: usize,
    pub l: usize,
    pub s: usize,
    pub reps: u64,
    pub decryption_pattern: String,
    pub public_key_distribution: Vec<f64>,
    pub ciphertext_distribution: Vec<f64>,
    pub decrypted_distribution: Vec<f64>,
    pub measured_site: usize,
    pub recovered: usize,
}

pub fn run_session(cfg: &ProtocolConfig, m: usize, l: usize, s: usize) -> Result<Transcript> {
    let pk = gen_public_key(l, s, cfg)?;
    let ct = encrypt(&pk, m)?;
    let plain = decrypt(&ct, cfg)?;
    let measured_site = measure_position(&plain, MEASUREMENT_TOL)?;
    Ok(Transcript {
        k: cfg.k,
        message: m,
        l,
        s,
        reps: cfg.reps,
        decryption_pattern: cfg.decryption_pattern(),
        public_key_distribution: pk.state.distribution(),
        ciphertext_distribution: ct.distribution(),
        decrypted_distribution: plain.distribution(),
        measured_site,
        recovered: recover_message(measured_site, l, cfg.k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recover_examples() {
        assert_eq!(recover_message(0, 1, 3), 2);
        assert_eq!(recover_message(2, 2, 3), 0);
        assert_eq!(recover_message(3, 0, 4), 3);
    }

    #[test]
    fn measure_examples() {
        let s = WalkerState::basis(3, 2, 0).unwrap();
        assert_eq!(measure_position(&s, MEASUREMENT_TOL).unwrap(), 2);
        let u = WalkerState::uniform(3, 0).unwrap();
        assert!(matches!(
            measure_position(&u, MEASUREMENT_TOL),
            Err(Error::NotPositionEigenstate { .. })
        ));
    }

    #[test]
    fn translation_moves_sites() {
        let t = translation(3, 1).unwrap();
        let s = WalkerState::basis(3, 2, 1).unwrap();
        assert_eq!(step(&s, &t).unwrap(), WalkerState::basis(3, 0, 1).unwrap());
        assert!(translation(4, 0)
            .unwrap()
            .is_identity(0.0 + f64::MIN_POSITIVE));
    }

    #[test]
    fn translation_commutes_with_walk() {
        let cfg = ProtocolConfig::paper(3).unwrap();
        let b = build_walk_unitary(3, cfg.coin_b()).unwrap();
        for m in 0..3 {
            let t = translation(3, m).unwrap();
            let tb = t.mul(&b).unwrap();
            let bt = b.mul(&t).unwrap();
            assert!(tb.max_abs_diff(&bt) < 1e-12);
        }
    }

    #[test]
    fn config_rejects_periodic_coin() {
        let h = CoinParams::hadamard();
        assert!(matches!(
            ProtocolConfig::new(4, h, h, 1000),
            Err(Error::InvalidConfig(_))
        ));
        assert!(ProtocolConfig::paper(5).is_err());
    }

    #[test]
    fn paper_config_shape() {
        let cfg = ProtocolConfig::paper(3).unwrap();
        assert_eq!(cfg.reps(), 5);
        assert_eq!(cfg.decryption_pattern(), "AABBAABBAABBAABBAA");
    }

    #[test]
    fn key_and_message_errors() {
        let cfg = ProtocolConfig::paper(3).unwrap();
        assert!(matches!(
            gen_public_key(3, 0, &cfg),
            Err(Error::InvalidPosition { .. })
        ));
        let pk = gen_public_key(0, 1, &cfg).unwrap();
        assert!(matches!(encrypt(&pk, 3), Err(Error::InvalidMessage { .. })));
        let wrong = WalkerState::initial(4).unwrap();
        assert!(matches!(
            decrypt(&wrong, &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn encrypt_zero_is_identity() {
        let cfg = ProtocolConfig::paper(3).unwrap();
        let pk = gen_public_key(1, 0, &cfg).unwrap();
        assert_eq!(encrypt(&pk, 0).unwrap(), pk.state);
    }
}
