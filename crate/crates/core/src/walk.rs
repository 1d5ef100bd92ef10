//! Coins, shifts and walk unitaries on k-cycle graphs, plus state evolution.
//!
//! States live in `H_P ⊗ H_c` with flat index `2·i + s` for position `i`
//! and coin state `s`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;
use crate::UNITARITY_TOL;

/// Parameters `(ρ, α, β)` of the general 2×2 coin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoinParams {
    rho: f64,
    alpha: f64,
    beta: f64,
}

impl CoinParams {
    /// Validated constructor: `0 ≤ ρ ≤ 1` and `0 ≤ α, β ≤ π`.
    pub fn new(rho: f64, alpha: f64, beta: f64) -> Result<Self> {
        let p = Self::unrestricted(rho, alpha, beta)?;
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=PI).contains(&v) {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} outside [0, π]; use unrestricted angles to override"
                )));
            }
        }
        Ok(p)
    }

    /// Like [`CoinParams::new`] but accepts any finite angles. The coin is
    /// unitary for every real α, β.
    pub fn unrestricted(rho: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidParams(format!("rho = {rho} outside [0, 1]")));
        }
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams("angles must be finite".into()));
        }
        Ok(CoinParams { rho, alpha, beta })
    }

    pub fn with_rho(rho: f64) -> Result<Self> {
        Self::new(rho, 0.0, 0.0)
    }

    pub fn hadamard() -> Self {
        CoinParams {
            rho: 0.5,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Phase `δ = α + β` entering the block eigenvalues.
    pub fn delta(&self) -> f64 {
        self.alpha + self.beta
    }
}

impl fmt::Display for CoinParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C2({}, {}, {})", self.rho, self.alpha, self.beta)
    }
}

pub(crate) fn coin_matrix2(p: &CoinParams) -> Matrix2<Complex64> {
    let a = p.rho.sqrt();
    let b = (1.0 - p.rho).sqrt();
    Matrix2::new(
        Complex64::new(a, 0.0),
        Complex64::from_polar(b, p.alpha),
        Complex64::from_polar(b, p.beta),
        -Complex64::from_polar(a, p.alpha + p.beta),
    )
}

/// The 2×2 coin `[[√ρ, √(1−ρ)e^{iα}], [√(1−ρ)e^{iβ}, −√ρ e^{i(α+β)}]]`.
pub fn build_coin(params: &CoinParams) -> Result<UnitaryMatrix> {
    let m = coin_matrix2(params);
    UnitaryMatrix::new(DMatrix::from_iterator(2, 2, m.iter().copied()))
}

fn check_k(k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidSize("cycle size k must be at least 1".into()));
    }
    Ok(())
}

/// Flat index of basis state `|i⟩|s⟩`.
#[inline]
pub fn basis_index(position: usize, coin: usize) -> usize {
    2 * position + coin
}

/// Destination site of `|i⟩|s⟩` under the cyclic shift: `(i + 2s − 1) mod k`.
#[inline]
pub fn shifted_site(i: usize, s: usize, k: usize) -> usize {
    if s == 1 {
        (i + 1) % k
    } else {
        (i + k - 1) % k
    }
}

/// Conditional shift on the k-cycle: coin 0 steps left, coin 1 steps right.
pub fn build_shift(k: usize) -> Result<UnitaryMatrix> {
    check_k(k)?;
    let n = 2 * k;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..k {
        for s in 0..2 {
            m[(basis_index(shifted_site(i, s, k), s), basis_index(i, s))] =
                Complex64::new(1.0, 0.0);
        }
    }
    Ok(UnitaryMatrix::from_unchecked(m))
}

/// `U_k = S · (I_k ⊗ C₂)`.
pub fn build_walk_unitary(k: usize, params: &CoinParams) -> Result<UnitaryMatrix> {
    let shift = build_shift(k)?;
    let coin = build_coin(params)?;
    let block_coin = UnitaryMatrix::identity(k).kron(&coin);
    shift.mul(&block_coin)
}

const BLOCK_TOL: f64 = 1e-12;

/// Defining 2×2 blocks of a block-circulant matrix, indexed by cyclic
/// offset `(column block − row block) mod k`.
pub fn circulant_blocks(u: &UnitaryMatrix, k: usize) -> Result<Vec<Matrix2<Complex64>>> {
    check_k(k)?;
    if u.dim() != 2 * k {
        return Err(Error::DimensionMismatch {
            expected: 2 * k,
            actual: u.dim(),
        });
    }
    let m = u.as_matrix();
    let block = |r: usize, c: usize| -> Matrix2<Complex64> {
        m.fixed_view::<2, 2>(2 * r, 2 * c).into_owned()
    };
    let blocks: Vec<_> = (0..k).map(|j| block(0, j)).collect();
    let mut deviation = 0.0f64;
    for r in 1..k {
        for c in 0..k {
            let expected = &blocks[(c + k - r) % k];
            let d = (block(r, c) - expected)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            deviation = deviation.max(d);
        }
    }
    if deviation > BLOCK_TOL {
        return Err(Error::NotBlockCirculant { deviation });
    }
    Ok(blocks)
}

/// Rebuilds the full matrix from its circulant blocks.
pub fn from_circulant_blocks(blocks: &[Matrix2<Complex64>]) -> DMatrix<Complex64> {
    let k = blocks.len();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for r in 0..k {
        for c in 0..k {
            m.fixed_view_mut::<2, 2>(2 * r, 2 * c)
                .copy_from(&blocks[(c + k - r) % k]);
        }
    }
    m
}

/// Normalized amplitude vector over the `2k` position⊗coin basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    k: usize,
    amplitudes: DVector<Complex64>,
}

impl WalkerState {
    /// Basis state `|position⟩|coin⟩`.
    pub fn basis(k: usize, position: usize, coin: usize) -> Result<Self> {
        check_k(k)?;
        if position >= k {
            return Err(Error::IndexOutOfRange {
                index: position,
                bound: k,
            });
        }
        if coin > 1 {
            return Err(Error::IndexOutOfRange {
                index: coin,
                bound: 2,
            });
        }
        let mut amplitudes = DVector::zeros(2 * k);
        amplitudes[basis_index(position, coin)] = Complex64::new(1.0, 0.0);
        Ok(WalkerState { k, amplitudes })
    }

    /// The walker at site 0 with coin state `|1⟩`, the start state of every
    /// reproduced series.
    pub fn initial(k: usize) -> Result<Self> {
        Self::basis(k, 0, 1)
    }

    /// Equal-weight superposition over all sites with a fixed coin state.
    pub fn uniform(k: usize, coin: usize) -> Result<Self> {
        check_k(k)?;
        if coin > 1 {
            return Err(Error::IndexOutOfRange {
                index: coin,
                bound: 2,
            });
        }
        let a = Complex64::new((k as f64).recip().sqrt(), 0.0);
        let mut amplitudes = DVector::zeros(2 * k);
        for i in 0..k {
            amplitudes[basis_index(i, coin)] = a;
        }
        Ok(WalkerState { k, amplitudes })
    }

    pub fn from_amplitudes(k: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_k(k)?;
        if amplitudes.len() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                actual: amplitudes.len(),
            });
        }
        let state = WalkerState {
            k,
            amplitudes: DVector::from_vec(amplitudes),
        };
        let norm_sqr = state.norm_sqr();
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() >= UNITARITY_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, position: usize, coin: usize) -> Complex64 {
        self.amplitudes[basis_index(position, coin)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &WalkerState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn site_probability(&self, site: usize) -> Result<f64> {
        if site >= self.k {
            return Err(Error::IndexOutOfRange {
                index: site,
                bound: self.k,
            });
        }
        Ok(self.amplitude(site, 0).norm_sqr() + self.amplitude(site, 1).norm_sqr())
    }

    /// Probability of each site, in site order.
    pub fn distribution(&self) -> Vec<f64> {
        (0..self.k)
            .map(|i| self.amplitude(i, 0).norm_sqr() + self.amplitude(i, 1).norm_sqr())
            .collect()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &WalkerState) -> f64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn map_amplitudes(&self, amplitudes: DVector<Complex64>) -> Self {
        WalkerState {
            k: self.k,
            amplitudes,
        }
    }
}

/// Applies one walk unitary: `state' = U·state`.
pub fn step(state: &WalkerState, u: &UnitaryMatrix) -> Result<WalkerState> {
    if u.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            actual: u.dim(),
        });
    }
    Ok(state.map_amplitudes(u.as_matrix() * state.amplitudes()))
}

/// Probability of finding the walker at `site`.
pub fn site_probability(state: &WalkerState, site: usize) -> Result<f64> {
    state.site_probability(site)
}

/// A table of named coins and the repeating order in which they are applied.
///
/// The pattern is read left to right in time: the first letter acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinSequence {
    coins: BTreeMap<char, CoinParams>,
    pattern: Vec<char>,
}

impl CoinSequence {
    pub fn new(coins: BTreeMap<char, CoinParams>, pattern: &str) -> Result<Self> {
        let pattern: Vec<char> = pattern.chars().collect();
        if pattern.is_empty() {
            return Err(Error::Parse("empty coin pattern".into()));
        }
        if let Some(c) = pattern.iter().find(|c| !coins.contains_key(c)) {
            return Err(Error::Parse(format!("pattern letter '{c}' has no coin")));
        }
        Ok(CoinSequence { coins, pattern })
    }

    /// A one-letter pattern repeating a single coin.
    pub fn single(letter: char, params: CoinParams) -> Self {
        CoinSequence {
            coins: BTreeMap::from([(letter, params)]),
            pattern: vec![letter],
        }
    }

    /// Same coin table with a different pattern.
    pub fn with_pattern(&self, pattern: &str) -> Result<Self> {
        Self::new(self.coins.clone(), pattern)
    }

    pub fn coins(&self) -> &BTreeMap<char, CoinParams> {
        &self.coins
    }

    pub fn coin(&self, letter: char) -> Option<&CoinParams> {
        self.coins.get(&letter)
    }

    pub fn pattern(&self) -> String {
        self.pattern.iter().collect()
    }

    pub fn letters(&self) -> &[char] {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter applied at step `t + 1`.
    pub fn letter_at(&self, t: usize) -> char {
        self.pattern[t % self.pattern.len()]
    }

    /// Shortest prefix whose repetition yields the pattern ("CCC" -> "C").
    pub fn primitive_len(&self) -> usize {
        let n = self.pattern.len();
        (1..=n)
            .find(|&p| {
                n.is_multiple_of(p) && (0..n).all(|i| self.pattern[i] == self.pattern[i % p])
            })
            .unwrap_or(n)
    }

    /// Walk unitaries for every letter of the coin table.
    pub fn unitaries(&self, k: usize) -> Result<BTreeMap<char, UnitaryMatrix>> {
        self.coins
            .iter()
            .map(|(&c, p)| Ok((c, build_walk_unitary(k, p)?)))
            .collect()
    }
}

impl fmt::Display for CoinSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern())
    }
}

/// Evolves `initial` for `steps` coin applications and returns every
/// intermediate state, `trajectory[0] == initial`.
pub fn evolve_sequence(
    initial: &WalkerState,
    seq: &CoinSequence,
    steps: usize,
) -> Result<Vec<WalkerState>> {
    let unitaries = seq.unitaries(initial.k())?;
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(initial.clone());
    for t in 0..steps {
        let next = step(&trajectory[t], &unitaries[&seq.letter_at(t)])?;
        trajectory.push(next);
    }
    Ok(trajectory)
}

/// Accumulated operator after `steps` coin applications of `seq`.
pub fn accumulated_operator(seq: &CoinSequence, k: usize, steps: usize) -> Result<UnitaryMatrix> {
    accumulated_between(seq, k, 0, steps)
}

/// Operator taking the state at step `from` to the state at step `to`.
pub fn accumulated_between(
    seq: &CoinSequence,
    k: usize,
    from: usize,
    to: usize,
) -> Result<UnitaryMatrix> {
    let unitaries = seq.unitaries(k)?;
    let mut acc = UnitaryMatrix::identity(2 * k);
    for t in from..to {
        acc = unitaries[&seq.letter_at(t)].mul(&acc)?;
    }
    Ok(acc)
}

/// Product of the per-letter walk unitaries for one pass of the pattern,
/// temporally-first letter as the rightmost factor.
pub fn compose_sequence(seq: &CoinSequence, k: usize) -> Result<UnitaryMatrix> {
    accumulated_operator(seq, k, seq.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!((a - b).norm() < tol, "{a} vs {b}");
    }

    #[test]
    fn hadamard_coin() {
        let h = build_coin(&CoinParams::hadamard()).unwrap();
        let r = FRAC_1_SQRT_2;
        assert_close(h.get(0, 0), c(r, 0.0), 1e-15);
        assert_close(h.get(0, 1), c(r, 0.0), 1e-15);
        assert_close(h.get(1, 0), c(r, 0.0), 1e-15);
        assert_close(h.get(1, 1), c(-r, 0.0), 1e-15);
    }

    #[test]
    fn diagonal_coin_at_rho_one() {
        let m = build_coin(&CoinParams::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(m.get(0, 0), c(1.0, 0.0));
        assert_eq!(m.get(0, 1), c(0.0, 0.0));
        assert_eq!(m.get(1, 0), c(0.0, 0.0));
        assert_eq!(m.get(1, 1), c(-1.0, 0.0));
    }

    #[test]
    fn swap_coin_with_alpha_half_pi() {
        let m = build_coin(&CoinParams::new(0.0, PI / 2.0, 0.0).unwrap()).unwrap();
        assert_close(m.get(0, 0), c(0.0, 0.0), 1e-15);
        assert_close(m.get(0, 1), c(0.0, 1.0), 1e-15);
        assert_close(m.get(1, 0), c(1.0, 0.0), 1e-15);
        assert_close(m.get(1, 1), c(0.0, 0.0), 1e-15);
    }

    #[test]
    fn coin_param_validation() {
        assert!(CoinParams::new(1.5, 0.0, 0.0).is_err());
        assert!(CoinParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(CoinParams::new(0.5, 4.0, 0.0).is_err());
        assert!(CoinParams::new(0.5, 0.0, -0.1).is_err());
        assert!(CoinParams::unrestricted(0.5, 4.0, -0.1).is_ok());
        assert!(CoinParams::unrestricted(1.5, 0.0, 0.0).is_err());
        assert!(CoinParams::unrestricted(0.5, f64::NAN, 0.0).is_err());
        assert!(CoinParams::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn shift_examples() {
        let s3 = build_shift(3).unwrap();
        // |0>|0> -> |2>|0>
        assert_eq!(s3.get(basis_index(2, 0), basis_index(0, 0)), c(1.0, 0.0));
        // |2>|1> -> |0>|1>
        assert_eq!(s3.get(basis_index(0, 1), basis_index(2, 1)), c(1.0, 0.0));
        let s4 = build_shift(4).unwrap();
        assert_eq!(s4.get(basis_index(2, 1), basis_index(1, 1)), c(1.0, 0.0));
        assert!(matches!(build_shift(0), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn shift_is_permutation() {
        for k in 1..=8 {
            let s = build_shift(k).unwrap();
            let m = s.as_matrix();
            for z in m.iter() {
                assert!(*z == c(0.0, 0.0) || *z == c(1.0, 0.0));
            }
            for r in 0..2 * k {
                let row: Complex64 = m.row(r).iter().sum();
                let col: Complex64 = m.column(r).iter().sum();
                assert_eq!(row, c(1.0, 0.0));
                assert_eq!(col, c(1.0, 0.0));
            }
        }
    }

    #[test]
    fn diagonal_coin_walk_moves_left() {
        let p = CoinParams::new(1.0, 0.0, 0.0).unwrap();
        for k in 1..6 {
            let u = build_walk_unitary(k, &p).unwrap();
            for i in 0..k {
                let s = WalkerState::basis(k, i, 0).unwrap();
                let out = step(&s, &u).unwrap();
                let expected = WalkerState::basis(k, (i + k - 1) % k, 0).unwrap();
                assert_eq!(out, expected);
            }
        }
    }

    #[test]
    fn circulant_block_shapes() {
        let p = CoinParams::new(0.3, 0.7, 1.1).unwrap();
        let coin = coin_matrix2(&p);
        let k = 5;
        let blocks = circulant_blocks(&build_walk_unitary(k, &p).unwrap(), k).unwrap();
        let zero = Matrix2::<Complex64>::zeros();
        assert_eq!(blocks[0], zero);
        assert!(blocks[2..k - 1].iter().all(|b| *b == zero));
        let mut top = zero;
        top.set_row(0, &coin.row(0));
        let mut bottom = zero;
        bottom.set_row(1, &coin.row(1));
        assert_eq!(blocks[1], top);
        assert_eq!(blocks[k - 1], bottom);
    }

    #[test]
    fn circulant_blocks_rejects_general_matrix() {
        let k = 3;
        let mut m = build_walk_unitary(k, &CoinParams::hadamard())
            .unwrap()
            .into_matrix();
        m.swap_columns(0, 2);
        let u = UnitaryMatrix::new(m).unwrap();
        assert!(matches!(
            circulant_blocks(&u, k),
            Err(Error::NotBlockCirculant { .. })
        ));
        let u4 = UnitaryMatrix::identity(8);
        assert!(matches!(
            circulant_blocks(&u4, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hadamard_single_step_from_origin() {
        let k = 4;
        let u = build_walk_unitary(k, &CoinParams::hadamard()).unwrap();
        let s = WalkerState::basis(k, 0, 0).unwrap();
        let out = step(&s, &u).unwrap();
        let r = FRAC_1_SQRT_2;
        assert_close(out.amplitude(3, 0), c(r, 0.0), 1e-15);
        assert_close(out.amplitude(1, 1), c(r, 0.0), 1e-15);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-15);
        assert!((out.site_probability(1).unwrap() - 0.5).abs() < 1e-15);
        assert!((out.site_probability(3).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(out.site_probability(0).unwrap(), 0.0);
    }

    #[test]
    fn step_dimension_mismatch() {
        let s = WalkerState::initial(3).unwrap();
        let u = UnitaryMatrix::identity(8);
        assert!(matches!(step(&s, &u), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn site_probability_examples() {
        let s = WalkerState::basis(5, 0, 1).unwrap();
        assert_eq!(site_probability(&s, 0).unwrap(), 1.0);
        assert_eq!(site_probability(&s, 4).unwrap(), 0.0);
        assert!(matches!(
            site_probability(&s, 5),
            Err(Error::IndexOutOfRange { .. })
        ));
        let u = WalkerState::uniform(5, 0).unwrap();
        for i in 0..5 {
            assert!((u.site_probability(i).unwrap() - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn state_construction_errors() {
        assert!(WalkerState::basis(3, 3, 0).is_err());
        assert!(WalkerState::basis(3, 0, 2).is_err());
        assert!(WalkerState::from_amplitudes(1, vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(WalkerState::from_amplitudes(1, vec![c(1.0, 0.0)]).is_err());
        assert!(WalkerState::from_amplitudes(1, vec![c(0.6, 0.0), c(0.0, 0.8)]).is_ok());
    }

    #[test]
    fn evolve_zero_steps() {
        let s = WalkerState::initial(3).unwrap();
        let seq = CoinSequence::single('H', CoinParams::hadamard());
        let traj = evolve_sequence(&s, &seq, 0).unwrap();
        assert_eq!(traj, vec![s]);
    }

    #[test]
    fn sequence_validation() {
        let coins = BTreeMap::from([('A', CoinParams::hadamard())]);
        assert!(CoinSequence::new(coins.clone(), "").is_err());
        assert!(CoinSequence::new(coins.clone(), "AB").is_err());
        let seq = CoinSequence::new(coins, "AAA").unwrap();
        assert_eq!(seq.primitive_len(), 1);
        assert_eq!(seq.letter_at(7), 'A');
    }

    #[test]
    fn primitive_len_examples() {
        let coins = BTreeMap::from([('A', CoinParams::hadamard()), ('B', CoinParams::hadamard())]);
        let len = |p: &str| CoinSequence::new(coins.clone(), p).unwrap().primitive_len();
        assert_eq!(len("AABB"), 4);
        assert_eq!(len("ABAB"), 2);
        assert_eq!(len("AABAAB"), 3);
        assert_eq!(len("A"), 1);
    }

    #[test]
    fn aabb_with_identical_coins_is_fourth_power() {
        let p = CoinParams::new(0.37, 0.4, 1.9).unwrap();
        let coins = BTreeMap::from([('A', p), ('B', p)]);
        let seq = CoinSequence::new(coins, "AABB").unwrap();
        let k = 3;
        let composed = compose_sequence(&seq, k).unwrap();
        let u4 = build_walk_unitary(k, &p).unwrap().pow(4);
        assert!(composed.max_abs_diff(&u4) < 1e-13);
    }

    #[test]
    fn composition_order_is_temporal() {
        // With distinct coins, "AB" must be B·A (A first).
        let a = CoinParams::new(0.2, 0.3, 0.0).unwrap();
        let b = CoinParams::new(0.7, 0.0, 1.2).unwrap();
        let coins = BTreeMap::from([('A', a), ('B', b)]);
        let seq = CoinSequence::new(coins, "AB").unwrap();
        let k = 4;
        let ua = build_walk_unitary(k, &a).unwrap();
        let ub = build_walk_unitary(k, &b).unwrap();
        let composed = compose_sequence(&seq, k).unwrap();
        assert!(composed.max_abs_diff(&ub.mul(&ua).unwrap()) < 1e-14);
        assert!(composed.max_abs_diff(&ua.mul(&ub).unwrap()) > 1e-3);
    }
}
