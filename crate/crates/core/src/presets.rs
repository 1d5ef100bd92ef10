//! Named coins: the Hadamard coin and the solved chaotic pairs for the
//! 3- and 4-cycle.
//!
//! The `paper-k*` presets are derived rather than typed in. `C` uses the
//! periodic reference value `ρ = (5 − √5)/6` (k = 3) or `(5 − √5)/8`
//! (k = 4); `A` and `B` are the two roots of [`solve_aabb`] at that `ρ`.
//! Rounded to six digits they are 0.264734 / 0.801571 / 0.460655 for k = 3
//! and 0.998489 / 0.119545 / 0.345492 for k = 4. The rounded values are not
//! periodic to 1e-9, so always go through these functions.

use crate::parrondo::solve_aabb;
use crate::walk::CoinParams;

pub const PRESET_NAMES: &[&str] = &[
    "hadamard",
    "paper-k3-A",
    "paper-k3-B",
    "paper-k3-C",
    "paper-k4-A",
    "paper-k4-B",
    "paper-k4-C",
];

/// Reference `ρ` whose walk is periodic with period 10.
pub fn periodic_rho(k: usize) -> Option<f64> {
    match k {
        3 => Some((5.0 - 5f64.sqrt()) / 6.0),
        4 => Some((5.0 - 5f64.sqrt()) / 8.0),
        _ => None,
    }
}

/// The chaotic pair and periodic reference coin for a cycle size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperCoins {
    pub a: CoinParams,
    pub b: CoinParams,
    pub c: CoinParams,
}

pub fn paper_coins(k: usize) -> Option<PaperCoins> {
    let rho = periodic_rho(k)?;
    let [plus, _] = solve_aabb(rho).ok()?;
    let (hi, lo) = (plus.rho1, plus.rho2);
    // A is the smaller root on the 3-cycle and the larger on the 4-cycle
    let (a, b) = if k == 3 { (lo, hi) } else { (hi, lo) };
    Some(PaperCoins {
        a: CoinParams::with_rho(a).ok()?,
        b: CoinParams::with_rho(b).ok()?,
        c: CoinParams::with_rho(rho).ok()?,
    })
}

/// Looks up a preset by name. The trailing letter is case-insensitive.
pub fn preset(name: &str) -> Option<CoinParams> {
    if name.eq_ignore_ascii_case("hadamard") {
        return Some(CoinParams::hadamard());
    }
    let rest = name.strip_prefix("paper-k")?;
    let (k, letter) = rest.split_once('-')?;
    let k: usize = k.parse().ok()?;
    let coins = paper_coins(k)?;
    match letter {
        "A" | "a" => Some(coins.a),
        "B" | "b" => Some(coins.b),
        "C" | "c" => Some(coins.c),
        _ => None,
    }
}

/// Default coin for an unbound pattern letter on a `k`-cycle.
pub fn default_letter(letter: char, k: usize) -> Option<CoinParams> {
    match letter {
        'H' => Some(CoinParams::hadamard()),
        'A' | 'B' | 'C' => preset(&format!("paper-k{k}-{letter}")),
        _ => None,
    }
}
