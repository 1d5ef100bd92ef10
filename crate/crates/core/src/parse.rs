//! Text forms for coins and coin sequences.
//!
//! A coin is a preset name or `rho[,alpha[,beta]]`, where angles are plain
//! numbers or multiples of `pi`:
//!
//! ```text
//! hadamard
//! paper-k3-B
//! 0.5
//! 0,pi/2,0
//! 0.25,0.5pi,2*pi/3
//! ```
//!
//! A sequence is a pattern of single-letter coin names optionally followed by
//! `;`-separated bindings, e.g. `AABB;A=0.26,0,0;B=paper-k3-B`. Unbound
//! letters fall back to `H` = Hadamard and `A`/`B`/`C` = the `paper-k{k}`
//! presets.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::presets::{default_letter, preset};
use crate::walk::{CoinParams, CoinSequence};

/// Longest pattern accepted from text.
pub const MAX_PATTERN_LEN: usize = 4096;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    // reject "inf", "nan" and friends that f64::from_str accepts
    if s.is_empty()
        || !s
            .bytes()
            .all(|b| b.is_ascii_digit() || b".+-eE".contains(&b))
    {
        return Err(parse_err(format!("invalid number '{s}'")));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| parse_err(format!("invalid number '{s}'")))?;
    if !v.is_finite() {
        return Err(parse_err(format!("number '{s}' is not finite")));
    }
    Ok(v)
}

/// `x`, `pi`, `x pi`, `x*pi`, `pi/y`, `x*pi/y`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return parse_number(s);
    };
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.trim().trim_end_matches('*').trim();
    let factor = if head.is_empty() {
        1.0
    } else if head == "-" {
        -1.0
    } else {
        parse_number(head)?
    };
    let tail = tail.trim();
    let divisor = if tail.is_empty() {
        1.0
    } else {
        let d = tail
            .strip_prefix('/')
            .ok_or_else(|| parse_err(format!("unexpected '{tail}' after pi")))?;
        let d = parse_number(d)?;
        if d == 0.0 {
            return Err(parse_err("division by zero in angle"));
        }
        d
    };
    let v = factor * PI / divisor;
    if !v.is_finite() {
        return Err(parse_err(format!("angle '{s}' is not finite")));
    }
    Ok(v)
}

/// Parses a coin. With `unrestricted_angles` the `[0, π]` range check on
/// `α, β` is skipped.
pub fn parse_coin_spec(s: &str, unrestricted_angles: bool) -> Result<CoinParams> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty coin"));
    }
    if let Some(p) = preset(s) {
        return Ok(p);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() > 3 {
        return Err(parse_err(format!("coin '{s}' has more than three fields")));
    }
    let rho = parse_number(parts[0])?;
    let alpha = parts
        .get(1)
        .map(|a| parse_angle(a))
        .transpose()?
        .unwrap_or(0.0);
    let beta = parts
        .get(2)
        .map(|b| parse_angle(b))
        .transpose()?
        .unwrap_or(0.0);
    if unrestricted_angles {
        CoinParams::unrestricted(rho, alpha, beta)
    } else {
        CoinParams::new(rho, alpha, beta)
    }
}

/// Parses a sequence for a `k`-cycle.
pub fn parse_sequence_spec(s: &str, k: usize, unrestricted_angles: bool) -> Result<CoinSequence> {
    let mut sections = s.split(';');
    let pattern = sections.next().unwrap_or("").trim();
    if pattern.is_empty() {
        return Err(parse_err("empty pattern"));
    }
    if pattern.chars().count() > MAX_PATTERN_LEN {
        return Err(parse_err(format!("pattern longer than {MAX_PATTERN_LEN}")));
    }
    if let Some(bad) = pattern.chars().find(|c| !c.is_ascii_alphabetic()) {
        return Err(parse_err(format!("invalid pattern letter '{bad}'")));
    }

    let mut coins = BTreeMap::new();
    for binding in sections {
        let binding = binding.trim();
        if binding.is_empty() {
            continue;
        }
        let (name, coin) = binding
            .split_once('=')
            .ok_or_else(|| parse_err(format!("binding '{binding}' lacks '='")))?;
        let mut letters = name.trim().chars();
        let letter = match (letters.next(), letters.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() => c,
            _ => {
                return Err(parse_err(format!(
                    "coin name '{}' must be one letter",
                    name.trim()
                )))
            }
        };
        if coins
            .insert(letter, parse_coin_spec(coin, unrestricted_angles)?)
            .is_some()
        {
            return Err(parse_err(format!("coin '{letter}' bound twice")));
        }
    }
    for c in pattern.chars() {
        if let std::collections::btree_map::Entry::Vacant(slot) = coins.entry(c) {
            let coin = default_letter(c, k)
                .ok_or_else(|| parse_err(format!("no coin bound to '{c}' for k = {k}")))?;
            slot.insert(coin);
        }
    }
    coins.retain(|c, _| pattern.contains(*c));
    CoinSequence::new(coins, pattern)
}
