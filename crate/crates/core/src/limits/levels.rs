//! Exact data at individual levels of a tower.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::oracle::level_split;
use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::poly::{cyclic_resultant, cyclic_resultant_mod, ExactBudget, IntPolynomial};

/// Levels whose exact value would exceed this many digits are reported by residue only.
pub const EXACT_LEVEL_DIGITS: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub n: u32,
    /// cover degree `m p^n`
    pub level: u64,
    /// exact `Res(t^level - 1, Δ)` when small enough
    pub resultant: Option<BigInt>,
    /// exact `|Res|`, the homology or class group order, when small enough
    pub order: Option<BigInt>,
    /// `v_p(|Res|)`
    pub valuation: u32,
    /// `Res(t^level - 1, Δ) mod p^max(n,1)`
    pub residue: BigInt,
    /// `|Res| / p^valuation mod p^max(n,1)`
    pub unit_residue: BigInt,
}

impl TowerLevel {
    pub fn modulus_exponent(&self) -> u32 {
        self.n.max(1)
    }
}

/// Sign of `Res(t^n - 1, f)`: that of `f(1)` for odd `n`, of `f(1) f(-1)` for even `n`.
pub fn resultant_sign(f: &IntPolynomial, n: u64) -> Result<i8> {
    let s1 = arith::sign_of(&f.evaluate_i64(1));
    let s = if n % 2 == 1 { s1 } else { s1 * arith::sign_of(&f.evaluate_i64(-1)) };
    if s == 0 {
        return Err(Error::InfiniteHomology { n });
    }
    Ok(s)
}

/// Levels `n = 0..=last` of `Res(t^(p^n) - 1, f)`.
pub fn tower_levels(f: &IntPolynomial, p: Prime, last: u32) -> Result<Vec<TowerLevel>> {
    (0..=last)
        .map(|n| {
            let level = p
                .get()
                .checked_pow(n)
                .ok_or_else(|| Error::InvalidArgument(format!("level {n} overflows")))?;
            tower_level(f, f, p, n, level, 1)
        })
        .collect()
}

/// Level `m p^n` of `f`, where `Res(t^(m p^n) - 1, f) = sigma Res(t^(p^n) - 1, transformed)`.
pub(crate) fn tower_level(
    delta: &IntPolynomial,
    engine_input: &IntPolynomial,
    p: Prime,
    n: u32,
    level: u64,
    sigma: i8,
) -> Result<TowerLevel> {
    let k = n.max(1);
    let modulus = p.pow(k);
    let sign = resultant_sign(delta, level)?;
    let residue = cyclic_resultant_mod(delta, level, &modulus)?;
    let (valuation, unit) = level_split(engine_input, p, n, k, 2 * k + 4)?
        .ok_or(Error::InfiniteHomology { n: level })?;
    // |H_1| = sign * Res = sign * sigma * (engine value)
    let unit_residue = if sign * sigma < 0 { (-unit).mod_floor(&modulus) } else { unit };
    let resultant = if ExactBudget::estimate_cyclic_digits(delta, level) <= EXACT_LEVEL_DIGITS {
        Some(cyclic_resultant(delta, level)?)
    } else {
        None
    };
    let order = resultant.as_ref().map(|r| r.abs());
    Ok(TowerLevel { n, level, resultant, order, valuation, residue, unit_residue })
}

