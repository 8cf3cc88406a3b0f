//! Limits read directly off the exact tower, one modular cyclic resultant per level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::poly::{
    cyclic_resultant_mod, cyclotomic_multiplicity, CyclotomicIndex, ExactBudget, IntPolynomial,
};

/// Least `k` with `Res(t^(p^k) - 1, f) = 0`, i.e. `Phi_(p^j) | f` for some `j <= k`.
/// Only `j` with `phi(p^j) <= deg f` can occur.
pub fn vanishing_level(f: &IntPolynomial, p: Prime) -> Result<Option<u32>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)? as u64;
    let mut k = 0u32;
    let mut pk = 1u64;
    loop {
        if arith::euler_phi(pk) > d {
            return Ok(None);
        }
        let idx = CyclotomicIndex::new(pk)?;
        if cyclotomic_multiplicity(f, idx)? > 0 {
            return Ok(Some(k));
        }
        k += 1;
        pk = match pk.checked_mul(p.get()) {
            Some(x) => x,
            None => return Ok(None),
        };
    }
}

/// Refuse levels whose exact size `p^n * deg f * log2(height)` exceeds the budget.
pub fn check_oracle_budget(f: &IntPolynomial, p: Prime, n: u32, budget: &ExactBudget) -> Result<u64> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)? as f64;
    let height = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bits = (height.bits() as f64).max(1.0);
    let size = (p.get() as f64).powi(n as i32) * d.max(1.0) * bits;
    let limit = budget.max_digits as f64;
    if size > limit {
        return Err(Error::BudgetExceeded {
            estimate: size.min(u64::MAX as f64) as u64,
            budget: budget.max_digits,
        });
    }
    p.get()
        .checked_pow(n)
        .ok_or(Error::BudgetExceeded { estimate: u64::MAX, budget: budget.max_digits })
}

/// `Res(t^(p^n) - 1, f)` modulo `p^k`.
pub fn level_residue(f: &IntPolynomial, p: Prime, n: u32, k: u32) -> Result<BigInt> {
    let level = p
        .get()
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidArgument("level too large".into()))?;
    cyclic_resultant_mod(f, level, &p.pow(k))
}

/// Valuation and unit part (mod `p^digits`) of `Res(t^(p^n) - 1, f)`, raising
/// the modulus until enough digits are known. `None` if the level vanishes.
pub fn level_split(f: &IntPolynomial, p: Prime, n: u32, digits: u32, start: u32) -> Result<Option<(u32, BigInt)>> {
    if let Some(k) = vanishing_level(f, p)? {
        if k <= n {
            return Ok(None);
        }
    }
    let mut modulus_exp = start.max(digits + 1);
    for _ in 0..24 {
        let r = level_residue(f, p, n, modulus_exp)?;
        if r.is_zero() {
            modulus_exp *= 2;
            continue;
        }
        let v = arith::valuation(&r, p.get()).expect("nonzero");
        if modulus_exp < v + digits {
            modulus_exp = v + digits;
            continue;
        }
        let unit = (r / p.pow(v)).mod_floor(&p.pow(digits));
        return Ok(Some((v, unit)));
    }
    Err(Error::PrecisionExhausted(format!(
        "level {n} resultant not resolved below p^{modulus_exp}"
    )))
}

/// Limit and non-p limit read off level `n`: the residue of the level value
/// mod `p^n`, and its unit part mod `p^n`.
pub fn limit_sequence_oracle(f: &IntPolynomial, p: Prime, n: u32) -> Result<(PadicScalar, PadicScalar)> {
    limit_sequence_oracle_with_budget(f, p, n, &ExactBudget::default())
}

pub fn limit_sequence_oracle_with_budget(
    f: &IntPolynomial,
    p: Prime,
    n: u32,
    budget: &ExactBudget,
) -> Result<(PadicScalar, PadicScalar)> {
    if n == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    if let Some(k) = vanishing_level(f, p)? {
        if k <= n {
            return Err(Error::VanishingTower { level: k });
        }
    }
    check_oracle_budget(f, p, n, budget)?;
    let limit = PadicScalar::from_residue(&level_residue(f, p, n, n)?, p, n as i64);
    let mu = f.p_content(p)?;
    let reduced = f.div_scalar_exact(&p.pow(mu)).expect("content");
    let (_, unit) = level_split(&reduced, p, n, n, 2 * n)?
        .ok_or(Error::VanishingTower { level: n })?;
    let nonp = PadicScalar::from_residue(&unit, p, n as i64);
    Ok((limit, nonp))
}
