//! p-adic limits of the cyclic resultants `Res(t^(p^n) - 1, f)`.
//!
//! Two engines: the sequence oracle reads a deep level of the exact tower,
//! and the closed formula assembles the limit from the Newton polygon, the
//! Teichmüller lifts of the unit roots and a product of p-adic logarithms over
//! the roots near 1. Either can check the other.

mod hensel;
mod levels;
mod oracle;
mod teich;
mod zp_poly;

pub use hensel::{hensel_distinguished_factor, log_product, HenselFactor};
pub(crate) use levels::tower_level;
pub use levels::{resultant_sign, tower_levels, TowerLevel, EXACT_LEVEL_DIGITS};
pub use oracle::{
    check_oracle_budget, level_residue, level_split, limit_sequence_oracle,
    limit_sequence_oracle_with_budget, vanishing_level,
};
pub use teich::{classify_roots, teich_poly, xi_unit, RootClassification, TeichPolynomial};

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::poly::{cyclotomic, CyclotomicIndex, ExactBudget, IntPolynomial};

/// Extra digits carried internally by the formula engine.
pub const GUARD_DIGITS: u32 = 4;

/// Default working precision in base-p digits.
pub const DEFAULT_PRECISION: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IwasawaInvariants {
    pub lambda: u32,
    pub mu: u32,
    pub nu: i64,
    /// least `n0` such that `v_p(Res(t^(p^n) - 1, f)) = lambda n + mu p^n + nu`
    /// for every checked level `n >= n0`
    pub stabilization: u32,
}

impl IwasawaInvariants {
    /// `lambda n + mu p^n + nu`.
    pub fn predicted_valuation(&self, p: Prime, n: u32) -> Option<i64> {
        let pn = (p.get() as i64).checked_pow(n)?;
        Some(self.lambda as i64 * n as i64 + self.mu as i64 * pn + self.nu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroReason {
    Nonzero,
    /// p divides every coefficient
    Mu,
    /// some root is congruent to 1
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonpLimit {
    Value(PadicScalar),
    Absent { reason: String },
}

impl NonpLimit {
    pub fn value(&self) -> Option<&PadicScalar> {
        match self {
            NonpLimit::Value(v) => Some(v),
            NonpLimit::Absent { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    Sequence,
    Both,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Method::Formula),
            "sequence" => Ok(Method::Sequence),
            "both" => Ok(Method::Both),
            other => Err(Error::InvalidArgument(format!("unknown method {other}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Sequence => "sequence",
            Method::Both => "both",
        })
    }
}

/// `f = Phi_m mod p` with `p` not dividing `m`; then the limit is `l` when
/// `m` is a power of the prime `l`, and 1 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCheck {
    pub m: u64,
    pub expected: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitReport {
    pub p: Prime,
    pub precision: u32,
    pub limit: PadicScalar,
    pub zero_reason: ZeroReason,
    pub nonp_limit: NonpLimit,
    pub xi: PadicScalar,
    /// absent when the tower vanishes
    pub invariants: Option<IwasawaInvariants>,
    /// parity of `p deg f + #{|a|_p < 1}`
    pub sign_exponent: u32,
    pub method: Method,
    /// digits on which the two engines agree, when both ran
    pub agreement_digits: Option<u32>,
    pub classification: RootClassification,
    pub cyclotomic_check: Option<CyclotomicCheck>,
}

impl LimitReport {
    pub fn limit_is_zero(&self) -> bool {
        self.zero_reason != ZeroReason::Nonzero
    }
}

/// Full report from the chosen engine(s).
pub fn compute_limit(f: &IntPolynomial, p: Prime, precision: u32, method: Method) -> Result<LimitReport> {
    compute_limit_with_budget(f, p, precision, method, &ExactBudget::default())
}

pub fn compute_limit_with_budget(
    f: &IntPolynomial,
    p: Prime,
    precision: u32,
    method: Method,
    budget: &ExactBudget,
) -> Result<LimitReport> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    match method {
        Method::Formula => limit_formula(f, p, precision),
        Method::Sequence => {
            let mut report = limit_formula(f, p, precision)?;
            let (limit, nonp) = limit_sequence_oracle_with_budget(f, p, precision, budget)?;
            report.limit = limit;
            report.nonp_limit = NonpLimit::Value(nonp);
            report.method = Method::Sequence;
            Ok(report)
        }
        Method::Both => {
            let mut report = limit_formula(f, p, precision)?;
            let (limit, nonp) = limit_sequence_oracle_with_budget(f, p, precision, budget)?;
            let mut agree = agreement(&report.limit, &limit, precision);
            if let Some(v) = report.nonp_limit.value() {
                agree = agree.min(agreement(v, &nonp, precision));
            }
            if agree < precision {
                return Err(Error::EngineDisagreement { agreement: agree, required: precision });
            }
            report.method = Method::Both;
            report.agreement_digits = Some(agree);
            Ok(report)
        }
    }
}

/// Largest `k <= max` with `x = y mod p^k`.
pub fn agreement(x: &PadicScalar, y: &PadicScalar, max: u32) -> u32 {
    let mut k = 0;
    while k < max {
        let next = k + 1;
        match (x.residue(next), y.residue(next)) {
            (Ok(a), Ok(b)) if a == b => k = next,
            _ => break,
        }
    }
    k
}

/// The closed-form engine.
pub fn limit_formula(f: &IntPolynomial, p: Prime, precision: u32) -> Result<LimitReport> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be >= 1".into()));
    }
    let class = classify_roots(f, p)?;
    let working = precision + GUARD_DIGITS;
    let xi = teich::xi_from_class(&class, working)?;
    let unit_value = unit_limit(&class, &xi, working)?;
    let (limit, zero_reason) = if class.mu > 0 {
        (PadicScalar::zero(p, precision as i64), ZeroReason::Mu)
    } else if class.lambda > 0 {
        (PadicScalar::zero(p, precision as i64), ZeroReason::Lambda)
    } else {
        (unit_value.clone().expect("lambda = 0").with_precision(precision), ZeroReason::Nonzero)
    };
    let cyclotomic_check = cyclotomic_congruence(f, p)?;
    if let Some(check) = &cyclotomic_check {
        let expected = PadicScalar::from_integer(&check.expected, p, precision);
        if agreement(&expected, &limit, precision) < precision {
            return Err(Error::InvariantViolation(format!(
                "limit disagrees with the cyclotomic congruence for m = {}",
                check.m
            )));
        }
    }
    let vanishing = vanishing_level(&class.reduced, p)?;
    let (nonp_limit, invariants) = match vanishing {
        Some(k) => (
            NonpLimit::Absent { reason: format!("tower vanishes at level {k}") },
            None,
        ),
        None => {
            let (nonp, nu) = match unit_value {
                Some(v) => (v.with_precision(precision), 0),
                None => nonp_from_class(&class, &xi, precision)?,
            };
            let invariants = check_invariants(&class, nu)?;
            (NonpLimit::Value(nonp), Some(invariants))
        }
    };
    Ok(LimitReport {
        p,
        precision,
        limit,
        zero_reason,
        nonp_limit,
        xi: xi.with_precision(precision),
        invariants,
        sign_exponent: class.sign_exponent(),
        method: Method::Formula,
        agreement_digits: None,
        classification: class,
        cyclotomic_check,
    })
}

/// `(-1)^(p d + e) xi (-1)^deg H H(1)` for `f / p^mu`, when no root is near 1.
fn unit_limit(class: &RootClassification, xi: &PadicScalar, working: u32) -> Result<Option<PadicScalar>> {
    if class.lambda > 0 {
        return Ok(None);
    }
    let p = class.p;
    let h = teich::teich_from_class(class, working)?;
    let mut value = h.eval_residue(&BigInt::one());
    if (h.degree() + class.sign_exponent() as usize) % 2 == 1 {
        value = -value;
    }
    let value = PadicScalar::from_residue(&value, p, working as i64);
    Ok(Some(value.mul(xi)?))
}

/// Non-p limit from the closed formula, and `nu`.
pub fn nonp_limit_formula(f: &IntPolynomial, p: Prime, precision: u32) -> Result<PadicScalar> {
    let class = classify_roots(f, p)?;
    if let Some(k) = vanishing_level(&class.reduced, p)? {
        return Err(Error::VanishingTower { level: k });
    }
    let working = precision + GUARD_DIGITS;
    let xi = teich::xi_from_class(&class, working)?;
    match unit_limit(&class, &xi, working)? {
        Some(v) => Ok(v.with_precision(precision)),
        None => Ok(nonp_from_class(&class, &xi, precision)?.0),
    }
}

/// `(-1)^(p d + e) xi (-1)^deg H' H'(1) p^-nu prod log(alpha)` where `H'` drops
/// the roots equal to 1 and the product runs over the roots near 1.
fn nonp_from_class(class: &RootClassification, xi: &PadicScalar, precision: u32) -> Result<(PadicScalar, i64)> {
    let p = class.p;
    let working = precision + GUARD_DIGITS;
    let lambda = class.lambda as usize;
    let h = teich::teich_from_class(class, working)?.deflate_at_one(class.lambda)?;
    let mut unit_part = h.eval_residue(&BigInt::one());
    if (h.degree() + class.sign_exponent() as usize) % 2 == 1 {
        unit_part = -unit_part;
    }
    let unit_part = PadicScalar::from_residue(&unit_part, p, working as i64).mul(xi)?;

    let shifted = class.reduced.taylor_shift(&BigInt::one());
    let w = min_positive_slope(&shifted, p)?;
    let f1 = class.reduced.evaluate(&BigInt::one());
    let v_f1 = arith::valuation(&f1, p.get()).unwrap_or(0) as u32;
    let mut abs_target = working + v_f1 + 2;
    for _ in 0..10 {
        let plan = hensel::plan_log_product(p, lambda, w, abs_target)?;
        let factor = hensel::hensel_split(shifted.coeffs(), lambda, p, plan.working)?;
        let lp = hensel::log_product_with_bound(&factor, w, abs_target)?;
        let enough = match lp.valuation() {
            Some(nu) => lp.abs_precision() - nu >= working as i64,
            None => false,
        };
        if !enough {
            abs_target *= 2;
            continue;
        }
        let nu = lp.valuation().expect("nonzero");
        if shortcut_applies(p, w) && nu != v_f1 as i64 {
            return Err(Error::InvariantViolation(format!(
                "nu = {nu} but v_p(f(1)) = {v_f1} with every root near 1 inside the log disc"
            )));
        }
        let value = unit_part.mul(&lp.shift(-nu))?;
        return Ok((value.with_precision(precision), nu));
    }
    Err(Error::PrecisionExhausted(format!(
        "product of logarithms still indistinguishable from 0 modulo p^{abs_target}"
    )))
}

/// Every root near 1 satisfies `v(alpha - 1) > 1/(p - 1)`.
fn shortcut_applies(p: Prime, w: Ratio<i64>) -> bool {
    w * Ratio::from_integer(p.get() as i64 - 1) > Ratio::one()
}

/// Smallest positive root valuation of an exact polynomial with `F(0) != 0`.
fn min_positive_slope(f: &IntPolynomial, p: Prime) -> Result<Ratio<i64>> {
    let np = crate::padic::NewtonPolygon::new(f, p)?;
    if np.zero_roots() > 0 {
        return Err(Error::VanishingTower { level: 0 });
    }
    np.root_valuations()
        .into_iter()
        .map(|(s, _)| s)
        .filter(|s| *s > Ratio::zero())
        .min()
        .ok_or(Error::NoDistinguishedPart)
}

/// `(lambda, mu, nu)` with the valuation law checked on the exact tower.
pub fn iwasawa_invariants(f: &IntPolynomial, p: Prime) -> Result<IwasawaInvariants> {
    let class = classify_roots(f, p)?;
    if let Some(k) = vanishing_level(&class.reduced, p)? {
        return Err(Error::VanishingTower { level: k });
    }
    let nu = if class.lambda == 0 {
        0
    } else {
        let xi = teich::xi_from_class(&class, DEFAULT_PRECISION)?;
        nonp_from_class(&class, &xi, DEFAULT_PRECISION)?.1
    };
    check_invariants(&class, nu)
}

/// Level past which the valuation law must hold.
fn stabilization_bound(class: &RootClassification) -> Result<u32> {
    if class.lambda == 0 {
        return Ok(1);
    }
    let p = class.p;
    let lam = class.lambda as u64;
    let mut kt = 0u32;
    let mut phi = p.get() - 1;
    while phi <= lam {
        kt += 1;
        phi = phi.saturating_mul(p.get());
    }
    let shifted = class.reduced.taylor_shift(&BigInt::one());
    let w = min_positive_slope(&shifted, p)?;
    let b = hensel::log_valuation_bound(p, w);
    let threshold = Ratio::new(1, p.get() as i64 - 1);
    let mut n_log = 0u32;
    while Ratio::from_integer(n_log as i64) + b <= threshold {
        n_log += 1;
    }
    Ok(kt.max(n_log) + 1)
}

/// Valuations `v_p(Res(t^(p^n) - 1, f / p^mu))` for `n <= last`.
pub fn tower_valuations(f: &IntPolynomial, p: Prime, last: u32, hint: i64) -> Result<Vec<u32>> {
    (0..=last)
        .map(|n| {
            let start = (hint.max(0) as u32) + 4 * (n + 1);
            match level_split(f, p, n, 1, start)? {
                Some((v, _)) => Ok(v),
                None => Err(Error::VanishingTower { level: n }),
            }
        })
        .collect()
}

fn check_invariants(class: &RootClassification, nu: i64) -> Result<IwasawaInvariants> {
    let p = class.p;
    let bound = stabilization_bound(class)?;
    let last = bound + 1;
    let hint = class.lambda as i64 * last as i64 + nu;
    let vals = tower_valuations(&class.reduced, p, last, hint)?;
    let law = |n: u32| class.lambda as i64 * n as i64 + nu;
    for n in [bound, last] {
        if vals[n as usize] as i64 != law(n) {
            return Err(Error::InvariantViolation(format!(
                "v_p at level {n} is {} but lambda n + nu = {}",
                vals[n as usize],
                law(n)
            )));
        }
    }
    let mut stabilization = last;
    while stabilization > 0 && vals[stabilization as usize - 1] as i64 == law(stabilization - 1) {
        stabilization -= 1;
    }
    Ok(IwasawaInvariants { lambda: class.lambda, mu: class.mu, nu, stabilization })
}

/// Detect `f = Phi_m mod p` with `p` not dividing `m`, `m > 1`.
pub fn cyclotomic_congruence(f: &IntPolynomial, p: Prime) -> Result<Option<CyclotomicCheck>> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)? as u64;
    if d == 0 {
        return Ok(None);
    }
    let pb = p.to_bigint();
    for m in 2..=(2 * d * d + 2) {
        if m % p.get() == 0 || arith::euler_phi(m) != d {
            continue;
        }
        let phi = cyclotomic(CyclotomicIndex::new(m)?);
        let same = (0..=d as usize).all(|i| {
            (f.coefficient(i) - phi.coefficient(i)).mod_floor(&pb).is_zero()
        });
        if same {
            let factors = arith::factorize(m);
            let expected = if factors.len() == 1 {
                BigInt::from(factors[0].0)
            } else {
                BigInt::one()
            };
            return Ok(Some(CyclotomicCheck { m, expected }));
        }
    }
    Ok(None)
}
