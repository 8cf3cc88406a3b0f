//! Alexander polynomials, homology orders of cyclic covers and their p-adic towers.
//!
//! `|H_1|` of the `n`-fold cyclic cover is `|Res(t^n - 1, Δ)|`. The tower over
//! levels `m p^n` is fed to the limits engine through `P_m Δ`, the polynomial
//! whose roots are the `m`-th powers of the roots of `Δ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::limits::{self, vanishing_level, LimitReport, Method};
pub use crate::limits::{resultant_sign, TowerLevel};
use crate::padic::PadicScalar;
use crate::poly::{
    cyclic_resultant, cyclotomic, cyclotomic_multiplicity, power_transform, CyclotomicIndex,
    IntPolynomial,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusKnotSpec {
    a: u64,
    b: u64,
}

impl TorusKnotSpec {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::InvalidArgument(format!("torus knot T({a},{b}) needs a, b >= 2")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidArgument(format!("torus knot T({a},{b}) needs coprime a, b")));
        }
        Ok(TorusKnotSpec { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }
}

/// The twist knot `J(2, 2m)`; `m = 1` is the trefoil and `m = -1` the figure-eight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistKnotSpec {
    m: i64,
}

impl TwistKnotSpec {
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("twist parameter m must be nonzero".into()));
        }
        Ok(TwistKnotSpec { m })
    }

    pub fn m(&self) -> i64 {
        self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotSource {
    Torus(TorusKnotSpec),
    Twist(TwistKnotSpec),
    User,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotPolynomial {
    pub delta: IntPolynomial,
    pub source: KnotSource,
    /// `Δ(1) = ±1`
    pub normalized: bool,
}

impl KnotPolynomial {
    /// A user polynomial, which must satisfy `Δ(1) = ±1`.
    pub fn user(delta: IntPolynomial) -> Result<Self> {
        let k = Self::user_unchecked(delta)?;
        if !k.normalized {
            return Err(Error::InvalidArgument(format!(
                "Alexander polynomial must have Δ(1) = ±1, got Δ(1) = {}",
                k.delta.evaluate_i64(1)
            )));
        }
        Ok(k)
    }

    /// A user polynomial taken as is; towers built from it carry a warning
    /// when `Δ(1) != ±1`.
    pub fn user_unchecked(delta: IntPolynomial) -> Result<Self> {
        if delta.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let normalized = delta.evaluate_i64(1).abs().is_one();
        Ok(KnotPolynomial { delta, source: KnotSource::User, normalized })
    }

    pub fn warning(&self) -> Option<String> {
        (!self.normalized).then(|| {
            format!(
                "Δ(1) = {} is not ±1; the values are cyclic resultants but need not be homology orders of a knot",
                self.delta.evaluate_i64(1)
            )
        })
    }
}

/// `prod Phi_m` over `m | ab` with `m` dividing neither `a` nor `b`, checked
/// against `(1 - t)(1 - t^(ab)) / ((1 - t^a)(1 - t^b))`.
pub fn alexander_torus(spec: TorusKnotSpec) -> Result<KnotPolynomial> {
    let (a, b) = (spec.a, spec.b);
    let ab = a
        .checked_mul(b)
        .ok_or_else(|| Error::InvalidArgument("a * b overflows".into()))?;
    let mut delta = IntPolynomial::constant(BigInt::one());
    for m in arith::divisors(ab) {
        if a % m != 0 && b % m != 0 {
            delta = &delta * &cyclotomic(CyclotomicIndex::new(m)?);
        }
    }
    let one_minus = |k: u64| {
        &IntPolynomial::constant(BigInt::one()) - &IntPolynomial::monomial(BigInt::one(), k as usize)
    };
    let num = &one_minus(1) * &one_minus(ab);
    let den = &one_minus(a) * &one_minus(b);
    if num.divide_exact(&den).as_ref() != Some(&delta) {
        return Err(Error::InvariantViolation(format!(
            "cyclotomic product for T({a},{b}) disagrees with the quotient formula"
        )));
    }
    Ok(KnotPolynomial { delta, source: KnotSource::Torus(spec), normalized: true })
}

/// `m t^2 + (1 - 2m) t + m`.
pub fn alexander_twist(spec: TwistKnotSpec) -> KnotPolynomial {
    let m = spec.m;
    let delta = IntPolynomial::new(vec![BigInt::from(m), BigInt::from(1 - 2 * m as i128), BigInt::from(m)]);
    KnotPolynomial { delta, source: KnotSource::Twist(spec), normalized: true }
}

/// Some `Phi_d` with `d | n` divides `f`.
fn vanishes_at_level(f: &IntPolynomial, n: u64) -> Result<bool> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)? as u64;
    for d in arith::divisors(n) {
        if arith::euler_phi(d) <= deg && cyclotomic_multiplicity(f, CyclotomicIndex::new(d)?)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `|H_1|` of the `n`-fold cyclic cover, `|Res(t^n - 1, Δ)|`.
pub fn homology_order(k: &KnotPolynomial, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("cover degree must be >= 1".into()));
    }
    if vanishes_at_level(&k.delta, n)? {
        return Err(Error::InfiniteHomology { n });
    }
    Ok(cyclic_resultant(&k.delta, n)?.abs())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyTower {
    pub knot: KnotPolynomial,
    pub p: Prime,
    pub multiplier: u64,
    /// `P_m Δ`, the polynomial handed to the limits engine
    pub engine_input: IntPolynomial,
    /// limits of `Res(t^(p^n) - 1, P_m Δ)`
    pub report: LimitReport,
    /// `|H_1| = homology_sign * Res(t^(p^n) - 1, P_m Δ)` for all large `n`
    pub homology_sign: i8,
    /// limit of `|H_1|` in `Z_p`
    pub homology_limit: PadicScalar,
    /// limit of the non-p part of `|H_1|`
    pub homology_nonp_limit: Option<PadicScalar>,
    pub levels: Vec<TowerLevel>,
    pub warning: Option<String>,
}

impl HomologyTower {
    /// Levels `n >= 1` at which `|H_1|` or its non-p part disagrees with the
    /// corresponding limit mod `p^n`. Empty for a correct build.
    pub fn cauchy_violations(&self) -> Vec<u32> {
        let digits = self.report.precision;
        self.levels
            .iter()
            .filter(|lvl| lvl.n >= 1)
            .filter(|lvl| {
                let k = lvl.n.min(digits);
                let m = self.p.pow(k);
                let order = match resultant_sign(&self.knot.delta, lvl.level) {
                    Ok(s) => (BigInt::from(s) * &lvl.residue).mod_floor(&m),
                    Err(_) => return true,
                };
                let ok_res = self.homology_limit.residue(k).map_or(false, |r| r == order);
                let ok_unit = match &self.homology_nonp_limit {
                    Some(v) => v.residue(k).map_or(false, |u| u == lvl.unit_residue.mod_floor(&m)),
                    None => true,
                };
                !(ok_res && ok_unit)
            })
            .map(|lvl| lvl.n)
            .collect()
    }
}

/// The `p`-tower of `Δ` with the default engine and `precision` levels.
pub fn homology_tower(k: &KnotPolynomial, p: Prime, precision: u32) -> Result<HomologyTower> {
    composite_tower_with(k, 1, p, precision, Method::Both, precision)
}

pub fn homology_tower_with(
    k: &KnotPolynomial,
    p: Prime,
    precision: u32,
    method: Method,
    levels: u32,
) -> Result<HomologyTower> {
    composite_tower_with(k, 1, p, precision, method, levels)
}

/// Tower over the levels `m p^n`, `p` not dividing `m`.
pub fn composite_tower(k: &KnotPolynomial, m: u64, p: Prime, precision: u32) -> Result<HomologyTower> {
    composite_tower_with(k, m, p, precision, Method::Both, precision)
}

pub fn composite_tower_with(
    k: &KnotPolynomial,
    m: u64,
    p: Prime,
    precision: u32,
    method: Method,
    levels: u32,
) -> Result<HomologyTower> {
    if m == 0 || m % p.get() == 0 {
        return Err(Error::HypothesisViolated(format!("multiplier {m} must be positive and prime to {p}")));
    }
    let delta = &k.delta;
    let d = delta.degree().ok_or(Error::ZeroPolynomial)?;
    let engine_input = power_transform(delta, m)?;
    if let Some(j) = vanishing_level(&engine_input, p)? {
        return Err(Error::InfiniteHomology { n: m * p.get().pow(j) });
    }
    if vanishes_at_level(delta, m)? {
        return Err(Error::InfiniteHomology { n: m });
    }
    let report = match limits::compute_limit(&engine_input, p, precision, method) {
        Err(Error::BudgetExceeded { .. }) if method == Method::Both => {
            limits::compute_limit(&engine_input, p, precision, Method::Formula)?
        }
        other => other?,
    };
    // Res(t^(m p^n) - 1, Δ) = sigma * Res(t^(p^n) - 1, P_m Δ)
    let sigma: i8 = if m % 2 == 0 && d % 2 == 1 { -1 } else { 1 };
    let large_level = if p.get() == 2 { 2 * m } else { m };
    let homology_sign = resultant_sign(delta, large_level)? * sigma;
    let signed = |x: &PadicScalar| if homology_sign < 0 { x.neg() } else { x.clone() };
    let homology_limit = signed(&report.limit);
    let homology_nonp_limit = report.nonp_limit.value().map(signed);

    let mut out = Vec::with_capacity(levels as usize + 1);
    for n in 0..=levels {
        let level = p
            .get()
            .checked_pow(n)
            .and_then(|q| q.checked_mul(m))
            .ok_or_else(|| Error::InvalidArgument(format!("level {n} overflows")))?;
        out.push(limits::tower_level(delta, &engine_input, p, n, level, sigma)?);
    }
    Ok(HomologyTower {
        knot: k.clone(),
        p,
        multiplier: m,
        engine_input,
        report,
        homology_sign,
        homology_limit,
        homology_nonp_limit,
        levels: out,
        warning: k.warning(),
    })
}

/// `b^(p^min(n, r) - 1)` with `r = v_p(a)`, valid when `p` does not divide `b`.
pub fn torus_closed_form(spec: TorusKnotSpec, p: Prime, n: u32) -> Result<BigInt> {
    if spec.b % p.get() == 0 {
        return Err(Error::HypothesisViolated(format!("{p} divides b = {}", spec.b)));
    }
    let r = arith::valuation_u64(spec.a, p.get());
    let e = p.get().pow(n.min(r)) - 1;
    Ok(num_traits::pow(BigInt::from(spec.b), e as usize))
}

/// Limit of `Res(t^(p^n) - 1, Δ)` for `J(2, 2m)` when `p | m`: -1 for `p = 2`, 1 otherwise.
pub fn twist_special_limit(spec: TwistKnotSpec, p: Prime) -> Result<i64> {
    if spec.m % p.get() as i64 != 0 {
        return Err(Error::HypothesisViolated(format!("{p} does not divide m = {}", spec.m)));
    }
    Ok(if p.get() == 2 { -1 } else { 1 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LivingstonBlock {
    /// `Phi_m` divides `Δ` with fewer than three primes dividing `m`
    FewPrimes { m: u64 },
    /// cofactor left after removing every cyclotomic factor
    NonCyclotomic(IntPolynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LivingstonCertificate {
    pub holds: bool,
    /// power of `t` stripped as a unit
    pub shift: usize,
    /// `(m, multiplicity)` for each cyclotomic factor found
    pub factors: Vec<(u64, u32)>,
    pub blocking: Option<LivingstonBlock>,
}

/// Whether every nontrivial factor of `Δ` is some `Phi_m` with at least three
/// distinct primes dividing `m`. That forces `|H_1| = 1` at every prime-power level.
pub fn livingston_predicate(k: &KnotPolynomial) -> Result<LivingstonCertificate> {
    let coeffs = k.delta.coeffs();
    if k.delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut rest = IntPolynomial::new(coeffs[shift..].to_vec());
    let d = rest.degree().expect("nonzero") as u64;
    let mut factors = Vec::new();
    for m in 1..=(2 * d * d + 2) {
        if arith::euler_phi(m) > rest.degree().expect("nonzero") as u64 {
            continue;
        }
        let phi = cyclotomic(CyclotomicIndex::new(m)?);
        let mut e = 0;
        while let Some(q) = rest.divide_exact(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((m, e));
        }
    }
    let blocking = if rest.degree() != Some(0) || !rest.coefficient(0).abs().is_one() {
        Some(LivingstonBlock::NonCyclotomic(rest))
    } else {
        factors
            .iter()
            .find(|(m, _)| arith::factorize(*m).len() < 3)
            .map(|&(m, _)| LivingstonBlock::FewPrimes { m })
    };
    Ok(LivingstonCertificate { holds: blocking.is_none(), shift, factors, blocking })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn twist(m: i64) -> KnotPolynomial {
        alexander_twist(TwistKnotSpec::new(m).unwrap())
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn alexander_polynomials() {
        let t = |a, b| alexander_torus(TorusKnotSpec::new(a, b).unwrap()).unwrap().delta;
        assert_eq!(t(2, 3), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(t(2, 5), IntPolynomial::from_i64(&[1, -1, 1, -1, 1]));
        let phi = |m| cyclotomic(CyclotomicIndex::new(m).unwrap());
        assert_eq!(t(3, 4), &phi(6) * &phi(12));
        assert!(TorusKnotSpec::new(4, 6).is_err());
        assert_eq!(twist(1).delta, IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(twist(-1).delta, IntPolynomial::from_i64(&[-1, 3, -1]));
        assert_eq!(twist(2).delta, IntPolynomial::from_i64(&[2, -3, 2]));
    }

    #[test]
    fn orders() {
        assert_eq!(homology_order(&twist(-1), 2).unwrap(), big(5));
        assert_eq!(homology_order(&twist(2), 4).unwrap(), big(63));
        assert_eq!(homology_order(&twist(1), 2).unwrap(), big(3));
        assert_eq!(homology_order(&twist(1), 6), Err(Error::InfiniteHomology { n: 6 }));
    }

    #[test]
    fn figure_eight_tower() {
        let k = twist(-1);
        for (p, v) in [(2u64, -3i64), (3, -2), (5, -4)] {
            let t = homology_tower(&k, pr(p), 12).unwrap();
            assert_eq!(t.homology_limit, PadicScalar::from_i64(v, pr(p), 12), "p = {p}");
        }
        let t = homology_tower_with(&k, pr(7), 6, Method::Formula, 4).unwrap();
        assert_eq!(t.homology_limit.residue(2).unwrap(), big(8));
        assert!(t.cauchy_violations().is_empty());
        let residues: Vec<BigInt> = t.levels[1..].iter().map(|l| l.residue.clone()).collect();
        assert_eq!(residues, vec![big(1), big(8), big(106), big(2164)]);
    }

    #[test]
    fn twist_tables() {
        let t = homology_tower_with(&twist(-2), pr(2), 8, Method::Both, 4).unwrap();
        let vals: Vec<BigInt> = t.levels[1..].iter().map(|l| l.resultant.clone().unwrap()).collect();
        assert_eq!(vals, [-9i64, -225, -65025, -4294836225].map(big));
        assert_eq!(t.report.limit, PadicScalar::from_i64(-1, pr(2), 8));
        assert_eq!(twist_special_limit(TwistKnotSpec::new(-2).unwrap(), pr(2)).unwrap(), -1);
        assert!(twist_special_limit(TwistKnotSpec::new(3).unwrap(), pr(2)).is_err());
    }

    #[test]
    fn composite_figure_eight() {
        let t = composite_tower_with(&twist(-1), 3, pr(2), 10, Method::Formula, 10).unwrap();
        assert_eq!(t.engine_input, IntPolynomial::from_i64(&[-1, 18, -1]));
        assert_eq!(t.report.invariants.unwrap().nu, 4);
        let scaled: Vec<BigInt> = t.levels[..4]
            .iter()
            .map(|l| l.order.clone().unwrap() >> l.valuation)
            .collect();
        assert_eq!(scaled, [1i64, 5, 405, 10498005].map(big));
        let residues: Vec<BigInt> = t.levels.iter().map(|l| l.unit_residue.clone()).collect();
        assert_eq!(residues, [1i64, 1, 1, 5, 5, 21, 21, 85, 213, 213, 213].map(big));
        assert!(t.cauchy_violations().is_empty());
    }

    #[test]
    fn torus_formula() {
        let s = TorusKnotSpec::new(3, 2).unwrap();
        assert_eq!(torus_closed_form(s, pr(3), 2).unwrap(), big(4));
        let s = TorusKnotSpec::new(2, 3).unwrap();
        assert_eq!(torus_closed_form(s, pr(2), 1).unwrap(), big(3));
        assert_eq!(torus_closed_form(s, pr(5), 3).unwrap(), big(1));
        assert!(torus_closed_form(s, pr(3), 1).is_err());
    }

    #[test]
    fn livingston() {
        let one = KnotPolynomial::user(IntPolynomial::from_i64(&[1])).unwrap();
        assert!(livingston_predicate(&one).unwrap().holds);
        let c = livingston_predicate(&twist(1)).unwrap();
        assert_eq!(c.blocking, Some(LivingstonBlock::FewPrimes { m: 6 }));
        let phi30 = KnotPolynomial::user(cyclotomic(CyclotomicIndex::new(30).unwrap())).unwrap();
        let c = livingston_predicate(&phi30).unwrap();
        assert!(c.holds);
        assert_eq!(c.factors, vec![(30, 1)]);
        let c = livingston_predicate(&twist(-1)).unwrap();
        assert!(matches!(c.blocking, Some(LivingstonBlock::NonCyclotomic(_))));
    }
}
