//! Distinguished factor of `f(1 + T)` and the product of logarithms over its roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::teich::classify_roots;
use super::zp_poly;
use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::padic::{log_series, LogSeries, PadicScalar};
use crate::poly::{resultant_coeffs, IntPolynomial};

/// `F = g * u` modulo `p^precision` with `g` monic, `g = T^lambda mod p` and
/// `u(0)` a unit. The roots of `g` are the `alpha - 1` with `|alpha - 1|_p < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselFactor {
    pub p: Prime,
    pub precision: u32,
    g: Vec<BigInt>,
    cofactor: Vec<BigInt>,
}

impl HenselFactor {
    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    /// Ascending residues of `g`; the last entry is 1.
    pub fn g_residues(&self) -> &[BigInt] {
        &self.g
    }

    pub fn cofactor_residues(&self) -> &[BigInt] {
        &self.cofactor
    }

    pub fn g_coefficients(&self) -> Vec<PadicScalar> {
        self.g
            .iter()
            .map(|c| PadicScalar::from_residue(c, self.p, self.precision as i64))
            .collect()
    }

    /// Lower bound for the valuations of the roots of `g`. Coefficients that
    /// vanish modulo `p^precision` count as having valuation `precision`.
    pub fn min_root_valuation(&self) -> Ratio<i64> {
        let lam = self.degree();
        (1..=lam)
            .map(|i| {
                let v = arith::valuation(&self.g[lam - i], self.p.get())
                    .map_or(self.precision as i64, |v| (v as i64).min(self.precision as i64));
                Ratio::new(v, i as i64)
            })
            .min()
            .unwrap_or_else(|| Ratio::from_integer(self.precision as i64))
    }
}

pub fn hensel_distinguished_factor(
    f: &IntPolynomial,
    p: Prime,
    precision: u32,
) -> Result<HenselFactor> {
    let class = classify_roots(f, p)?;
    if class.lambda == 0 {
        return Err(Error::NoDistinguishedPart);
    }
    let shifted = class.reduced.taylor_shift(&BigInt::one());
    hensel_split(shifted.coeffs(), class.lambda as usize, p, precision)
}

/// Quadratic Hensel lifting of `F = T^lambda * u mod p`.
pub(crate) fn hensel_split(
    big_f: &[BigInt],
    lambda: usize,
    p: Prime,
    precision: u32,
) -> Result<HenselFactor> {
    if lambda == 0 {
        return Err(Error::NoDistinguishedPart);
    }
    let d = big_f.len() - 1;
    let pb = p.to_bigint();
    let fbar = zp_poly::reduce(big_f, &pb);
    if fbar.len() <= lambda || fbar[..lambda].iter().any(|c| !c.is_zero()) || fbar[lambda].is_zero() {
        return Err(Error::InvariantViolation(
            "shifted polynomial is not T^lambda times a unit mod p".into(),
        ));
    }
    let mut g = vec![BigInt::zero(); lambda];
    g.push(BigInt::one());
    let mut u: Vec<BigInt> = fbar[lambda..].to_vec();
    let (mut a, mut b) = zp_poly::xgcd_mod_p(&g, &u, &pb).ok_or_else(|| {
        Error::InvariantViolation("T^lambda and the cofactor are not coprime mod p".into())
    })?;
    let mut k = 1u32;
    let target = precision.max(1);
    while k < target {
        k = (2 * k).min(target);
        let m = p.pow(k);
        let e = zp_poly::sub(big_f, &zp_poly::mul(&g, &u, &m), &m);
        let (q, r) = zp_poly::divrem_monic(&zp_poly::mul(&b, &e, &m), &g, &m);
        let mut u_new = zp_poly::add(&u, &zp_poly::add(&zp_poly::mul(&a, &e, &m), &zp_poly::mul(&q, &u, &m), &m), &m);
        u_new.truncate(d - lambda + 1);
        let g_new = zp_poly::add(&g, &r, &m);
        let c = zp_poly::sub(
            &zp_poly::add(&zp_poly::mul(&a, &g_new, &m), &zp_poly::mul(&b, &u_new, &m), &m),
            &[BigInt::one()],
            &m,
        );
        let (q2, r2) = zp_poly::divrem_monic(&zp_poly::mul(&b, &c, &m), &g_new, &m);
        b = zp_poly::sub(&b, &r2, &m);
        a = zp_poly::sub(
            &a,
            &zp_poly::add(&zp_poly::mul(&a, &c, &m), &zp_poly::mul(&q2, &u_new, &m), &m),
            &m,
        );
        g = pad_monic(g_new, lambda);
        u = u_new;
    }
    let m = p.pow(target);
    let check = zp_poly::sub(big_f, &zp_poly::mul(&g, &u, &m), &m);
    if !check.is_empty() {
        return Err(Error::InvariantViolation("Hensel lift failed to converge".into()));
    }
    Ok(HenselFactor { p, precision: target, g, cofactor: u })
}

fn pad_monic(mut g: Vec<BigInt>, lambda: usize) -> Vec<BigInt> {
    g.resize(lambda + 1, BigInt::zero());
    g[lambda] = BigInt::one();
    g
}

/// Truncation plan for a product of `lambda` logarithms known to absolute
/// precision `abs_target`, given a lower bound `w` on the root valuations.
pub(crate) struct LogPlan {
    pub series: LogSeries,
    /// working modulus exponent; the factor must be known to this precision
    pub working: u32,
}

pub(crate) fn plan_log_product(p: Prime, lambda: usize, w: Ratio<i64>, abs_target: u32) -> Result<LogPlan> {
    let b = log_valuation_bound(p, w);
    let deficit = if b < Ratio::zero() { (-b).ceil().to_integer() } else { 0 };
    let per_root = abs_target as i64 + (lambda as i64 - 1) * deficit;
    let series = log_series(p, per_root, w)?;
    let e = series.e as i64;
    let working = (abs_target as i64 + lambda as i64 * e).max(per_root + e);
    Ok(LogPlan { series, working: working as u32 })
}

/// `min_j (p^j w - j)`, a lower bound for `v(log(1 + x))` when `v(x) >= w`.
pub(crate) fn log_valuation_bound(p: Prime, w: Ratio<i64>) -> Ratio<i64> {
    let mut best = w;
    let mut pj = Ratio::from_integer(1i64);
    let pr = Ratio::from_integer(p.get() as i64);
    for j in 1..64i64 {
        pj *= pr;
        best = best.min(pj * w - Ratio::from_integer(j));
        if pj * w * (pr - Ratio::from_integer(1)) >= Ratio::from_integer(1) {
            break;
        }
    }
    best
}

/// `prod log(1 + eps)` over the roots `eps` of `g`, known modulo `p^abs_precision`.
/// Computed as `Res(g, L)` for the truncated, integrally scaled log series `L`.
pub fn log_product(g: &HenselFactor, abs_precision: u32) -> Result<PadicScalar> {
    log_product_with_bound(g, g.min_root_valuation(), abs_precision)
}

pub(crate) fn log_product_with_bound(
    g: &HenselFactor,
    w: Ratio<i64>,
    abs_precision: u32,
) -> Result<PadicScalar> {
    let p = g.p;
    let lambda = g.degree();
    let plan = plan_log_product(p, lambda, w, abs_precision)?;
    if plan.working > g.precision {
        return Err(Error::PrecisionExhausted(format!(
            "distinguished factor known to {} digits, {} needed",
            g.precision, plan.working
        )));
    }
    let m = p.pow(plan.working);
    // Horner evaluation of the scaled series modulo g
    let mut r: Vec<BigInt> = Vec::new();
    for c in plan.series.coeffs.iter().rev() {
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(r.iter().cloned());
        shifted[0] += c;
        r = zp_poly::divrem_monic(&shifted, &g.g, &m).1;
    }
    let scale = lambda as i64 * plan.series.e as i64;
    if r.is_empty() {
        return Ok(PadicScalar::zero(p, plan.working as i64 - scale));
    }
    let res = resultant_coeffs(&g.g, &r).mod_floor(&m);
    Ok(PadicScalar::from_residue(&res, p, plan.working as i64).shift(-scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::padic_log;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn split_examples() {
        let h = hensel_distinguished_factor(&poly(&[5, -1, 1]), pr(5), 2).unwrap();
        let g = h.g_residues();
        assert_eq!(g.len(), 2);
        // g = T - eps with eps = 20 mod 25
        assert_eq!((-&g[0]).mod_floor(&BigInt::from(25)), BigInt::from(20));
        // 4_1 at level 3, p = 2: the whole shifted polynomial is distinguished
        let h = hensel_distinguished_factor(&poly(&[1, -18, 1]), pr(2), 10).unwrap();
        let m = pr(2).pow(10);
        let expect: Vec<BigInt> = [-16i64, -16, 1].iter().map(|&c| BigInt::from(c).mod_floor(&m)).collect();
        assert_eq!(h.g_residues(), expect.as_slice());
        assert!(matches!(
            hensel_distinguished_factor(&poly(&[-1, 3, -1]), pr(2), 4),
            Err(Error::NoDistinguishedPart)
        ));
    }

    #[test]
    fn degree_one_matches_series() {
        // g = T - 5, so the product is log 6
        let p = pr(5);
        let m = p.pow(12);
        let g = HenselFactor {
            p,
            precision: 12,
            g: vec![BigInt::from(-5).mod_floor(&m), BigInt::one()],
            cofactor: vec![BigInt::one()],
        };
        let lp = log_product(&g, 6).unwrap();
        let direct = padic_log(&PadicScalar::from_i64(6, p, 6)).unwrap();
        assert_eq!(lp.residue(6).unwrap(), direct.residue(6).unwrap());
    }

    #[test]
    fn precision_shortfall_is_reported() {
        let h = hensel_distinguished_factor(&poly(&[5, -1, 1]), pr(5), 3).unwrap();
        assert!(matches!(log_product(&h, 10), Err(Error::PrecisionExhausted(_))));
    }
}
