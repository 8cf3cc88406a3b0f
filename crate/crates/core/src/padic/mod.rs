//! Finite-precision p-adic numbers with relative precision, Teichmüller
//! representatives, the p-adic logarithm and Newton polygons.

mod newton;

pub use newton::{NewtonPolygon, Segment};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};

/// `unit * p^valuation`, known modulo `p^(valuation + precision)`, or a value
/// indistinguishable from zero modulo `p^abs_precision`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    p: Prime,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero { abs_precision: i64 },
    Value { valuation: i64, unit: BigInt, precision: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl PadicScalar {
    pub fn zero(p: Prime, abs_precision: i64) -> Self {
        PadicScalar { p, repr: Repr::Zero { abs_precision } }
    }

    pub fn one(p: Prime, precision: u32) -> Self {
        Self::from_integer(&BigInt::one(), p, precision)
    }

    /// `p^valuation * unit` with `precision` significant digits; `unit` must
    /// be prime to `p` and `precision >= 1`.
    pub fn from_parts(p: Prime, valuation: i64, unit: &BigInt, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("p-adic precision must be >= 1".into()));
        }
        let modulus = p.pow(precision);
        let unit = unit.mod_floor(&modulus);
        if (&unit % p.to_bigint()).is_zero() {
            return Err(Error::InvalidArgument(format!("unit part divisible by {p}")));
        }
        Ok(PadicScalar { p, repr: Repr::Value { valuation, unit, precision } })
    }

    /// An integer with `precision` significant digits. Zero maps to the zero
    /// marker known modulo `p^precision`.
    pub fn from_integer(x: &BigInt, p: Prime, precision: u32) -> Self {
        match arith::split_p(x, p.get()) {
            None => Self::zero(p, precision as i64),
            Some((v, u)) => Self::from_parts(p, v as i64, &u, precision.max(1)).expect("unit"),
        }
    }

    pub fn from_i64(x: i64, p: Prime, precision: u32) -> Self {
        Self::from_integer(&BigInt::from(x), p, precision)
    }

    /// The class of `residue` modulo `p^abs_precision`.
    pub fn from_residue(residue: &BigInt, p: Prime, abs_precision: i64) -> Self {
        if abs_precision <= 0 {
            return Self::zero(p, abs_precision);
        }
        let r = residue.mod_floor(&p.pow(abs_precision as u32));
        match arith::split_p(&r, p.get()) {
            None => Self::zero(p, abs_precision),
            Some((v, u)) => {
                let v = v as i64;
                Self::from_parts(p, v, &u, (abs_precision - v) as u32).expect("unit")
            }
        }
    }

    pub fn from_rational(num: &BigInt, den: &BigInt, p: Prime, precision: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let Some((vn, un)) = arith::split_p(num, p.get()) else {
            return Ok(Self::zero(p, precision as i64));
        };
        let (vd, ud) = arith::split_p(den, p.get()).expect("nonzero");
        let modulus = p.pow(precision.max(1));
        let inv = arith::mod_inverse(&ud, &modulus).expect("unit");
        Self::from_parts(p, vn as i64 - vd as i64, &(un * inv), precision.max(1))
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// `None` for the zero marker.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Value { valuation, .. } => Some(*valuation),
        }
    }

    /// Unit part in `[1, p^precision)`; `None` for the zero marker.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Value { unit, .. } => Some(unit),
        }
    }

    /// Number of significant digits (0 for the zero marker).
    pub fn precision(&self) -> u32 {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Value { precision, .. } => *precision,
        }
    }

    /// The value is known modulo `p^abs_precision`.
    pub fn abs_precision(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs_precision } => *abs_precision,
            Repr::Value { valuation, precision, .. } => valuation + *precision as i64,
        }
    }

    /// Base-`p` digits of the unit part, least significant first.
    pub fn unit_digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zero { .. } => Vec::new(),
            Repr::Value { unit, precision, .. } => base_digits(unit, self.p, *precision as usize),
        }
    }

    /// Least nonnegative residue modulo `p^k` for an integral value.
    pub fn residue(&self, k: u32) -> Result<BigInt> {
        if k as i64 > self.abs_precision() {
            return Err(Error::PrecisionExhausted(format!(
                "{k} digits requested, value known modulo {}^{}",
                self.p,
                self.abs_precision()
            )));
        }
        match &self.repr {
            Repr::Zero { .. } => Ok(BigInt::zero()),
            Repr::Value { valuation, unit, .. } => {
                if *valuation < 0 {
                    return Err(Error::PadicDomain("value is not a p-adic integer".into()));
                }
                let modulus = self.p.pow(k);
                Ok((unit * self.p.pow(*valuation as u32)).mod_floor(&modulus))
            }
        }
    }

    /// Residue modulo `p^k` in the symmetric range `(-p^k/2, p^k/2]`.
    pub fn balanced_residue(&self, k: u32) -> Result<BigInt> {
        let r = self.residue(k)?;
        let m = self.p.pow(k);
        Ok(if &r * 2 > m { r - m } else { r })
    }

    /// Drop digits so the value is known modulo at most `p^abs`.
    pub fn truncate_abs(&self, abs: i64) -> Self {
        if abs >= self.abs_precision() {
            return self.clone();
        }
        match &self.repr {
            Repr::Zero { .. } => Self::zero(self.p, abs),
            Repr::Value { valuation, unit, .. } => {
                if abs <= *valuation {
                    Self::zero(self.p, abs)
                } else {
                    Self::from_parts(self.p, *valuation, unit, (abs - valuation) as u32).expect("unit")
                }
            }
        }
    }

    /// Keep at most `precision` significant digits.
    pub fn with_precision(&self, precision: u32) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Value { valuation, .. } => self.truncate_abs(valuation + precision.max(1) as i64),
        }
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::InvalidArgument(format!(
                "mixed primes {} and {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let abs = self.abs_precision().min(other.abs_precision());
        let (x, y) = match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, _) => return Ok(other.truncate_abs(abs)),
            (_, Repr::Zero { .. }) => return Ok(self.truncate_abs(abs)),
            (
                Repr::Value { valuation: vx, unit: ux, .. },
                Repr::Value { valuation: vy, unit: uy, .. },
            ) => ((*vx, ux), (*vy, uy)),
        };
        let vmin = x.0.min(y.0);
        let sum = x.1 * self.p.pow((x.0 - vmin) as u32) + y.1 * self.p.pow((y.0 - vmin) as u32);
        let rel = abs - vmin;
        let r = Self::from_residue(&sum, self.p, rel);
        Ok(r.shift(vmin))
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Value { valuation, unit, precision } => {
                Self::from_parts(self.p, *valuation, &-unit, *precision).expect("unit")
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Zero { abs_precision: a }, Repr::Zero { abs_precision: b }) => {
                Self::zero(self.p, a + b)
            }
            (Repr::Zero { abs_precision }, Repr::Value { valuation, .. })
            | (Repr::Value { valuation, .. }, Repr::Zero { abs_precision }) => {
                Self::zero(self.p, abs_precision + valuation)
            }
            (
                Repr::Value { valuation: vx, unit: ux, precision: nx },
                Repr::Value { valuation: vy, unit: uy, precision: ny },
            ) => Self::from_parts(self.p, vx + vy, &(ux * uy), (*nx).min(*ny))?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let (vy, uy, ny) = match &other.repr {
            Repr::Zero { abs_precision } => {
                return Err(Error::DivisionByZero { precision: *abs_precision })
            }
            Repr::Value { valuation, unit, precision } => (*valuation, unit, *precision),
        };
        Ok(match &self.repr {
            Repr::Zero { abs_precision } => Self::zero(self.p, abs_precision - vy),
            Repr::Value { valuation, unit, precision } => {
                let n = (*precision).min(ny);
                let inv = arith::mod_inverse(uy, &self.p.pow(n)).expect("unit");
                Self::from_parts(self.p, valuation - vy, &(unit * inv), n)?
            }
        })
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Zero { abs_precision } => *abs_precision += k,
            Repr::Value { valuation, .. } => *valuation += k,
        }
        out
    }

    /// `self^e` for `e >= 1`.
    pub fn pow(&self, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicScalar({self})")
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match &self.repr {
            Repr::Zero { abs_precision } => write!(f, "0 + O({p}^{abs_precision})"),
            Repr::Value { valuation, unit, .. } => {
                let abs = self.abs_precision();
                if *valuation >= 0 {
                    let r = unit * p.pow(*valuation as u32);
                    write!(f, "{r} + O({p}^{abs})")
                } else {
                    write!(f, "{unit}/{p}^{} + O({p}^{abs})", -valuation)
                }
            }
        }
    }
}

pub fn arithmetic(x: &PadicScalar, y: &PadicScalar, op: ArithOp) -> Result<PadicScalar> {
    match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y),
    }
}

/// The root of unity of order prime to `p` congruent to the unit `x` mod `p`.
pub fn teichmuller(x: &PadicScalar) -> Result<PadicScalar> {
    let (unit, n) = match &x.repr {
        Repr::Value { valuation: 0, unit, precision } => (unit, *precision),
        _ => return Err(Error::PadicDomain("Teichmüller lift needs a unit".into())),
    };
    let p = x.p;
    let y = teichmuller_residue(unit, p, n);
    PadicScalar::from_parts(p, 0, &y, n)
}

/// Teichmüller representative of a unit residue, modulo `p^n`.
pub(crate) fn teichmuller_residue(unit: &BigInt, p: Prime, n: u32) -> BigInt {
    let modulus = p.pow(n);
    let pb = p.to_bigint();
    let mut y = unit.mod_floor(&modulus);
    for _ in 0..=n {
        let next = y.modpow(&pb, &modulus);
        if next == y {
            break;
        }
        y = next;
    }
    y
}

/// Coefficients of the truncated logarithm `sum_{k<=m} (-1)^(k+1) T^k / k`,
/// each scaled by `p^e` so they are integral, reduced modulo `p^(target + e)`.
///
/// `m` is large enough that for every `z` with `v(z) >= w` the omitted terms
/// have valuation at least `target`.
#[derive(Debug, Clone)]
pub(crate) struct LogSeries {
    pub m: u64,
    pub e: u32,
    /// index `k` holds the scaled coefficient of `T^k`; index 0 is zero
    pub coeffs: Vec<BigInt>,
    pub modulus: BigInt,
}

/// Largest `k` at which `k*w - v_p(k) < target`, over all `k >= 1`, or 0.
pub(crate) fn log_truncation(p: Prime, target: i64, w: Ratio<i64>) -> Result<u64> {
    if w <= Ratio::zero() {
        return Err(Error::PadicDomain("logarithm needs positive valuation".into()));
    }
    let (a, b) = (*w.numer() as i128, *w.denom() as i128);
    let pp = p.get() as i128;
    let mut m: i128 = 0;
    let mut pj: i128 = 1;
    let mut j: i128 = 0;
    // terms in [p^j, p^(j+1)) have v_p(k) <= j
    while pj * a < (target as i128 + j) * b {
        let bound = ((target as i128 + j) * b - 1) / a;
        let hi = (pj * pp - 1).min(bound);
        if hi >= pj {
            m = m.max(hi);
        }
        j += 1;
        pj = pj.checked_mul(pp).ok_or_else(|| {
            Error::PrecisionExhausted("logarithm truncation overflow".into())
        })?;
        if m > 50_000_000 {
            return Err(Error::PrecisionExhausted("logarithm needs too many terms".into()));
        }
    }
    Ok(m.to_u64().unwrap_or(0))
}

pub(crate) fn log_series(p: Prime, target: i64, w: Ratio<i64>) -> Result<LogSeries> {
    let m = log_truncation(p, target, w)?;
    let e = if m == 0 { 0 } else { arith::ilog(p.get(), m) };
    let modulus = p.pow((target.max(0) as u32) + e);
    let mut coeffs = vec![BigInt::zero(); m as usize + 1];
    for k in 1..=m {
        let v = arith::valuation_u64(k, p.get());
        let kp = BigInt::from(k / p.get().pow(v));
        let inv = arith::mod_inverse(&kp, &modulus).expect("prime to p");
        let mut c = inv * p.pow(e - v);
        if k % 2 == 0 {
            c = -c;
        }
        coeffs[k as usize] = c.mod_floor(&modulus);
    }
    Ok(LogSeries { m, e, coeffs, modulus })
}

/// `log x` by the truncated series, for `x = 1 mod p`.
pub fn padic_log(x: &PadicScalar) -> Result<PadicScalar> {
    let p = x.p;
    let t = match &x.repr {
        Repr::Value { valuation: 0, .. } => x.abs_precision(),
        _ => return Err(Error::PadicDomain("logarithm needs x = 1 mod p".into())),
    };
    let z: BigInt = x.residue(t as u32)? - 1;
    let z = z.mod_floor(&p.pow(t as u32));
    let Some(w) = arith::valuation(&z, p.get()) else {
        return Ok(PadicScalar::zero(p, t));
    };
    if w == 0 {
        return Err(Error::PadicDomain("logarithm needs x = 1 mod p".into()));
    }
    let series = log_series(p, t, Ratio::from_integer(w as i64))?;
    let mut acc = BigInt::zero();
    let mut zk = BigInt::one();
    for k in 1..=series.m as usize {
        zk = (zk * &z).mod_floor(&series.modulus);
        acc += &series.coeffs[k] * &zk;
    }
    acc = acc.mod_floor(&series.modulus);
    let scaled = PadicScalar::from_residue(&acc, p, t + series.e as i64);
    Ok(scaled.shift(-(series.e as i64)))
}

/// A residue modulo `p^k` in decimal together with its base-`p` digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitRendering {
    pub residue: BigInt,
    /// least significant first, exactly `k` entries
    pub digits: Vec<u64>,
}

impl fmt::Display for DigitRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

pub fn render_digits(x: &PadicScalar, n_digits: u32) -> Result<DigitRendering> {
    let residue = x.residue(n_digits)?;
    let digits = base_digits(&residue, x.p, n_digits as usize);
    Ok(DigitRendering { residue, digits })
}

fn base_digits(x: &BigInt, p: Prime, len: usize) -> Vec<u64> {
    let pb = p.to_bigint();
    let mut y = x.clone();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let (q, r) = y.div_mod_floor(&pb);
        out.push(r.to_u64().expect("digit"));
        y = q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn from_rational_examples() {
        let x = PadicScalar::from_rational(&big(6), &big(1), pr(3), 4).unwrap();
        assert_eq!((x.valuation(), x.unit().cloned()), (Some(1), Some(big(2))));
        let x = PadicScalar::from_rational(&big(-3), &big(1), pr(2), 4).unwrap();
        assert_eq!((x.valuation(), x.unit().cloned()), (Some(0), Some(big(13))));
        let x = PadicScalar::from_rational(&big(35), &big(4), pr(2), 3).unwrap();
        assert_eq!((x.valuation(), x.unit().cloned()), (Some(-2), Some(big(3))));
        assert!(PadicScalar::from_rational(&big(1), &big(0), pr(2), 3).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let p5 = pr(5);
        let s = arithmetic(
            &PadicScalar::from_i64(1, p5, 6),
            &PadicScalar::from_i64(-1, p5, 6),
            ArithOp::Add,
        )
        .unwrap();
        assert!(s.is_zero());
        assert_eq!(s.abs_precision(), 6);
        let p7 = pr(7);
        let m = arithmetic(
            &PadicScalar::from_i64(2, p7, 3),
            &PadicScalar::from_i64(3, p7, 3),
            ArithOp::Mul,
        )
        .unwrap();
        assert_eq!(m, PadicScalar::from_i64(6, p7, 3));
        let d = arithmetic(
            &PadicScalar::from_i64(1, p7, 3),
            &PadicScalar::from_i64(7, p7, 3),
            ArithOp::Div,
        )
        .unwrap();
        assert_eq!((d.valuation(), d.unit().cloned()), (Some(-1), Some(big(1))));
        let z = PadicScalar::zero(p7, 4);
        assert_eq!(
            arithmetic(&d, &z, ArithOp::Div),
            Err(Error::DivisionByZero { precision: 4 })
        );
    }

    #[test]
    fn cancellation_loses_digits() {
        let p = pr(5);
        let x = PadicScalar::from_i64(26, p, 4);
        let y = PadicScalar::from_i64(1, p, 4);
        let d = x.sub(&y).unwrap();
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.precision(), 2);
        assert_eq!(d.abs_precision(), 4);
    }

    #[test]
    fn teichmuller_examples() {
        let t = teichmuller(&PadicScalar::from_i64(3, pr(7), 2)).unwrap();
        assert_eq!(t.residue(2).unwrap(), big(31));
        let t = teichmuller(&PadicScalar::from_i64(2, pr(5), 2)).unwrap();
        assert_eq!(t.residue(2).unwrap(), big(7));
        for x in [1, 3, 5, 7, 13] {
            let t = teichmuller(&PadicScalar::from_i64(x, pr(2), 10)).unwrap();
            assert_eq!(t.residue(10).unwrap(), big(1));
        }
        assert!(teichmuller(&PadicScalar::from_i64(5, pr(5), 3)).is_err());
    }

    #[test]
    fn log_examples() {
        let p5 = pr(5);
        assert!(padic_log(&PadicScalar::one(p5, 5)).unwrap().is_zero());
        let l = padic_log(&PadicScalar::from_i64(6, p5, 3)).unwrap();
        assert_eq!(l.residue(3).unwrap(), big(55));
        let x = PadicScalar::from_i64(6, p5, 5);
        let lx = padic_log(&x).unwrap();
        let lx2 = padic_log(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(lx2, lx.add(&lx).unwrap());
        assert!(padic_log(&PadicScalar::from_i64(2, p5, 5)).is_err());
    }

    #[test]
    fn log_truncation_bounds() {
        // v(z) = 1, target 3, p = 5: only k = 1, 2 have k - v_5(k) < 3
        assert_eq!(log_truncation(pr(5), 3, Ratio::from_integer(1)).unwrap(), 2);
        // p = 2, w = 1, target 4: k = 4 gives 4 - 2 = 2 < 4, k = 5 gives 5
        assert_eq!(log_truncation(pr(2), 4, Ratio::from_integer(1)).unwrap(), 5);
    }

    #[test]
    fn rendering() {
        let x = PadicScalar::from_i64(-3, pr(2), 4);
        let r = render_digits(&x, 4).unwrap();
        assert_eq!(r.to_string(), "13");
        assert_eq!(r.digits, vec![1, 0, 1, 1]);
        assert_eq!(render_digits(&PadicScalar::zero(pr(3), 5), 3).unwrap().to_string(), "0");
        assert!(render_digits(&x, 5).is_err());
        assert_eq!(x.unit_digits(), vec![1, 0, 1, 1]);
    }
}
