//! Elliptic curves over prime fields, their L-polynomials, and class number towers
//! of the constant field extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::limits::{self, LimitReport, Method, TowerLevel, ZeroReason};
use crate::padic::PadicScalar;
use crate::poly::{cyclic_resultant, power_transform, IntPolynomial};

/// Largest base field handled by brute-force counting.
pub const MAX_FIELD: u64 = 10_000;

/// `y^2 = x^3 + a x + b` over `F_l`, `l >= 5` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticCurveSpec {
    l: u64,
    a: u64,
    b: u64,
}

impl EllipticCurveSpec {
    pub fn new(l: u64, a: i64, b: i64) -> Result<Self> {
        if l < 5 || !arith::is_prime(l) {
            return Err(Error::InvalidArgument(format!("field size {l} must be a prime >= 5")));
        }
        if l > MAX_FIELD {
            return Err(Error::InvalidArgument(format!("field size {l} exceeds {MAX_FIELD}")));
        }
        let a = a.rem_euclid(l as i64) as u64;
        let b = b.rem_euclid(l as i64) as u64;
        let disc = (4 * a % l * a % l * a + 27 * (b * b % l)) % l;
        if disc == 0 {
            return Err(Error::SingularCurve { l });
        }
        Ok(EllipticCurveSpec { l, a, b })
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }
}

/// Legendre symbol `(d / l)` by Euler's criterion.
pub fn legendre_symbol(d: i64, l: u64) -> Result<i8> {
    if l == 2 || !arith::is_prime(l) {
        return Err(Error::InvalidArgument(format!("{l} is not an odd prime")));
    }
    let lb = BigInt::from(l);
    let x = BigInt::from(d).mod_floor(&lb);
    if x.is_zero() {
        return Ok(0);
    }
    let r = x.modpow(&BigInt::from((l - 1) / 2), &lb);
    Ok(if r.is_one() { 1 } else { -1 })
}

/// `#E(F_l)` including the point at infinity.
pub fn point_count(e: &EllipticCurveSpec) -> u64 {
    let l = e.l;
    let mut squares = vec![0u64; l as usize];
    for y in 0..l {
        squares[(y * y % l) as usize] += 1;
    }
    1 + (0..l)
        .map(|x| squares[((x * x % l * x + e.a * x + e.b) % l) as usize])
        .sum::<u64>()
}

/// `#E(F_(l^k))` by enumerating the field, for `l^k <= MAX_FIELD`.
pub fn point_count_extension(e: &EllipticCurveSpec, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let q = e
        .l
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD)
        .ok_or_else(|| Error::InvalidArgument(format!("{}^{k} exceeds {MAX_FIELD}", e.l)))?;
    if k == 1 {
        return Ok(point_count(e));
    }
    let field = gf::Field::new(e.l, k as usize);
    let mut squares = vec![0u64; q as usize];
    for y in 0..q {
        let y = field.element(y);
        squares[field.index(&field.mul(&y, &y)) as usize] += 1;
    }
    let a = field.scalar(e.a);
    let b = field.scalar(e.b);
    let mut count = 1;
    for x in 0..q {
        let x = field.element(x);
        let x3 = field.mul(&field.mul(&x, &x), &x);
        let rhs = field.add(&field.add(&x3, &field.mul(&a, &x)), &b);
        count += squares[field.index(&rhs) as usize];
    }
    Ok(count)
}

/// `L(t)` of degree `2g` with `L(0) = 1` and the Frobenius polynomial
/// `F(t) = t^(2g) L(1/t)`, for a curve over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomialData {
    pub q: BigInt,
    pub genus: usize,
    pub l_poly: IntPolynomial,
    pub frobenius: IntPolynomial,
}

impl LPolynomialData {
    /// Builds from a monic Frobenius polynomial and checks the functional
    /// equation and the Weil bounds on the coefficients.
    pub fn from_frobenius(q: BigInt, frobenius: IntPolynomial) -> Result<Self> {
        let d = frobenius.degree().ok_or(Error::ZeroPolynomial)?;
        if d % 2 == 1 {
            return Err(Error::InvalidArgument(format!("Frobenius polynomial has odd degree {d}")));
        }
        let mut rev = frobenius.coeffs().to_vec();
        rev.reverse();
        let data = LPolynomialData { q, genus: d / 2, l_poly: IntPolynomial::new(rev), frobenius };
        data.validate()?;
        Ok(data)
    }

    pub fn from_l_polynomial(q: BigInt, l_poly: IntPolynomial) -> Result<Self> {
        let d = l_poly.degree().ok_or(Error::ZeroPolynomial)?;
        let mut coeffs = l_poly.coeffs().to_vec();
        coeffs.resize(d + 1, BigInt::zero());
        coeffs.reverse();
        Self::from_frobenius(q, IntPolynomial::new(coeffs))
    }

    fn validate(&self) -> Result<()> {
        let g = self.genus;
        let a = |i: usize| self.l_poly.coefficient(i);
        if self.q < BigInt::from(2) {
            return Err(Error::InvalidArgument(format!("field size {} must be >= 2", self.q)));
        }
        if self.l_poly.degree() != Some(2 * g) || !a(0).is_one() {
            return Err(Error::InvalidArgument("L(0) must be 1 and deg L = 2g".into()));
        }
        for i in 0..=g {
            let expect = num_traits::pow(self.q.clone(), g - i) * a(i);
            if a(2 * g - i) != expect {
                return Err(Error::InvalidArgument(format!(
                    "functional equation fails: a_{} != q^{} a_{i}",
                    2 * g - i,
                    g - i
                )));
            }
        }
        // |a_i| <= C(2g, i) q^(i/2)
        let mut binom = BigInt::one();
        for i in 1..=2 * g {
            binom = binom * BigInt::from(2 * g - i + 1) / BigInt::from(i);
            let lhs = a(i) * a(i);
            let rhs = &binom * &binom * num_traits::pow(self.q.clone(), i);
            if lhs > rhs {
                return Err(Error::InvalidArgument(format!(
                    "coefficient a_{i} = {} violates the Weil bound",
                    a(i)
                )));
            }
        }
        if !self.l_poly.evaluate_i64(1).is_positive() {
            return Err(Error::InvalidArgument("L(1) must be positive".into()));
        }
        Ok(())
    }

    /// `L(1)`, the degree-zero class number over the base field.
    pub fn class_number(&self) -> BigInt {
        self.l_poly.evaluate_i64(1)
    }
}

/// `F(t) = t^2 - (l + 1 - #E(F_l)) t + l`.
pub fn frobenius_poly(e: &EllipticCurveSpec) -> Result<LPolynomialData> {
    let trace = e.l as i64 + 1 - point_count(e) as i64;
    let f = IntPolynomial::new(vec![BigInt::from(e.l), BigInt::from(-trace), BigInt::one()]);
    LPolynomialData::from_frobenius(BigInt::from(e.l), f)
}

/// Frobenius data over `F_(q^e)`. Genus one uses the trace recurrence
/// `s_(k+1) = s_1 s_k - q s_(k-1)`; higher genus uses the power transform.
pub fn base_extend(data: &LPolynomialData, e: u64) -> Result<LPolynomialData> {
    if e == 0 {
        return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
    }
    let q_e = num_traits::pow(data.q.clone(), e as usize);
    let frob = if data.genus == 1 {
        let s1 = -data.frobenius.coefficient(1);
        let (mut prev, mut cur) = (BigInt::from(2), s1.clone());
        for _ in 1..e {
            let next = &s1 * &cur - &data.q * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        IntPolynomial::new(vec![q_e.clone(), -cur, BigInt::one()])
    } else {
        power_transform(&data.frobenius, e)?
    };
    LPolynomialData::from_frobenius(q_e, frob)
}

/// `|Res(t^n - 1, F)|`, the class number over the degree-`n` constant extension.
pub fn class_number(data: &LPolynomialData, n: u64) -> Result<BigInt> {
    let r = cyclic_resultant(&data.frobenius, n)?;
    if r.is_zero() {
        return Err(Error::InvariantViolation(
            "Frobenius polynomial vanishes at a root of unity".into(),
        ));
    }
    Ok(r.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `#E(F_l) = l + 1`
    Supersingular,
    /// `#E(F_l) = l`
    Anomalous,
    Ordinary,
}

impl std::fmt::Display for CurveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CurveKind::Supersingular => "supersingular",
            CurveKind::Anomalous => "anomalous",
            CurveKind::Ordinary => "ordinary",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveClassification {
    pub kind: CurveKind,
    pub count: u64,
    pub trace: i64,
}

/// Classification from the point count. With a CM discriminant `D`, the
/// curve must be supersingular when `(D/l) = -1` and ordinary when `(D/l) = 1`.
pub fn classify(e: &EllipticCurveSpec, cm_discriminant: Option<i64>) -> Result<CurveClassification> {
    let count = point_count(e);
    let trace = e.l as i64 + 1 - count as i64;
    let kind = match trace {
        0 => CurveKind::Supersingular,
        1 => CurveKind::Anomalous,
        _ => CurveKind::Ordinary,
    };
    if let Some(d) = cm_discriminant {
        if d >= 0 {
            return Err(Error::InvalidArgument(format!("CM discriminant {d} must be negative")));
        }
        let chi = legendre_symbol(d, e.l)?;
        let ss = kind == CurveKind::Supersingular;
        if (chi == -1 && !ss) || (chi == 1 && ss) {
            return Err(Error::HypothesisViolated(format!(
                "({d}/{}) = {chi} contradicts a {kind} reduction; the curve has no CM by this discriminant",
                e.l
            )));
        }
    }
    Ok(CurveClassification { kind, count, trace })
}

/// Limits of the class numbers along `F_(l^(e p^n))`. For `e = 1` and `p = l`
/// the report is checked against the point count: limit 1 exactly when
/// supersingular, limit 0 exactly when `l` divides `#E(F_l)`, and
/// `lambda = nu = 1` when anomalous. For `l >= 7` the zero case is the
/// anomalous one; over `F_5` a count of 10 also gives limit 0.
pub fn class_tower(e: &EllipticCurveSpec, ext: u64, p: Prime, precision: u32) -> Result<LimitReport> {
    class_tower_with(e, ext, p, precision, Method::Both)
}

pub fn class_tower_with(
    e: &EllipticCurveSpec,
    ext: u64,
    p: Prime,
    precision: u32,
    method: Method,
) -> Result<LimitReport> {
    let data = base_extend(&frobenius_poly(e)?, ext)?;
    let report = match limits::compute_limit(&data.frobenius, p, precision, method) {
        Err(Error::BudgetExceeded { .. }) if method == Method::Both => {
            limits::compute_limit(&data.frobenius, p, precision, Method::Formula)?
        }
        other => other?,
    };
    if ext == 1 && p.get() == e.l {
        check_classification(e, &report)?;
    }
    Ok(report)
}

/// Class numbers over `F_(l^(ext p^n))` for `n = 0..=last`.
pub fn class_tower_levels(e: &EllipticCurveSpec, ext: u64, p: Prime, last: u32) -> Result<Vec<TowerLevel>> {
    let data = base_extend(&frobenius_poly(e)?, ext)?;
    limits::tower_levels(&data.frobenius, p, last)
}

fn check_classification(e: &EllipticCurveSpec, report: &LimitReport) -> Result<()> {
    let CurveClassification { kind, count, .. } = classify(e, None)?;
    let one = PadicScalar::one(report.p, report.precision);
    let is_one = limits::agreement(&report.limit, &one, report.precision) == report.precision;
    let is_zero = report.zero_reason != ZeroReason::Nonzero;
    let nu_one = report.invariants.map_or(false, |i| i.lambda == 1 && i.nu == 1);
    let ok = match kind {
        CurveKind::Supersingular => is_one,
        CurveKind::Anomalous => is_zero && nu_one,
        CurveKind::Ordinary => !is_one && is_zero == (count % e.l == 0),
    };
    if !ok {
        return Err(Error::InvariantViolation(format!(
            "{kind} curve over F_{} has limit {}",
            e.l, report.limit
        )));
    }
    Ok(())
}

/// Arithmetic in `F_(l^k)` as polynomials modulo a monic irreducible.
mod gf {
    pub(super) struct Field {
        l: u64,
        k: usize,
        /// monic irreducible, ascending, length `k + 1`
        modulus: Vec<u64>,
    }

    impl Field {
        pub(super) fn new(l: u64, k: usize) -> Self {
            let total = l.pow(k as u32);
            for idx in 0..total {
                let mut m = digits(idx, l, k);
                m.push(1);
                if m[0] != 0 && is_irreducible(&m, l) {
                    return Field { l, k, modulus: m };
                }
            }
            unreachable!("an irreducible polynomial of every degree exists")
        }

        pub(super) fn element(&self, idx: u64) -> Vec<u64> {
            digits(idx, self.l, self.k)
        }

        pub(super) fn scalar(&self, c: u64) -> Vec<u64> {
            let mut v = vec![0; self.k];
            v[0] = c % self.l;
            v
        }

        pub(super) fn index(&self, x: &[u64]) -> u64 {
            x.iter().rev().fold(0, |acc, &c| acc * self.l + c)
        }

        pub(super) fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
            x.iter().zip(y).map(|(a, b)| (a + b) % self.l).collect()
        }

        pub(super) fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
            let mut r = polymod(&polymul(x, y, self.l), &self.modulus, self.l);
            r.resize(self.k, 0);
            r
        }
    }

    fn digits(mut idx: u64, l: u64, k: usize) -> Vec<u64> {
        (0..k)
            .map(|_| {
                let d = idx % l;
                idx /= l;
                d
            })
            .collect()
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn polymul(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % l;
            }
        }
        trim(&mut out);
        out
    }

    fn inv(x: u64, l: u64) -> u64 {
        let mut r = 1;
        let (mut b, mut e) = (x % l, l - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % l;
            }
            b = b * b % l;
            e >>= 1;
        }
        r
    }

    fn polymod(a: &[u64], m: &[u64], l: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], l);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lc_inv % l;
            for (i, mc) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + l * l - c * mc % l) % l;
            }
            trim(&mut r);
        }
        r
    }

    fn polysub(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + l - b.get(i).copied().unwrap_or(0)) % l)
            .collect();
        trim(&mut out);
        out
    }

    fn polygcd(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = polymod(&x, &y, l);
            x = std::mem::replace(&mut y, r);
        }
        x
    }

    /// `x^(l^j) mod m`.
    fn frobenius_power(m: &[u64], l: u64, j: usize) -> Vec<u64> {
        let mut cur = vec![0, 1];
        for _ in 0..j {
            let mut acc = vec![1];
            let mut base = cur.clone();
            let mut e = l;
            while e > 0 {
                if e & 1 == 1 {
                    acc = polymod(&polymul(&acc, &base, l), m, l);
                }
                base = polymod(&polymul(&base, &base, l), m, l);
                e >>= 1;
            }
            cur = acc;
        }
        cur
    }

    /// Rabin's test.
    fn is_irreducible(m: &[u64], l: u64) -> bool {
        let k = m.len() - 1;
        let x = vec![0, 1];
        if polysub(&frobenius_power(m, l, k), &polymod(&x, m, l), l) != Vec::<u64>::new() {
            return false;
        }
        crate::arith::factorize(k as u64).iter().all(|&(r, _)| {
            let h = polysub(&frobenius_power(m, l, k / r as usize), &x, l);
            polygcd(m, &h, l).len() == 1
        })
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn irreducibility() {
            // t^2 + 2 is irreducible over F_5, t^2 + 1 = (t + 2)(t + 3) is not
            assert!(is_irreducible(&[2, 0, 1], 5));
            assert!(!is_irreducible(&[1, 0, 1], 5));
            let f = Field::new(7, 3);
            assert_eq!(f.modulus.len(), 4);
            assert!(is_irreducible(&f.modulus, 7));
        }
    }
}
