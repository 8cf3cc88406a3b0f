//! Exact integer polynomials: evaluation, resultants, cyclotomic polynomials,
//! the root-power transform and cyclic resultants.
//!
//! Coefficients are stored ascending by degree with no trailing zeros, so the
//! zero polynomial is the empty vector. Resultants follow the convention
//! `Res(f, g) = lc(f)^deg(g) * prod_{f(a) = 0} g(a)`, which is the Sylvester
//! determinant with `f` in the first block of rows.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Prime};
use crate::error::{Error, Result};

/// Modular transforms by primes up to this bound use the cyclotomic-norm
/// product in [`power_transform`]; larger ones go through a companion-matrix power.
const NORM_PRODUCT_MAX_PRIME: u64 = 40;

/// Exact transforms switch to the companion matrix above this prime: the norm
/// product costs `q^3` multiplications of full-size integers against `log q`.
const EXACT_NORM_MAX_PRIME: u64 = 3;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_i64(&self, x: i64) -> BigInt {
        self.evaluate(&BigInt::from(x))
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        content(&self.coeffs)
    }

    /// Exponent of the largest power of `p` dividing every coefficient.
    pub fn p_content(&self, p: Prime) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .coeffs
            .iter()
            .filter_map(|c| arith::valuation(c, p.get()))
            .min()
            .unwrap_or(0))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    /// `f(t + c)`.
    pub fn taylor_shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// Exact quotient over the integers, or `None` when `divisor` does not
    /// divide `self` in `Z[t]`.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len() - 1;
        if n < dd {
            return None;
        }
        let lc = divisor.leading_coefficient()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Descending-degree text such as `-t^2+3t-1`; parses back with the CLI grammar.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coefficient(i) + rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

/// Index of a cyclotomic polynomial `Phi_m`, `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicIndex(u64);

impl CyclotomicIndex {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("cyclotomic index must be >= 1".into()));
        }
        Ok(CyclotomicIndex(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Degree of `Phi_m`.
    pub fn phi(self) -> u64 {
        arith::euler_phi(self.0)
    }
}

/// Size guard for exact computations whose output grows with the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactBudget {
    pub max_digits: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget { max_digits: 10_000_000 }
    }
}

impl ExactBudget {
    /// Rough decimal size of `Res(t^n - 1, f)`, bounded by `n * log10(||f||_1)`.
    pub fn estimate_cyclic_digits(f: &IntPolynomial, n: u64) -> u64 {
        let l1: BigInt = f.coeffs.iter().map(|c| c.abs()).sum();
        let digits = (l1.bits() as f64) * std::f64::consts::LOG10_2;
        (n as f64 * digits.max(1.0)).ceil() as u64
    }

    pub fn check_cyclic(&self, f: &IntPolynomial, n: u64) -> Result<()> {
        let estimate = Self::estimate_cyclic_digits(f, n);
        if estimate > self.max_digits {
            return Err(Error::BudgetExceeded { estimate, budget: self.max_digits });
        }
        Ok(())
    }
}

/// `Res(f, g)` by the fraction-free subresultant remainder sequence.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(resultant_coeffs(&f.coeffs, &g.coeffs))
}

/// Both inputs nonzero and trimmed.
pub(crate) fn resultant_coeffs(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return num_traits::pow(b[0].clone(), da);
    }
    if da == 0 {
        return num_traits::pow(a[0].clone(), db);
    }
    let ca = content(a);
    let cb = content(b);
    let t = num_traits::pow(ca.clone(), db) * num_traits::pow(cb.clone(), da);
    let mut a: Vec<BigInt> = a.iter().map(|c| c / &ca).collect();
    let mut b: Vec<BigInt> = b.iter().map(|c| c / &cb).collect();
    let mut sign = BigInt::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_remainder(&a, &b);
        a = b;
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| exact_div(&c, &divisor)).collect();
        g = a.last().cloned().expect("nonzero");
        if delta > 0 {
            h = exact_div(
                &num_traits::pow(g.clone(), delta),
                &num_traits::pow(h.clone(), delta - 1),
            );
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let last = exact_div(
                &num_traits::pow(b[0].clone(), da),
                &num_traits::pow(h.clone(), da - 1),
            );
            return sign * t * last;
        }
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, trimmed.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let s = num_traits::pow(lb.clone(), e);
        for x in r.iter_mut() {
            *x *= &s;
        }
    }
    r
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division in subresultant sequence");
    q
}

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Phi_m`, by exact division of `t^m - 1` by the `Phi_d` with `d | m`, `d < m`.
pub fn cyclotomic(m: CyclotomicIndex) -> IntPolynomial {
    let mut cache = HashMap::new();
    cyclotomic_cached(m.get(), &mut cache)
}

fn cyclotomic_cached(m: u64, cache: &mut HashMap<u64, IntPolynomial>) -> IntPolynomial {
    if let Some(f) = cache.get(&m) {
        return f.clone();
    }
    let mut acc = IntPolynomial::monomial(BigInt::one(), m as usize);
    acc = &acc - &IntPolynomial::constant(BigInt::one());
    for d in arith::divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_cached(d, cache);
        acc = acc
            .divide_exact(&phi_d)
            .expect("Phi_d divides t^m - 1 for d | m");
    }
    cache.insert(m, acc.clone());
    acc
}

/// Largest `k` with `Phi_m^k` dividing `f` in `Z[t]`.
pub fn cyclotomic_multiplicity(f: &IntPolynomial, m: CyclotomicIndex) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let phi = cyclotomic(m);
    let mut g = f.clone();
    let mut k = 0;
    while g.degree().unwrap_or(0) >= phi.degree().unwrap_or(0) {
        match g.divide_exact(&phi) {
            Some(q) => {
                g = q;
                k += 1;
            }
            None => break,
        }
    }
    Ok(k)
}

/// `a0^m * prod_i (t - alpha_i^m)` for `f = a0 * prod_i (t - alpha_i)`, which is
/// `Res_x(f(x), t - x^m)`. The degree is preserved.
///
/// Each prime factor `q` of `m` is applied in turn. For small `q` the transform
/// is the norm `prod_j f(w^j x)` over the `q`-th roots of unity `w`, evaluated
/// in `Z[w]/(Phi_q)` with no division, so the same routine also works modulo
/// any integer.
pub fn power_transform(f: &IntPolynomial, m: u64) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("power transform exponent must be >= 1".into()));
    }
    let mut cur = f.coeffs.clone();
    for (q, e) in arith::factorize(m) {
        for _ in 0..e {
            cur = power_transform_prime(&cur, q, None);
        }
    }
    Ok(IntPolynomial::new(cur))
}

/// Prime-step transform on a coefficient vector of fixed length `d + 1`
/// (leading entry nonzero when `modulus` is `None`). With a modulus the
/// result is reduced into `[0, modulus)` and keeps length `d + 1`.
pub(crate) fn power_transform_prime(
    a: &[BigInt],
    q: u64,
    modulus: Option<&BigInt>,
) -> Vec<BigInt> {
    if a.len() <= 1 {
        let mut out: Vec<BigInt> = a.iter().map(|c| num_traits::pow(c.clone(), q as usize)).collect();
        if let Some(m) = modulus {
            out.iter_mut().for_each(|c| *c = c.mod_floor(m));
        }
        return out;
    }
    let bound = if modulus.is_some() { NORM_PRODUCT_MAX_PRIME } else { EXACT_NORM_MAX_PRIME };
    if q <= bound {
        norm_product_transform(a, q as usize, modulus)
    } else {
        companion_transform(a, q, modulus)
    }
}

fn norm_product_transform(a: &[BigInt], q: usize, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let d = a.len() - 1;
    // acc[k][e] is the coefficient of x^k w^e in Z[C_q][x]; the projection
    // to Z[w]/(Phi_q) is applied once at the end.
    let mut acc: Vec<Vec<BigInt>> = a
        .iter()
        .map(|c| {
            let mut row = vec![BigInt::zero(); q];
            row[0] = c.clone();
            row
        })
        .collect();
    for j in 1..q {
        let mut next = vec![vec![BigInt::zero(); q]; acc.len() + d];
        for (k, row) in acc.iter().enumerate() {
            for (e, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    next[k + i][(e + j * i) % q] += c * ai;
                }
            }
        }
        if let Some(m) = modulus {
            for row in next.iter_mut() {
                for c in row.iter_mut() {
                    if !c.is_zero() {
                        *c = c.mod_floor(m);
                    }
                }
            }
        }
        acc = next;
    }
    let negate = ((q + 1) * d) % 2 == 1;
    (0..=d)
        .map(|r| {
            let row = &acc[q * r];
            let mut v = &row[0] - &row[q - 1];
            if negate {
                v = -v;
            }
            match modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            }
        })
        .collect()
}

/// `a0^q prod (y - alpha^q)` from the characteristic polynomial of `C^q`,
/// where `C` is the companion matrix of the monic `a0^(d-1) f(x / a0)`.
fn companion_transform(a: &[BigInt], q: u64, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let d = a.len() - 1;
    let mut lc = a[d].clone();
    if lc.is_zero() {
        // a representative with nonzero leading coefficient; only used modulo `modulus`
        lc = modulus.expect("leading coefficient vanishes only modulo m").clone();
    }
    let monic_reduced = lc.is_one() && modulus.is_some();
    // g(x) = sum c_k lc^(d-1-k) x^k, monic
    let g: Vec<BigInt> = (0..d)
        .map(|k| &a[k] * num_traits::pow(lc.clone(), d - 1 - k))
        .collect();
    let mut comp = vec![vec![BigInt::zero(); d]; d];
    for i in 1..d {
        comp[i][i - 1] = BigInt::one();
    }
    for i in 0..d {
        comp[i][d - 1] = -&g[i];
    }
    let red = if monic_reduced { modulus } else { None };
    let power = mat_pow(&comp, q, red);
    let chi = berkowitz(&power, red); // ascending coefficients, monic
    let lcq = num_traits::pow(lc, q as usize);
    let out: Vec<BigInt> = (0..=d)
        .map(|k| {
            if k + 1 >= d {
                &chi[k] * num_traits::pow(lcq.clone(), k + 1 - d)
            } else {
                exact_div(&chi[k], &num_traits::pow(lcq.clone(), d - 1 - k))
            }
        })
        .collect();
    match modulus {
        Some(m) => out.into_iter().map(|c| c.mod_floor(m)).collect(),
        None => out,
    }
}

type Matrix = Vec<Vec<BigInt>>;

fn mat_mul(x: &Matrix, y: &Matrix, modulus: Option<&BigInt>) -> Matrix {
    let n = x.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &x[i][k] * &y[k][j];
            }
        }
        if let Some(m) = modulus {
            for c in out[i].iter_mut() {
                *c = c.mod_floor(m);
            }
        }
    }
    out
}

fn mat_pow(x: &Matrix, mut e: u64, modulus: Option<&BigInt>) -> Matrix {
    let n = x.len();
    let mut result: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base, modulus);
        }
    }
    result
}

/// Characteristic polynomial `det(zI - M)` by the division-free Berkowitz
/// algorithm, ascending coefficients.
fn berkowitz(m: &Matrix, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let n = m.len();
    // Process trailing principal submatrices of growing size.
    let mut vect: Vec<BigInt> = vec![BigInt::one()]; // descending, for the empty matrix
    for r in (0..n).rev() {
        let size = n - r; // current submatrix is m[r.., r..]
        let a = &m[r][r];
        let row: Vec<&BigInt> = (r + 1..n).map(|j| &m[r][j]).collect();
        let col: Vec<BigInt> = (r + 1..n).map(|i| m[i][r].clone()).collect();
        // diagonal entries of the Toeplitz matrix: 1, -a, -R C, -R A C, ...
        let mut diags = vec![BigInt::one(), -a.clone()];
        let mut v = col;
        for step in 0..size.saturating_sub(1) {
            let rc: BigInt = row.iter().zip(&v).map(|(x, y)| *x * y).sum();
            diags.push(-rc);
            if step + 1 < size - 1 {
                v = (r + 1..n)
                    .map(|i| (r + 1..n).zip(&v).map(|(j, y)| &m[i][j] * y).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); size + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in vect.iter().enumerate() {
                if i >= j {
                    *slot += &diags[i - j] * vj;
                }
            }
            if let Some(md) = modulus {
                *slot = slot.mod_floor(md);
            }
        }
        vect = next;
    }
    vect.reverse();
    vect
}

/// `Res(t^n - 1, f) = prod_{w^n = 1} f(w)` using the default size budget.
pub fn cyclic_resultant(f: &IntPolynomial, n: u64) -> Result<BigInt> {
    cyclic_resultant_with_budget(f, n, &ExactBudget::default())
}

/// Exact cyclic resultant: chain of prime power transforms, then evaluation at 1,
/// using `Res(t^n - 1, f) = (-1)^((n+1) deg f) * P_n(f)(1)`.
pub fn cyclic_resultant_with_budget(
    f: &IntPolynomial,
    n: u64,
    budget: &ExactBudget,
) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic resultant level must be >= 1".into()));
    }
    budget.check_cyclic(f, n)?;
    let d = f.coeffs.len() - 1;
    let mut cur = f.coeffs.clone();
    for (q, e) in arith::factorize(n) {
        for _ in 0..e {
            cur = power_transform_prime(&cur, q, None);
        }
    }
    let value: BigInt = cur.iter().sum();
    Ok(if ((n as usize + 1) * d) % 2 == 1 { -value } else { value })
}

/// `Res(t^n - 1, f) mod modulus`, in `[0, modulus)`. No size budget applies:
/// every intermediate is reduced.
pub fn cyclic_resultant_mod(f: &IntPolynomial, n: u64, modulus: &BigInt) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic resultant level must be >= 1".into()));
    }
    let d = f.coeffs.len() - 1;
    let mut cur: Vec<BigInt> = f.coeffs.iter().map(|c| c.mod_floor(modulus)).collect();
    for (q, e) in arith::factorize(n) {
        for _ in 0..e {
            cur = power_transform_prime(&cur, q, Some(modulus));
        }
    }
    let value: BigInt = cur.iter().sum();
    let value = if ((n as usize + 1) * d) % 2 == 1 { -value } else { value };
    Ok(value.mod_floor(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[1, -1, 1]).evaluate_i64(1), big(1));
        assert_eq!(p(&[-1, 3, -1]).evaluate_i64(-1), big(-5));
        assert_eq!(IntPolynomial::zero().evaluate_i64(7), big(0));
    }

    #[test]
    fn p_content_values() {
        let five = Prime::new(5).unwrap();
        assert_eq!(p(&[5, 5]).p_content(five).unwrap(), 1);
        assert_eq!(p(&[5, -1, 1]).p_content(five).unwrap(), 0);
        assert_eq!(p(&[8, 0, 4]).p_content(Prime::new(2).unwrap()).unwrap(), 2);
        assert_eq!(IntPolynomial::zero().p_content(five), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn resultant_values() {
        let f = p(&[2, -3, 2]);
        assert_eq!(resultant(&p(&[-1, 1]), &f).unwrap(), f.evaluate_i64(1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, -1, 1])).unwrap(), big(3));
        assert_eq!(resultant(&p(&[1, -1, 1]), &p(&[1, 1])).unwrap(), big(3));
        assert_eq!(resultant(&p(&[3]), &p(&[1, 1, 1])).unwrap(), big(9));
        assert_eq!(resultant(&p(&[1, 1]), &p(&[-1, 0, 1])).unwrap(), big(0));
        assert!(resultant(&IntPolynomial::zero(), &f).is_err());
    }

    #[test]
    fn resultant_antisymmetry() {
        let f = p(&[3, 0, -2, 5]);
        let g = p(&[-1, 4, 1, 0, 2]);
        let fg = resultant(&f, &g).unwrap();
        let gf = resultant(&g, &f).unwrap();
        assert_eq!(fg, gf); // deg f * deg g = 12 is even
        let h = p(&[1, 7, 2]);
        assert_eq!(resultant(&f, &h).unwrap(), resultant(&h, &f).unwrap());
        let k = p(&[2, 1]);
        assert_eq!(resultant(&f, &k).unwrap(), -resultant(&k, &f).unwrap());
    }

    #[test]
    fn cyclotomic_values() {
        let c = |m| cyclotomic(CyclotomicIndex::new(m).unwrap());
        assert_eq!(c(1), p(&[-1, 1]));
        assert_eq!(c(6), p(&[1, -1, 1]));
        assert_eq!(c(8), p(&[1, 0, 0, 0, 1]));
        assert_eq!(c(30).degree(), Some(8));
        assert!(CyclotomicIndex::new(0).is_err());
    }

    #[test]
    fn power_transform_values() {
        assert_eq!(power_transform(&p(&[-2, 1]), 3).unwrap(), p(&[-8, 1]));
        assert_eq!(power_transform(&p(&[-1, 3, -1]), 3).unwrap(), p(&[-1, 18, -1]));
        assert_eq!(power_transform(&p(&[5, -1, 1]), 3).unwrap(), p(&[125, 14, 1]));
        assert_eq!(power_transform(&p(&[5, -1, 1]), 1).unwrap(), p(&[5, -1, 1]));
    }

    #[test]
    fn companion_route_matches_norm_product() {
        let f = p(&[3, -2, 0, 5]);
        for q in [2u64, 3, 5, 7] {
            let a = norm_product_transform(f.coeffs(), q as usize, None);
            let b = companion_transform(f.coeffs(), q, None);
            assert_eq!(a, b, "q = {q}");
        }
        let m = big(1_000_003);
        let a = norm_product_transform(f.coeffs(), 7, Some(&m));
        let b = companion_transform(
            &f.coeffs().iter().map(|c| c.mod_floor(&m)).collect::<Vec<_>>(),
            7,
            Some(&m),
        );
        assert_eq!(a, b);
    }

    #[test]
    fn large_prime_level() {
        // 41 exceeds the norm-product bound; compare with the divisor product.
        let f = p(&[2, -1, 1]);
        let direct = cyclic_resultant(&f, 41).unwrap();
        let phi41 = cyclotomic(CyclotomicIndex::new(41).unwrap());
        let via = resultant(&phi41, &f).unwrap() * f.evaluate_i64(1);
        assert_eq!(direct, via);
    }

    #[test]
    fn cyclic_resultant_values() {
        assert_eq!(cyclic_resultant(&p(&[1, -1, 1]), 2).unwrap(), big(3));
        assert_eq!(cyclic_resultant(&p(&[2, -3, 2]), 4).unwrap(), big(63));
        assert_eq!(cyclic_resultant(&p(&[3, -5, 3]), 3).unwrap(), big(64));
        assert_eq!(cyclic_resultant(&p(&[-2, 5, -2]), 2).unwrap(), big(-9));
        assert_eq!(cyclic_resultant(&p(&[2, -3, 2]), 16).unwrap(), big(60543));
        assert_eq!(cyclic_resultant(&p(&[-1, 1]), 5).unwrap(), big(0));
    }

    #[test]
    fn cyclic_resultant_mod_matches_exact() {
        let f = p(&[-1, 3, -1]);
        let m = num_traits::pow(big(7), 6);
        for n in [1u64, 7, 49, 343, 6, 12] {
            let exact = cyclic_resultant(&f, n).unwrap();
            assert_eq!(cyclic_resultant_mod(&f, n, &m).unwrap(), exact.mod_floor(&m));
        }
        // leading coefficient divisible by the modulus prime
        let g = p(&[3, -5, 3]);
        let m3 = num_traits::pow(big(3), 9);
        let exact = cyclic_resultant(&g, 27).unwrap();
        assert_eq!(cyclic_resultant_mod(&g, 27, &m3).unwrap(), exact.mod_floor(&m3));
    }

    #[test]
    fn budget_refuses_runaway_levels() {
        let budget = ExactBudget { max_digits: 1000 };
        let f = p(&[-1, 3, -1]);
        assert!(matches!(
            cyclic_resultant_with_budget(&f, 7u64.pow(6), &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn cyclotomic_multiplicities() {
        let phi6 = CyclotomicIndex::new(6).unwrap();
        let f = p(&[1, -1, 1]);
        assert_eq!(cyclotomic_multiplicity(&f, phi6).unwrap(), 1);
        assert_eq!(cyclotomic_multiplicity(&f, CyclotomicIndex::new(4).unwrap()).unwrap(), 0);
        assert_eq!(cyclotomic_multiplicity(&(&f * &f), phi6).unwrap(), 2);
    }

    #[test]
    fn taylor_shift_and_division() {
        let f = p(&[1, -18, 1]);
        assert_eq!(f.taylor_shift(&big(1)), p(&[-16, -16, 1]));
        let g = p(&[2, -3, 2]);
        let prod = &f * &g;
        assert_eq!(prod.divide_exact(&g), Some(f.clone()));
        assert_eq!(g.divide_exact(&p(&[1, 1])), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 3, -1]).to_string(), "-t^2+3t-1");
        assert_eq!(p(&[5, -1, 1]).to_string(), "t^2-t+5");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[0, 1]).to_string(), "t");
    }
}
