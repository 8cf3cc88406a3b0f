//! Dense polynomials over `Z/p^k`, ascending coefficients as residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::poly::trim;

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    reduce(&out, m)
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let out: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    reduce(&out, m)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    reduce(&crate::poly::mul_coeffs(a, b), m)
}

/// Quotient and remainder by a monic `g`.
pub(crate) fn divrem_monic(a: &[BigInt], g: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let dg = g.len() - 1;
    debug_assert!(g[dg].is_one());
    let mut r = reduce(a, m);
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for k in (0..q.len()).rev() {
        let c = r[k + dg].clone();
        if c.is_zero() {
            continue;
        }
        for (i, gc) in g.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * gc).mod_floor(m);
        }
        q[k] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub(crate) fn eval(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    a.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Extended Euclid over `F_p`: `(s, t)` with `s*a + t*b = 1`, or `None` if
/// the inputs share a factor.
pub(crate) fn xgcd_mod_p(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r0 = reduce(a, p);
    let mut r1 = reduce(b, p);
    let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
    while !r1.is_empty() {
        let lc_inv = arith::mod_inverse(r1.last().expect("nonzero"), p)?;
        let monic: Vec<BigInt> = r1.iter().map(|c| (c * &lc_inv).mod_floor(p)).collect();
        let (q, r) = divrem_monic(&r0, &monic, p);
        let q: Vec<BigInt> = q.iter().map(|c| (c * &lc_inv).mod_floor(p)).collect();
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = arith::mod_inverse(&r0[0], p)?;
    let scale = |v: &[BigInt]| reduce(&v.iter().map(|c| c * &inv).collect::<Vec<_>>(), p);
    Some((scale(&s0), scale(&t0)))
}
