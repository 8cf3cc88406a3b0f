//! Root classification, the unit `xi` and the Teichmüller-lift polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zp_poly;
use crate::arith::{self, Prime};
use crate::error::{Error, Result};
use crate::padic::{self, NewtonPolygon, PadicScalar};
use crate::poly::{power_transform_prime, IntPolynomial};

/// How the roots of `f` sit relative to the unit circle and to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClassification {
    pub p: Prime,
    pub degree: usize,
    /// exponent of the p-content
    pub mu: u32,
    /// roots with `|a|_p > 1`
    pub s: usize,
    /// roots with `|a|_p < 1`
    pub e: usize,
    /// roots with `|a|_p = 1`
    pub unit: usize,
    /// roots with `|a - 1|_p < 1`
    pub lambda: u32,
    /// monic reduction mod p of the unit-root part, `h(0) != 0`, ascending
    pub h: Vec<BigInt>,
    /// `f / p^mu`
    pub reduced: IntPolynomial,
    pub polygon: NewtonPolygon,
}

impl RootClassification {
    /// Parity of `p * deg f + e`.
    pub fn sign_exponent(&self) -> u32 {
        ((self.p.get() as usize * self.degree + self.e) % 2) as u32
    }
}

pub fn classify_roots(f: &IntPolynomial, p: Prime) -> Result<RootClassification> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let mu = f.p_content(p)?;
    let reduced = f
        .div_scalar_exact(&p.pow(mu))
        .expect("content divides every coefficient");
    let polygon = NewtonPolygon::new(&reduced, p)?;
    let (s, e, unit) = (polygon.count_neg(), polygon.count_pos(), polygon.count_unit());
    let pb = p.to_bigint();
    // f / p^mu mod p = c * t^e * h with h(0) != 0 and deg h = unit
    let slice: Vec<BigInt> = reduced.coeffs()[e..=d - s]
        .iter()
        .map(|c| c.mod_floor(&pb))
        .collect();
    let lc = slice.last().cloned().unwrap_or_default();
    if lc.is_zero() || slice[0].is_zero() {
        return Err(Error::InvariantViolation(
            "Newton polygon vertices are not units modulo p".into(),
        ));
    }
    let inv = arith::mod_inverse(&lc, &pb).expect("unit");
    let h: Vec<BigInt> = slice.iter().map(|c| (c * &inv).mod_floor(&pb)).collect();
    let lambda = multiplicity_of_one(&h, &pb);
    Ok(RootClassification { p, degree: d, mu, s, e, unit, lambda, h, reduced, polygon })
}

fn multiplicity_of_one(h: &[BigInt], p: &BigInt) -> u32 {
    let one_minus = vec![-BigInt::one(), BigInt::one()];
    let mut cur = h.to_vec();
    let mut k = 0;
    while cur.len() > 1 {
        let (q, r) = zp_poly::divrem_monic(&cur, &one_minus, p);
        if !r.is_empty() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

/// Teichmüller lift of the unit part of `p^-mu * a0 * prod_{|a|_p > 1} a`,
/// read off the leftmost valuation-zero vertex of the Newton polygon.
pub fn xi_unit(f: &IntPolynomial, p: Prime, precision: u32) -> Result<PadicScalar> {
    let class = classify_roots(f, p)?;
    xi_from_class(&class, precision)
}

pub(crate) fn xi_from_class(class: &RootClassification, precision: u32) -> Result<PadicScalar> {
    let c = class.reduced.coefficient(class.degree - class.s);
    let c = if class.s % 2 == 1 { -c } else { c };
    if !padic_unit(&c, class.p) {
        return Err(Error::InvariantViolation(
            "vertex coefficient is divisible by p".into(),
        ));
    }
    padic::teichmuller(&PadicScalar::from_integer(&c, class.p, precision))
}

fn padic_unit(x: &BigInt, p: Prime) -> bool {
    !x.mod_floor(&p.to_bigint()).is_zero()
}

/// Monic polynomial whose roots are the Teichmüller lifts of the unit roots
/// of `f`, coefficients known modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeichPolynomial {
    pub p: Prime,
    pub precision: u32,
    /// ascending residues in `[0, p^precision)`, last entry 1
    residues: Vec<BigInt>,
}

impl TeichPolynomial {
    pub fn degree(&self) -> usize {
        self.residues.len() - 1
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn coefficients(&self) -> Vec<PadicScalar> {
        self.residues
            .iter()
            .map(|c| PadicScalar::from_residue(c, self.p, self.precision as i64))
            .collect()
    }

    pub fn modulus(&self) -> BigInt {
        self.p.pow(self.precision)
    }

    /// `H(x)` modulo `p^precision`.
    pub fn eval_residue(&self, x: &BigInt) -> BigInt {
        zp_poly::eval(&self.residues, x, &self.modulus())
    }

    /// `H / (t - 1)^k`, which must be exact to the working precision.
    pub fn deflate_at_one(&self, k: u32) -> Result<TeichPolynomial> {
        let m = self.modulus();
        let one_minus = vec![-BigInt::one(), BigInt::one()];
        let mut cur = self.residues.clone();
        for _ in 0..k {
            let (q, r) = zp_poly::divrem_monic(&cur, &one_minus, &m);
            if !r.is_empty() {
                return Err(Error::InvariantViolation(
                    "(t - 1)^lambda does not divide the Teichmüller polynomial".into(),
                ));
            }
            cur = q;
        }
        if cur.is_empty() {
            cur = vec![BigInt::one()];
        }
        Ok(TeichPolynomial { p: self.p, precision: self.precision, residues: cur })
    }
}

pub fn teich_poly(f: &IntPolynomial, p: Prime, precision: u32) -> Result<TeichPolynomial> {
    let class = classify_roots(f, p)?;
    teich_from_class(&class, precision)
}

/// Fixed point of the p-th power root transform starting from any lift of
/// `h`. A unit count of zero gives the constant polynomial 1.
pub(crate) fn teich_from_class(class: &RootClassification, precision: u32) -> Result<TeichPolynomial> {
    let p = class.p;
    let m = p.pow(precision);
    let mut cur = class.h.clone();
    if cur.len() == 1 {
        return Ok(TeichPolynomial { p, precision, residues: cur });
    }
    let cap = 2 * precision + 4;
    for _ in 0..cap {
        let next = power_transform_prime(&cur, p.get(), Some(&m));
        if next == cur {
            return Ok(TeichPolynomial { p, precision, residues: cur });
        }
        cur = next;
    }
    Err(Error::InvariantViolation(format!(
        "Teichmüller polynomial did not stabilise in {cap} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn classification_examples() {
        let c = classify_roots(&poly(&[5, -1, 1]), pr(5)).unwrap();
        assert_eq!((c.mu, c.s, c.e, c.unit, c.lambda), (0, 0, 1, 1, 1));
        assert_eq!(c.h, vec![big(4), big(1)]);
        let c = classify_roots(&poly(&[125, 14, 1]), pr(2)).unwrap();
        assert_eq!((c.mu, c.s, c.e, c.unit, c.lambda), (0, 0, 0, 2, 2));
        let c = classify_roots(&poly(&[-1, 3, -1]), pr(2)).unwrap();
        assert_eq!((c.unit, c.lambda), (2, 0));
        let c = classify_roots(&poly(&[5, 5]), pr(5)).unwrap();
        assert_eq!(c.mu, 1);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_unit(&poly(&[5, -1, 1]), pr(5), 6).unwrap(), PadicScalar::one(pr(5), 6));
        assert_eq!(xi_unit(&poly(&[-1, 2]), pr(2), 6).unwrap(), PadicScalar::one(pr(2), 6));
        // 3t^2 - 5t + 3: the large root times 3 is close to 5, whose lift is -1
        let xi = xi_unit(&poly(&[3, -5, 3]), pr(3), 6).unwrap();
        assert_eq!(xi, PadicScalar::from_i64(-1, pr(3), 6));
    }

    #[test]
    fn teich_examples() {
        let h = teich_poly(&poly(&[-1, 3, -1]), pr(2), 10).unwrap();
        assert_eq!(h.residues(), &[big(1), big(1), big(1)]);
        let h = teich_poly(&poly(&[5, -1, 1]), pr(5), 6).unwrap();
        let m = pr(5).pow(6);
        assert_eq!(h.residues(), &[(big(-1)).mod_floor(&m), big(1)]);
        // unit roots of t^2 - t + 5 over Z_3 are primitive 8th roots of unity
        let h = teich_poly(&poly(&[5, -1, 1]), pr(3), 8).unwrap();
        let m = pr(3).pow(8);
        let r = h.residues();
        assert_eq!(r[0], (big(-1)).mod_floor(&m));
        // the middle coefficient squares to -2
        assert_eq!((&r[1] * &r[1]).mod_floor(&m), big(-2).mod_floor(&m));
        assert_eq!(r[1].mod_floor(&big(3)), big(2));
    }

    #[test]
    fn deflation() {
        let h = teich_poly(&poly(&[125, 14, 1]), pr(2), 8).unwrap();
        let d = h.deflate_at_one(2).unwrap();
        assert_eq!(d.degree(), 0);
    }
}
