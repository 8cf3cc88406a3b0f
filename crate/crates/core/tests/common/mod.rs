#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use padic_limits::poly::IntPolynomial;

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

/// Determinant by Bareiss elimination, exact over the integers.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let m = f.degree().expect("nonzero f");
    let n = g.degree().expect("nonzero g");
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for i in 0..=m {
            rows[r][r + i] = f.coefficient(m - i);
        }
    }
    for r in 0..m {
        for i in 0..=n {
            rows[n + r][r + i] = g.coefficient(n - i);
        }
    }
    bareiss_det(rows)
}

/// `t^n - 1`.
pub fn t_pow_minus_one(n: usize) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::from(-1);
    c[n] = BigInt::one();
    IntPolynomial::new(c)
}

pub fn brute_cyclic(f: &IntPolynomial, n: usize) -> BigInt {
    sylvester_resultant(&t_pow_minus_one(n), f)
}

/// Affine points on `y^2 = x^3 + a x + b` over `F_l`, plus infinity, by a double loop.
pub fn naive_point_count(l: u64, a: u64, b: u64) -> u64 {
    let mut count = 1;
    for x in 0..l {
        let rhs = (x * x % l * x + a * x + b) % l;
        for y in 0..l {
            if y * y % l == rhs {
                count += 1;
            }
        }
    }
    count
}
