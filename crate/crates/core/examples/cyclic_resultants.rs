//! Resultants of integer polynomials and the cyclic resultants `Res(t^n - 1, f)`.
//!
//!     cargo run --example cyclic_resultants -- "2t^2-3t+2" 16

use padic_limits::cli::parse_polynomial;
use padic_limits::error::Result;
use padic_limits::poly::{cyclic_resultant, cyclotomic, power_transform, resultant, CyclotomicIndex};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let f = parse_polynomial(&args.next().unwrap_or_else(|| "-t^2+3t-1".into()))?;
    let last: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);

    println!("f = {f}");
    for n in 1..=last {
        println!("Res(t^{n}-1, f) = {}", cyclic_resultant(&f, n)?);
    }

    // the same numbers from the cyclotomic factors of t^n - 1
    let n = last;
    let mut product = num_bigint::BigInt::from(1);
    for d in padic_limits::arith::divisors(n) {
        product *= resultant(&cyclotomic(CyclotomicIndex::new(d)?), &f)?;
    }
    println!("product over d | {n} of Res(Phi_d, f) = {product}");

    // P_m f has the m-th powers of the roots of f as its roots
    for m in [2u64, 3, 5] {
        println!("P_{m} f = {}", power_transform(&f, m)?);
    }
    Ok(())
}
