//! Elliptic curves over prime fields: point counts, Frobenius polynomials,
//! class numbers of constant extensions and their p-adic limits.
//!
//!     cargo run --example curve_towers -- 37 0 -5

use padic_limits::arith::Prime;
use padic_limits::curves::{
    base_extend, class_number, class_tower, classify, frobenius_poly, point_count, EllipticCurveSpec,
};
use padic_limits::error::Result;

fn main() -> Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (l, a, b) = match args[..] {
        [l, a, b] => (l as u64, a, b),
        _ => (5, 3, 3),
    };
    let e = EllipticCurveSpec::new(l, a, b)?;
    let data = frobenius_poly(&e)?;
    let c = classify(&e, None)?;
    println!("y^2 = x^3 + {a}x + {b} over F_{l}: {} points, {}", point_count(&e), c.kind);
    println!("F(t) = {}, L(t) = {}", data.frobenius, data.l_poly);
    for n in 1..=4 {
        println!("  |E(F_{l}^{n})| = {}", class_number(&data, n)?);
    }
    println!("over F_{l}^3: F = {}", base_extend(&data, 3)?.frobenius);

    for p in [2u64, 3, l] {
        let report = class_tower(&e, 1, Prime::new(p)?, 8)?;
        let inv = report.invariants.expect("curve towers never vanish");
        println!("p = {p}: limit {}, lambda = {}, nu = {}", report.limit, inv.lambda, inv.nu);
    }
    Ok(())
}
