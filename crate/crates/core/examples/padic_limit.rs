//! The p-adic limit of `Res(t^(p^n) - 1, f)` by the closed formula, checked
//! against the level sequence, with the Iwasawa invariants.
//!
//!     cargo run --example padic_limit -- "t^2-t+5" 3 8

use padic_limits::arith::Prime;
use padic_limits::cli::parse_polynomial;
use padic_limits::error::Result;
use padic_limits::limits::{compute_limit, tower_levels, Method};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let f = parse_polynomial(args.first().map_or("t^2-t+5", String::as_str))?;
    let p = Prime::new(args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3))?;
    let digits = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(8);

    let report = compute_limit(&f, p, digits, Method::Both)?;
    println!("f = {f}, p = {p}");
    println!("limit       {}", report.limit);
    match report.nonp_limit.value() {
        Some(v) => println!("non-p part  {v}"),
        None => println!("non-p part  undefined"),
    }
    println!("xi          {}", report.xi);
    if let Some(inv) = report.invariants {
        println!("lambda = {}, mu = {}, nu = {}", inv.lambda, inv.mu, inv.nu);
    }
    if let Some(k) = report.agreement_digits {
        println!("engines agree on {k} digits");
    }

    for level in tower_levels(&f, p, 5)? {
        let exact = level.resultant.as_ref().map_or_else(|| "(large)".to_string(), |r| r.to_string());
        println!("n = {}: Res = {exact}, residue mod p^{} = {}", level.n, level.modulus_exponent(), level.residue);
    }
    Ok(())
}
