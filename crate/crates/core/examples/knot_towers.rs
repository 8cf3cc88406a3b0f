//! Homology of cyclic branched covers of knots: the figure-eight tower, torus
//! knots, a composite tower and the Livingston criterion.

use padic_limits::arith::Prime;
use padic_limits::error::Result;
use padic_limits::knots::{
    alexander_torus, alexander_twist, composite_tower, homology_order, homology_tower,
    livingston_predicate, torus_closed_form, KnotPolynomial, TorusKnotSpec, TwistKnotSpec,
};
use padic_limits::poly::{cyclotomic, CyclotomicIndex};

fn main() -> Result<()> {
    let fig8 = alexander_twist(TwistKnotSpec::new(-1)?);
    println!("figure-eight: Δ = {}", fig8.delta);
    for p in [2u64, 3, 5, 7] {
        let t = homology_tower(&fig8, Prime::new(p)?, 10)?;
        println!(
            "  p = {p}: |H_1| -> {} (balanced {}), Cauchy violations {:?}",
            t.homology_limit,
            t.homology_limit.balanced_residue(10)?,
            t.cauchy_violations()
        );
    }

    let spec = TorusKnotSpec::new(4, 3)?;
    let torus = alexander_torus(spec)?;
    println!("T(4,3): Δ = {}", torus.delta);
    for n in 0..=3 {
        let order = homology_order(&torus, 2u64.pow(n))?;
        println!("  2^{n}-fold cover: |H_1| = {order}, closed form {}", torus_closed_form(spec, Prime::new(2)?, n)?);
    }

    let composite = composite_tower(&fig8, 3, Prime::new(2)?, 8)?;
    println!("figure-eight over the 3*2^n-fold covers:");
    for level in &composite.levels {
        println!("  3*2^{} cover: v_2 = {}, odd part mod 2^n = {}", level.n, level.valuation, level.unit_residue);
    }

    let delta = &cyclotomic(CyclotomicIndex::new(30)?) * &cyclotomic(CyclotomicIndex::new(42)?);
    let cert = livingston_predicate(&KnotPolynomial::user(delta.clone())?)?;
    println!("Livingston for Phi_30 Phi_42: holds = {}, factors {:?}", cert.holds, cert.factors);
    Ok(())
}
