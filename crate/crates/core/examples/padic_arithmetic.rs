//! p-adic numbers with tracked relative precision: arithmetic, Teichmüller
//! lifts, the logarithm and Newton polygons.

use padic_limits::arith::Prime;
use padic_limits::error::Result;
use padic_limits::padic::{padic_log, render_digits, teichmuller, NewtonPolygon, PadicScalar};
use padic_limits::poly::IntPolynomial;

fn main() -> Result<()> {
    let p = Prime::new(5)?;
    let n = 8;

    let x = PadicScalar::from_i64(-3, p, n);
    let y = PadicScalar::from_rational(&1.into(), &3.into(), p, n)?;
    println!("-3      = {x}");
    println!("1/3     = {y}");
    println!("-3 * 1/3 = {}", x.mul(&y)?);
    let d = render_digits(&x, n)?;
    println!("digits of -3, least significant first: {:?}", d.digits);

    // the fourth roots of unity in Z_5
    for a in 1..5 {
        let w = teichmuller(&PadicScalar::from_i64(a, p, n))?;
        println!("teich({a}) = {w}, fourth power {}", w.pow(4)?);
    }

    let six = PadicScalar::from_i64(6, p, n);
    println!("log 6 = {}", padic_log(&six)?);
    println!("log 36 - 2 log 6 = {}", padic_log(&six.mul(&six)?)?.sub(&padic_log(&six)?.add(&padic_log(&six)?)?)?);

    // (t - 25)(t - 3)(5t - 1): roots of valuation 2, 0 and -1
    let f = IntPolynomial::from_i64(&[-75, 403, -141, 5]);
    let polygon = NewtonPolygon::new(&f, p)?;
    for (v, mult) in polygon.root_valuations() {
        println!("{mult} root(s) of valuation {v}");
    }
    Ok(())
}
