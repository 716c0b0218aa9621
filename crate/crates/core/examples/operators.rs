//! Normal-ordered arithmetic in the hbar-Heisenberg algebra.

use semiclassical::heisenberg::{dagger, ev_pairing, principal_symbol, scaled_commutator, total_symbol, QOperator};
use semiclassical::parse::parse_operator_expr;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = QOperator::a();
    let ad = QOperator::ad();
    println!("a*ad          = {}", &a * &ad);
    println!("[a, ad]/h     = {}", scaled_commutator(&a, &ad));

    let x = parse_operator_expr("(a + ad)^4")?;
    println!("(a+ad)^4      = {x}");
    println!("symbol        = {}", total_symbol(&x));
    println!("principal     = {}", principal_symbol(&x)?);

    let f = parse_operator_expr("ad^2*a + 1/2*h*a")?;
    println!("dagger(F)     = {}", dagger(&f));
    println!("[F, ad*a]/h   = {}", scaled_commutator(&f, &QOperator::number()));
    println!("ev(F, F)      = {}", ev_pairing(&f, &f));
    Ok(())
}
