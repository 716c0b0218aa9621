//! The Bargmann module, its pairing, and the Borel-transformed trace.

use semiclassical::bargmann::{apply_operator, borel_hbar, inner_product, trace_series, BargmannVector};
use semiclassical::heisenberg::QOperator;

fn main() {
    let z3 = BargmannVector::basis(3);
    println!("a z^3      = {}", apply_operator(&QOperator::a(), &z3));
    println!("ad*a z^3   = {}", apply_operator(&QOperator::number(), &z3));
    println!("<z^3, z^3> = {}", inner_product(&z3, &z3));

    let tr = trace_series(&QOperator::number(), 10);
    println!("Tr(ad*a)   = {} + O(h^{})", tr.coeffs(), tr.order());
    let b = borel_hbar(&tr);
    println!("Borel      = {} + O(h^{})", b.series.coeffs(), b.series.order());
}
