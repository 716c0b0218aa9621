//! Rayleigh-Schrodinger jets for `ad*a + t P`, checked against the matrix oracle.

use semiclassical::heisenberg::QOperator;
use semiclassical::parse::parse_operator_expr;
use semiclassical::perturbation::{matrix_oracle, relative_substitute, rs_expand};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_operator_expr("(a + ad)^4")?;
    for n in 0..=3 {
        let jet = rs_expand(&p, n, 3)?;
        let energies: Vec<String> = jet.energy.iter().map(ToString::to_string).collect();
        println!("n = {n}: E = [{}]  oracle agrees: {}", energies.join(", "), jet == matrix_oracle(&p, n, 3));
    }

    let jet = rs_expand(&p, 0, 4)?;
    let defect_free = jet.defect(&[QOperator::number(), p]).iter().all(|v| v.is_zero());
    println!("defect vanishes: {defect_free}");
    println!("relative jet hbar-nonnegative: {}", relative_substitute(&jet).is_hbar_nonnegative());
    Ok(())
}
