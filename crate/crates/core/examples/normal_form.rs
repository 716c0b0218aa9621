//! Quantum Birkhoff normal form of the quartic oscillator.

use semiclassical::normal_form::quantum_birkhoff;
use semiclassical::parse::parse_operator_expr;
use semiclassical::perturbation::rs_expand;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_operator_expr("(a + ad)^4")?;
    let nf = quantum_birkhoff(&p, 3);
    println!("psi = {}", nf.psi);
    for (k, g) in nf.generators.iter().enumerate() {
        println!("G_{} = {g}", k + 1);
    }
    println!("residual zero: {}", nf.residual.is_zero());
    for n in 0..=3 {
        let same = nf.psi.eval_level(n) == rs_expand(&p, n, 3)?.energy;
        println!("psi(t, {n}h) = E_{n}(t): {same}");
    }
    Ok(())
}
