//! Gevrey order estimates for exact coefficient sequences.

use semiclassical::bargmann::trace_series;
use semiclassical::exact::Rational;
use semiclassical::heisenberg::QOperator;
use semiclassical::perturbation::{gevrey_estimate, CoefficientSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut factorial = vec![Rational::from_integer(1.into())];
    for k in 1..25 {
        let next = &factorial[k - 1] * Rational::from_integer(k.into());
        factorial.push(next);
    }
    let geometric: Vec<Rational> = (0..25).map(|k| Rational::from_integer(3.into()).pow(k)).collect();

    for (name, seq) in [("k!", factorial), ("3^k", geometric)] {
        let fit = gevrey_estimate(&CoefficientSequence(seq))?;
        println!("{name:>4}: s = {:.3} (rms {:.2e}, {} points)", fit.order, fit.residual, fit.points);
    }

    let tr = trace_series(&QOperator::one(), 25);
    let coeffs: Vec<Rational> = (&tr).into();
    let fit = gevrey_estimate(&CoefficientSequence(coeffs))?;
    println!("Tr(1): s = {:.3}", fit.order);
    Ok(())
}
