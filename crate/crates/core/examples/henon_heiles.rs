//! Integrable Henon-Heiles system: involutivity, Lax determinant and the
//! discriminant of its spectral curve.

use semiclassical::classical::henon_heiles_suite;

fn main() {
    let r = henon_heiles_suite();
    println!("H1 = {}", r.h1);
    println!("H2 = {}", r.h2);
    println!("{{H1, H2}} = {}", r.bracket);
    println!("spectral curve: {}", r.spectral_curve);
    println!("discriminant: {}", r.discriminant);
    println!("multiplicity at the origin: {}", r.reduced_multiplicity);
    for check in &r.checks {
        println!("[{}] {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
    }
}
