//! Milnor numbers, Lagrange H^1 dimensions and Poisson brackets of plane germs.

use semiclassical::classical::{lagrange_h1_profile, milnor_profile, poisson_bracket, SymplecticPoly};
use semiclassical::exact::VarList;
use semiclassical::parse::parse_commutative_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = VarList::new(&["x", "y"]);
    for text in ["x^2 + y^2", "x^3 + y^2", "x^5 + y^2", "x^3 + y^3", "x^3 + x*y^3"] {
        let f = parse_commutative_poly(text, &vars)?;
        let mu = milnor_profile(&f, 24)?;
        let h1 = lagrange_h1_profile(&SymplecticPoly::canonical(f)?, 24)?;
        println!("{text:<12} mu = {:<2} h1 = {:<2} D_N = {:?}", mu.value, h1.value, mu.profile);
    }

    let f = SymplecticPoly::canonical(parse_commutative_poly("x^2*y", &vars)?)?;
    let g = SymplecticPoly::canonical(parse_commutative_poly("x + y^2", &vars)?)?;
    println!("{{x^2 y, x + y^2}} = {}", poisson_bracket(&f, &g)?.poly());
    Ok(())
}
