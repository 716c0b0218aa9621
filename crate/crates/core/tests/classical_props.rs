mod common;

use proptest::prelude::*;

use common::{poly, q};
use semiclassical::classical::{
    lagrange_h1_dim, milnor_codimension, milnor_number, milnor_profile, multiplicity_at_origin, poisson_bracket,
    MomentPair, SymplecticPoly,
};
use semiclassical::exact::{MultiPoly, Rational, VarList};

fn plane() -> VarList {
    VarList::new(&["x", "y"])
}

fn phase_space() -> VarList {
    VarList::new(&["x1", "y1", "x2", "y2"])
}

fn brieskorn(a: u32, b: u32) -> MultiPoly {
    MultiPoly::from_terms(&plane(), [(vec![a + 1, 0], q(1)), (vec![0, b + 1], q(1))])
}

/// `f(X, Y)` with `X`, `Y` given as polynomials.
fn substitute(f: &MultiPoly, x: &MultiPoly, y: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(f.vars());
    for (m, c) in f.terms() {
        out = &out + &(&x.pow(m.0[0]) * &y.pow(m.0[1])).scale(c);
    }
    out
}

fn corpus() -> Vec<MultiPoly> {
    let mut out = vec![brieskorn(1, 1), brieskorn(2, 2)];
    out.extend((1..=6).map(|k| brieskorn(k, 1)));
    out
}

fn sym(p: MultiPoly) -> SymplecticPoly {
    SymplecticPoly::canonical(p).unwrap()
}

fn pb(f: &SymplecticPoly, g: &SymplecticPoly) -> SymplecticPoly {
    poisson_bracket(f, g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poisson_bracket_satisfies_jacobi(
        f in poly(&phase_space(), 3, 4),
        g in poly(&phase_space(), 3, 4),
        h in poly(&phase_space(), 3, 4),
    ) {
        let (f, g, h) = (sym(f), sym(g), sym(h));
        let sum = &(&pb(&f, &pb(&g, &h)).poly().clone() + pb(&g, &pb(&h, &f)).poly()) + pb(&h, &pb(&f, &g)).poly();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn poisson_bracket_satisfies_leibniz(
        f in poly(&phase_space(), 3, 4),
        g in poly(&phase_space(), 3, 4),
        h in poly(&phase_space(), 3, 4),
    ) {
        let gh = sym(g.clone() * h.clone());
        let (f, g, h) = (sym(f), sym(g), sym(h));
        let lhs = pb(&f, &gh).poly().clone();
        let rhs = &(pb(&f, &g).poly() * h.poly()) + &(g.poly() * pb(&f, &h).poly());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_bracket_is_antisymmetric(f in poly(&phase_space(), 3, 4), g in poly(&phase_space(), 3, 4)) {
        let (f, g) = (sym(f), sym(g));
        prop_assert_eq!(pb(&f, &g).poly().clone(), -pb(&g, &f).poly());
    }

    #[test]
    fn milnor_profile_is_monotone(f in poly(&plane(), 4, 5)) {
        let d: Vec<usize> = (1..=8).map(|n| milnor_codimension(&f, n)).collect();
        prop_assert!(d.windows(2).all(|w| w[0] <= w[1]), "{:?}", d);
    }

    #[test]
    fn milnor_number_is_invariant_under_shears(idx in 0usize..8, c in -3i64..=3) {
        let f = &corpus()[idx];
        let (x, y) = (MultiPoly::var(&plane(), 0), MultiPoly::var(&plane(), 1));
        let sheared = substitute(f, &(&x + &y.scale(&q(c))), &y);
        let rotated = substitute(f, &y, &-&x);
        let mu = milnor_number(f).unwrap();
        prop_assert_eq!(milnor_number(&sheared).unwrap(), mu);
        prop_assert_eq!(milnor_number(&rotated).unwrap(), mu);
    }
}

#[test]
fn milnor_number_of_brieskorn_pham() {
    for a in 1..=5 {
        for b in 1..=5 {
            // monomial basis x^i y^j with i < a, j < b
            let oracle = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).count();
            assert_eq!(milnor_number(&brieskorn(a, b)).unwrap(), oracle, "a = {a}, b = {b}");
        }
    }
}

#[test]
fn h1_matches_milnor_on_corpus() {
    for f in corpus() {
        assert_eq!(lagrange_h1_dim(&sym(f.clone())).unwrap(), milnor_number(&f).unwrap(), "{f}");
    }
}

#[test]
fn profile_stops_after_three_equal_values() {
    let p = milnor_profile(&brieskorn(3, 1), 24).unwrap();
    assert_eq!(p.value, 3);
    let tail = &p.profile[p.profile.len() - 3..];
    assert!(tail.iter().all(|&d| d == 3));
}

#[test]
fn non_isolated_singularity_does_not_stabilize() {
    let f = MultiPoly::from_terms(&plane(), [(vec![2, 0], q(1))]);
    assert!(milnor_number(&f).is_err());
}

#[test]
fn multiplicity_is_lowest_degree() {
    let v = VarList::new(&["l1", "l2"]);
    let p = MultiPoly::from_terms(&v, [(vec![0, 5], q(-1)), (vec![4, 2], Rational::new((-27).into(), 1.into()))]);
    assert_eq!(multiplicity_at_origin(&p).unwrap(), 5);
    assert!(multiplicity_at_origin(&MultiPoly::zero(&v)).is_err());
}

#[test]
fn torus_moment_map_is_involutive() {
    let v = phase_space();
    let var = |i| MultiPoly::var(&v, i);
    let j1 = sym(&var(0) * &var(1));
    let j2 = sym(&var(2) * &var(3));
    assert!(MomentPair::new(vec![j1, j2]).is_involutive().unwrap());
    let mixed = sym(&var(0) * &var(3));
    let h = sym(&var(0) * &var(1));
    assert!(!MomentPair::new(vec![h, mixed]).is_involutive().unwrap());
}
