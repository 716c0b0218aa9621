#![allow(dead_code)]

use proptest::prelude::*;

use semiclassical::bargmann::BargmannVector;
use semiclassical::exact::{HbarScalar, Monomial, MultiPoly, Rational, VarList};
use semiclassical::heisenberg::QOperator;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != q(0))
}

/// Coefficient with hbar exponents in `lo..=hi`.
pub fn hbar_scalar(lo: i32, hi: i32) -> impl Strategy<Value = HbarScalar> {
    prop::collection::vec((lo..=hi, rational()), 0..=2).prop_map(HbarScalar::from_terms)
}

/// Operator whose terms have `i + j <= max_degree`.
pub fn operator_with(max_degree: u32, lo: i32, hi: i32) -> impl Strategy<Value = QOperator> {
    prop::collection::vec(((0..=max_degree), (0..=max_degree), hbar_scalar(lo, hi)), 0..=4).prop_map(
        move |terms| {
            QOperator::from_terms(
                terms
                    .into_iter()
                    .filter(|(i, j, _)| i + j <= max_degree)
                    .map(|(i, j, c)| ((i, j), c)),
            )
        },
    )
}

pub fn operator(max_degree: u32) -> impl Strategy<Value = QOperator> {
    operator_with(max_degree, 0, 2)
}

/// Every term of the result has weight `i + j + 2k = w`.
pub fn homogeneous_operator(w: u32) -> impl Strategy<Value = QOperator> {
    prop::collection::vec((0..=w, 0..=w, nonzero_rational()), 1..=3).prop_map(move |terms| {
        QOperator::from_terms(terms.into_iter().filter(|(i, j, _)| i + j <= w && (w - i - j).is_multiple_of(2)).map(
            |(i, j, c)| ((i, j), HbarScalar::monomial(c, ((w - i - j) / 2) as i32)),
        ))
    })
}

pub fn vector(max_degree: u32) -> impl Strategy<Value = BargmannVector> {
    prop::collection::vec((0..=max_degree, hbar_scalar(0, 1)), 0..=4).prop_map(BargmannVector::from_terms)
}

pub fn poly(vars: &VarList, max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let vars = vars.clone();
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_degree, n), rational()), 0..=max_terms).prop_map(
        move |terms| {
            let mut p = MultiPoly::zero(&vars);
            for (e, c) in terms {
                if e.iter().sum::<u32>() <= max_degree {
                    p.add_term(Monomial(e), c);
                }
            }
            p
        },
    )
}
