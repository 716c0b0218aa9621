mod common;

use proptest::prelude::*;

use common::{operator, q};
use semiclassical::bargmann::BargmannVector;
use semiclassical::exact::HbarScalar;
use semiclassical::heisenberg::{normal_order_product, QOperator};
use semiclassical::perturbation::{
    borel_sequence, gevrey_estimate, matrix_oracle, relative_substitute, rs_expand, rs_expand_series,
    CoefficientSequence,
};

fn square_jet(e: &[HbarScalar]) -> Vec<HbarScalar> {
    (0..e.len())
        .map(|k| (0..=k).fold(HbarScalar::zero(), |acc, r| &acc + &(&e[r] * &e[k - r])))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rs_agrees_with_matrix_oracle(p in operator(4), n in 0u32..=3, k in 1usize..=4) {
        prop_assert_eq!(rs_expand(&p, n, k).unwrap(), matrix_oracle(&p, n, k));
    }

    #[test]
    fn rs_jet_solves_the_eigenproblem(p in operator(4), n in 0u32..=3, k in 1usize..=4) {
        let jet = rs_expand(&p, n, k).unwrap();
        prop_assert!(jet.defect(&[QOperator::number(), p]).iter().all(BargmannVector::is_zero));
        prop_assert_eq!(jet.energy[0].clone(), HbarScalar::monomial(q(n as i64), 1));
        prop_assert_eq!(jet.vector[0].clone(), BargmannVector::basis(n));
        prop_assert!(jet.vector[1..].iter().all(|v| v.coeff(n).is_zero()));
    }

    #[test]
    fn spectrum_of_square_is_square_of_spectrum(p in operator(3), n in 0u32..=3, k in 1usize..=3) {
        let num = QOperator::number();
        let squared = [
            normal_order_product(&num, &num),
            &normal_order_product(&num, &p) + &normal_order_product(&p, &num),
            normal_order_product(&p, &p),
        ];
        let jet = rs_expand(&p, n, k).unwrap();
        let jet2 = rs_expand_series(&squared, n, k).unwrap();
        prop_assert_eq!(jet2.energy, square_jet(&jet.energy));
        prop_assert_eq!(jet2.vector, jet.vector);
    }

    #[test]
    fn relative_jets_are_hbar_nonnegative(p in operator(4), n in 0u32..=2, k in 1usize..=4) {
        prop_assert!(relative_substitute(&rs_expand(&p, n, k).unwrap()).is_hbar_nonnegative());
    }

    #[test]
    fn gevrey_fit_recovers_scaled_factorial_growth(c in 1i64..=9, r in 1i64..=3) {
        let seq: Vec<_> = (0..25u32)
            .scan(q(c), |acc, k| {
                let out = acc.clone();
                *acc = &*acc * q((k as i64 + 1) * r);
                Some(out)
            })
            .collect();
        let fit = gevrey_estimate(&CoefficientSequence(seq)).unwrap();
        prop_assert!((fit.order - 1.0).abs() <= 0.15, "order {}", fit.order);
    }
}

#[test]
fn first_order_diagonal_rule() {
    for i in 0..=4u32 {
        let p = QOperator::monomial(i, i, HbarScalar::one());
        for n in 0..=6u32 {
            let falling = (0..i).fold(q(1), |acc, m| acc * q(n as i64 - m as i64));
            let jet = rs_expand(&p, n, 1).unwrap();
            assert_eq!(jet.energy[1], HbarScalar::monomial(falling, i as i32), "i = {i}, n = {n}");
        }
    }
}

#[test]
fn degenerate_unperturbed_operator_is_rejected() {
    let h0 = QOperator::monomial(2, 2, HbarScalar::one());
    assert!(rs_expand_series(&[h0, QOperator::ad()], 0, 2).is_err());
    assert!(rs_expand_series(&[QOperator::a(), QOperator::a()], 0, 2).is_err());
}

#[test]
fn borel_sequence_drops_constant_term() {
    let b = borel_sequence(&CoefficientSequence((0..6).map(q).collect())).unwrap();
    assert_eq!(b.dropped, q(0));
    assert_eq!(b.transform.0[..3], [q(1), q(2), q(3) / q(2)]);
}
