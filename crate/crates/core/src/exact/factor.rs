use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::rational::Rational;

/// `target = unit * prod candidates[i]^exponents[i]`, verified by re-multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFactorization {
    #[serde(with = "crate::report::rational_serde")]
    pub unit: Rational,
    pub exponents: Vec<u32>,
}

/// Divides `target` by each candidate as often as the division is exact.
///
/// Succeeds only if what is left over is a nonzero constant. Candidates are
/// tried in the given order; a candidate that divides an earlier one is not
/// detected.
pub fn trial_factorize(target: &MultiPoly, candidates: &[MultiPoly]) -> Option<TrialFactorization> {
    if target.is_zero() {
        return None;
    }
    let mut rest = target.clone();
    let mut exponents = Vec::with_capacity(candidates.len());
    for cand in candidates {
        if cand.vars() != target.vars() || cand.as_constant().is_some() {
            return None;
        }
        let mut e = 0;
        while let Some(q) = rest.div_exact(cand) {
            rest = q;
            e += 1;
        }
        exponents.push(e);
    }
    let unit = rest.as_constant().filter(|u| !u.is_zero())?;

    let rebuilt = candidates
        .iter()
        .zip(&exponents)
        .fold(MultiPoly::constant(target.vars(), unit.clone()), |acc, (c, e)| {
            &acc * &c.pow(*e)
        });
    (rebuilt == *target).then_some(TrialFactorization { unit, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::VarList;
    use crate::exact::rational::int;

    fn lam() -> (VarList, MultiPoly, MultiPoly) {
        let v = VarList::new(&["l1", "l2"]);
        let l1 = MultiPoly::var(&v, 0);
        let l2 = MultiPoly::var(&v, 1);
        (v, l1, l2)
    }

    #[test]
    fn monomial_target() {
        let (_, l1, l2) = lam();
        let target = (&l1.pow(2) * &l2).scale(&int(4));
        let f = trial_factorize(&target, &[l1, l2]).unwrap();
        assert_eq!(f.unit, int(4));
        assert_eq!(f.exponents, vec![2, 1]);
    }

    #[test]
    fn quartic_curve() {
        let (_, l1, l2) = lam();
        let cubic = &l2.pow(3) - &l1.pow(4).scale(&int(27));
        // expanded independently: l2 * (l2^3 - 27 l1^4)
        let target = &l2.pow(4) - &(&l2 * &l1.pow(4)).scale(&int(27));
        let f = trial_factorize(&target, &[l2, cubic]).unwrap();
        assert_eq!(f.unit, int(1));
        assert_eq!(f.exponents, vec![1, 1]);
    }

    #[test]
    fn failure_cases() {
        let (v, l1, l2) = lam();
        assert!(trial_factorize(&(&l1 + &l2), std::slice::from_ref(&l1)).is_none());
        assert!(trial_factorize(&MultiPoly::zero(&v), std::slice::from_ref(&l1)).is_none());
        assert!(trial_factorize(&l1, &[MultiPoly::one(&v)]).is_none());
    }
}
