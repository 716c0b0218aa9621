use crate::bargmann::{apply_operator, BargmannVector};
use crate::error::{Error, Result};
use crate::exact::rational::{falling_factorial, Rational};
use crate::exact::HbarScalar;
use crate::heisenberg::QOperator;

/// Eigenvalue and eigenvector jets in the deformation parameter t at one
/// unperturbed level.
///
/// The eigenvector is normalized by unit overlap: the coefficient of `z^n`
/// is 1 in `vector[0]` and 0 in every correction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenJet {
    pub level: u32,
    pub order: usize,
    pub energy: Vec<HbarScalar>,
    pub vector: Vec<BargmannVector>,
}

impl EigenJet {
    pub fn is_hbar_nonnegative(&self) -> bool {
        self.energy.iter().all(HbarScalar::is_hbar_nonnegative)
            && self.vector.iter().all(BargmannVector::is_hbar_nonnegative)
    }

    /// Order-by-order value of `(H(t) - E(t)) psi(t)` for `H(t) = sum_k t^k h[k]`.
    /// Every entry is zero for a correct jet.
    pub fn defect(&self, h: &[QOperator]) -> Vec<BargmannVector> {
        (0..=self.order)
            .map(|k| {
                let mut acc = BargmannVector::zero();
                for r in 0..=k {
                    if let Some(hr) = h.get(r) {
                        acc = acc.add(&apply_operator(hr, &self.vector[k - r]));
                    }
                    acc = acc.sub(&self.vector[k - r].scale(&self.energy[r]));
                }
                acc
            })
            .collect()
    }
}

/// Energy of `z^m` under a diagonal operator.
pub(crate) fn diagonal_level(h0: &QOperator, m: u32) -> HbarScalar {
    let mut e = HbarScalar::zero();
    for ((i, _), c) in h0.terms() {
        let w = Rational::from_integer(falling_factorial(m, i));
        e += &c.scale(&w).shift(i as i32);
    }
    e
}

/// Rayleigh-Schrodinger jet at level `n` for `H = a+a + t P`.
pub fn rs_expand(p: &QOperator, n: u32, order: usize) -> Result<EigenJet> {
    rs_expand_series(&[QOperator::number(), p.clone()], n, order)
}

/// Rayleigh-Schrodinger jet for `H(t) = sum_k t^k h[k]`.
///
/// `h[0]` must be diagonal on the `z^m` basis with a nondegenerate spectrum
/// whose gaps to level `n` are hbar-monomials, so each correction is an exact
/// Laurent polynomial in hbar.
pub fn rs_expand_series(h: &[QOperator], n: u32, order: usize) -> Result<EigenJet> {
    let h0 = h.first().cloned().unwrap_or_default();
    if !h0.is_diagonal() {
        return Err(Error::NonDiagonalUnperturbed);
    }
    let e_n = diagonal_level(&h0, n);

    let mut energy = vec![e_n.clone()];
    let mut vector = vec![BargmannVector::basis(n)];

    for k in 1..=order {
        let mut pushed = BargmannVector::zero();
        for r in 1..=k {
            if let Some(hr) = h.get(r) {
                pushed = pushed.add(&apply_operator(hr, &vector[k - r]));
            }
        }
        let e_k = pushed.coeff(n);

        let mut rhs = pushed.scale(&-HbarScalar::one());
        for r in 1..k {
            rhs = rhs.add(&vector[k - r].scale(&energy[r]));
        }
        let mut psi_k = BargmannVector::zero();
        for (m, c) in rhs.terms() {
            if m == n {
                continue;
            }
            let gap = &diagonal_level(&h0, m) - &e_n;
            if gap.is_zero() {
                return Err(Error::DegenerateLevel(n, m));
            }
            let coeff = c.div_monomial(&gap).ok_or(Error::NonMonomialGap(n, m))?;
            psi_k.add_term(m, coeff);
        }
        energy.push(e_k);
        vector.push(psi_k);
    }

    Ok(EigenJet {
        level: n,
        order,
        energy,
        vector,
    })
}

/// `t -> hbar t`: the order-k coefficients are multiplied by hbar^k.
pub fn relative_substitute(jet: &EigenJet) -> EigenJet {
    EigenJet {
        level: jet.level,
        order: jet.order,
        energy: jet
            .energy
            .iter()
            .enumerate()
            .map(|(k, e)| e.shift(k as i32))
            .collect(),
        vector: jet
            .vector
            .iter()
            .enumerate()
            .map(|(k, v)| v.shift_hbar(k as i32))
            .collect(),
    }
}
