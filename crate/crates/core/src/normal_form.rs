//! Jets in the deformation parameter t: evolution `U' = H U`, conjugation
//! `U F U^-1`, and the quantum Birkhoff normal form of `a+a + t P`.
//!
//! The normal form eliminates the off-diagonal part of the t^k coefficient
//! with a Lie transform `X -> exp(t^k (1/hbar) ad_G) X`, using
//! `(1/hbar)[(a+)^i a^j, a+a] = (j - i) (a+)^i a^j`. What remains is diagonal
//! and is a polynomial `psi(t, u)` in `u = a+a`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, int, Rational};
use crate::exact::HbarScalar;
use crate::heisenberg::{normal_order_product, scaled_commutator, QOperator};

/// `U_0 + t U_1 + ... + t^K U_K`; products are re-truncated at order K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorJet {
    coeffs: Vec<QOperator>,
}

impl OperatorJet {
    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn new(mut coeffs: Vec<QOperator>, order: usize) -> Self {
        coeffs.resize(order + 1, QOperator::zero());
        Self { coeffs }
    }

    pub fn identity(order: usize) -> Self {
        Self::new(vec![QOperator::one()], order)
    }

    pub fn constant(f: &QOperator, order: usize) -> Self {
        Self::new(vec![f.clone()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QOperator] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &QOperator {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QOperator::is_zero)
    }

    pub fn is_hbar_nonnegative(&self) -> bool {
        self.coeffs.iter().all(QOperator::is_hbar_nonnegative)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![QOperator::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &normal_order_product(a, b);
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// `V_0 = 1, V_k = -sum_{r=1..k} U_r V_(k-r)`. Requires `U_0 = 1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0] != QOperator::one() {
            return Err(Error::NonUnitJet);
        }
        let mut v = vec![QOperator::one()];
        for k in 1..=self.order() {
            let mut acc = QOperator::zero();
            for r in 1..=k {
                acc = &acc + &normal_order_product(&self.coeffs[r], &v[k - r]);
            }
            v.push(-acc);
        }
        Ok(Self { coeffs: v })
    }
}

impl fmt::Display for OperatorJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("t*({c})"),
                k => format!("t^{k}*({c})"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

/// Solution jet of `U' = H U`, `U(0) = 1`: `U_k = H U_(k-1) / k`.
pub fn evolve(h: &QOperator, order: usize) -> OperatorJet {
    let mut coeffs = vec![QOperator::one()];
    for k in 1..=order {
        let next = normal_order_product(h, &coeffs[k - 1]).scale_rational(&int(k as i64).recip());
        coeffs.push(next);
    }
    OperatorJet { coeffs }
}

/// `exp(t^step X)` truncated at `order`.
pub fn exp_jet(x: &QOperator, step: usize, order: usize) -> OperatorJet {
    assert!(step >= 1, "exp_jet needs a positive step");
    let mut coeffs = vec![QOperator::zero(); order + 1];
    coeffs[0] = QOperator::one();
    let mut power = QOperator::one();
    let mut m = 1;
    while m * step <= order {
        power = normal_order_product(&power, x);
        coeffs[m * step] = power.scale_rational(&Rational::from_integer(factorial(m as u32)).recip());
        m += 1;
    }
    OperatorJet { coeffs }
}

/// `U F U^-1` for a t-independent `F`.
pub fn conjugate(f: &QOperator, u: &OperatorJet, order: usize) -> Result<OperatorJet> {
    conjugate_jet(&OperatorJet::constant(f, order), u)
}

/// `U F(t) U^-1`, truncated at the smaller of the two orders.
pub fn conjugate_jet(f: &OperatorJet, u: &OperatorJet) -> Result<OperatorJet> {
    let inv = u.inverse()?;
    Ok(u.mul(f).mul(&inv))
}

/// Polynomial in `u` with hbar-dependent coefficients, `coeffs[p]` at `u^p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<HbarScalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<HbarScalar>) -> Self {
        while coeffs.last().is_some_and(HbarScalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `u`.
    pub fn u() -> Self {
        Self::from_coeffs(vec![HbarScalar::zero(), HbarScalar::one()])
    }

    pub fn coeffs(&self) -> &[HbarScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, p: usize) -> HbarScalar {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_hbar_nonnegative(&self) -> bool {
        self.coeffs.iter().all(HbarScalar::is_hbar_nonnegative)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|p| &self.coeff(p) + &other.coeff(p)).collect())
    }

    pub fn scale(&self, c: &HbarScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `u - shift`.
    fn mul_linear(&self, shift: &HbarScalar) -> Self {
        let mut out = vec![HbarScalar::zero(); self.coeffs.len() + 1];
        for (p, c) in self.coeffs.iter().enumerate() {
            out[p + 1] += c;
            out[p] -= &(c * shift);
        }
        Self::from_coeffs(out)
    }

    /// `u (u - hbar) ... (u - (i-1) hbar)`, the value of `(a+)^i a^i`.
    pub fn falling(i: u32) -> Self {
        let mut out = Self::from_coeffs(vec![HbarScalar::one()]);
        for m in 0..i {
            out = out.mul_linear(&HbarScalar::monomial(int(m as i64), 1));
        }
        out
    }

    pub fn eval(&self, u: &HbarScalar) -> HbarScalar {
        let mut acc = HbarScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    /// `sum_p c_p (a+a)^p`, normal-ordered.
    pub fn to_operator(&self) -> QOperator {
        let n = QOperator::number();
        let mut out = QOperator::zero();
        let mut power = QOperator::one();
        for c in &self.coeffs {
            out = &out + &power.scale(c);
            power = normal_order_product(&power, &n);
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| {
                let mono = match p {
                    0 => None,
                    1 => Some("u".to_string()),
                    p => Some(format!("u^{p}")),
                };
                match (mono, c.as_monomial()) {
                    (None, _) => format!("({c})"),
                    (Some(m), Some((q, 0))) if q.is_one() => m,
                    (Some(m), _) => format!("({c})*{m}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Rewrites a diagonal operator as a polynomial in `u = a+a`.
pub fn diagonal_to_u(d: &QOperator) -> Result<UPoly> {
    let mut out = UPoly::zero();
    for ((i, j), c) in d.terms() {
        if i != j {
            return Err(Error::OffDiagonal { i, j });
        }
        out = out.add(&UPoly::falling(i).scale(c));
    }
    Ok(out)
}

/// `psi(t, u) = sum_k t^k psi_k(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiJet {
    pub coeffs: Vec<UPoly>,
}

impl PsiJet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Energy jet `psi(t, n hbar)` at level n.
    pub fn eval_level(&self, n: u32) -> Vec<HbarScalar> {
        let u = HbarScalar::monomial(int(n as i64), 1);
        self.coeffs.iter().map(|p| p.eval(&u)).collect()
    }

    pub fn to_operator_jet(&self) -> OperatorJet {
        OperatorJet {
            coeffs: self.coeffs.iter().map(UPoly::to_operator).collect(),
        }
    }

    pub fn is_hbar_nonnegative(&self) -> bool {
        self.coeffs.iter().all(UPoly::is_hbar_nonnegative)
    }
}

impl fmt::Display for PsiJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("t*({c})"),
                k => format!("t^{k}*({c})"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub psi: PsiJet,
    /// `generators[k-1]` is `G_k`, applied at order t^k.
    pub generators: Vec<QOperator>,
    /// `U H U^-1 - psi(t, a+a)` with `U` rebuilt from the generators by
    /// direct conjugation. Zero for a correct normal form.
    pub residual: OperatorJet,
}

/// How off-diagonal monomials are removed within one t-order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// One generator per order.
    Batch,
    /// One monomial at a time, smallest `(i, j)` first.
    Ascending,
    /// One monomial at a time, largest `(i, j)` first.
    Descending,
}

/// `X(t) -> exp(t^step (1/hbar) ad_G) X(t)` as a truncated Lie series.
fn lie_transform(jet: &[QOperator], g: &QOperator, step: usize) -> Vec<QOperator> {
    let order = jet.len() - 1;
    let mut out = jet.to_vec();
    for (l, x) in jet.iter().enumerate() {
        let mut bracket = x.clone();
        let mut m = 1;
        while l + m * step <= order {
            bracket = scaled_commutator(g, &bracket);
            if bracket.is_zero() {
                break;
            }
            let w = Rational::from_integer(factorial(m as u32)).recip();
            out[l + m * step] = &out[l + m * step] + &bracket.scale_rational(&w);
            m += 1;
        }
    }
    out
}

/// Generator that cancels the off-diagonal part of `r` against `a+a`.
fn homological_solution(r: &QOperator) -> QOperator {
    QOperator::from_terms(r.terms().filter(|((i, j), _)| i != j).map(|((i, j), c)| {
        let w = int(i as i64 - j as i64).recip();
        ((i, j), c.scale(&w))
    }))
}

/// Birkhoff normal form of `a+a + t P` to order `order`.
pub fn quantum_birkhoff(p: &QOperator, order: usize) -> NormalFormResult {
    quantum_birkhoff_series(&[QOperator::number(), p.clone()], order, EliminationOrder::Batch)
        .expect("t^0 part is a+a")
}

/// Birkhoff normal form of `H(t) = sum_k t^k h[k]`; `h[0]` must be `a+a`.
pub fn quantum_birkhoff_series(
    h: &[QOperator],
    order: usize,
    elimination: EliminationOrder,
) -> Result<NormalFormResult> {
    if h.first() != Some(&QOperator::number()) {
        return Err(Error::UnsupportedQuadraticPart);
    }
    let original = OperatorJet::new(h.to_vec(), order);
    let mut jet = original.coeffs.clone();
    let mut generators = Vec::with_capacity(order);
    let mut psi = vec![UPoly::u()];

    // U is rebuilt from the same exponentials, innermost first
    let mut u = OperatorJet::identity(order);
    for k in 1..=order {
        let g = homological_solution(&jet[k]);
        let mut pieces: Vec<QOperator> = match elimination {
            EliminationOrder::Batch => vec![g.clone()],
            _ => g
                .terms()
                .map(|((i, j), c)| QOperator::monomial(i, j, c.clone()))
                .collect(),
        };
        if elimination == EliminationOrder::Descending {
            pieces.reverse();
        }
        for piece in pieces.iter().filter(|p| !p.is_zero()) {
            jet = lie_transform(&jet, piece, k);
            u = exp_jet(&piece.shift_hbar(-1), k, order).mul(&u);
        }
        psi.push(diagonal_to_u(&jet[k])?);
        generators.push(g);
    }

    let psi = PsiJet { coeffs: psi };
    let residual = conjugate_jet(&original, &u)?.sub(&psi.to_operator_jet());
    Ok(NormalFormResult {
        psi,
        generators,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn hb(c: i64, k: i32) -> HbarScalar {
        HbarScalar::monomial(int(c), k)
    }

    #[test]
    fn evolve_examples() {
        let u = evolve(&QOperator::ad(), 2);
        assert_eq!(u.coeffs()[1], QOperator::ad());
        assert_eq!(u.coeffs()[2], QOperator::monomial(2, 0, HbarScalar::constant(rat(1, 2))));
        assert_eq!(evolve(&QOperator::zero(), 3), OperatorJet::identity(3));
        let u = evolve(&QOperator::number(), 2);
        let expected = QOperator::from_terms([
            ((2, 2), HbarScalar::constant(rat(1, 2))),
            ((1, 1), HbarScalar::monomial(rat(1, 2), 1)),
        ]);
        assert_eq!(u.coeffs()[2], expected);
    }

    #[test]
    fn canonical_shift() {
        let g = &QOperator::ad() - &QOperator::a();
        let u = evolve(&g.shift_hbar(-1), 3);
        let c = conjugate(&QOperator::a(), &u, 3).unwrap();
        assert_eq!(c.coeffs()[0], QOperator::a());
        assert_eq!(c.coeffs()[1], -QOperator::one());
        assert!(c.coeffs()[2..].iter().all(QOperator::is_zero));
    }

    #[test]
    fn inverse_requires_unit() {
        let u = OperatorJet::new(vec![QOperator::a()], 2);
        assert_eq!(u.inverse(), Err(Error::NonUnitJet));
        let f = QOperator::number();
        assert_eq!(conjugate(&f, &OperatorJet::identity(2), 2).unwrap(), OperatorJet::constant(&f, 2));
    }

    #[test]
    fn falling_factorials() {
        let d = QOperator::monomial(2, 2, HbarScalar::one());
        assert_eq!(diagonal_to_u(&d).unwrap(), UPoly::from_coeffs(vec![hb(0, 0), hb(-1, 1), hb(1, 0)]));
        let d = QOperator::monomial(3, 3, HbarScalar::one());
        assert_eq!(
            diagonal_to_u(&d).unwrap(),
            UPoly::from_coeffs(vec![hb(0, 0), hb(2, 2), hb(-3, 1), hb(1, 0)])
        );
        assert_eq!(diagonal_to_u(&QOperator::number()).unwrap(), UPoly::u());
        assert_eq!(diagonal_to_u(&QOperator::a()), Err(Error::OffDiagonal { i: 0, j: 1 }));
        let back = diagonal_to_u(&d).unwrap().to_operator();
        assert_eq!(back, d);
    }

    #[test]
    fn linear_perturbation() {
        let nf = quantum_birkhoff(&(&QOperator::a() + &QOperator::ad()), 3);
        assert_eq!(nf.psi.coeffs[0], UPoly::u());
        assert!(nf.psi.coeffs[1].is_zero());
        assert_eq!(nf.psi.coeffs[2], UPoly::from_coeffs(vec![hb(-1, 0)]));
        assert!(nf.psi.coeffs[3].is_zero());
        assert!(nf.residual.is_zero());
        let g1 = &nf.generators[0];
        assert_eq!(g1.coeff(1, 0), -g1.coeff(0, 1));
    }

    #[test]
    fn quartic_first_order() {
        let p = (&QOperator::a() + &QOperator::ad()).pow(4);
        let nf = quantum_birkhoff(&p, 1);
        assert_eq!(nf.psi.coeffs[1], UPoly::from_coeffs(vec![hb(3, 2), hb(6, 1), hb(6, 0)]));
        assert!(nf.residual.is_zero());
    }

    #[test]
    fn trivial_perturbation() {
        let nf = quantum_birkhoff(&QOperator::zero(), 3);
        assert_eq!(nf.psi.coeffs[0], UPoly::u());
        assert!(nf.psi.coeffs[1..].iter().all(UPoly::is_zero));
        assert!(nf.generators.iter().all(QOperator::is_zero));
    }

    #[test]
    fn quadratic_part_must_be_number_operator() {
        let h = [QOperator::number().scale_rational(&int(2)), QOperator::a()];
        assert_eq!(
            quantum_birkhoff_series(&h, 2, EliminationOrder::Batch),
            Err(Error::UnsupportedQuadraticPart)
        );
    }
}
