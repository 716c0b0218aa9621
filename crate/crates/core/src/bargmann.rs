//! The Hilbert module `Q / Q a`, realized on polynomials in `z` with
//! `a -> hbar d/dz` and `a+ -> z`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::rational::{factorial, falling_factorial, Rational};
use crate::exact::HbarScalar;
use crate::heisenberg::QOperator;

/// Finite sum `sum_m v_m z^m` with hbar-dependent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BargmannVector {
    coeffs: BTreeMap<u32, HbarScalar>,
}

impl BargmannVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `z^m`, the class of `(a+)^m`.
    pub fn basis(m: u32) -> Self {
        Self::monomial(m, HbarScalar::one())
    }

    pub fn monomial(m: u32, c: HbarScalar) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, HbarScalar)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (m, c) in iter {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: u32, c: HbarScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m).or_default();
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: u32) -> HbarScalar {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &HbarScalar)> + '_ {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_hbar_nonnegative(&self) -> bool {
        self.coeffs.values().all(HbarScalar::is_hbar_nonnegative)
    }

    pub fn scale(&self, c: &HbarScalar) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(m, v)| (*m, v * c)))
    }

    pub fn shift_hbar(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(m, v)| (*m, v.shift(k))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, -c);
        }
        out
    }
}

impl fmt::Display for BargmannVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| match m {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                m => format!("({c})*z^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(a+)^i a^j z^m = hbar^j m (m-1)...(m-j+1) z^(m-j+i)`, extended linearly.
pub fn apply_operator(f: &QOperator, v: &BargmannVector) -> BargmannVector {
    let mut out = BargmannVector::zero();
    for ((i, j), c) in f.terms() {
        for (m, vm) in v.terms() {
            if j > m {
                continue;
            }
            let w = Rational::from_integer(falling_factorial(m, j));
            out.add_term(m - j + i, (c * vm).scale(&w).shift(j as i32));
        }
    }
    out
}

/// `<z^i, z^j> = delta_ij j! hbar^j`, bilinear over the rationals.
pub fn inner_product(v: &BargmannVector, w: &BargmannVector) -> HbarScalar {
    let mut out = HbarScalar::zero();
    for (m, vm) in v.terms() {
        let wm = w.coeff(m);
        if wm.is_zero() {
            continue;
        }
        let norm = HbarScalar::monomial(Rational::from_integer(factorial(m)), m as i32);
        out += &(&(vm * &wm) * &norm);
    }
    out
}

/// A formal hbar-series known exactly below `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSeries {
    coeffs: HbarScalar,
    order: i32,
}

impl TraceSeries {
    pub fn new(coeffs: HbarScalar, order: i32) -> Self {
        Self {
            coeffs: coeffs.truncate(order),
            order,
        }
    }

    pub fn coeffs(&self) -> &HbarScalar {
        &self.coeffs
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.coeff(k)
    }
}

/// `Tr F = sum_n <z^n, F z^n>` truncated below `hbar^order`.
///
/// Only diagonal terms `c hbar^k (a+)^i a^i` contribute at level n, at order
/// `n + i + k`, so levels are enumerated until that bound passes `order`.
pub fn trace_series(f: &QOperator, order: u32) -> TraceSeries {
    let order = order as i32;
    let diag = f.diagonal_part();
    let lowest = diag
        .terms()
        .filter_map(|((i, _), c)| c.min_exponent().map(|k| i as i32 + k))
        .min();
    let mut total = HbarScalar::zero();
    if let Some(lowest) = lowest {
        let mut n = 0u32;
        while (n as i32) + lowest < order {
            let v = BargmannVector::basis(n);
            total += &inner_product(&v, &apply_operator(&diag, &v));
            n += 1;
        }
    }
    TraceSeries::new(total, order)
}

/// Borel transform of an hbar-series, with the hbar^0 coefficient set aside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSeries {
    pub series: TraceSeries,
    pub dropped: Rational,
}

/// `hbar^k -> hbar^(k-1) / (k-1)!` for k >= 1. The result is exact below
/// `order - 1`. Negative powers have no image and are discarded.
pub fn borel_hbar(s: &TraceSeries) -> BorelSeries {
    let coeffs = HbarScalar::from_terms(s.coeffs.terms().filter(|(k, _)| *k >= 1).map(|(k, c)| {
        let w = Rational::from_integer(factorial((k - 1) as u32));
        (k - 1, c / w)
    }));
    BorelSeries {
        series: TraceSeries::new(coeffs, s.order - 1),
        dropped: s.coeff(0),
    }
}

impl BorelSeries {
    pub fn is_trivial(&self) -> bool {
        self.series.coeffs.is_zero() && self.dropped.is_zero()
    }
}

impl From<&TraceSeries> for Vec<Rational> {
    /// Dense coefficient list for exponents `0..order`.
    fn from(s: &TraceSeries) -> Self {
        (0..s.order.max(0)).map(|k| s.coeff(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn harmonic_eigenvectors() {
        for n in 0..10 {
            let v = apply_operator(&QOperator::number(), &BargmannVector::basis(n));
            assert_eq!(v, BargmannVector::monomial(n, HbarScalar::monomial(int(n as i64), 1)));
        }
    }

    #[test]
    fn derivative_action() {
        assert!(apply_operator(&QOperator::a(), &BargmannVector::basis(0)).is_zero());
        let v = apply_operator(&QOperator::a().pow(2), &BargmannVector::basis(3));
        assert_eq!(v, BargmannVector::monomial(1, HbarScalar::monomial(int(6), 2)));
    }

    #[test]
    fn inner_product_examples() {
        assert!(inner_product(&BargmannVector::basis(0), &BargmannVector::basis(1)).is_zero());
        let v = BargmannVector::monomial(1, HbarScalar::constant(int(2)));
        let w = BargmannVector::monomial(1, HbarScalar::constant(int(3)));
        assert_eq!(inner_product(&v, &w), HbarScalar::monomial(int(6), 1));
    }

    #[test]
    fn trace_examples() {
        let t = trace_series(&QOperator::number(), 5);
        assert_eq!(t.coeffs(), &HbarScalar::from_terms([(2, int(1)), (3, int(4)), (4, int(18))]));
        let t = trace_series(&QOperator::one(), 4);
        assert_eq!(
            t.coeffs(),
            &HbarScalar::from_terms([(0, int(1)), (1, int(1)), (2, int(2)), (3, int(6))])
        );
        assert!(trace_series(&QOperator::a(), 6).coeffs().is_zero());
    }

    #[test]
    fn borel_examples() {
        let b = borel_hbar(&TraceSeries::new(HbarScalar::hbar(), 3));
        assert_eq!(b.series.coeffs(), &HbarScalar::one());
        assert!(b.dropped.is_zero());
        let b = borel_hbar(&TraceSeries::new(HbarScalar::constant(int(7)), 3));
        assert!(b.series.coeffs().is_zero());
        assert_eq!(b.dropped, int(7));
    }
}
