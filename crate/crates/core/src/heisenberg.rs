//! Normal-ordered operators in the hbar-Heisenberg algebra `[a, a+] = hbar`.
//!
//! An operator is stored as a finite sum of `c(hbar) (a+)^i a^j` with every
//! creation operator to the left. Products are re-ordered with the Wick rule
//!
//! ```text
//! a^j (a+)^k = sum_m  m! C(j,m) C(k,m) hbar^m (a+)^(k-m) a^(j-m)
//! ```
//!
//! so every value is canonical by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, factorial, fmt_rational, Rational};
use crate::exact::{HbarScalar, Monomial, MultiPoly, VarList};

/// Normal-ordered operator: map from `(i, j)` (powers of a+ and a) to its
/// hbar-dependent coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QOperator {
    terms: BTreeMap<(u32, u32), HbarScalar>,
}

impl QOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(HbarScalar::one())
    }

    pub fn scalar(c: HbarScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn hbar() -> Self {
        Self::scalar(HbarScalar::hbar())
    }

    /// The annihilation operator `a`.
    pub fn a() -> Self {
        Self::monomial(0, 1, HbarScalar::one())
    }

    /// The creation operator `a+`.
    pub fn ad() -> Self {
        Self::monomial(1, 0, HbarScalar::one())
    }

    /// `a+ a`, the harmonic oscillator.
    pub fn number() -> Self {
        Self::monomial(1, 1, HbarScalar::one())
    }

    pub fn monomial(i: u32, j: u32, c: HbarScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), HbarScalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in iter {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: HbarScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &HbarScalar)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> HbarScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_hbar_nonnegative(&self) -> bool {
        self.terms.values().all(HbarScalar::is_hbar_nonnegative)
    }

    pub fn min_hbar_exponent(&self) -> Option<i32> {
        self.terms.values().filter_map(HbarScalar::min_exponent).min()
    }

    /// Highest total power `i + j` of a+ and a.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn max_annihilation_degree(&self) -> u32 {
        self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    /// Largest `i - j`: how far the operator can raise a z-degree.
    pub fn max_raise(&self) -> i64 {
        self.terms
            .keys()
            .map(|(i, j)| *i as i64 - *j as i64)
            .max()
            .unwrap_or(0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(i, j)| i == j)
    }

    pub fn diagonal_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i == j)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn off_diagonal_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i != j)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &HbarScalar) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.scale(c))))
    }

    /// Multiply every coefficient by hbar^k.
    pub fn shift_hbar(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(key, v)| (*key, v.shift(k))).collect(),
        }
    }

    /// Weight `i + j + 2k` of every stored term `hbar^k (a+)^i a^j`.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self
            .terms
            .iter()
            .flat_map(|(&(i, j), c)| c.terms().map(move |(k, _)| i as i64 + j as i64 + 2 * k as i64))
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| normal_order_product(&acc, self))
    }
}

/// Normal-ordered product `F G`.
pub fn normal_order_product(f: &QOperator, g: &QOperator) -> QOperator {
    let mut out = QOperator::zero();
    for (&(i1, j1), c1) in &f.terms {
        for (&(i2, j2), c2) in &g.terms {
            let c = c1 * c2;
            for m in 0..=j1.min(i2) {
                let w = factorial(m) * binomial(j1, m) * binomial(i2, m);
                let coeff = c.scale(&Rational::from_integer(w)).shift(m as i32);
                out.add_term(i1 + i2 - m, j1 + j2 - m, coeff);
            }
        }
    }
    out
}

/// `(1/hbar) (F G - G F)`. With this order
/// `scaled_commutator((a+)^i a^j, a+ a) = (j - i) (a+)^i a^j`.
pub fn scaled_commutator(f: &QOperator, g: &QOperator) -> QOperator {
    (&normal_order_product(f, g) - &normal_order_product(g, f)).shift_hbar(-1)
}

/// Hermitian conjugate: `(a+)^i a^j -> (a+)^j a^i`, hbar and rationals real.
pub fn dagger(f: &QOperator) -> QOperator {
    QOperator {
        terms: f.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
    }
}

/// Commutative polynomial in `x` (for a+) and `y` (for a) with hbar-dependent
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolPoly {
    terms: BTreeMap<(u32, u32), HbarScalar>,
}

impl SymbolPoly {
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &HbarScalar)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> HbarScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, i: u32, j: u32, c: HbarScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), HbarScalar)>>(iter: I) -> Self {
        let mut out = Self::default();
        for ((i, j), c) in iter {
            out.add_term(i, j, c);
        }
        out
    }

    /// The hbar^0 part as a polynomial over `[x, y]`.
    pub fn at_hbar_zero(&self) -> MultiPoly {
        let vars = symbol_vars();
        let mut p = MultiPoly::zero(&vars);
        for (&(i, j), c) in &self.terms {
            p.add_term(Monomial(vec![i, j]), c.coeff(0));
        }
        p
    }
}

pub fn symbol_vars() -> VarList {
    VarList::new(&["x", "y"])
}

/// Total symbol: `(a+)^i a^j -> x^i y^j`, coefficients unchanged.
pub fn total_symbol(f: &QOperator) -> SymbolPoly {
    SymbolPoly {
        terms: f.terms.clone(),
    }
}

fn check_in_q(f: &QOperator) -> Result<()> {
    match f.min_hbar_exponent() {
        Some(k) if k < 0 => Err(Error::NotInQ(k)),
        _ => Ok(()),
    }
}

/// Total symbol at hbar = 0, the class of `F` in `Q / hbar Q`.
pub fn principal_symbol(f: &QOperator) -> Result<MultiPoly> {
    check_in_q(f)?;
    Ok(total_symbol(f).at_hbar_zero())
}

/// Borel transform of a total symbol. The hbar^0 part has no image and is
/// carried separately in `dropped`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSymbol {
    pub transform: SymbolPoly,
    pub dropped: MultiPoly,
}

/// `hbar^k -> hbar^(k-1) / (k-1)!` termwise on the total symbol.
pub fn borel_symbol(f: &QOperator) -> Result<BorelSymbol> {
    check_in_q(f)?;
    let mut transform = SymbolPoly::default();
    for (&(i, j), c) in &f.terms {
        for (k, v) in c.terms().filter(|(k, _)| *k >= 1) {
            let w = Rational::from_integer(factorial((k - 1) as u32));
            transform.add_term(i, j, HbarScalar::monomial(v / w, k - 1));
        }
    }
    Ok(BorelSymbol {
        transform,
        dropped: total_symbol(f).at_hbar_zero(),
    })
}

/// `ev(F, G)`: the constant term of the symbol of `F+ G`.
pub fn ev_pairing(f: &QOperator, g: &QOperator) -> HbarScalar {
    normal_order_product(&dagger(f), g).coeff(0, 0)
}

impl Add<&QOperator> for &QOperator {
    type Output = QOperator;
    fn add(self, rhs: &QOperator) -> QOperator {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub<&QOperator> for &QOperator {
    type Output = QOperator;
    fn sub(self, rhs: &QOperator) -> QOperator {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul<&QOperator> for &QOperator {
    type Output = QOperator;
    fn mul(self, rhs: &QOperator) -> QOperator {
        normal_order_product(self, rhs)
    }
}

impl Neg for &QOperator {
    type Output = QOperator;
    fn neg(self) -> QOperator {
        QOperator {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for QOperator {
    type Output = QOperator;
    fn add(self, rhs: QOperator) -> QOperator {
        &self + &rhs
    }
}

impl Sub for QOperator {
    type Output = QOperator;
    fn sub(self, rhs: QOperator) -> QOperator {
        &self - &rhs
    }
}

impl Mul for QOperator {
    type Output = QOperator;
    fn mul(self, rhs: QOperator) -> QOperator {
        normal_order_product(&self, &rhs)
    }
}

impl Neg for QOperator {
    type Output = QOperator;
    fn neg(self) -> QOperator {
        -&self
    }
}

fn fmt_ladder(i: u32, j: u32) -> Option<String> {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("ad".to_string()),
        _ => parts.push(format!("ad^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("a".to_string()),
        _ => parts.push(format!("a^{j}")),
    }
    (!parts.is_empty()).then(|| parts.join("*"))
}

fn fmt_hbar_power(k: i32) -> Option<String> {
    match k {
        0 => None,
        1 => Some("h".into()),
        k => Some(format!("h^{k}")),
    }
}

impl fmt::Display for QOperator {
    /// Expanded sum in the parser's grammar, e.g. `ad^2*a^2 + 4*h*ad*a + 2*h^2`.
    /// Negative hbar powers print as `h^-k`, which the parser does not accept.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest operator degree first, hbar ascending within a monomial.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.cmp(a)));
        for (i, j) in keys {
            for (k, c) in self.terms[&(i, j)].terms() {
                let negative = c < &Rational::zero();
                let mag = if negative { -c.clone() } else { c.clone() };
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                    first = false;
                } else {
                    write!(f, " {} ", if negative { '-' } else { '+' })?;
                }
                let factors: Vec<String> = [fmt_hbar_power(k), fmt_ladder(i, j)]
                    .into_iter()
                    .flatten()
                    .collect();
                if factors.is_empty() {
                    write!(f, "{}", fmt_rational(&mag))?;
                } else if mag.is_one() {
                    write!(f, "{}", factors.join("*"))?;
                } else {
                    write!(f, "{}*{}", fmt_rational(&mag), factors.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mono = crate::exact::fmt_monomial(symbol_vars().names(), &Monomial(vec![i, j]));
                match (mono, c.as_monomial()) {
                    (None, _) => format!("{c}"),
                    (Some(m), Some((q, 0))) if q.is_one() => m,
                    (Some(m), _) => format!("({c})*{m}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
