use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

/// Laurent polynomial in hbar with rational coefficients.
///
/// Zero coefficients are never stored, so the empty map is zero and equality
/// is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HbarScalar {
    terms: BTreeMap<i32, Rational>,
}

impl HbarScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn hbar() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exponent: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, exponent: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i32) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// True when no negative power of hbar occurs.
    pub fn is_hbar_nonnegative(&self) -> bool {
        self.min_exponent().is_none_or(|k| k >= 0)
    }

    /// Multiply by hbar^shift.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// Drops every term of exponent >= `order`.
    pub fn truncate(&self, order: i32) -> Self {
        Self {
            terms: self.terms.range(..order).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    /// `Some((c, k))` when the value is the single term c·hbar^k.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// Divides by a nonzero hbar-monomial; `None` for anything else.
    pub fn div_monomial(&self, divisor: &HbarScalar) -> Option<Self> {
        let (c, k) = divisor.as_monomial()?;
        Some(self.scale(&c.recip()).shift(-k))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl From<Rational> for HbarScalar {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&HbarScalar> for HbarScalar {
    fn add_assign(&mut self, rhs: &HbarScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&HbarScalar> for HbarScalar {
    fn sub_assign(&mut self, rhs: &HbarScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl Add<&HbarScalar> for &HbarScalar {
    type Output = HbarScalar;
    fn add(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&HbarScalar> for &HbarScalar {
    type Output = HbarScalar;
    fn sub(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for HbarScalar {
    type Output = HbarScalar;
    fn add(mut self, rhs: HbarScalar) -> HbarScalar {
        self += &rhs;
        self
    }
}

impl Sub for HbarScalar {
    type Output = HbarScalar;
    fn sub(mut self, rhs: HbarScalar) -> HbarScalar {
        self -= &rhs;
        self
    }
}

impl Mul<&HbarScalar> for &HbarScalar {
    type Output = HbarScalar;
    fn mul(self, rhs: &HbarScalar) -> HbarScalar {
        let mut out = HbarScalar::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HbarScalar {
    type Output = HbarScalar;
    fn mul(self, rhs: HbarScalar) -> HbarScalar {
        &self * &rhs
    }
}

impl Neg for &HbarScalar {
    type Output = HbarScalar;
    fn neg(self) -> HbarScalar {
        HbarScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for HbarScalar {
    type Output = HbarScalar;
    fn neg(self) -> HbarScalar {
        -&self
    }
}

impl fmt::Display for HbarScalar {
    /// Ascending powers, e.g. `3 + 2*h - 1/2*h^3`. Negative powers print as `h^-k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let power = match *k {
                0 => None,
                1 => Some("h".to_string()),
                k => Some(format!("h^{k}")),
            };
            match power {
                None => write!(f, "{}", fmt_rational(&mag))?,
                Some(p) if mag.is_one() => write!(f, "{p}")?,
                Some(p) => write!(f, "{}*{p}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}
