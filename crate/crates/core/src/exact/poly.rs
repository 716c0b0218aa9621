use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// An ordered list of variable names shared by every polynomial built over it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarList(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// All monomials of total degree < `bound`, in graded lex order.
    pub fn monomials_below(&self, bound: u32) -> Vec<Monomial> {
        let n = self.len();
        let mut out = Vec::new();
        for deg in 0..bound {
            let mut exps = vec![0u32; n];
            compositions(deg, 0, &mut exps, &mut out);
        }
        out.sort();
        out
    }
}

fn compositions(remaining: u32, pos: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos + 1 >= exps.len() {
        if let Some(last) = exps.last_mut() {
            *last = remaining;
            out.push(Monomial(exps.clone()));
        } else if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        compositions(remaining - e, pos + 1, exps, out);
    }
    exps[pos] = 0;
}

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: VarList,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarList) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn term(vars: &VarList, monomial: Monomial, c: Rational) -> Self {
        assert_eq!(monomial.0.len(), vars.len(), "monomial arity");
        let mut p = Self::zero(vars);
        p.add_term(monomial, c);
        p
    }

    /// The variable at `index` as a degree-one polynomial.
    pub fn var(vars: &VarList, index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::term(vars, Monomial(exps), Rational::one())
    }

    pub fn var_named(vars: &VarList, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i))
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rational)>>(vars: &VarList, iter: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in iter {
            assert_eq!(e.len(), vars.len(), "monomial arity");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn add_term(&mut self, monomial: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` if the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Order of vanishing at the origin (lowest total degree present).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Keeps only monomials of total degree < `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn mul_monomial(&self, monomial: &Monomial) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(monomial), c.clone())).collect(),
        }
    }

    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(&self.vars), |acc, _| &acc * self)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, target: &VarList) -> Result<Self> {
        let map = self
            .vars
            .names()
            .iter()
            .map(|v| {
                target.index_of(v).ok_or_else(|| {
                    Error::VariableMismatch(format!("variable {v} missing from target list"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (src, dst) in map.iter().enumerate() {
                exps[*dst] = m.0[src];
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(divisor);
        let (lead_m, lead_c) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lead_m)?;
            let qc = c / lead_c;
            rem = &rem - &divisor.mul_monomial(&qm).scale(&qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    fn check_vars(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

pub(crate) fn fmt_monomial(names: &[String], m: &Monomial) -> Option<String> {
    let parts: Vec<String> = names
        .iter()
        .zip(&m.0)
        .filter(|(_, e)| **e > 0)
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first, in the parser's input grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            match fmt_monomial(self.vars.names(), m) {
                None => write!(f, "{}", fmt_rational(&mag))?,
                Some(mono) if mag.is_one() => write!(f, "{mono}")?,
                Some(mono) => write!(f, "{}*{mono}", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn xy() -> VarList {
        VarList::new(&["x", "y"])
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(xy().monomials_below(3).len(), 6);
        assert_eq!(VarList::new(&["a", "b", "c"]).monomials_below(3).len(), 10);
        assert_eq!(VarList::new::<&str>(&[]).monomials_below(2).len(), 1);
    }

    #[test]
    fn derivative_and_degrees() {
        let v = xy();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let f = &(&x.pow(3) + &y.pow(2)) + &(&x * &y);
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.min_degree(), Some(2));
        assert_eq!(f.derivative(0), &x.pow(2).scale(&int(3)) + &y);
        assert_eq!(f.to_string(), "x^3 + x*y + y^2");
    }

    #[test]
    fn exact_division() {
        let v = xy();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let a = &x - &y;
        let b = &(&x * &x) + &y.scale(&int(3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn embedding() {
        let v = xy();
        let w = VarList::new(&["t", "y", "x"]);
        let p = &MultiPoly::var(&v, 0) + &MultiPoly::var(&v, 1).pow(2);
        let e = p.embed(&w).unwrap();
        assert_eq!(e.to_string(), "y^2 + x");
        assert!(p.embed(&VarList::new(&["x"])).is_err());
    }
}
