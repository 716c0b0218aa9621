use std::fmt;

use num_traits::One;

use super::poly::{Monomial, MultiPoly, VarList};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense polynomial in one distinguished variable whose coefficients are
/// polynomials in the remaining (parameter) variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    params: VarList,
    /// `coeffs[i]` multiplies `var^i`; no trailing zeros.
    coeffs: Vec<MultiPoly>,
}

impl UniPoly {
    pub fn new(var: &str, params: &VarList, mut coeffs: Vec<MultiPoly>) -> Self {
        for c in &coeffs {
            assert!(c.vars() == params, "coefficient over the wrong variables");
        }
        while coeffs.last().is_some_and(MultiPoly::is_zero) {
            coeffs.pop();
        }
        Self {
            var: var.to_string(),
            params: params.clone(),
            coeffs,
        }
    }

    /// Splits `p` along the variable `var`; the remaining variables keep their order.
    pub fn from_multi(p: &MultiPoly, var: &str) -> Result<Self> {
        let idx = p
            .vars()
            .index_of(var)
            .ok_or_else(|| Error::VariableMismatch(format!("{var} is not a variable of the polynomial")))?;
        let rest: Vec<&String> = p.vars().names().iter().filter(|v| *v != var).collect();
        let params = VarList::new(&rest);
        let mut coeffs: Vec<MultiPoly> = Vec::new();
        for (m, c) in p.terms() {
            let d = m.0[idx] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, MultiPoly::zero(&params));
            }
            let exps: Vec<u32> = m
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, e)| *e)
                .collect();
            coeffs[d].add_term(Monomial(exps), c.clone());
        }
        Ok(Self::new(var, &params, coeffs))
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn params(&self) -> &VarList {
        &self.params
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
            .collect();
        Self::new(&self.var, &self.params, coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{}", self.var),
                _ => format!("({c})*{}^{i}", self.var),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n): n shifted rows of
/// p's coefficients followed by m shifted rows of q's, leading coefficient first.
pub fn sylvester_matrix(p: &UniPoly, q: &UniPoly) -> Vec<Vec<MultiPoly>> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let zero = MultiPoly::zero(&p.params);
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts) in [(p, n), (q, m)] {
        let deg = poly.degree().unwrap_or(0);
        for s in 0..shifts {
            let mut row = vec![zero.clone(); size];
            for (i, c) in poly.coeffs.iter().enumerate() {
                row[s + deg - i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination over the polynomial ring.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>, vars: &VarList) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(vars);
    }
    let mut sign = Rational::one();
    let mut prev = MultiPoly::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return MultiPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
            m[i][k] = MultiPoly::zero(vars);
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// Resultant as the Sylvester determinant, with the standard sign
/// `Res(p, q) = lc(p)^deg(q) * prod q(r)` over the roots r of p.
/// Swapping arguments multiplies by `(-1)^(deg p * deg q)`.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::UndefinedResultant);
    }
    if p.var != q.var || p.params != q.params {
        return Err(Error::VariableMismatch(
            "resultant operands use different variables".into(),
        ));
    }
    Ok(bareiss_determinant(sylvester_matrix(p, q), &p.params))
}

/// Discriminant normalized as `(-1)^(m(m-1)/2) Res(p, p') / lc(p)`; for a
/// monic quadratic x^2 + bx + c this is b^2 - 4c.
pub fn discriminant(p: &UniPoly) -> Result<MultiPoly> {
    let m = p.degree().ok_or(Error::ZeroPolynomial("discriminant"))?;
    if m < 2 {
        return Err(Error::DegreeTooLow { found: m, required: 2 });
    }
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading_coeff().expect("nonzero");
    let reduced = match lc.as_constant() {
        Some(c) => res.scale(&c.recip()),
        None => res
            .div_exact(lc)
            .expect("leading coefficient divides Res(p, p')"),
    };
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -reduced } else { reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn lam() -> VarList {
        VarList::new(&["l"])
    }

    fn univar(coeffs: &[MultiPoly]) -> UniPoly {
        UniPoly::new("x", &lam(), coeffs.to_vec())
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(&lam(), int(v))
    }

    #[test]
    fn resultant_of_quadratic_and_linear() {
        let l = MultiPoly::var(&lam(), 0);
        let p = univar(&[-&l, c(0), c(1)]);
        let q = univar(&[c(0), c(2)]);
        assert_eq!(resultant(&p, &q).unwrap(), l.scale(&int(-4)));
    }

    #[test]
    fn resultant_linear_case() {
        let p = univar(&[c(-1), c(1)]);
        let q = univar(&[c(1), c(1)]);
        assert_eq!(resultant(&p, &q).unwrap(), c(2));
        assert_eq!(resultant(&q, &p).unwrap(), c(-2));
    }

    #[test]
    fn shared_root_gives_zero() {
        let p = univar(&[c(0), c(0), c(1)]);
        let q = univar(&[c(0), c(1)]);
        assert!(resultant(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn zero_input_is_an_error() {
        let p = univar(&[]);
        let q = univar(&[c(0), c(1)]);
        assert_eq!(resultant(&p, &q), Err(Error::UndefinedResultant));
    }

    #[test]
    fn discriminant_of_quadratics() {
        let l = MultiPoly::var(&lam(), 0);
        let p = univar(&[-&l, c(0), c(1)]);
        assert_eq!(discriminant(&p).unwrap(), l.scale(&int(4)));
        assert!(discriminant(&univar(&[c(0), c(0), c(1)])).unwrap().is_zero());
        assert!(matches!(
            discriminant(&univar(&[c(0), c(1)])),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn from_multi_splits_variables() {
        let v = VarList::new(&["x", "l"]);
        let x = MultiPoly::var(&v, 0);
        let l = MultiPoly::var(&v, 1);
        let p = &(&x.pow(2) * &l) - &l;
        let u = UniPoly::from_multi(&p, "x").unwrap();
        assert_eq!(u.degree(), Some(2));
        assert_eq!(u.coeffs()[0], -MultiPoly::var(&lam(), 0));
        assert!(u.coeffs()[1].is_zero());
    }
}
