use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{factorial, ln_abs, Rational};

/// Coefficients `c_0 .. c_K` of a single-variable series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence(pub Vec<Rational>);

impl CoefficientSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Rational>> for CoefficientSequence {
    fn from(v: Vec<Rational>) -> Self {
        Self(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSequence {
    pub transform: CoefficientSequence,
    /// `c_0`, which has no image.
    pub dropped: Rational,
}

/// `b_k = c_(k+1) / k!`.
pub fn borel_sequence(c: &CoefficientSequence) -> Result<BorelSequence> {
    match c.0.as_slice() {
        [] => Err(Error::EmptySequence),
        [_] => Err(Error::InsufficientData { found: 1, required: 2 }),
        [c0, rest @ ..] => Ok(BorelSequence {
            transform: rest
                .iter()
                .enumerate()
                .map(|(k, ck)| ck / Rational::from_integer(factorial(k as u32)))
                .collect::<Vec<_>>()
                .into(),
            dropped: c0.clone(),
        }),
    }
}

/// Least-squares fit `ln|c_k| ~ alpha + beta k + s (k ln k - k)`.
///
/// `order` estimates the Gevrey exponent s. This is the only floating-point
/// computation in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GevreyFit {
    pub order: f64,
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    pub points: usize,
}

pub const GEVREY_MIN_POINTS: usize = 8;

pub fn gevrey_estimate(c: &CoefficientSequence) -> Result<GevreyFit> {
    let pts: Vec<(f64, f64)> = c
        .0
        .iter()
        .enumerate()
        .filter(|(_, ck)| !ck.is_zero())
        .map(|(k, ck)| (k as f64, ln_abs(ck)))
        .collect();
    if pts.len() < GEVREY_MIN_POINTS {
        return Err(Error::InsufficientData {
            found: pts.len(),
            required: GEVREY_MIN_POINTS,
        });
    }
    let stirling = |k: f64| if k > 0.0 { k * k.ln() - k } else { 0.0 };
    let design = DMatrix::from_fn(pts.len(), 3, |r, col| match col {
        0 => 1.0,
        1 => pts[r].0,
        _ => stirling(pts[r].0),
    });
    let rhs = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1));
    let coef = design
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|_| Error::InsufficientData {
            found: pts.len(),
            required: GEVREY_MIN_POINTS,
        })?;
    let resid = &design * &coef - &rhs;
    Ok(GevreyFit {
        intercept: coef[0],
        slope: coef[1],
        order: coef[2],
        residual: (resid.norm_squared() / pts.len() as f64).sqrt(),
        points: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use num_bigint::BigInt;

    fn seq(v: &[i64]) -> CoefficientSequence {
        v.iter().map(|x| int(*x)).collect::<Vec<_>>().into()
    }

    #[test]
    fn borel_examples() {
        let b = borel_sequence(&seq(&[0, 1, 1, 2])).unwrap();
        assert_eq!(b.transform, seq(&[1, 1, 1]));
        let b = borel_sequence(&seq(&[0, 0, 1, 4, 18, 96])).unwrap();
        assert_eq!(b.transform, seq(&[0, 1, 2, 3, 4]));
        assert!(borel_sequence(&seq(&[5])).is_err());
        assert_eq!(borel_sequence(&seq(&[])), Err(Error::EmptySequence));
    }

    #[test]
    fn calibration() {
        let fact: CoefficientSequence =
            (0..25).map(|k| Rational::from_integer(factorial(k))).collect::<Vec<_>>().into();
        let s = gevrey_estimate(&fact).unwrap().order;
        assert!((0.85..=1.15).contains(&s), "{s}");

        let geo: CoefficientSequence = (0..25)
            .map(|k| Rational::from_integer(BigInt::from(2).pow(k)))
            .collect::<Vec<_>>()
            .into();
        let s = gevrey_estimate(&geo).unwrap().order;
        assert!((-0.15..=0.15).contains(&s), "{s}");

        let inv: CoefficientSequence = (0..25)
            .map(|k| Rational::from_integer(factorial(k)).recip())
            .collect::<Vec<_>>()
            .into();
        let s = gevrey_estimate(&inv).unwrap().order;
        assert!((-1.15..=-0.85).contains(&s), "{s}");
    }

    #[test]
    fn too_few_points() {
        let mostly_zero: CoefficientSequence =
            (0..20).map(|k| if k % 5 == 0 { rat(1, 3) } else { int(0) }).collect::<Vec<_>>().into();
        assert!(matches!(
            gevrey_estimate(&mostly_zero),
            Err(Error::InsufficientData { found: 4, .. })
        ));
    }
}
