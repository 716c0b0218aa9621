//! Exact coefficient arithmetic: rationals, Laurent polynomials in hbar,
//! sparse multivariate polynomials, resultants and the codimension linear
//! algebra shared by the other modules.

mod factor;
mod hbar;
mod linalg;
mod poly;
pub mod rational;
mod unipoly;

pub use factor::{trial_factorize, TrialFactorization};
pub use hbar::HbarScalar;
pub use linalg::{span_codimension, RowEchelon};
pub use poly::{Monomial, MultiPoly, VarList};
pub(crate) use poly::fmt_monomial;
pub use rational::Rational;
pub use unipoly::{bareiss_determinant, discriminant, resultant, sylvester_matrix, UniPoly};
