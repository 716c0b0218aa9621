//! Exact symbolic workbench for the hbar-Heisenberg algebra `[a, a+] = hbar`.
//!
//! * [`exact`]: rationals, hbar-Laurent scalars, sparse polynomials, resultants.
//! * [`heisenberg`]: normal-ordered operators, scaled commutators, symbols.
//! * [`bargmann`]: the action on polynomials in `z`, pairing, traces, Borel transform.
//! * [`perturbation`]: Rayleigh-Schrodinger jets, a matrix oracle, Gevrey fits.
//! * [`normal_form`]: evolution jets, conjugation and the quantum Birkhoff normal form.
//! * [`classical`]: Poisson brackets, Milnor numbers, discriminants, Henon-Heiles.
//! * [`parse`], [`report`], [`cli`]: text input, JSON reports and the command dispatcher.
//!
//! Everything is exact over the rationals except the Gevrey slope fit.

pub mod bargmann;
pub mod classical;
pub mod cli;
pub mod error;
pub mod exact;
pub mod heisenberg;
pub mod normal_form;
pub mod parse;
pub mod perturbation;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
