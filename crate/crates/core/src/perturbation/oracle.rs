//! Independent check on the Rayleigh-Schrodinger recursion.
//!
//! Works on the finite window `z^0 .. z^D` with `D = n + K * (max raise of P)`
//! and solves the Brillouin-Wigner self-consistency equation
//!
//! ```text
//! E = n hbar + t P_nn + t^2 P_nQ (E - H0_QQ - t P_QQ)^(-1) P_Qn
//! ```
//!
//! by fixed-point iteration on truncated t-series, expanding the resolvent as
//! a Neumann series around the diagonal `(n - m) hbar`. Matrix elements come
//! straight from the normal-ordered coefficients, not from the Bargmann action.

use crate::bargmann::BargmannVector;
use crate::exact::rational::{falling_factorial, Rational};
use crate::exact::HbarScalar;
use crate::heisenberg::QOperator;

use super::EigenJet;

/// Truncated power series in t with hbar-dependent coefficients.
type Series = Vec<HbarScalar>;

fn series_zero(len: usize) -> Series {
    vec![HbarScalar::zero(); len]
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = series_zero(len);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += &(ai * bj);
            }
        }
    }
    out
}

fn series_add_assign(a: &mut Series, b: &Series) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Multiplication by t.
fn series_shift(a: &Series) -> Series {
    let mut out = series_zero(a.len());
    if let Some(head) = a.len().checked_sub(1) {
        out[1..].clone_from_slice(&a[..head]);
    }
    out
}

/// `<z^row | P | z^col>` in the unnormalized monomial basis.
fn matrix_element(p: &QOperator, row: u32, col: u32) -> HbarScalar {
    let mut out = HbarScalar::zero();
    for ((i, j), c) in p.terms() {
        if j <= col && col - j + i == row {
            let w = Rational::from_integer(falling_factorial(col, j));
            out += &c.scale(&w).shift(j as i32);
        }
    }
    out
}

/// Sparse rows of P restricted to the window.
fn window_matrix(p: &QOperator, dim: u32) -> Vec<Vec<(u32, HbarScalar)>> {
    (0..=dim)
        .map(|row| {
            (0..=dim)
                .filter_map(|col| {
                    let e = matrix_element(p, row, col);
                    (!e.is_zero()).then_some((col, e))
                })
                .collect()
        })
        .collect()
}

/// Brillouin-Wigner jet at level `n` of `a+a + t P`; same contract as `rs_expand`.
pub fn matrix_oracle(p: &QOperator, n: u32, order: usize) -> EigenJet {
    let raise = p.max_raise().max(0) as u32;
    let dim = n + order as u32 * raise;
    let len = order + 1;
    let mat = window_matrix(p, dim);
    let others: Vec<u32> = (0..=dim).filter(|&m| m != n).collect();

    // A^{-1} on the complement: 1 / ((n - m) hbar)
    let inv_gap = |m: u32| {
        HbarScalar::monomial(Rational::from_integer((n as i64 - m as i64).into()).recip(), -1)
    };
    let p_nn = mat[n as usize]
        .iter()
        .find(|(c, _)| *c == n)
        .map(|(_, e)| e.clone())
        .unwrap_or_default();
    let e0 = HbarScalar::monomial(Rational::from_integer(n.into()), 1);

    // x = (A + delta - t P_QQ)^{-1} P_Qn as a vector of t-series indexed by window row.
    let resolvent_column = |energy: &Series| -> Vec<Series> {
        let mut delta = energy.clone();
        delta[0] = HbarScalar::zero();

        let mut term: Vec<Series> = vec![series_zero(len); dim as usize + 1];
        for &m in &others {
            let b = mat[m as usize]
                .iter()
                .find(|(c, _)| *c == n)
                .map(|(_, e)| e.clone())
                .unwrap_or_default();
            term[m as usize][0] = &b * &inv_gap(m);
        }
        let mut total = term.clone();
        for _ in 1..len {
            // term <- -A^{-1} (delta * term - t P_QQ term)
            let mut next: Vec<Series> = vec![series_zero(len); dim as usize + 1];
            for &m in &others {
                let mut acc = series_mul(&delta, &term[m as usize]);
                let mut pq = series_zero(len);
                for (col, e) in &mat[m as usize] {
                    if *col == n {
                        continue;
                    }
                    let scaled: Series = term[*col as usize].iter().map(|c| c * e).collect();
                    series_add_assign(&mut pq, &scaled);
                }
                let pq = series_shift(&pq);
                for (a, b) in acc.iter_mut().zip(&pq) {
                    *a -= b;
                }
                let factor = -inv_gap(m);
                next[m as usize] = acc.iter().map(|c| c * &factor).collect();
            }
            term = next;
            for (tot, t) in total.iter_mut().zip(&term) {
                series_add_assign(tot, t);
            }
        }
        total
    };

    let mut energy = series_zero(len);
    energy[0] = e0.clone();
    for _ in 0..len {
        let x = resolvent_column(&energy);
        let mut coupling = series_zero(len);
        for (col, e) in &mat[n as usize] {
            if *col == n {
                continue;
            }
            let scaled: Series = x[*col as usize].iter().map(|c| c * e).collect();
            series_add_assign(&mut coupling, &scaled);
        }
        let mut next = series_zero(len);
        next[0] = e0.clone();
        if len > 1 {
            next[1] = p_nn.clone();
        }
        let coupling = series_shift(&series_shift(&coupling));
        series_add_assign(&mut next, &coupling);
        if next == energy {
            break;
        }
        energy = next;
    }

    // eigenvector: v_n = 1, v_Q = t x
    let x = resolvent_column(&energy);
    let mut vector = vec![BargmannVector::zero(); len];
    vector[0] = BargmannVector::basis(n);
    for &m in &others {
        let shifted = series_shift(&x[m as usize]);
        for (k, c) in shifted.into_iter().enumerate() {
            vector[k].add_term(m, c);
        }
    }

    EigenJet {
        level: n,
        order,
        energy,
        vector,
    }
}
