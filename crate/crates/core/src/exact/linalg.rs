use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::poly::{MultiPoly, VarList};
use super::rational::Rational;

/// Incremental row echelon form over the rationals with sparse rows.
///
/// Each stored row is keyed by its pivot column (its smallest column index)
/// and is normalized so the pivot entry is one.
#[derive(Debug, Default, Clone)]
pub struct RowEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored rows; returns true if it was independent.
    pub fn insert(&mut self, mut row: BTreeMap<usize, Rational>) -> bool {
        row.retain(|_, c| !c.is_zero());
        loop {
            let Some((&lead, lead_c)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot_row) => {
                    let factor = lead_c.clone();
                    for (col, c) in pivot_row {
                        let entry = row.entry(*col).or_insert_with(Rational::zero);
                        *entry -= &factor * c;
                        if entry.is_zero() {
                            row.remove(col);
                        }
                    }
                }
                None => {
                    let inv = lead_c.recip();
                    for c in row.values_mut() {
                        *c *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// Dimension of the space of polynomials of total degree < `degree_bound`
/// modulo the linear span of `generators`, each truncated to that degree.
pub fn span_codimension(vars: &VarList, generators: &[MultiPoly], degree_bound: u32) -> usize {
    let monomials = vars.monomials_below(degree_bound);
    let index: HashMap<_, _> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut echelon = RowEchelon::new();
    for g in generators {
        assert!(g.vars() == vars, "generator over a different variable list");
        let row: BTreeMap<usize, Rational> = g
            .terms()
            .filter(|(m, _)| m.degree() < degree_bound)
            .map(|(m, c)| (index[m], c.clone()))
            .collect();
        echelon.insert(row);
    }
    monomials.len() - echelon.rank()
}
