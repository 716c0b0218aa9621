//! Semi-classical side: Poisson brackets on canonical pairs, Milnor numbers
//! and Lagrange-complex H^1 dimensions of plane germs via jet truncation,
//! discriminants, multiplicities, and the Henon-Heiles checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{int, rat};
use crate::exact::{
    discriminant, resultant, span_codimension, trial_factorize, MultiPoly, TrialFactorization, UniPoly,
    VarList,
};
use crate::report::Verdict;

/// Jet order at which the stabilization search gives up.
pub const STABILIZATION_CAP: u32 = 24;

/// Polynomial on a symplectic space with recorded canonical pairs.
///
/// In each pair `(x_i, y_i)` the first slot plays the role of `a+` and the
/// second that of `a`, so `{y_i, x_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticPoly {
    poly: MultiPoly,
    pairs: Vec<(usize, usize)>,
}

impl SymplecticPoly {
    /// Variables taken in consecutive pairs `(v0, v1), (v2, v3), ...`.
    pub fn canonical(poly: MultiPoly) -> Result<Self> {
        let n = poly.vars().len();
        if !n.is_multiple_of(2) {
            return Err(Error::VariableMismatch(format!("odd number of variables ({n})")));
        }
        let pairs = (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        Ok(Self { poly, pairs })
    }

    pub fn with_pairs(poly: MultiPoly, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = poly.vars().len();
        let mut seen = vec![false; n];
        for &(x, y) in &pairs {
            for v in [x, y] {
                if v >= n || seen[v] {
                    return Err(Error::VariableMismatch(format!("bad pairing at index {v}")));
                }
                seen[v] = true;
            }
        }
        Ok(Self { poly, pairs })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Same pairing, different polynomial.
    pub fn with_poly(&self, poly: MultiPoly) -> Self {
        assert!(poly.vars() == self.poly.vars(), "polynomial over a different variable list");
        Self {
            poly,
            pairs: self.pairs.clone(),
        }
    }
}

/// `sum_i  d_{y_i} f d_{x_i} g - d_{x_i} f d_{y_i} g`.
pub fn poisson_bracket(f: &SymplecticPoly, g: &SymplecticPoly) -> Result<SymplecticPoly> {
    if f.poly.vars() != g.poly.vars() || f.pairs != g.pairs {
        return Err(Error::VariableMismatch("operands use different canonical pairs".into()));
    }
    let mut out = MultiPoly::zero(f.poly.vars());
    for &(x, y) in &f.pairs {
        out = out + &f.poly.derivative(y) * &g.poly.derivative(x);
        out = out - &f.poly.derivative(x) * &g.poly.derivative(y);
    }
    Ok(f.with_poly(out))
}

/// Components `H_1 .. H_n` of a polynomial map on a symplectic space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPair {
    pub components: Vec<SymplecticPoly>,
}

impl MomentPair {
    pub fn new(components: Vec<SymplecticPoly>) -> Self {
        Self { components }
    }

    /// All pairwise brackets, `(i, j, {H_i, H_j})` for `i < j`.
    pub fn brackets(&self) -> Result<Vec<(usize, usize, MultiPoly)>> {
        let mut out = Vec::new();
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                let b = poisson_bracket(&self.components[i], &self.components[j])?;
                out.push((i, j, b.poly));
            }
        }
        Ok(out)
    }

    pub fn is_involutive(&self) -> Result<bool> {
        Ok(self.brackets()?.iter().all(|(_, _, b)| b.is_zero()))
    }
}

/// Codimensions `D_1, D_2, ...` and where they stopped changing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizedDimension {
    pub value: usize,
    /// `profile[N-1] = D_N`.
    pub profile: Vec<usize>,
    /// Smallest N with `D_N = D_(N+1) = D_(N+2)`; the search reached `N + 2`.
    pub stable_from: u32,
}

impl StabilizedDimension {
    /// Largest jet order that had to be computed.
    pub fn jet_order_reached(&self) -> u32 {
        self.profile.len() as u32
    }
}

fn stabilize(cap: u32, mut d: impl FnMut(u32) -> usize) -> Result<StabilizedDimension> {
    let mut profile = Vec::new();
    for n in 1..=cap {
        profile.push(d(n));
        let len = profile.len();
        if len >= 3 && profile[len - 1] == profile[len - 2] && profile[len - 2] == profile[len - 3] {
            return Ok(StabilizedDimension {
                value: profile[len - 1],
                stable_from: n - 2,
                profile,
            });
        }
    }
    Err(Error::NonIsolatedSingularity(cap as usize))
}

/// `D_N = dim O / ((d f) + m^N)`.
pub fn milnor_codimension(f: &MultiPoly, n: u32) -> usize {
    let vars = f.vars();
    let partials: Vec<MultiPoly> = (0..vars.len()).map(|i| f.derivative(i)).collect();
    let mut gens = Vec::new();
    for m in vars.monomials_below(n) {
        for p in &partials {
            gens.push(p.mul_monomial(&m));
        }
    }
    span_codimension(vars, &gens, n)
}

pub fn milnor_profile(f: &MultiPoly, cap: u32) -> Result<StabilizedDimension> {
    stabilize(cap, |n| milnor_codimension(f, n))
}

pub fn milnor_number(f: &MultiPoly) -> Result<usize> {
    Ok(milnor_profile(f, STABILIZATION_CAP)?.value)
}

/// Codimension of `f O + {O, f}` in jets of order below N, for `f` in one
/// canonical pair.
pub fn lagrange_h1_codimension(f: &SymplecticPoly, n: u32) -> usize {
    let vars = f.poly.vars();
    let mut gens: Vec<MultiPoly> = vars.monomials_below(n).iter().map(|m| f.poly.mul_monomial(m)).collect();
    for m in vars.monomials_below(n + 1) {
        let h = f.with_poly(MultiPoly::term(vars, m, int(1)));
        gens.push(poisson_bracket(&h, f).expect("shared pairing").poly);
    }
    span_codimension(vars, &gens, n)
}

pub fn lagrange_h1_profile(f: &SymplecticPoly, cap: u32) -> Result<StabilizedDimension> {
    if f.pairs.len() != 1 || f.poly.vars().len() != 2 {
        return Err(Error::VariableMismatch("H^1 is implemented for one canonical pair".into()));
    }
    stabilize(cap, |n| lagrange_h1_codimension(f, n))
}

pub fn lagrange_h1_dim(f: &SymplecticPoly) -> Result<usize> {
    Ok(lagrange_h1_profile(f, STABILIZATION_CAP)?.value)
}

/// Lowest total degree of a term.
pub fn multiplicity_at_origin(p: &MultiPoly) -> Result<u32> {
    p.min_degree().ok_or(Error::ZeroPolynomial("multiplicity"))
}

/// Normalized discriminant `(-1)^(m(m-1)/2) Res(p, p') / lc(p)`.
pub fn polynomial_discriminant(p: &UniPoly) -> Result<MultiPoly> {
    discriminant(p)
}

/// Everything the Henon-Heiles check computes, plus its verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenonHeilesReport {
    pub h1: MultiPoly,
    pub h2: MultiPoly,
    pub bracket: MultiPoly,
    pub lax_determinant: MultiPoly,
    pub lax_residual: MultiPoly,
    /// Spectral polynomial with `H_1, H_2` replaced by `l1, l2`.
    pub spectral_curve: UniPoly,
    pub resultant: MultiPoly,
    pub discriminant: MultiPoly,
    /// Against `{l2, l2^3 - 27 l1^4}`.
    pub printed_factorization: Option<TrialFactorization>,
    /// Against `{l2, l2^3 + 27 l1^4}`.
    pub corrected_factorization: Option<TrialFactorization>,
    pub reduced_discriminant: MultiPoly,
    pub reduced_multiplicity: u32,
    pub betti: u32,
    pub torus_involutive: bool,
    pub torus_discriminant: MultiPoly,
    pub torus_multiplicity: u32,
    pub torus_betti: u32,
    pub checks: Vec<Verdict>,
}

pub fn henon_heiles_vars() -> VarList {
    VarList::new(&["q1", "p1", "q2", "p2"])
}

/// `H_1 = (p1^2 + p2^2)/2 - 2 q2^3 - q1^2 q2`,
/// `H_2 = q1^4 + 4 q1^2 q2^2 + 4 p1 (p1 q2 - p2 q1)`.
pub fn henon_heiles_pair() -> (MultiPoly, MultiPoly) {
    let v = henon_heiles_vars();
    let h1 = MultiPoly::from_terms(
        &v,
        [
            (vec![0, 2, 0, 0], rat(1, 2)),
            (vec![0, 0, 0, 2], rat(1, 2)),
            (vec![0, 0, 3, 0], int(-2)),
            (vec![2, 0, 1, 0], int(-1)),
        ],
    );
    let h2 = MultiPoly::from_terms(
        &v,
        [
            (vec![4, 0, 0, 0], int(1)),
            (vec![2, 0, 2, 0], int(4)),
            (vec![0, 2, 1, 0], int(4)),
            (vec![1, 1, 0, 1], int(-4)),
        ],
    );
    (h1, h2)
}

/// `det L` for the 2x2 Lax matrix in the spectral variable `x`.
pub fn henon_heiles_lax_determinant() -> MultiPoly {
    let v = VarList::new(&["x", "q1", "p1", "q2", "p2"]);
    let t = |e: [u32; 5], c| MultiPoly::from_terms(&v, [(e.to_vec(), c)]);
    let l11 = t([1, 0, 0, 0, 1], int(-1)) + t([0, 1, 1, 0, 0], int(1));
    let l12 = t([2, 0, 0, 0, 0], int(1)) + t([1, 0, 0, 1, 0], int(2)) + t([0, 2, 0, 0, 0], int(-1));
    let l21 = t([3, 0, 0, 0, 0], rat(-1, 2))
        + t([2, 0, 0, 1, 0], int(1))
        + t([1, 0, 0, 2, 0], int(-2))
        + t([1, 2, 0, 0, 0], rat(-1, 2))
        + t([0, 0, 2, 0, 0], int(1));
    let l22 = -l11.clone();
    &l11 * &l22 - &l12 * &l21
}

/// `x^5/2 - 2 c1 x^2 - c2 x` with `c1, c2` over the given variables.
fn spectral_polynomial(c1: &MultiPoly, c2: &MultiPoly, x: &MultiPoly) -> MultiPoly {
    let half = rat(1, 2);
    x.pow(5).scale(&half) - (c1 * &x.pow(2)).scale(&int(2)) - (c2 * x).scale(&half)
}

pub fn henon_heiles_suite() -> HenonHeilesReport {
    let mut checks = Vec::new();
    let (h1, h2) = henon_heiles_pair();
    let pair = MomentPair::new(vec![
        SymplecticPoly::canonical(h1.clone()).expect("even"),
        SymplecticPoly::canonical(h2.clone()).expect("even"),
    ]);
    let bracket = pair.brackets().expect("shared pairing").remove(0).2;
    checks.push(Verdict::new(
        "poisson_commuting",
        bracket.is_zero(),
        format!("{{H1, H2}} = {bracket}"),
    ));

    let lax = henon_heiles_lax_determinant();
    let lv = lax.vars().clone();
    let x = MultiPoly::var(&lv, 0);
    let expected = spectral_polynomial(&h1.embed(&lv).expect("subset"), &h2.embed(&lv).expect("subset"), &x);
    let lax_residual = &lax - &expected;
    checks.push(Verdict::new(
        "lax_determinant",
        lax_residual.is_zero(),
        format!("det L - (x^5/2 - 2 H1 x^2 - H2 x/2) = {lax_residual}"),
    ));

    let cv = VarList::new(&["x", "l1", "l2"]);
    let curve = spectral_polynomial(&MultiPoly::var(&cv, 1), &MultiPoly::var(&cv, 2), &MultiPoly::var(&cv, 0));
    let spectral_curve = UniPoly::from_multi(&curve, "x").expect("x is a variable");
    let res = resultant(&spectral_curve, &spectral_curve.derivative()).expect("nonzero");
    let disc = polynomial_discriminant(&spectral_curve).expect("degree 5");

    let lam = spectral_curve.params().clone();
    let l1 = MultiPoly::var(&lam, 0);
    let l2 = MultiPoly::var(&lam, 1);
    let quartic = l1.pow(4).scale(&int(27));
    let printed = [l2.clone(), &l2.pow(3) - &quartic];
    let corrected = [l2.clone(), &l2.pow(3) + &quartic];
    let printed_factorization = trial_factorize(&disc, &printed);
    let corrected_factorization = trial_factorize(&disc, &corrected);
    checks.push(Verdict::new(
        "discriminant_factors_l2_times_l2^3-27l1^4",
        printed_factorization.is_some(),
        match &printed_factorization {
            Some(f) => format!("disc = {} * l2^{} * (l2^3 - 27*l1^4)^{}", f.unit, f.exponents[0], f.exponents[1]),
            None => format!("disc = {disc} is not a product of l2 and l2^3 - 27*l1^4"),
        },
    ));
    checks.push(Verdict::new(
        "discriminant_factors_l2_times_l2^3+27l1^4",
        corrected_factorization.is_some(),
        match &corrected_factorization {
            Some(f) => format!("disc = {} * l2^{} * (l2^3 + 27*l1^4)^{}", f.unit, f.exponents[0], f.exponents[1]),
            None => format!("disc = {disc} is not a product of l2 and l2^3 + 27*l1^4"),
        },
    ));

    // reduced curve: product of the certified factors, each once
    let certified = if printed_factorization.is_some() { &printed } else { &corrected };
    let reduced_discriminant = &certified[0] * &certified[1];
    let reduced_multiplicity = multiplicity_at_origin(&reduced_discriminant).expect("nonzero");
    let betti = reduced_multiplicity;
    checks.push(Verdict::new(
        "reduced_discriminant_multiplicity",
        reduced_multiplicity == 4,
        format!(
            "mult_0({reduced_discriminant}) = {reduced_multiplicity}, raw discriminant multiplicity {}; b1 = {betti}",
            multiplicity_at_origin(&disc).expect("nonzero")
        ),
    ));

    let tv = henon_heiles_vars();
    let torus = MomentPair::new(vec![
        SymplecticPoly::canonical(MultiPoly::from_terms(&tv, [(vec![2, 0, 0, 0], int(1)), (vec![0, 2, 0, 0], int(1))]))
            .expect("even"),
        SymplecticPoly::canonical(MultiPoly::from_terms(&tv, [(vec![0, 0, 2, 0], int(1)), (vec![0, 0, 0, 2], int(1))]))
            .expect("even"),
    ]);
    let torus_involutive = torus.is_involutive().expect("shared pairing");
    let torus_discriminant = &l1 * &l2;
    let torus_multiplicity = multiplicity_at_origin(&torus_discriminant).expect("nonzero");
    checks.push(Verdict::new(
        "torus_example",
        torus_involutive && torus_multiplicity == 2,
        format!("{{F1, F2}} = 0: {torus_involutive}; mult_0(l1*l2) = {torus_multiplicity}; b1 = {torus_multiplicity}"),
    ));

    HenonHeilesReport {
        h1,
        h2,
        bracket,
        lax_determinant: lax,
        lax_residual,
        spectral_curve,
        resultant: res,
        discriminant: disc,
        printed_factorization,
        corrected_factorization,
        reduced_discriminant,
        reduced_multiplicity,
        betti,
        torus_involutive,
        torus_discriminant,
        torus_multiplicity,
        torus_betti: torus_multiplicity,
        checks,
    }
}
