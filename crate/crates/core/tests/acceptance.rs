//! End-to-end acceptance checks, one test per criterion. Each test prints a
//! single `[PASS]`/`[FAIL]` line before asserting, so
//! `cargo test --test acceptance -- --nocapture` doubles as a report.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use semiclassical::bargmann::{apply_operator, borel_hbar, inner_product, trace_series, BargmannVector};
use semiclassical::classical::{
    henon_heiles_suite, lagrange_h1_profile, milnor_profile, poisson_bracket, SymplecticPoly,
};
use semiclassical::cli::run_command;
use semiclassical::exact::{trial_factorize, HbarScalar, MultiPoly, Rational, VarList};
use semiclassical::heisenberg::{principal_symbol, scaled_commutator, QOperator};
use semiclassical::normal_form::quantum_birkhoff;
use semiclassical::perturbation::{
    gevrey_estimate, matrix_oracle, relative_substitute, rs_expand, CoefficientSequence,
};

const GEVREY_TOLERANCE: f64 = 0.15;
const JET_ORDER_LIMIT: u32 = 12;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn hb(c: i64, k: i32) -> HbarScalar {
    HbarScalar::monomial(q(c), k)
}

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn report(id: u32, ok: bool, elapsed: Duration, limit: Option<Duration>, detail: &str) {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mark = if ok && in_time { "PASS" } else { "FAIL" };
    let limit = limit.map(|l| format!(", limit {l:.0?}")).unwrap_or_default();
    println!("[{mark}] criterion {id:>2}: {detail} ({elapsed:.2?}{limit})");
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its time limit");
}

fn random_operator(rng: &mut ChaCha20Rng, max_degree: u32) -> QOperator {
    let mut f = QOperator::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let i = rng.gen_range(0..=max_degree);
        let j = rng.gen_range(0..=max_degree - i);
        let c = Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
        f.add_term(i, j, HbarScalar::monomial(c, rng.gen_range(0..=2)));
    }
    f
}

#[test]
fn criterion_01_trace_borel_identity() {
    let start = Instant::now();
    let b = borel_hbar(&trace_series(&QOperator::number(), 14));
    // Tr(a+a) = sum_n n n! h^(n+1), so the Borel coefficient of h^n is n
    let oracle: Vec<Rational> = (1..=12u32)
        .map(|n| Rational::from_integer(BigInt::from(n) * fact(n)) / Rational::from_integer(fact(n)))
        .collect();
    let got: Vec<Rational> = (1..=12).map(|k| b.series.coeff(k)).collect();
    let ok = got == oracle && oracle == (1..=12).map(q).collect::<Vec<_>>() && b.series.coeff(0).is_zero();
    report(1, ok, start.elapsed(), Some(Duration::from_secs(1)), "Borel(Tr a+a) = h/(1-h)^2 through h^12");
}

#[test]
fn criterion_02_pairing_norm() {
    let start = Instant::now();
    let ok = (0..=15u32).all(|j| {
        let z = BargmannVector::basis(j);
        inner_product(&z, &z) == HbarScalar::monomial(Rational::from_integer(fact(j)), j as i32)
    });
    report(2, ok, start.elapsed(), Some(Duration::from_secs(1)), "<z^j, z^j> = j! h^j for j <= 15");
}

#[test]
fn criterion_03_harmonic_spectrum() {
    let start = Instant::now();
    let ok = (0..=50u32).all(|n| {
        apply_operator(&QOperator::number(), &BargmannVector::basis(n))
            == BargmannVector::monomial(n, hb(n as i64, 1))
    });
    report(3, ok, start.elapsed(), None, "a+a z^n = n h z^n for n <= 50");
}

#[test]
fn criterion_04_exactly_solvable_perturbation() {
    let start = Instant::now();
    let p = &QOperator::a() + &QOperator::ad();
    let mut ok = true;
    for n in 0..=5u32 {
        let jet = rs_expand(&p, n, 6).expect("nondegenerate");
        let mut want = vec![HbarScalar::zero(); 7];
        want[0] = hb(n as i64, 1);
        want[2] = hb(-1, 0);
        ok &= jet.energy == want;
        let rel = relative_substitute(&jet);
        want[2] = hb(-1, 2);
        ok &= rel.energy == want;
        ok &= rel.energy.iter().all(HbarScalar::is_hbar_nonnegative);
        ok &= rel.vector.iter().all(BargmannVector::is_hbar_nonnegative);
    }
    report(4, ok, start.elapsed(), None, "E = n h - t^2 (n <= 5, K = 6); relative jet hbar-nonnegative");
}

/// Second-order energy from matrix elements `P z^m = sum_r M[r][m] z^r`:
/// `E_2 = sum_{m != n} M[n][m] M[m][n] / ((n - m) h)`.
fn second_order_oracle(p: &QOperator, n: u32) -> (HbarScalar, HbarScalar) {
    let column = |m: u32| apply_operator(p, &BargmannVector::basis(m));
    let e1 = column(n).coeff(n);
    let mut e2 = HbarScalar::zero();
    let reach = p.degree().unwrap_or(0);
    for m in n.saturating_sub(reach)..=n + reach {
        if m == n {
            continue;
        }
        let gap = HbarScalar::monomial(q(n as i64 - m as i64).recip(), -1);
        e2 += &(&(&column(m).coeff(n) * &column(n).coeff(m)) * &gap);
    }
    (e1, e2)
}

#[test]
fn criterion_05_quartic_oscillator() {
    let start = Instant::now();
    let quartic = (&QOperator::a() + &QOperator::ad()).pow(4);
    let jet = rs_expand(&quartic, 0, 2).expect("nondegenerate");
    let (e1, e2) = second_order_oracle(&quartic, 0);
    let mut ok = jet.energy[1] == hb(3, 2) && jet.energy[2] == hb(-42, 3);
    ok &= e1 == jet.energy[1] && e2 == jet.energy[2];

    let mut corpus: Vec<QOperator> = Vec::new();
    for d in 0..=4u32 {
        for i in 0..=d {
            corpus.push(QOperator::monomial(i, d - i, HbarScalar::one()));
        }
    }
    corpus.push(quartic.clone());
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    corpus.extend((0..8).map(|_| random_operator(&mut rng, 4)));
    let mut cases = 0;
    for p in &corpus {
        for n in 0..=3 {
            for k in 1..=4 {
                let rs = rs_expand(p, n, k).expect("nondegenerate");
                ok &= rs == matrix_oracle(p, n, k);
                cases += 1;
            }
        }
    }
    report(
        5,
        ok,
        start.elapsed(),
        Some(Duration::from_secs(30)),
        &format!("E1 = 3h^2, E2 = -42h^3; RS = matrix oracle on {cases} (P, n, K) cases"),
    );
}

#[test]
fn criterion_06_normal_form_spectrum() {
    let start = Instant::now();
    let p = (&QOperator::a() + &QOperator::ad()).pow(4);
    let nf = quantum_birkhoff(&p, 3);
    let psi1 = nf.psi.coeffs[1].coeffs().to_vec();
    let mut ok = psi1 == vec![hb(3, 2), hb(6, 1), hb(6, 0)];
    for n in 0..=3 {
        ok &= nf.psi.eval_level(n) == rs_expand(&p, n, 3).expect("nondegenerate").energy;
    }
    ok &= nf.residual.is_zero();
    report(6, ok, start.elapsed(), None, "psi_1 = 6u^2 + 6hu + 3h^2; psi(t, nh) = E_n(t) for n <= 3");
}

#[test]
fn criterion_07_symbol_compatibility() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let mut ok = true;
    for _ in 0..100 {
        let f = random_operator(&mut rng, 4);
        let g = random_operator(&mut rng, 4);
        let lhs = principal_symbol(&scaled_commutator(&f, &g)).expect("hbar-nonnegative");
        let sf = SymplecticPoly::canonical(principal_symbol(&f).expect("in Q")).unwrap();
        let sg = SymplecticPoly::canonical(principal_symbol(&g).expect("in Q")).unwrap();
        ok &= &lhs == poisson_bracket(&sf, &sg).unwrap().poly();
    }
    report(7, ok, start.elapsed(), None, "sigma((1/h)[F,G]) = {sigma F, sigma G} on 100 random pairs");
}

/// Size of the monomial basis {x^i y^j : i < a, j < b} of the Milnor algebra
/// of x^(a+1) + y^(b+1).
fn quasi_homogeneous_oracle(a: u32, b: u32) -> usize {
    (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).count()
}

#[test]
fn criterion_08_singularity_invariants() {
    let start = Instant::now();
    let v = VarList::new(&["x", "y"]);
    let f = |terms: &[(u32, u32)]| MultiPoly::from_terms(&v, terms.iter().map(|&(i, j)| (vec![i, j], q(1))));
    let mut corpus = vec![(f(&[(2, 0), (0, 2)]), 1)];
    for k in 1..=6u32 {
        corpus.push((f(&[(k + 1, 0), (0, 2)]), quasi_homogeneous_oracle(k, 1)));
    }
    corpus.push((f(&[(3, 0), (0, 3)]), quasi_homogeneous_oracle(2, 2)));
    let mut ok = true;
    let mut reached = 0;
    for (germ, want) in &corpus {
        let mu = milnor_profile(germ, 24).expect("isolated");
        let h1 = lagrange_h1_profile(&SymplecticPoly::canonical(germ.clone()).unwrap(), 24).expect("isolated");
        ok &= mu.value == *want && h1.value == *want;
        reached = reached.max(mu.jet_order_reached()).max(h1.jet_order_reached());
    }
    ok &= reached <= JET_ORDER_LIMIT;
    report(
        8,
        ok,
        start.elapsed(),
        Some(Duration::from_secs(10)),
        &format!("mu and h1 = 1, k (k <= 6), 4; stabilized by jet order {reached}"),
    );
}

#[test]
fn criterion_09_henon_heiles() {
    let start = Instant::now();
    let r = henon_heiles_suite();
    let lam = r.discriminant.vars().clone();
    let l1 = MultiPoly::var(&lam, 0);
    let l2 = MultiPoly::var(&lam, 1);
    let printed = [l2.clone(), &l2.pow(3) - &l1.pow(4).scale(&q(27))];
    let factored = trial_factorize(&r.discriminant, &printed);
    let checks = [
        ("{H1,H2} = 0", r.bracket.is_zero()),
        ("Lax residual = 0", r.lax_residual.is_zero()),
        ("disc factors over {l2, l2^3 - 27 l1^4}", factored.is_some()),
        ("reduced multiplicity 4", r.reduced_multiplicity == 4 && r.betti == 4),
        ("torus multiplicity 2", r.torus_multiplicity == 2 && r.torus_involutive),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report(
        9,
        failed.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(10)),
        &format!("disc = {}; failing parts: {failed:?}", r.discriminant),
    );
}

#[test]
fn criterion_10_gevrey_calibration() {
    let start = Instant::now();
    let factorials: Vec<Rational> = (0..25).map(|k| Rational::from_integer(fact(k))).collect();
    let powers: Vec<Rational> = (0..25u32).map(|k| Rational::from_integer(BigInt::from(2).pow(k))).collect();
    let inverse: Vec<Rational> = factorials.iter().map(|c| c.recip()).collect();
    let mut ok = true;
    let mut fits = Vec::new();
    for (seq, target) in [(factorials, 1.0), (powers, 0.0), (inverse, -1.0)] {
        let s = gevrey_estimate(&CoefficientSequence(seq)).expect("25 nonzero terms").order;
        ok &= (s - target).abs() <= GEVREY_TOLERANCE;
        fits.push(format!("{s:.3}"));
    }
    report(
        10,
        ok,
        start.elapsed(),
        Some(Duration::from_secs(1)),
        &format!("s(k!), s(2^k), s(1/k!) = {} within {GEVREY_TOLERANCE}", fits.join(", ")),
    );
}

#[test]
fn criterion_11_hbar_positivity() {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let mut ok = true;
    for _ in 0..20 {
        let p = random_operator(&mut rng, 4);
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(0..=2);
        let rel = relative_substitute(&rs_expand(&p, n, k).expect("nondegenerate"));
        ok &= rel.energy.iter().all(HbarScalar::is_hbar_nonnegative);
        ok &= rel.vector.iter().all(BargmannVector::is_hbar_nonnegative);
    }
    report(11, ok, start.elapsed(), None, "relative E and psi hbar-nonnegative on 20 random P");
}

#[test]
fn criterion_12_determinism() {
    let start = Instant::now();
    let run = |jobs: &str| {
        let args: Vec<String> = [
            "spectrum-table", "--P", "(a+ad)^4 + 1/3*h*ad^2*a", "--levels", "8", "--K", "3", "--jobs", jobs,
            "--format", "json",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let mut out = Vec::new();
        assert_eq!(run_command(&args, &mut out), 0);
        out
    };
    let one = run("1");
    let four = run("4");
    report(
        12,
        !one.is_empty() && one == four,
        start.elapsed(),
        None,
        &format!("spectrum-table output identical for --jobs 1 and 4 ({} bytes)", one.len()),
    );
}
