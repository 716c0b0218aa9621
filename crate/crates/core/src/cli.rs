//! Command dispatcher behind the `semiclassical` binary.
//!
//! Exit codes: 0 success, 1 computation error, 2 usage or parse error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bargmann::{borel_hbar, trace_series};
use crate::classical::{
    henon_heiles_suite, lagrange_h1_profile, milnor_profile, multiplicity_at_origin, poisson_bracket,
    polynomial_discriminant, SymplecticPoly, STABILIZATION_CAP,
};
use crate::error::Error;
use crate::exact::{Rational, UniPoly, VarList};
use crate::heisenberg::{
    borel_symbol, dagger, ev_pairing, principal_symbol, scaled_commutator, total_symbol, QOperator,
};
use crate::normal_form::quantum_birkhoff;
use crate::parse::{parse_commutative_poly, parse_expr, parse_operator_expr, ExprAst, ParseError};
use crate::perturbation::{
    borel_sequence, gevrey_estimate, relative_substitute, rs_expand, CoefficientSequence, EigenJet,
};
use crate::report::{hbar_json, operator_json, poly_json, rational_json, vector_json, Report, Verdict};
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "semiclassical", version, about = "Exact hbar-Heisenberg algebra workbench")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal-order an operator expression in a, ad, h.
    NormalOrder {
        #[arg(long)]
        expr: String,
    },
    /// Scaled commutator (FG - GF)/h.
    Commutator {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Hermitian conjugate.
    Dagger {
        #[arg(long)]
        f: String,
    },
    /// Total and principal symbols.
    Symbol {
        #[arg(long)]
        f: String,
    },
    /// Borel transform of the total symbol.
    Borel {
        #[arg(long)]
        f: String,
    },
    /// The pairing ev(F, G).
    Ev {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Trace series of F and its Borel transform.
    Trace {
        #[arg(long)]
        f: String,
        #[arg(long = "hbar-order", default_value_t = 8)]
        hbar_order: u32,
    },
    /// Rayleigh-Schrodinger jet of a+a + t P at level n.
    Spectrum {
        #[arg(long = "P")]
        p: String,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long = "K", visible_alias = "order", default_value_t = 4)]
        k: usize,
    },
    /// Energy jets for levels 0..levels.
    SpectrumTable {
        #[arg(long = "P")]
        p: String,
        #[arg(long, default_value_t = 4)]
        levels: u32,
        #[arg(long = "K", visible_alias = "order", default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Quantum Birkhoff normal form of a+a + t P.
    NormalForm {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "K", visible_alias = "order", default_value_t = 3)]
        k: usize,
    },
    /// Gevrey order of a coefficient list, or of a trace series.
    Gevrey {
        /// Comma-separated rationals c_0, c_1, ...
        #[arg(long, conflicts_with = "trace")]
        coeffs: Option<String>,
        /// Operator whose trace series supplies the coefficients.
        #[arg(long)]
        trace: Option<String>,
        #[arg(long = "hbar-order", default_value_t = 25)]
        hbar_order: u32,
    },
    /// Poisson bracket of two polynomials on canonical pairs.
    Poisson {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    /// Milnor number of a plane germ.
    Milnor {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    /// Dimension of H^1 of the Lagrange complex of a plane germ.
    H1dim {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
    /// Discriminant in one variable with polynomial coefficients.
    Discriminant {
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, default_value = "l1,l2")]
        params: String,
    },
    /// Lowest total degree of a polynomial.
    Multiplicity {
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "l1,l2")]
        vars: String,
    },
    /// Henon-Heiles identities, discriminant and multiplicities.
    HenonHeiles,
    /// Run the twelve end-to-end checks.
    Verify {
        /// Run a single check by number.
        #[arg(long)]
        only: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Usage(p.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run_command<W: Write>(args: &[String], out: &mut W) -> i32 {
    let argv = std::iter::once("semiclassical".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    let (report, failed) = match dispatch(&cli.command, &echoed_args(args)) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let rendered = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.render_text(),
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return 1;
    }
    i32::from(failed)
}

/// The command line as echoed into reports. Thread count does not affect
/// results, so `--jobs` is dropped to keep output byte-identical across it.
fn echoed_args(args: &[String]) -> Vec<String> {
    let mut kept = Vec::with_capacity(args.len());
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if arg == "--jobs" {
            iter.next();
        } else if !arg.starts_with("--jobs=") {
            kept.push(arg.clone());
        }
    }
    kept
}

fn vars_of(list: &str) -> Result<VarList, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(Failure::Usage("empty variable list".into()));
    }
    Ok(VarList::new(&names))
}

fn energy_json(e: &[crate::exact::HbarScalar]) -> Value {
    Value::Array(e.iter().map(hbar_json).collect())
}

fn fmt_energy(e: &[crate::exact::HbarScalar]) -> String {
    let parts: Vec<String> = e.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn jet_json(jet: &EigenJet) -> Value {
    json!({
        "level": jet.level,
        "order": jet.order,
        "energy": energy_json(&jet.energy),
        "vector": jet.vector.iter().map(vector_json).collect::<Vec<_>>(),
    })
}

/// Parses a comma list of rational literals such as `1, -2/3, 4`.
fn parse_coefficients(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|piece| {
            let ast = parse_expr(piece.trim())?;
            let q = match ast {
                ExprAst::Num(q) => q,
                ExprAst::Neg(inner) => match *inner {
                    ExprAst::Num(q) => -q,
                    _ => return Err(Failure::Usage(format!("not a rational literal: {piece:?}"))),
                },
                _ => return Err(Failure::Usage(format!("not a rational literal: {piece:?}"))),
            };
            Ok(q)
        })
        .collect()
}

fn dispatch(cmd: &Command, args: &[String]) -> Result<(Report, bool), Failure> {
    let mut failed = false;
    let report = match cmd {
        Command::NormalOrder { expr } => {
            let f = parse_operator_expr(expr)?;
            Report::new(args, json!({"operator": operator_json(&f)})).with_text("normal_order", &f)
        }
        Command::Commutator { f, g } => {
            let c = scaled_commutator(&parse_operator_expr(f)?, &parse_operator_expr(g)?);
            Report::new(args, json!({"commutator": operator_json(&c)})).with_text("commutator", &c)
        }
        Command::Dagger { f } => {
            let d = dagger(&parse_operator_expr(f)?);
            Report::new(args, json!({"dagger": operator_json(&d)})).with_text("dagger", &d)
        }
        Command::Symbol { f } => {
            let op = parse_operator_expr(f)?;
            let total = total_symbol(&op);
            let principal = principal_symbol(&op)?;
            Report::new(
                args,
                json!({"total": operator_json(&op), "principal": poly_json(&principal)}),
            )
            .with_text("total", &total)
            .with_text("principal", &principal)
        }
        Command::Borel { f } => {
            let b = borel_symbol(&parse_operator_expr(f)?)?;
            let as_op = QOperator::from_terms(b.transform.terms().map(|(k, c)| (k, c.clone())));
            Report::new(
                args,
                json!({"transform": operator_json(&as_op), "dropped": poly_json(&b.dropped)}),
            )
            .with_text("transform", &b.transform)
            .with_text("dropped", &b.dropped)
        }
        Command::Ev { f, g } => {
            let v = ev_pairing(&parse_operator_expr(f)?, &parse_operator_expr(g)?);
            Report::new(args, json!({"ev": hbar_json(&v)})).with_text("ev", &v)
        }
        Command::Trace { f, hbar_order } => {
            let s = trace_series(&parse_operator_expr(f)?, *hbar_order);
            let b = borel_hbar(&s);
            Report::new(
                args,
                json!({
                    "order": s.order(),
                    "trace": hbar_json(s.coeffs()),
                    "borel": hbar_json(b.series.coeffs()),
                    "borel_order": b.series.order(),
                    "borel_dropped": rational_json(&b.dropped),
                }),
            )
            .with_text("trace", format!("{} + O(h^{})", s.coeffs(), s.order()))
            .with_text("borel", format!("{} + O(h^{})", b.series.coeffs(), b.series.order()))
        }
        Command::Spectrum { p, n, k } => {
            let op = parse_operator_expr(p)?;
            let jet = rs_expand(&op, *n, *k)?;
            let rel = relative_substitute(&jet);
            let defect_zero = jet
                .defect(&[QOperator::number(), op])
                .iter()
                .all(crate::bargmann::BargmannVector::is_zero);
            let mut r = Report::new(
                args,
                json!({
                    "jet": jet_json(&jet),
                    "relative": jet_json(&rel),
                    "relative_hbar_nonnegative": rel.is_hbar_nonnegative(),
                }),
            )
            .with_text("energy", fmt_energy(&jet.energy))
            .with_text("relative_energy", fmt_energy(&rel.energy));
            r.checks.push(Verdict::new("eigen_equation", defect_zero, "(H - E) psi = 0 order by order"));
            r.checks.push(Verdict::new(
                "relative_hbar_nonnegative",
                rel.is_hbar_nonnegative(),
                "t -> h t clears negative hbar powers",
            ));
            r
        }
        Command::SpectrumTable { p, levels, k, jobs } => {
            let op = parse_operator_expr(p)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads((*jobs).max(1))
                .build()
                .map_err(|e| Failure::Compute(e.to_string()))?;
            let jets: Vec<_> = pool.install(|| {
                (0..*levels)
                    .into_par_iter()
                    .map(|n| rs_expand(&op, n, *k))
                    .collect::<Vec<_>>()
            });
            let jets = jets.into_iter().collect::<Result<Vec<_>, _>>()?;
            let mut r = Report::new(
                args,
                json!({"levels": jets.iter().map(|j| json!({"level": j.level, "energy": energy_json(&j.energy)})).collect::<Vec<_>>()}),
            );
            for j in &jets {
                r = r.with_text(&format!("E[{:03}]", j.level), fmt_energy(&j.energy));
            }
            r
        }
        Command::NormalForm { p, k } => {
            let nf = quantum_birkhoff(&parse_operator_expr(p)?, *k);
            let psi: Vec<Value> = nf
                .psi
                .coeffs
                .iter()
                .map(|u| Value::Array(u.coeffs().iter().map(hbar_json).collect()))
                .collect();
            let mut r = Report::new(
                args,
                json!({
                    "psi": psi,
                    "generators": nf.generators.iter().map(operator_json).collect::<Vec<_>>(),
                    "residual_zero": nf.residual.is_zero(),
                }),
            )
            .with_text("psi", &nf.psi);
            for (i, g) in nf.generators.iter().enumerate() {
                r = r.with_text(&format!("G{}", i + 1), g);
            }
            r.checks.push(Verdict::new(
                "residual",
                nf.residual.is_zero(),
                "U H U^-1 - psi(t, a+a) = 0 mod t^(K+1)",
            ));
            r.checks.push(Verdict::new(
                "psi_hbar_nonnegative",
                nf.psi.is_hbar_nonnegative(),
                "psi has no negative hbar powers",
            ));
            r
        }
        Command::Gevrey {
            coeffs,
            trace,
            hbar_order,
        } => {
            let seq: Vec<Rational> = match (coeffs, trace) {
                (Some(c), _) => parse_coefficients(c)?,
                (None, Some(f)) => (&trace_series(&parse_operator_expr(f)?, *hbar_order)).into(),
                (None, None) => return Err(Failure::Usage("gevrey needs --coeffs or --trace".into())),
            };
            let seq = CoefficientSequence(seq);
            let fit = gevrey_estimate(&seq)?;
            let borel = borel_sequence(&seq)?;
            let borel_fit = gevrey_estimate(&borel.transform).ok();
            Report::new(
                args,
                json!({
                    "gevrey_order": fit.order,
                    "gevrey_residual": fit.residual,
                    "gevrey_points": fit.points,
                    "gevrey_borel_order": borel_fit.map(|f| f.order),
                    "borel": borel.transform.0.iter().map(rational_json).collect::<Vec<_>>(),
                    "borel_dropped": rational_json(&borel.dropped),
                }),
            )
            .with_text("gevrey_order", format!("{:.4}", fit.order))
            .with_text("gevrey_residual", format!("{:.3e}", fit.residual))
        }
        Command::Poisson { f, g, vars } => {
            let v = vars_of(vars)?;
            let sf = SymplecticPoly::canonical(parse_commutative_poly(f, &v)?)?;
            let sg = SymplecticPoly::canonical(parse_commutative_poly(g, &v)?)?;
            let b = poisson_bracket(&sf, &sg)?;
            Report::new(args, json!({"bracket": poly_json(b.poly())})).with_text("bracket", b.poly())
        }
        Command::Milnor { f, vars } => {
            let v = vars_of(vars)?;
            let prof = milnor_profile(&parse_commutative_poly(f, &v)?, STABILIZATION_CAP)?;
            Report::new(args, json!({"milnor": prof.value, "profile": prof.profile, "stable_from": prof.stable_from}))
                .with_text("milnor", prof.value)
        }
        Command::H1dim { f, vars } => {
            let v = vars_of(vars)?;
            let sf = SymplecticPoly::canonical(parse_commutative_poly(f, &v)?)?;
            let prof = lagrange_h1_profile(&sf, STABILIZATION_CAP)?;
            Report::new(args, json!({"h1": prof.value, "profile": prof.profile, "stable_from": prof.stable_from}))
                .with_text("h1", prof.value)
        }
        Command::Discriminant { p, var, params } => {
            let mut names = vec![var.clone()];
            names.extend(vars_of(params)?.names().iter().cloned());
            if names[1..].contains(var) {
                return Err(Failure::Usage(format!("{var} is also listed as a parameter")));
            }
            let v = VarList::new(&names);
            let up = UniPoly::from_multi(&parse_commutative_poly(p, &v)?, var)?;
            let d = polynomial_discriminant(&up)?;
            Report::new(args, json!({"discriminant": poly_json(&d)})).with_text("discriminant", &d)
        }
        Command::Multiplicity { p, vars } => {
            let v = vars_of(vars)?;
            let m = multiplicity_at_origin(&parse_commutative_poly(p, &v)?)?;
            Report::new(args, json!({"multiplicity": m})).with_text("multiplicity", m)
        }
        Command::HenonHeiles => {
            let hh = henon_heiles_suite();
            let fact = |f: &Option<crate::exact::TrialFactorization>| {
                f.as_ref()
                    .map(|f| json!({"unit": rational_json(&f.unit), "exponents": f.exponents}))
                    .unwrap_or(Value::Null)
            };
            let mut r = Report::new(
                args,
                json!({
                    "bracket": poly_json(&hh.bracket),
                    "lax_residual": poly_json(&hh.lax_residual),
                    "lax_residual_is_zero": hh.lax_residual.is_zero(),
                    "discriminant": poly_json(&hh.discriminant),
                    "resultant": poly_json(&hh.resultant),
                    "factorization_l2_l2^3-27l1^4": fact(&hh.printed_factorization),
                    "factorization_l2_l2^3+27l1^4": fact(&hh.corrected_factorization),
                    "reduced_discriminant": poly_json(&hh.reduced_discriminant),
                    "reduced_multiplicity": hh.reduced_multiplicity,
                    "betti": hh.betti,
                    "torus_multiplicity": hh.torus_multiplicity,
                    "torus_betti": hh.torus_betti,
                }),
            )
            .with_text("discriminant", &hh.discriminant)
            .with_text("lax_residual", &hh.lax_residual)
            .with_text("betti", hh.betti)
            .with_text("torus_betti", hh.torus_betti);
            r.checks = hh.checks;
            r
        }
        Command::Verify { only } => {
            let outcomes = match only {
                Some(id) if (1..=12).contains(id) => vec![verify::run_criterion(*id)],
                Some(id) => return Err(Failure::Usage(format!("no check numbered {id}"))),
                None => verify::run_all(),
            };
            let mut r = Report::new(
                args,
                json!({"criteria": outcomes.iter().map(|o| json!({
                    "id": o.id,
                    "title": o.title,
                    "passed": o.passed && o.within_time(),
                    "elapsed_ms": o.elapsed.as_millis() as u64,
                })).collect::<Vec<_>>()}),
            );
            for o in &outcomes {
                r.checks.push(Verdict::new(
                    format!("{:02} {}", o.id, o.title),
                    o.passed && o.within_time(),
                    o.detail.clone(),
                ));
            }
            failed = !r.all_passed();
            r
        }
    };
    Ok((report, failed))
}
