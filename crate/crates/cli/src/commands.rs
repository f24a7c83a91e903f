use std::path::Path;

use clap::{Args, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use resmahler::lattice::{
    binomial_etas, binomial_multiplier, classify_family, eta_of_binomial_rows, resultant_polytope_dim, FamilyClass,
    LatticeError, SupportFamily,
};
use resmahler::mahler::{mm_jensen_rational, MahlerError};
use resmahler::poly::PolyParseError;
use resmahler::resultant::ResultantError;
use resmahler::special::dirichlet_constants;
use resmahler::special::identities::identity_suite;
use resmahler::theorems::{
    dim4_cross_check, mm_dim1, mm_dim2, mm_dim3, mm_dim4_det, mm_general_row, mm_trinomial_closed,
    smyth_asymptotic_check, smyth_closed_form, solve_trinomial_roots, trinomial_cross_check, TheoremError,
};
use resmahler::{mm_qmc_with, parse_polynomial, ClosedForm, Estimate, QmcOptions, RationalLaurent, Sampling};

use crate::output::{to_value, CliError, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Qmc,
    Mc,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Total number of sample points (a power of two is recommended).
    #[arg(long, default_value_t = 1 << 20)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of independent randomizations.
    #[arg(long, default_value_t = 16)]
    pub shifts: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Qmc)]
    pub method: MethodArg,
}

impl SamplingArgs {
    pub fn options(&self) -> QmcOptions {
        QmcOptions {
            samples: self.samples,
            seed: self.seed,
            shifts: self.shifts,
            sampling: match self.method {
                MethodArg::Qmc => Sampling::Qmc,
                MethodArg::Mc => Sampling::Mc,
            },
        }
    }

    fn record(&self, report: Report) -> Report {
        report
            .input("samples", self.samples)
            .input("seed", self.seed)
            .input("shifts", self.shifts)
            .input(
                "method",
                match self.method {
                    MethodArg::Qmc => "qmc",
                    MethodArg::Mc => "mc",
                },
            )
    }
}

#[derive(Debug, Subcommand)]
pub enum TheoremCmd {
    /// All supports binomial: measure zero.
    Dim1 {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// One trinomial support: eta * L'(chi_-3, -1).
    Dim2 {
        #[arg(long, allow_negative_numbers = true)]
        eta: Option<i64>,
        /// Family file or inline text; the multiplier is read from its binomial rows.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// One support with ell points: eta * m(1 + s_1 + ... + s_{ell-1}).
    General {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eta: i64,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Two trinomial supports: reduction to a univariate trinomial pair.
    Dim3 {
        #[arg(long)]
        family: String,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Two trinomials with common support {0, p, q}.
    Trinomial {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        verify: bool,
        /// Integrate the resultant in the four coefficients instead of the
        /// three-variable reduction.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Three generic affine-linear forms in two unknowns: 9 zeta(3) / (2 pi^2).
    Dim4 {
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

fn parse_err(e: PolyParseError) -> CliError {
    CliError::Input(e.to_string())
}

fn mahler_err(e: MahlerError) -> CliError {
    match e {
        MahlerError::TooFewSamples { .. } | MahlerError::TooFewShifts { .. } => CliError::Input(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

fn lattice_err(e: LatticeError) -> CliError {
    match e {
        LatticeError::Parse { .. }
        | LatticeError::WrongSupportCount { .. }
        | LatticeError::DimensionMismatch { .. }
        | LatticeError::DuplicatePoint(_)
        | LatticeError::EmptySupport
        | LatticeError::ZeroDimension => CliError::Input(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

fn theorem_err(e: TheoremError) -> CliError {
    match e {
        TheoremError::InvalidEta(_)
        | TheoremError::InvalidEll { .. }
        | TheoremError::Resultant(ResultantError::InvalidTrinomial { .. }) => CliError::Input(e.to_string()),
        TheoremError::Mahler(m) => mahler_err(m),
        TheoremError::Lattice(l) => lattice_err(l),
        _ => CliError::Domain(e.to_string()),
    }
}

/// Reads a family from a file, or from inline text with `|` between supports.
fn load_family(arg: &str) -> Result<SupportFamily, CliError> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    } else {
        arg.replace('|', "\n")
    };
    text.parse().map_err(lattice_err)
}

fn estimate_json(m: &Estimate) -> Value {
    to_value(m)
}

fn closed_json(name: &str, v: &ClosedForm) -> Value {
    json!({
        "theorem": name,
        "closed_form_terms": v.terms,
        "numeric": v.numeric,
    })
}

/// `pass = |closed - estimate| <= 3 std_error`.
fn cross_check(closed: f64, m: &Estimate, polynomial: &str) -> (Value, bool) {
    let deviation = (m.value - closed).abs();
    let pass = deviation <= 3.0 * m.std_error;
    (
        json!({
            "polynomial": polynomial,
            "value": m.value,
            "std_error": m.std_error,
            "samples": m.samples,
            "method": m.method,
            "deviation": deviation,
            "pass": pass,
        }),
        pass,
    )
}

fn with_check(mut report: Report, check: Option<(Value, bool)>) -> Report {
    if let Some((value, pass)) = check {
        report.cross_check = Some(value);
        report.verified = pass;
    }
    report
}

fn qmc_check(closed: f64, text: &str, scale: f64, sampling: &SamplingArgs) -> Result<(Value, bool), CliError> {
    let p = parse_polynomial(text).map_err(parse_err)?;
    let m = mm_qmc_with::<f64, _>(&p, &sampling.options()).map_err(mahler_err)?.scaled(scale);
    Ok(cross_check(closed, &m, text))
}

pub fn mm(expr: &str, sampling: &SamplingArgs) -> Result<Report, CliError> {
    let p: RationalLaurent = parse_polynomial(expr).map_err(parse_err)?;
    if p.is_zero() {
        return Err(mahler_err(MahlerError::ZeroPolynomial));
    }
    let report = Report::new(Value::Null).input("expr", expr);
    if let Some(f) = p.to_univariate() {
        let m = mm_jensen_rational::<f64>(&f).map_err(mahler_err)?;
        return Ok(Report {
            result: estimate_json(&m),
            ..report
        });
    }
    let m = mm_qmc_with::<f64, _>(&p, &sampling.options()).map_err(mahler_err)?;
    Ok(Report {
        result: estimate_json(&m),
        ..sampling.record(report)
    })
}

pub fn theorem(cmd: &TheoremCmd) -> Result<Report, CliError> {
    match cmd {
        TheoremCmd::Dim1 {
            family,
            verify,
            sampling,
        } => {
            let mut report = Report::new(Value::Null);
            if let Some(arg) = family {
                let f = load_family(arg)?;
                let class = classify_family(&f).map_err(lattice_err)?;
                if class != FamilyClass::DimOne {
                    return Err(CliError::Domain(format!("family is {class:?}, expected DimOne")));
                }
                report = report.input("family", arg);
            }
            let v = mm_dim1::<f64>();
            let check = verify.then(|| qmc_check(v.numeric, "x - y", 1.0, sampling)).transpose()?;
            let report = if *verify { sampling.record(report) } else { report };
            Ok(with_check(
                Report {
                    result: closed_json("dim1", &v),
                    ..report
                },
                check,
            ))
        }
        TheoremCmd::Dim2 {
            eta,
            family,
            verify,
            sampling,
        } => {
            let mut report = Report::new(Value::Null);
            let eta = match (eta, family) {
                (Some(_), Some(_)) => return Err(CliError::Input("give either --eta or --family".into())),
                (Some(e), None) => *e,
                (None, Some(arg)) => {
                    let f = load_family(arg)?;
                    let class = classify_family(&f).map_err(lattice_err)?;
                    if class != FamilyClass::DimTwo {
                        return Err(CliError::Domain(format!("family is {class:?}, expected DimTwo")));
                    }
                    let m = binomial_multiplier(&f, false).map_err(lattice_err)?;
                    report = report
                        .input("family", arg)
                        .input("eta_sum", eta_of_binomial_rows(&f, false).map_err(lattice_err)?);
                    m
                }
                (None, None) => 1,
            };
            let v = mm_dim2::<f64>(eta).map_err(theorem_err)?;
            let check = verify
                .then(|| qmc_check(v.numeric, "1 + x + y", eta as f64, sampling))
                .transpose()?;
            let report = report.input("eta", eta);
            let report = if *verify { sampling.record(report) } else { report };
            Ok(with_check(
                Report {
                    result: closed_json("dim2", &v),
                    ..report
                },
                check,
            ))
        }
        TheoremCmd::General {
            eta,
            ell,
            verify,
            sampling,
        } => {
            let opts = sampling.options();
            let m = mm_general_row::<f64>(*eta, *ell, &opts).map_err(theorem_err)?;
            let closed = smyth_closed_form::<f64>(ell - 1);
            let result = match &closed {
                Some(c) => closed_json("general", &c.scale(&BigRational::from_integer(BigInt::from(*eta)))),
                None => json!({ "theorem": "general", "estimate": estimate_json(&m) }),
            };
            let text = resmahler::resultant::general_row_resultant_mm_form(ell - 1)
                .map_err(|e| theorem_err(e.into()))?
                .to_string();
            let check = if *verify {
                let reseeded = SamplingArgs {
                    seed: sampling.seed.wrapping_add(1),
                    ..sampling.clone()
                };
                let other = mm_qmc_with::<f64, _>(&parse_polynomial(&text).map_err(parse_err)?, &reseeded.options())
                    .map_err(mahler_err)?
                    .scaled(*eta as f64);
                Some(match closed {
                    Some(_) => cross_check(m.value, &other, &text),
                    None => {
                        let combined = m.std_error.hypot(other.std_error);
                        let deviation = (m.value - other.value).abs();
                        let pass = deviation <= 3.0 * combined;
                        (
                            json!({
                                "polynomial": text,
                                "value": other.value,
                                "std_error": other.std_error,
                                "combined_std_error": combined,
                                "samples": other.samples,
                                "method": other.method,
                                "deviation": deviation,
                                "pass": pass,
                            }),
                            pass,
                        )
                    }
                })
            } else {
                None
            };
            let report = Report::new(result).input("eta", eta).input("ell", ell);
            let report = if *verify || closed.is_none() { sampling.record(report) } else { report };
            Ok(with_check(report, check))
        }
        TheoremCmd::Dim3 {
            family,
            verify,
            sampling,
        } => {
            let f = load_family(family)?;
            let (red, v) = mm_dim3::<f64>(&f).map_err(theorem_err)?;
            let (p, q) = red.trinomial_normal_form().expect("reduced by mm_dim3");
            let check = if *verify {
                let m = trinomial_cross_check::<f64>(p, q, false, &sampling.options())
                    .map_err(theorem_err)?
                    .scaled(red.multiplier as f64);
                let text = resmahler::resultant::trinomial_reduced_poly(p, q)
                    .map_err(|e| theorem_err(e.into()))?
                    .to_string();
                Some(cross_check(v.numeric, &m, &text))
            } else {
                None
            };
            let mut result = closed_json("dim3", &v);
            result["reduction"] = to_value(&red);
            result["p"] = json!(p);
            result["q"] = json!(q);
            let report = Report::new(result).input("family", family);
            let report = if *verify { sampling.record(report) } else { report };
            Ok(with_check(report, check))
        }
        TheoremCmd::Trinomial {
            p,
            q,
            verify,
            full,
            sampling,
        } => {
            let roots = solve_trinomial_roots::<f64>(*p, *q).map_err(theorem_err)?;
            let v = mm_trinomial_closed::<f64>(*p, *q).map_err(theorem_err)?;
            let check = if *verify {
                let m = trinomial_cross_check::<f64>(*p, *q, *full, &sampling.options()).map_err(theorem_err)?;
                let poly = if *full {
                    resmahler::resultant::trinomial_resultant_poly(*p, *q)
                } else {
                    resmahler::resultant::trinomial_reduced_poly(*p, *q)
                };
                let text = poly.map_err(|e| theorem_err(e.into()))?.to_string();
                Some(cross_check(v.numeric, &m, &text))
            } else {
                None
            };
            let mut result = closed_json("trinomial", &v);
            result["roots"] = to_value(roots);
            let report = Report::new(result).input("p", p).input("q", q).input("full", full);
            let report = if *verify { sampling.record(report) } else { report };
            Ok(with_check(report, check))
        }
        TheoremCmd::Dim4 { verify, sampling } => {
            let v = mm_dim4_det::<f64>();
            let check = if *verify {
                let m = dim4_cross_check::<f64>(&sampling.options()).map_err(theorem_err)?;
                let text = resmahler::resultant::dim4_reduced_poly().to_string();
                Some(cross_check(v.numeric, &m, &text))
            } else {
                None
            };
            let report = Report::new(closed_json("dim4", &v));
            let report = if *verify { sampling.record(report) } else { report };
            Ok(with_check(report, check))
        }
    }
}

pub fn identities(tolerance: f64, samples: usize, seed: u64) -> Result<Report, CliError> {
    if samples == 0 {
        return Err(CliError::Input("--samples must be positive".into()));
    }
    let reports = identity_suite(samples, seed);
    let records: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "identity": r.name,
                "samples": r.samples,
                "max_abs_deviation": r.max_abs_deviation,
                "pass": r.passes(tolerance),
            })
        })
        .collect();
    let all = reports.iter().all(|r| r.passes(tolerance));
    let mut report = Report::new(Value::Array(records))
        .input("tolerance", tolerance)
        .input("samples", samples)
        .input("seed", seed);
    report.verified = all;
    Ok(report)
}

pub fn polytope(arg: &str) -> Result<Report, CliError> {
    let f = load_family(arg)?;
    let dim = resultant_polytope_dim(&f).map_err(lattice_err)?;
    let class = classify_family(&f).map_err(lattice_err)?;
    let mut result = json!({
        "n": f.n(),
        "k": f.k(),
        "cardinalities": f.cardinalities(),
        "dim": dim,
        "class": class,
    });
    let reduced = matches!(
        class,
        FamilyClass::DimOne
            | FamilyClass::DimTwo
            | FamilyClass::DimThreeA
            | FamilyClass::DimThreeB
            | FamilyClass::GeneralRowReduced
    );
    if let (true, Ok(etas)) = (reduced, binomial_etas(&f, false)) {
        if !etas.is_empty() {
            result["etas"] = json!(etas);
            result["eta"] = json!(etas.iter().sum::<i64>());
            result["multiplier"] = json!(etas.iter().product::<i64>());
        }
    }
    Ok(Report::new(result).input("family", arg))
}

pub fn smyth(ell: usize, sampling: &SamplingArgs) -> Result<Report, CliError> {
    let d = smyth_asymptotic_check::<f64>(ell, &sampling.options()).map_err(theorem_err)?;
    Ok(sampling.record(Report::new(to_value(d)).input("ell", ell)))
}

pub fn constants() -> Report {
    let k = dirichlet_constants::<f64>();
    let pi2 = std::f64::consts::PI.powi(2);
    Report::new(json!({
        "zeta3": k.zeta3,
        "l_chi3_2": k.l_chi3_2,
        "lprime_chi3_m1": k.lprime_chi3_m1,
        "smyth_three_variables": 7.0 * k.zeta3 / (2.0 * pi2),
        "determinantal_dim4": 9.0 * k.zeta3 / (2.0 * pi2),
    }))
}
