//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p resmahler-core --test acceptance`. The process
//! exits with status 1 if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resmahler::lattice::{classify_family, resultant_polytope_dim, FamilyClass, Support, SupportFamily};
use resmahler::mahler::{apply_unimodular, mm_jensen, mm_jensen_rational, mm_qmc, UnimodularMatrix};
use resmahler::resultant::{dim4_reduced_poly, sylvester_resultant, trinomial_resultant_closed, TrinomialPair};
use resmahler::special::dirichlet_constants;
use resmahler::special::identities::identity_suite;
use resmahler::theorems::{kronecker_is_mm_zero, mm_trinomial_closed, trinomial_cross_check};
use resmahler::{parse_polynomial, QmcOptions, RationalLaurent, RationalPoly, UnivariatePoly};

const SAMPLES: u64 = 1 << 20;
const SHIFTS: usize = 16;
const SIGMAS: f64 = 3.0;
/// Absolute floor for the closed-form vs QMC criteria 1-4.
const QMC_FLOOR: f64 = 5e-3;
const IDENTITY_TOL: f64 = 1e-9;
const SPECIAL_VALUE_TOL: f64 = 1e-12;
const SCALING_TOL: f64 = 1e-10;
const KRONECKER_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn opts(samples: u64, seed: u64) -> QmcOptions {
    QmcOptions {
        samples,
        seed,
        shifts: SHIFTS,
        ..QmcOptions::default()
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn univariate_laurent(f: &RationalPoly) -> RationalLaurent {
    RationalLaurent::from_terms(
        vec!["t".to_string()],
        f.coeffs().iter().enumerate().map(|(i, c)| (vec![i as i64], c.clone())),
    )
}

fn qmc_vs(poly: &str, oracle: f64, seed: u64) -> Outcome {
    let p = parse_polynomial(poly).expect("valid polynomial");
    let m = mm_qmc::<f64, _>(&p, SAMPLES, seed).expect("qmc");
    let tol = (SIGMAS * m.std_error).max(QMC_FLOOR);
    let dev = (m.value - oracle).abs();
    Outcome {
        pass: dev <= tol,
        detail: format!(
            "qmc {:.10} +- {:.2e} vs {oracle:.10}, |diff| {dev:.2e} <= {tol:.2e}",
            m.value, m.std_error
        ),
    }
}

fn ac1() -> Outcome {
    let l = dirichlet_constants::<f64>().lprime_chi3_m1;
    qmc_vs("1 + x + y", l, 1)
}

fn ac2() -> Outcome {
    let z3 = dirichlet_constants::<f64>().zeta3;
    qmc_vs("1 + x + y + z", 7.0 * z3 / (2.0 * PI * PI), 2)
}

fn ac3() -> Outcome {
    let z3 = dirichlet_constants::<f64>().zeta3;
    let oracle = 9.0 * z3 / (2.0 * PI * PI);
    let text = dim4_reduced_poly().to_string();
    qmc_vs(&text, oracle, 3)
}

fn ac4() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, (p, q)) in [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4)].into_iter().enumerate() {
        let closed = mm_trinomial_closed::<f64>(p, q).expect("closed form").numeric;
        let m = trinomial_cross_check::<f64>(p, q, false, &opts(SAMPLES, 40 + i as u64)).expect("qmc");
        let tol = (SIGMAS * m.std_error).max(QMC_FLOOR);
        let dev = (m.value - closed).abs();
        pass &= dev <= tol && closed.is_finite() && closed > 0.0;
        parts.push(format!("({p},{q}) {closed:.8} vs {:.8}+-{:.1e}", m.value, m.std_error));
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    let mut nonzero = 0;
    let pairs: Vec<(u32, u32)> = (1..=7u32)
        .flat_map(|q| (1..q).map(move |p| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
        .collect();
    for _ in 0..200 {
        let (p, q) = pairs[rng.random_range(0..pairs.len())];
        let mut c = || rng.random_range(-20..=20i64);
        let tp = TrinomialPair::from_ints(p, q, c(), c(), c(), c()).expect("valid exponents");
        let (f, g) = tp.polys();
        let closed = trinomial_resultant_closed(&tp);
        let syl = sylvester_resultant(&f, &g).expect("nonconstant");
        if closed != syl {
            mismatches += 1;
        }
        if syl != rat(0) {
            nonzero += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!("200 instances, {mismatches} mismatches, {nonzero} nonzero resultants"),
    }
}

fn ac6() -> Outcome {
    let reports = identity_suite(10_000, 6);
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for r in &reports {
        let special = r.name.starts_with("P3(1/2)") || r.name.starts_with("Li3(-1)");
        let tol = if special { SPECIAL_VALUE_TOL } else { IDENTITY_TOL };
        if !r.passes(tol) {
            pass = false;
            failed.push(format!("{} ({:.2e})", r.name, r.max_abs_deviation));
        }
        worst = worst.max(r.max_abs_deviation);
    }
    Outcome {
        pass,
        detail: if failed.is_empty() {
            format!("{} identities, worst deviation {worst:.2e}", reports.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn random_int_poly(rng: &mut ChaCha8Rng, max_degree: usize, bound: i64) -> RationalPoly {
    let deg = rng.random_range(1..=max_degree);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.random_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = rng.random_range(-bound..=bound);
    }
    UnivariatePoly::from_ints(&c)
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut worst_z = 0.0f64;
    for i in 0..30 {
        let f = random_int_poly(&mut rng, 8, 9);
        let jensen = mm_jensen_rational::<f64>(&f).expect("nonzero").value;
        let m = mm_qmc::<f64, _>(&univariate_laurent(&f), 1 << 18, 700 + i).expect("qmc");
        let z = (m.value - jensen).abs() / m.std_error;
        worst_z = worst_z.max(z);
        if z > SIGMAS {
            failures.push(format!("#{i} z={z:.2}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("30 polynomials, worst |diff|/std_error {worst_z:.2} {}", failures.join(" ")),
    }
}

fn grid_support(k: usize, n: usize, index: usize) -> Support {
    let axis = index % n;
    Support::new((0..k).map(|j| {
        let mut v = vec![0i64; n];
        v[axis] = j as i64;
        v
    }))
    .expect("distinct points")
}

fn ac8() -> Outcome {
    let mut checked = 0;
    let mut errors = Vec::new();
    for n in 1..=4usize {
        let total = 4usize.pow(n as u32 + 1);
        for code in 0..total {
            let ks: Vec<usize> = (0..=n).map(|i| 2 + (code / 4usize.pow(i as u32)) % 4).collect();
            let family = SupportFamily::new(ks.iter().enumerate().map(|(i, &k)| grid_support(k, n, i)).collect())
                .expect("valid family");
            let dim = resultant_polytope_dim(&family).expect("essential candidate");
            let class = classify_family(&family).expect("classifiable");
            let expected = ks.iter().sum::<usize>() as i64 - 2 * n as i64 - 1;
            if dim != expected {
                errors.push(format!("{ks:?}: dim {dim} != {expected}"));
            }
            if let Some(d) = class.implied_dim() {
                if d != dim {
                    errors.push(format!("{ks:?}: {class:?} implies {d}, dim {dim}"));
                }
            }
            let ok = match dim {
                1 => class == FamilyClass::DimOne,
                2 => class == FamilyClass::DimTwo,
                3 => matches!(class, FamilyClass::DimThreeA | FamilyClass::DimThreeB),
                _ => !matches!(
                    class,
                    FamilyClass::DimOne | FamilyClass::DimTwo | FamilyClass::DimThreeA | FamilyClass::DimThreeB
                ),
            };
            if !ok {
                errors.push(format!("{ks:?}: dim {dim} but {class:?}"));
            }
            checked += 1;
        }
    }
    let det: SupportFamily = "0,0;1,0;0,1\n0,0;1,0;0,1\n0,0;1,0;0,1".parse().expect("family");
    let det_ok = classify_family(&det) == Ok(FamilyClass::DimFourDet) && resultant_polytope_dim(&det) == Ok(4);
    let small: Result<SupportFamily, _> = "0\n1;2".parse();
    let small_rejected = small.map(|f| resultant_polytope_dim(&f).is_err()).unwrap_or(true);
    Outcome {
        pass: errors.is_empty() && det_ok && small_rejected,
        detail: format!(
            "{checked} families, {} errors, determinantal {det_ok}, k_i=1 rejected {small_rejected} {}",
            errors.len(),
            errors.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    }
}

/// `Phi_1, ..., Phi_max` by exact division of `t^k - 1`.
fn cyclotomics(max: usize) -> Vec<RationalPoly> {
    let mut out: Vec<RationalPoly> = Vec::new();
    for k in 1..=max {
        let mut c = vec![0i64; k + 1];
        c[0] = -1;
        c[k] = 1;
        let mut f = UnivariatePoly::from_ints(&c);
        for d in (1..k).filter(|d| k % d == 0) {
            f = f.div_rem(&out[d - 1]).expect("nonzero").0;
        }
        out.push(f);
    }
    out
}

fn is_reciprocal_up_to_sign(f: &RationalPoly) -> bool {
    let c = f.coeffs();
    let rev: Vec<BigRational> = c.iter().rev().cloned().collect();
    let neg: Vec<BigRational> = rev.iter().map(|x| -x).collect();
    c == rev.as_slice() || c == neg.as_slice()
}

fn ac9() -> Outcome {
    let mut errors = Vec::new();
    for k in 1..=12usize {
        let mut c = vec![0i64; k + 1];
        c[0] = -1;
        c[k] = 1;
        if kronecker_is_mm_zero(&UnivariatePoly::from_ints(&c), KRONECKER_TOL) != Ok(true) {
            errors.push(format!("t^{k}-1"));
        }
    }
    for (i, phi) in cyclotomics(12).iter().enumerate() {
        if !phi.is_integral() || kronecker_is_mm_zero(phi, KRONECKER_TOL) != Ok(true) {
            errors.push(format!("Phi_{}", i + 1));
        }
    }
    if kronecker_is_mm_zero(&UnivariatePoly::from_ints(&[-1, -1, 1]), KRONECKER_TOL) != Ok(false) {
        errors.push("t^2-t-1".into());
    }
    // Integer polynomials that are not (anti)reciprocal are not products of
    // cyclotomics, so each of these must be rejected.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut rejected = 0;
    while rejected < 10 {
        let f = random_int_poly(&mut rng, 8, 5);
        if f.coeff(0) == rat(0) || is_reciprocal_up_to_sign(&f) {
            continue;
        }
        if kronecker_is_mm_zero(&f, KRONECKER_TOL) != Ok(false) {
            errors.push(format!("{f}"));
        }
        rejected += 1;
    }
    Outcome {
        pass: errors.is_empty(),
        detail: format!("x^k-1 and Phi_k for k<=12, t^2-t-1, 10 non-reciprocal; errors: {errors:?}"),
    }
}

fn random_laurent(rng: &mut ChaCha8Rng) -> RationalLaurent {
    let d = rng.random_range(1..=3usize);
    let vars: Vec<String> = ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect();
    loop {
        let terms: Vec<(Vec<i64>, BigRational)> = (0..rng.random_range(2..=6))
            .map(|_| {
                let e = (0..d).map(|_| rng.random_range(-3..=3)).collect();
                let mut c = 0;
                while c == 0 {
                    c = rng.random_range(-5..=5i64);
                }
                (e, rat(c))
            })
            .collect();
        let p = RationalLaurent::from_terms(vars.clone(), terms);
        if p.term_count() < 1 {
            continue;
        }
        let g = p.terms().fold(BigInt::from(0), |g, (_, c)| g.gcd(c.numer()));
        return p.scale(&BigRational::from_integer(g).recip());
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> UnimodularMatrix {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.random_range(1..=4) {
        let k = rng.random_range(-2..=2i64);
        let (r, s) = if rng.random_bool(0.5) { (0, 1) } else { (1, 0) };
        let src = m[s];
        for (x, y) in m[r].iter_mut().zip(src) {
            *x += k * y;
        }
        if rng.random_bool(0.3) {
            m.swap(0, 1);
        }
    }
    UnimodularMatrix::new(m.iter().map(|r| r.to_vec()).collect()).expect("product of elementary matrices")
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut errors = Vec::new();

    // Nonnegativity.
    let mut min_z = f64::INFINITY;
    for i in 0..50 {
        let p = random_laurent(&mut rng);
        let m = mm_qmc::<f64, _>(&p, 1 << 16, 1000 + i).expect("qmc");
        min_z = min_z.min(m.value / m.std_error);
        if m.value < -SIGMAS * m.std_error {
            errors.push(format!("nonnegativity {p}: {m:?}"));
        }
    }

    // Homogeneity: exact for Jensen, statistical for QMC.
    for i in 0..10 {
        let f = random_int_poly(&mut rng, 6, 9);
        let k = rng.random_range(1..=4);
        let shifted = &f * &UnivariatePoly::monomial(rat(1), k);
        let a = mm_jensen_rational::<f64>(&f).expect("jensen").value;
        let b = mm_jensen_rational::<f64>(&shifted).expect("jensen").value;
        if (a - b).abs() > 1e-12 {
            errors.push(format!("jensen homogeneity {f}"));
        }
        let p = random_laurent(&mut rng);
        let mono = RationalLaurent::monomial(p.vars().to_vec(), vec![2; p.nvars()], rat(1));
        let qa = mm_qmc::<f64, _>(&p, 1 << 16, 2000 + i).expect("qmc");
        let qb = mm_qmc::<f64, _>(&(&p * &mono), 1 << 16, 3000 + i).expect("qmc");
        if !qa.agrees_with(&qb, SIGMAS) {
            errors.push(format!("qmc homogeneity {p}: {qa:?} {qb:?}"));
        }
    }

    // Scaling, on complex coefficients.
    for _ in 0..20 {
        let deg = rng.random_range(1..=8);
        let f = UnivariatePoly::new(
            (0..=deg)
                .map(|_| Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
                .collect(),
        );
        let c = Complex64::new(rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let a = mm_jensen(&f).expect("jensen").value;
        let b = mm_jensen(&f.scale(&c)).expect("jensen").value;
        if (b - a - c.norm().ln()).abs() > SCALING_TOL {
            errors.push(format!("scaling by {c}: {a} {b}"));
        }
    }

    // Unimodular invariance for 1 + x + y.
    let p = parse_polynomial("1 + x + y").expect("polynomial");
    let base = mm_qmc::<f64, _>(&p, 1 << 18, 4000).expect("qmc");
    for i in 0..10 {
        let v = random_unimodular(&mut rng);
        let q = apply_unimodular(&p, &v).expect("dimension 2");
        let m = mm_qmc::<f64, _>(&q, 1 << 18, 4001 + i).expect("qmc");
        if !m.agrees_with(&base, SIGMAS) {
            errors.push(format!("unimodular {:?}: {m:?} vs {base:?}", v.entries()));
        }
    }

    Outcome {
        pass: errors.is_empty(),
        detail: format!(
            "50 nonnegativity (min value/std_error {min_z:.1}), 10 homogeneity, 20 scaling, 10 unimodular; {} errors {}",
            errors.len(),
            errors.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("AC1", "m(1+x+y) = L'(chi_-3,-1)", ac1),
        ("AC2", "m(1+x+y+z) = 7 zeta(3)/(2 pi^2)", ac2),
        ("AC3", "determinantal dimension-4 value 9 zeta(3)/(2 pi^2)", ac3),
        ("AC4", "trinomial-pair closed form vs QMC", ac4),
        ("AC5", "closed-form trinomial resultant == Sylvester", ac5),
        ("AC6", "D and P3 identity suite", ac6),
        ("AC7", "Jensen vs QMC engine agreement", ac7),
        ("AC8", "polytope dimension k-2n-1 and classification", ac8),
        ("AC9", "Kronecker test on cyclotomics", ac9),
        ("AC10", "Mahler-measure property suite", ac10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {title} ({secs:.1} s): {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
