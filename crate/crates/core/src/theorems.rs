//! Closed forms for the Mahler measures of the resultant families, each with
//! the numerical check that validates it.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{dim3_reduction, Dim3Reduction, LatticeError, SupportFamily};
use crate::mahler::{
    mm_jensen_rational, mm_qmc_with, MahlerError, MahlerEstimate, Method, QmcOptions,
};
use crate::poly::UnivariatePoly;
use crate::resultant::{
    check_trinomial_exponents, dim4_reduced_poly, general_row_resultant_mm_form, trinomial_reduced_poly,
    trinomial_resultant_poly, ResultantError,
};
use crate::scalar::Real;
use crate::special::{bloch_wigner_d, dirichlet_constants, zagier_p3};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoremError {
    #[error("eta must be at least 1, got {0}")]
    InvalidEta(i64),
    #[error("ell must be at least {min}, got {ell}")]
    InvalidEll { ell: usize, min: usize },
    #[error("coefficients must be integers")]
    NonIntegerCoefficients,
    #[error("no root of {0} in the bracketing interval")]
    RootNotFound(String),
    #[error("reduced supports {first:?} and {second:?} are not a common trinomial {{0, p, q}}")]
    NoClosedForm { first: Vec<i64>, second: Vec<i64> },
    #[error(transparent)]
    Resultant(#[from] ResultantError),
    #[error(transparent)]
    Mahler(#[from] MahlerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A constant appearing in a closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstantTag {
    Zeta3,
    /// `L'(chi_-3, -1)`.
    LprimeChi3M1,
    /// `P_3` at an algebraic point, with a label describing it.
    P3At { label: String, re: f64, im: f64 },
    /// Bloch–Wigner `D` at a point.
    DAt { label: String, re: f64, im: f64 },
    /// `log x`, `x > 0`.
    Log(f64),
    PiPow(i32),
}

impl ConstantTag {
    fn eval<F: Real>(&self) -> F {
        let k = dirichlet_constants::<F>();
        match self {
            ConstantTag::Zeta3 => k.zeta3,
            ConstantTag::LprimeChi3M1 => k.lprime_chi3_m1,
            ConstantTag::P3At { re, im, .. } => zagier_p3(Complex::new(F::lit(*re), F::lit(*im))),
            ConstantTag::DAt { re, im, .. } => bloch_wigner_d(Complex::new(F::lit(*re), F::lit(*im))),
            ConstantTag::Log(x) => F::lit(*x).ln(),
            ConstantTag::PiPow(k) => F::PI().powi(*k),
        }
    }
}

impl fmt::Display for ConstantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstantTag::Zeta3 => f.write_str("zeta(3)"),
            ConstantTag::LprimeChi3M1 => f.write_str("L'(chi_-3,-1)"),
            ConstantTag::P3At { label, .. } => write!(f, "P3({label})"),
            ConstantTag::DAt { label, .. } => write!(f, "D({label})"),
            ConstantTag::Log(x) => write!(f, "log({x})"),
            ConstantTag::PiPow(k) => write!(f, "pi^{k}"),
        }
    }
}

/// `coeff * prod factors`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: BigRational,
    pub factors: Vec<ConstantTag>,
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 3)?;
        st.serialize_field("coeff", &self.coeff.to_string())?;
        st.serialize_field("factors", &self.factors.iter().map(|t| t.to_string()).collect::<Vec<_>>())?;
        let points: Vec<(String, f64)> = self
            .factors
            .iter()
            .filter_map(|t| match t {
                ConstantTag::P3At { label, re, .. } | ConstantTag::DAt { label, re, .. } => Some((label.clone(), *re)),
                _ => None,
            })
            .collect();
        st.serialize_field("points", &points)?;
        st.end()
    }
}

impl Term {
    fn eval<F: Real>(&self) -> F {
        let c = F::lit(self.coeff.to_f64().unwrap_or(f64::NAN));
        self.factors.iter().fold(c, |acc, t| acc * t.eval::<F>())
    }
}

/// A sum of rational multiples of products of constants, with its value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormValue<F> {
    pub terms: Vec<Term>,
    pub numeric: F,
}

impl<F: Real> ClosedFormValue<F> {
    pub fn zero() -> Self {
        Self {
            terms: Vec::new(),
            numeric: F::zero(),
        }
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        let terms: Vec<Term> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        let numeric = Self::evaluate(&terms);
        Self { terms, numeric }
    }

    fn evaluate(terms: &[Term]) -> F {
        terms.iter().map(Term::eval::<F>).fold(F::zero(), |a, b| a + b)
    }

    /// Re-evaluates the term list.
    pub fn reevaluate(&self) -> F {
        Self::evaluate(&self.terms)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * k,
                    factors: t.factors.clone(),
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn as_estimate(&self) -> MahlerEstimate<F> {
        MahlerEstimate::exact(self.numeric, Method::ClosedForm)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dimension one: the resultant is `+-(X^a - X^b)`, whose measure is zero.
pub fn mm_dim1<F: Real>() -> ClosedFormValue<F> {
    ClosedFormValue::zero()
}

/// Whether an integer polynomial has Mahler measure zero, i.e. is a
/// monomial times a product of cyclotomic polynomials (Kronecker).
///
/// Decided numerically as `m(f) <= tol`. Integer polynomials that are not of
/// this form have measure bounded below by a constant depending on the
/// degree; at moderate degree that bound is many orders of magnitude above
/// the default `1e-9`.
pub fn kronecker_is_mm_zero(f: &UnivariatePoly<BigRational>, tol: f64) -> Result<bool, TheoremError> {
    if f.is_zero() {
        return Err(MahlerError::ZeroPolynomial.into());
    }
    if !f.is_integral() {
        return Err(TheoremError::NonIntegerCoefficients);
    }
    let lead = f.leading().expect("nonzero");
    if lead.abs() != BigRational::one() {
        return Ok(false);
    }
    Ok(mm_jensen_rational::<f64>(f)?.value <= tol)
}

fn check_eta(eta: i64) -> Result<(), TheoremError> {
    if eta < 1 {
        return Err(TheoremError::InvalidEta(eta));
    }
    Ok(())
}

/// Dimension two: `eta * L'(chi_-3, -1)`.
pub fn mm_dim2<F: Real>(eta: i64) -> Result<ClosedFormValue<F>, TheoremError> {
    check_eta(eta)?;
    Ok(ClosedFormValue::from_terms(vec![Term {
        coeff: int(eta),
        factors: vec![ConstantTag::LprimeChi3M1],
    }]))
}

/// `m(1 + s_1 + ... + s_j)` in closed form, when one is known (`j <= 3`).
pub fn smyth_closed_form<F: Real>(j: usize) -> Option<ClosedFormValue<F>> {
    match j {
        1 => Some(ClosedFormValue::zero()),
        2 => Some(ClosedFormValue::from_terms(vec![Term {
            coeff: int(1),
            factors: vec![ConstantTag::LprimeChi3M1],
        }])),
        3 => Some(ClosedFormValue::from_terms(vec![Term {
            coeff: BigRational::new(7.into(), 2.into()),
            factors: vec![ConstantTag::Zeta3, ConstantTag::PiPow(-2)],
        }])),
        _ => None,
    }
}

/// `eta * m(1 + s_1 + ... + s_{ell-1})`: a closed form for `ell <= 4`,
/// otherwise a QMC estimate with its error scaled by `eta`.
pub fn mm_general_row<F: Real>(eta: i64, ell: usize, opts: &QmcOptions) -> Result<MahlerEstimate<F>, TheoremError> {
    check_eta(eta)?;
    if ell < 2 {
        return Err(TheoremError::InvalidEll { ell, min: 2 });
    }
    let eta_f = F::lit(eta as f64);
    if let Some(closed) = smyth_closed_form::<F>(ell - 1) {
        return Ok(closed.scale(&int(eta)).as_estimate());
    }
    let p = general_row_resultant_mm_form(ell - 1)?;
    Ok(mm_qmc_with::<F, _>(&p, opts)?.scaled(eta_f))
}

/// The real roots `0 < phi < 1 < varphi` of `x^q + x^{q-p} - 1` and
/// `x^q - x^{q-p} - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrinomialRoots<F> {
    pub p: u32,
    pub q: u32,
    pub phi_small: F,
    pub phi_large: F,
}

fn bracketed_root<F: Real, G: Fn(F) -> (F, F)>(g: G, mut lo: F, mut hi: F, name: &str) -> Result<F, TheoremError> {
    let (glo, ghi) = (g(lo).0, g(hi).0);
    if glo.signum() == ghi.signum() {
        return Err(TheoremError::RootNotFound(name.to_string()));
    }
    let rising = ghi > glo;
    let two = F::lit(2.0);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if (g(mid).0 > F::zero()) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut x = (lo + hi) / two;
    for _ in 0..3 {
        let (v, dv) = g(x);
        if dv.is_zero() {
            break;
        }
        let next = x - v / dv;
        if g(next).0.abs() < v.abs() {
            x = next;
        } else {
            break;
        }
    }
    Ok(x)
}

/// Bisection then Newton for the two roots of the trinomial-pair theorem.
/// Both functions are strictly monotone on their intervals, so the roots
/// are unique.
pub fn solve_trinomial_roots<F: Real>(p: u32, q: u32) -> Result<TrinomialRoots<F>, TheoremError> {
    check_trinomial_exponents(p, q)?;
    let (qi, ri) = (q as i32, (q - p) as i32);
    let (qf, rf) = (F::lit(q as f64), F::lit((q - p) as f64));
    let small = |x: F| (x.powi(qi) + x.powi(ri) - F::one(), qf * x.powi(qi - 1) + rf * x.powi(ri - 1));
    let large = |x: F| (x.powi(qi) - x.powi(ri) - F::one(), qf * x.powi(qi - 1) - rf * x.powi(ri - 1));
    let phi_small = bracketed_root(small, F::zero(), F::one(), "x^q + x^(q-p) - 1")?;
    let phi_large = bracketed_root(large, F::one(), F::lit(2.0), "x^q - x^(q-p) - 1")?;
    Ok(TrinomialRoots {
        p,
        q,
        phi_small,
        phi_large,
    })
}

impl<F: Real> TrinomialRoots<F> {
    /// `(|phi^q + phi^{q-p} - 1|, |varphi^q - varphi^{q-p} - 1|)`.
    pub fn residuals(&self) -> (F, F) {
        let (q, r) = (self.q as i32, (self.q - self.p) as i32);
        let a = self.phi_small;
        let b = self.phi_large;
        (
            (a.powi(q) + a.powi(r) - F::one()).abs(),
            (b.powi(q) - b.powi(r) - F::one()).abs(),
        )
    }
}

fn p3_term(coeff: i64, label: String, point: f64) -> Term {
    Term {
        coeff: int(coeff),
        factors: vec![
            ConstantTag::PiPow(-2),
            ConstantTag::P3At {
                label,
                re: point,
                im: 0.0,
            },
        ],
    }
}

/// `m(Res)` for two trinomials with common support `{0, p, q}`:
/// `(2 / pi^2) (-p P_3(phi^q) - q P_3(-phi^p) + p P_3(varphi^q) + q P_3(varphi^p))`.
pub fn mm_trinomial_closed<F: Real>(p: u32, q: u32) -> Result<ClosedFormValue<F>, TheoremError> {
    let roots = solve_trinomial_roots::<f64>(p, q)?;
    let (s, l) = (roots.phi_small, roots.phi_large);
    let (pi, qi) = (p as i64, q as i64);
    Ok(ClosedFormValue::from_terms(vec![
        p3_term(-2 * pi, format!("phi^{q}"), s.powi(q as i32)),
        p3_term(-2 * qi, format!("-phi^{p}"), -s.powi(p as i32)),
        p3_term(2 * pi, format!("varphi^{q}"), l.powi(q as i32)),
        p3_term(2 * qi, format!("varphi^{p}"), l.powi(p as i32)),
    ]))
}

/// `P_3(phi^{q-p}) - (zeta(3) - P_3(-phi^p) - P_3(phi^q))`, the substitution
/// step behind the closed form; zero up to rounding.
pub fn trinomial_substitution_residual<F: Real>(roots: &TrinomialRoots<F>) -> F {
    let phi = roots.phi_small;
    let p3 = |x: F| zagier_p3(Complex::new(x, F::zero()));
    let z3 = dirichlet_constants::<F>().zeta3;
    p3(phi.powi((roots.q - roots.p) as i32)) - (z3 - p3(-phi.powi(roots.p as i32)) - p3(phi.powi(roots.q as i32)))
}

/// Dimension three: reduces the family and, when both reduced supports are
/// the same `{0, p, q}`, returns `multiplier * m(Res_{{0,p,q},{0,p,q}})`.
pub fn mm_dim3<F: Real>(family: &SupportFamily) -> Result<(Dim3Reduction, ClosedFormValue<F>), TheoremError> {
    let red = dim3_reduction(family)?;
    let (p, q) = red.trinomial_normal_form().ok_or_else(|| TheoremError::NoClosedForm {
        first: red.first.clone(),
        second: red.second.clone(),
    })?;
    let value = mm_trinomial_closed::<F>(p, q)?.scale(&int(red.multiplier));
    Ok((red, value))
}

/// The determinantal family in dimension four: `9 zeta(3) / (2 pi^2)`.
pub fn mm_dim4_det<F: Real>() -> ClosedFormValue<F> {
    ClosedFormValue::from_terms(vec![Term {
        coeff: BigRational::new(9.into(), 2.into()),
        factors: vec![ConstantTag::Zeta3, ConstantTag::PiPow(-2)],
    }])
}

/// QMC estimate of `Z (C - 1)^q - (E - C)^p (1 - E)^{q-p}`, or with `full`
/// of the resultant `(C - A)^q - (EA - BC)^p (B - E)^{q-p}` itself.
pub fn trinomial_cross_check<F: Real>(p: u32, q: u32, full: bool, opts: &QmcOptions) -> Result<MahlerEstimate<F>, TheoremError> {
    let poly = if full {
        trinomial_resultant_poly(p, q)?
    } else {
        trinomial_reduced_poly(p, q)?
    };
    Ok(mm_qmc_with(&poly, opts)?)
}

/// QMC estimate of `(x - 1)(y - 1) - (z - 1)(w - 1)`.
pub fn dim4_cross_check<F: Real>(opts: &QmcOptions) -> Result<MahlerEstimate<F>, TheoremError> {
    Ok(mm_qmc_with(&dim4_reduced_poly(), opts)?)
}

/// Comparison of `m(1 + s_1 + ... + s_ell)` with `log(ell + 1) / 2 - gamma / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmythDiagnostic<F> {
    pub ell: usize,
    pub estimate: MahlerEstimate<F>,
    pub asymptotic: F,
    pub deviation: F,
}

pub fn smyth_asymptotic_check<F: Real>(ell: usize, opts: &QmcOptions) -> Result<SmythDiagnostic<F>, TheoremError> {
    if ell < 4 {
        return Err(TheoremError::InvalidEll { ell, min: 4 });
    }
    let estimate = mm_qmc_with::<F, _>(&general_row_resultant_mm_form(ell)?, opts)?;
    let asymptotic = (F::lit((ell + 1) as f64).ln() - F::lit(EULER_GAMMA)) / F::lit(2.0);
    Ok(SmythDiagnostic {
        ell,
        estimate,
        asymptotic,
        deviation: estimate.value - asymptotic,
    })
}
