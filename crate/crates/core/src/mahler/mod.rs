//! Mahler measures: Jensen's formula for one variable, randomized
//! quasi-Monte Carlo on the torus for several, the unimodular change of
//! variables and the closed form for `a + b x + c y`.

mod jensen;
mod qmc;
mod unimodular;

use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;
use crate::special::bloch_wigner_d;

pub use jensen::{mm_jensen, mm_jensen_exact, mm_jensen_rational, polynomial_roots, squarefree_decomposition};
pub use qmc::{mm_qmc, mm_qmc_with, QmcOptions, Sampling, MIN_SAMPLES, MIN_SHIFTS};
pub use unimodular::{apply_unimodular, UnimodularMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MahlerError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error("need at least {min} samples, got {samples}")]
    TooFewSamples { samples: u64, min: u64 },
    #[error("need at least {min} shifts, got {shifts}")]
    TooFewShifts { shifts: usize, min: usize },
    #[error("expected dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("|det V| = {det}, expected 1")]
    NotUnimodular { det: String },
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("root finder did not converge for degree {degree}")]
    NoConvergence { degree: usize },
    #[error("non-finite coefficient")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Jensen,
    Qmc,
    Mc,
    ClosedForm,
}

/// A Mahler measure in nats.
///
/// `std_error` is zero for exact methods and the standard error over the
/// randomization shifts for sampled ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MahlerEstimate<F> {
    pub value: F,
    pub std_error: F,
    pub samples: u64,
    pub method: Method,
    /// Sample points that hit the zero set and were nudged.
    pub resampled: u64,
}

impl<F: Real> MahlerEstimate<F> {
    pub fn exact(value: F, method: Method) -> Self {
        Self {
            value,
            std_error: F::zero(),
            samples: 0,
            method,
            resampled: 0,
        }
    }

    /// Multiplies value and error by `k`.
    pub fn scaled(self, k: F) -> Self {
        Self {
            value: self.value * k,
            std_error: self.std_error * k.abs(),
            ..self
        }
    }

    /// `|self - other| <= sigmas * sqrt(se_1^2 + se_2^2)`.
    pub fn agrees_with(&self, other: &Self, sigmas: F) -> bool {
        let combined = self.std_error.hypot(other.std_error);
        (self.value - other.value).abs() <= sigmas * combined
    }

    /// `|self - x| <= max(sigmas * std_error, floor)`.
    pub fn within(&self, x: F, sigmas: F, floor: F) -> bool {
        (self.value - x).abs() <= (sigmas * self.std_error).max(floor)
    }
}

/// `m(a + b x + c y)`.
///
/// When `|a|, |b|, |c|` are the sides of a nondegenerate triangle with
/// opposite angles `alpha, beta, gamma`, the measure is
/// `(D(|a/b| e^{i gamma}) + alpha log|a| + beta log|b| + gamma log|c|) / pi`;
/// otherwise it is `log max(|a|, |b|, |c|)`.
pub fn mm_cassaigne_maillot<F: Real>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
) -> Result<MahlerEstimate<F>, MahlerError> {
    let (ra, rb, rc) = (a.norm(), b.norm(), c.norm());
    if !(ra.is_finite() && rb.is_finite() && rc.is_finite()) {
        return Err(MahlerError::NonFinite);
    }
    if ra.is_zero() || rb.is_zero() || rc.is_zero() {
        return Err(MahlerError::ZeroCoefficient);
    }
    let triangle = ra < rb + rc && rb < ra + rc && rc < ra + rb;
    if !triangle {
        let value = ra.max(rb).max(rc).ln();
        return Ok(MahlerEstimate::exact(value, Method::ClosedForm));
    }
    let two = F::lit(2.0);
    let angle = |opp: F, s: F, t: F| ((s * s + t * t - opp * opp) / (two * s * t)).max(-F::one()).min(F::one()).acos();
    let alpha = angle(ra, rb, rc);
    let beta = angle(rb, ra, rc);
    let gamma = F::PI() - alpha - beta;
    let z = Complex::from_polar(ra / rb, gamma);
    let value = (bloch_wigner_d(z) + alpha * ra.ln() + beta * rb.ln() + gamma * rc.ln()) / F::PI();
    Ok(MahlerEstimate::exact(value, Method::ClosedForm))
}
