//! Univariate and Laurent polynomials over exact or floating coefficients.

mod laurent;
mod parse;
mod univariate;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::scalar::Real;

pub use laurent::LaurentPolynomial;
pub use parse::{parse_polynomial, PolyParseError};
pub use univariate::UnivariatePoly;

/// Coefficients that can be evaluated numerically on the torus.
pub trait Coefficient: Clone + Debug + Send + Sync {
    fn to_complex<F: Real>(&self) -> Complex<F>;
}

impl Coefficient for BigRational {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::from(F::lit(self.to_f64().unwrap_or(f64::NAN)))
    }
}

impl Coefficient for BigInt {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::from(F::lit(self.to_f64().unwrap_or(f64::NAN)))
    }
}

impl Coefficient for i64 {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::from(F::lit(*self as f64))
    }
}

impl Coefficient for f64 {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::from(F::lit(*self))
    }
}

impl Coefficient for f32 {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::from(F::lit(f64::from(*self)))
    }
}

impl<S: Real> Coefficient for Complex<S> {
    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::new(F::lit(self.re.to_f64_lossy()), F::lit(self.im.to_f64_lossy()))
    }
}
