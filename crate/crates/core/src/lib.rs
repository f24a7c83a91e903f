//! Mahler measures of sparse resultants.
//!
//! The crate computes the resultant families whose Mahler measures have
//! closed forms (in terms of `zeta(3)`, `L'(chi_-3, -1)` and Zagier's `P_3`),
//! evaluates those closed forms, and checks them against two independent
//! numerical engines: Jensen's formula for univariate polynomials and
//! randomized quasi-Monte Carlo integration on the torus.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32`, `f64`); exact code
//! works over `BigRational`. The aliases below fix the common choices.

pub mod lattice;
pub mod mahler;
pub mod poly;
pub mod resultant;
pub mod scalar;
pub mod special;
pub mod theorems;

use num_complex::Complex64;
use num_rational::BigRational;

pub use lattice::{classify_family, resultant_polytope_dim, FamilyClass, Support, SupportFamily};
pub use mahler::{mm_jensen, mm_qmc, mm_qmc_with, MahlerError, MahlerEstimate, Method, QmcOptions, Sampling};
pub use poly::{parse_polynomial, LaurentPolynomial, UnivariatePoly};
pub use scalar::Real;

pub type RationalPoly = UnivariatePoly<BigRational>;
pub type ComplexPoly = UnivariatePoly<Complex64>;
pub type RationalLaurent = LaurentPolynomial<BigRational>;
pub type Estimate = MahlerEstimate<f64>;
pub type ClosedForm = theorems::ClosedFormValue<f64>;
pub type Roots = theorems::TrinomialRoots<f64>;
pub type Constants = special::ConstantsTable<f64>;
