//! Polylogarithms, their single-valued versions, and the constants `zeta(3)`,
//! `L(chi_-3, 2)` and `L'(chi_-3, -1)`.

mod bernoulli;
pub mod identities;
mod polylog;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Real;

pub use bernoulli::bernoulli_exact;
pub use polylog::{bloch_wigner_d, li, zagier_p3, zagier_p3_real, SINGULAR_RADIUS};

/// `zeta(3)` rounded to `f64`; used inside the polylogarithm expansions.
pub(crate) const ZETA3: f64 = 1.202_056_903_159_594_2;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecialError {
    #[error("Li_{0} is only implemented for orders 1, 2 and 3")]
    UnsupportedOrder(u32),
    #[error("Li_{q}({re}) lies on the branch cut (1, inf)")]
    BranchCut { q: u32, re: f64 },
    #[error("Li_{q} is singular at {re}")]
    Singular { q: u32, re: f64 },
    #[error("non-finite argument")]
    NonFinite,
}

/// `zeta(3)`, `L(chi_-3, 2)` and `L'(chi_-3, -1) = 3 sqrt(3) / (4 pi) L(chi_-3, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsTable<F> {
    pub zeta3: F,
    pub l_chi3_2: F,
    pub lprime_chi3_m1: F,
}

/// Evaluates the constants table.
///
/// `zeta(3) = zeta(3, 1)` and `L(chi_-3, 2) = (zeta(2, 1/3) - zeta(2, 2/3)) / 9`,
/// i.e. the character series split by residue class mod 3, each Hurwitz sum
/// closed with an Euler–Maclaurin tail.
pub fn dirichlet_constants<F: Real>() -> ConstantsTable<F> {
    let zeta3 = hurwitz_zeta(3, F::one());
    let third = F::one() / F::lit(3.0);
    let l_chi3_2 = (hurwitz_zeta(2, third) - hurwitz_zeta(2, third + third)) / F::lit(9.0);
    ConstantsTable {
        zeta3,
        l_chi3_2,
        lprime_chi3_m1: lprime_from_l(l_chi3_2),
    }
}

/// `3 sqrt(3) / (4 pi) * L(chi_-3, 2)`.
pub fn lprime_from_l<F: Real>(l_chi3_2: F) -> F {
    F::lit(3.0) * F::lit(3.0).sqrt() / (F::lit(4.0) * F::PI()) * l_chi3_2
}

/// Hurwitz zeta `zeta(s, a) = sum_{n>=0} (n + a)^{-s}` for integer `s >= 2`, `a > 0`.
pub fn hurwitz_zeta<F: Real>(s: u32, a: F) -> F {
    assert!(s >= 2, "hurwitz_zeta needs s >= 2");
    const HEAD: usize = 16;
    const CORRECTIONS: usize = 12;
    let s_f = F::from_u32(s).expect("small");
    let head: F = (0..HEAD)
        .map(|n| (F::from_usize_lossy(n) + a).powi(-(s as i32)))
        .sum();
    let x = F::from_usize_lossy(HEAD) + a;
    let xs = x.powi(-(s as i32));
    let mut tail = x * xs / (s_f - F::one()) + xs / F::lit(2.0);
    let b = bernoulli::bernoulli();
    // B_2k/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    let mut rising = s_f; // s (s+1) ... (s + 2k - 2)
    let mut fact = F::lit(2.0); // (2k)!
    let mut xpow = xs / x; // x^{-s-2k+1}
    for k in 1..=CORRECTIONS {
        tail = tail + F::lit(b[2 * k]) / fact * rising * xpow;
        let k2 = F::from_usize_lossy(2 * k);
        rising = rising * (s_f + k2 - F::one()) * (s_f + k2);
        fact = fact * (k2 + F::one()) * (k2 + F::lit(2.0));
        xpow = xpow / (x * x);
    }
    head + tail
}
