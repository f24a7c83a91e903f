//! Polylogarithms of order 1 to 3 and their single-valued versions.
//!
//! Evaluation inside the unit disk uses the direct power series for
//! `|z| <= 1/2`, the Bernoulli-type series in `u = -log(1 - z)` for the rest of
//! the half plane `Re z <= 1/2`, and for `Re z > 1/2` either the reflection
//! `z -> 1 - z` (order 2) or the expansion around `z = 1` in powers of
//! `log z` (order 3). Outside the disk the inversion relations are used.
//! All logarithms and arguments are principal, `arg in (-pi, pi]`.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::bernoulli::{bernoulli, li2_log_series, li3_log_series, TABLE_LEN};
use super::{SpecialError, ZETA3};
use crate::scalar::Real;

/// Inputs this close to a singular point get the continuous limit value.
pub const SINGULAR_RADIUS: f64 = 1e-14;

fn series_tol<F: Real>() -> F {
    F::epsilon() * F::lit(0.05)
}

/// `Li_q(z)` for `q in {1, 2, 3}` on the principal branch.
///
/// Orders 2 and 3 are undefined on the cut `(1, inf)`, order 1 at `z = 1`.
pub fn li<F: Real>(q: u32, z: Complex<F>) -> Result<Complex<F>, SpecialError> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecialError::NonFinite);
    }
    match q {
        1 => {
            if z == Complex::one() {
                Err(SpecialError::Singular { q, re: 1.0 })
            } else {
                Ok(li1(z))
            }
        }
        2 | 3 => {
            if z.im == F::zero() && z.re > F::one() {
                return Err(SpecialError::BranchCut {
                    q,
                    re: z.re.to_f64_lossy(),
                });
            }
            Ok(if q == 2 { li2_raw(z) } else { li3_raw(z) })
        }
        _ => Err(SpecialError::UnsupportedOrder(q)),
    }
}

#[inline]
pub(crate) fn li1<F: Real>(z: Complex<F>) -> Complex<F> {
    -(Complex::<F>::one() - z).ln()
}

fn power_series<F: Real>(q: i32, z: Complex<F>) -> Complex<F> {
    let tol = series_tol::<F>();
    let mut sum = Complex::zero();
    let mut zj = z;
    for j in 1..10_000usize {
        let term = zj / F::from_usize_lossy(j).powi(q);
        sum = sum + term;
        if term.norm() < tol * (sum.norm() + F::one()) {
            break;
        }
        zj = zj * z;
    }
    sum
}

/// `sum_n c_n u^{n+1}`, stopping on the first negligible nonzero term.
fn log_series<F: Real>(coeffs: &[f64], u: Complex<F>) -> Complex<F> {
    let tol = series_tol::<F>();
    let mut sum = Complex::zero();
    let mut upow = u;
    for (n, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            let term = upow * F::lit(c);
            sum = sum + term;
            if n > 1 && term.norm() < tol * (sum.norm() + F::one()) {
                break;
            }
        }
        upow = upow * u;
    }
    sum
}

fn half<F: Real>() -> F {
    F::lit(0.5)
}

fn zeta2<F: Real>() -> F {
    F::PI() * F::PI() / F::lit(6.0)
}

/// `Li_2` everywhere; points on the cut get the value of whichever side the
/// principal `log(-z)` selects.
pub(crate) fn li2_raw<F: Real>(z: Complex<F>) -> Complex<F> {
    if z.is_zero() {
        return Complex::zero();
    }
    if z.norm_sqr() > F::one() {
        let l = (-z).ln();
        return -li2_disk(z.inv()) - zeta2::<F>() - l * l * half::<F>();
    }
    li2_disk(z)
}

fn li2_disk<F: Real>(z: Complex<F>) -> Complex<F> {
    if z == Complex::one() {
        return Complex::new(zeta2::<F>(), F::zero());
    }
    if z.re > half::<F>() {
        let w = Complex::<F>::one() - z;
        return Complex::from(zeta2::<F>()) - z.ln() * w.ln() - li2_inner(w);
    }
    li2_inner(z)
}

/// `|z| <= 1`, `Re z <= 1/2`.
fn li2_inner<F: Real>(z: Complex<F>) -> Complex<F> {
    if z.norm() <= half::<F>() {
        power_series(2, z)
    } else {
        log_series(li2_log_series(), li1(z))
    }
}

/// `Li_3` everywhere, same cut convention as [`li2_raw`].
pub(crate) fn li3_raw<F: Real>(z: Complex<F>) -> Complex<F> {
    if z.is_zero() {
        return Complex::zero();
    }
    if z.norm_sqr() > F::one() {
        let l = (-z).ln();
        return li3_disk(z.inv()) - l * l * l / F::lit(6.0) - l * zeta2::<F>();
    }
    li3_disk(z)
}

fn li3_disk<F: Real>(z: Complex<F>) -> Complex<F> {
    if z.norm() <= half::<F>() {
        power_series(3, z)
    } else if z.re <= half::<F>() {
        log_series(li3_log_series(), li1(z))
    } else {
        li3_near_one(z)
    }
}

/// `Li_3(z) = zeta(3) + zeta(2) L + L^2/2 (3/2 - log(-L)) + sum_{k>=3} zeta(3-k) L^k / k!`
/// with `L = log z`, valid for `|L| < 2 pi`.
fn li3_near_one<F: Real>(z: Complex<F>) -> Complex<F> {
    let l = z.ln();
    let zeta3 = Complex::from(F::lit(ZETA3));
    if l.is_zero() {
        return zeta3;
    }
    let l2 = l * l;
    let mut sum = zeta3 + l * zeta2::<F>()
        + l2 * half::<F>() * (Complex::from(F::lit(1.5)) - (-l).ln());
    let b = bernoulli();
    let tol = series_tol::<F>();
    // k = 3 + m, zeta(-m) = -B_{m+1}/(m+1) for m >= 1, zeta(0) = -1/2
    let mut lk_over_fact = l2 * l / F::lit(6.0);
    for m in 0..TABLE_LEN - 1 {
        let zeta_neg = if m == 0 {
            -0.5
        } else {
            -b[m + 1] / (m + 1) as f64
        };
        if zeta_neg != 0.0 {
            let term = lk_over_fact * F::lit(zeta_neg);
            sum = sum + term;
            if m > 2 && term.norm() < tol * (sum.norm() + F::one()) {
                break;
            }
        }
        lk_over_fact = lk_over_fact * l / F::from_usize_lossy(m + 4);
    }
    sum
}

fn near<F: Real>(z: Complex<F>, target: F) -> bool {
    (z - Complex::from(target)).norm() < F::lit(SINGULAR_RADIUS)
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li_2(z) + log|z| arg(1 - z)`.
///
/// Real-analytic off `{0, 1, inf}` and continuous everywhere; it vanishes on
/// the real line, and inputs within [`SINGULAR_RADIUS`] of 0 or 1 return 0.
pub fn bloch_wigner_d<F: Real>(z: Complex<F>) -> F {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return F::nan();
    }
    if z.im == F::zero() || near(z, F::zero()) || near(z, F::one()) {
        return F::zero();
    }
    li2_raw(z).im + z.norm().ln() * (Complex::<F>::one() - z).arg()
}

/// Zagier's single-valued trilogarithm
/// `P_3(z) = Re(Li_3(z) - log|z| Li_2(z) + 1/3 log^2|z| Li_1(z))`.
///
/// `P_3(0) = 0` and `P_3(1) = zeta(3)`; inputs within [`SINGULAR_RADIUS`] of
/// those points return the limit.
pub fn zagier_p3<F: Real>(z: Complex<F>) -> F {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return F::nan();
    }
    if near(z, F::zero()) {
        return F::zero();
    }
    if near(z, F::one()) {
        return F::lit(ZETA3);
    }
    let l = z.norm().ln();
    let value = li3_raw(z) - li2_raw(z) * l + li1(z) * (l * l / F::lit(3.0));
    value.re
}

/// [`zagier_p3`] on the real axis.
pub fn zagier_p3_real<F: Real>(x: F) -> F {
    zagier_p3(Complex::new(x, F::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    /// Brute-force oracle: the defining series with many terms, |z| < 1.
    fn li_series(q: i32, z: C, terms: usize) -> C {
        (1..=terms).map(|j| z.powu(j as u32) / (j as f64).powi(q)).sum()
    }

    #[test]
    fn li2_at_one_is_zeta2() {
        assert!((li(2, c(1.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn li3_at_minus_one() {
        let v = li(3, c(-1.0, 0.0)).unwrap();
        assert!((v.re + 0.75 * ZETA3).abs() < 1e-15, "{v}");
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn li2_at_half() {
        // oracle: sum 2^-j / j^2 computed term by term
        let oracle: f64 = (1..200).map(|j| 0.5f64.powi(j) / (j * j) as f64).sum();
        let closed = PI * PI / 12.0 - std::f64::consts::LN_2.powi(2) / 2.0;
        assert!((oracle - closed).abs() < 1e-15);
        assert!((li(2, c(0.5, 0.0)).unwrap().re - oracle).abs() < 1e-15);
    }

    #[test]
    fn li_matches_series_inside_disk() {
        let pts = [
            c(0.3, 0.2),
            c(-0.7, 0.1),
            c(0.6, -0.5),
            c(0.1, 0.85),
            c(-0.2, -0.6),
            c(0.5, 0.7),
            c(0.75, 0.2),
        ];
        for &z in &pts {
            for q in 1..=3 {
                let want = li_series(q, z, 4000);
                let got = li(q as u32, z).unwrap();
                assert!(
                    (got - want).norm() <= 1e-12 * want.norm().max(1e-300),
                    "q={q} z={z} got={got} want={want}"
                );
            }
        }
    }

    #[test]
    fn li_regions_agree_across_boundaries() {
        // straddle |z| = 1/2 and Re z = 1/2
        for &(a, b) in &[(0.5 - 1e-13, 0.5 + 1e-13), (0.5, 0.5)] {
            for &im in &[0.1, 0.4, 0.7] {
                let l = c(a, im);
                let r = c(b, im);
                for q in 2..=3 {
                    let d = (li(q, l).unwrap() - li(q, r).unwrap()).norm();
                    assert!(d < 1e-12, "q={q} im={im} d={d}");
                }
            }
        }
    }

    #[test]
    fn li_unit_circle_real_part() {
        // Re Li_2(e^{i t}) = pi^2/6 - t(2 pi - t)/4 for t in [0, 2 pi]
        // Re Li_3 has no closed form; Im Li_2 is the Clausen function
        for k in 1..12 {
            let t = k as f64 * 0.5;
            let z = C::from_polar(1.0, t);
            let v = li(2, z).unwrap();
            let want = PI * PI / 6.0 - t * (2.0 * PI - t) / 4.0;
            assert!((v.re - want).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn inversion_continuation_outside_disk() {
        // Li_2(z) + Li_2(1/z) = -pi^2/6 - log^2(-z)/2 off [0, inf)
        for &z in &[c(-3.0, 0.0), c(2.0, 1.5), c(-0.5, -4.0), c(1.2, 0.3)] {
            let lhs = li(2, z).unwrap() + li(2, z.inv()).unwrap();
            let l = (-z).ln();
            let rhs = -C::from(PI * PI / 6.0) - l * l / 2.0;
            assert!((lhs - rhs).norm() < 1e-13, "z={z}");
        }
        // derivative check: d/dz Li_3 = Li_2 / z by central differences
        let z = c(2.5, -1.0);
        let h = 1e-5;
        let d = (li(3, z + h).unwrap() - li(3, z - h).unwrap()) / (2.0 * h);
        assert!((d - li(2, z).unwrap() / z).norm() < 1e-8);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(li(2, c(2.0, 0.0)), Err(SpecialError::BranchCut { q: 2, .. })));
        assert!(matches!(li(3, c(1.5, 0.0)), Err(SpecialError::BranchCut { q: 3, .. })));
        assert!(matches!(li(1, c(1.0, 0.0)), Err(SpecialError::Singular { q: 1, .. })));
        assert!(matches!(li(4, c(0.1, 0.0)), Err(SpecialError::UnsupportedOrder(4))));
        assert!(matches!(li(2, c(f64::NAN, 0.0)), Err(SpecialError::NonFinite)));
        assert!(li(1, c(2.0, 0.0)).is_ok());
    }

    #[test]
    fn bloch_wigner_special_values() {
        assert_eq!(bloch_wigner_d(c(0.5, 0.0)), 0.0);
        assert_eq!(bloch_wigner_d(c(0.0, 0.0)), 0.0);
        assert_eq!(bloch_wigner_d(c(1.0, 1e-15)), 0.0);
        // D(i) = sum sin(j pi/2)/j^2 = Catalan's constant
        let catalan: f64 = (0..2_000_000)
            .map(|k| {
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                s / ((2 * k + 1) as f64).powi(2)
            })
            .sum();
        assert!((bloch_wigner_d(c(0.0, 1.0)) - catalan).abs() < 1e-12);
        // D(e^{i pi/3}) = sum sin(j pi/3)/j^2, summed in blocks of the period
        let series: f64 = (1..3_000_000)
            .map(|j| (j as f64 * PI / 3.0).sin() / (j as f64 * j as f64))
            .sum();
        let d = bloch_wigner_d(C::from_polar(1.0, PI / 3.0));
        assert!((d - series).abs() < 1e-9, "{d} {series}");
        assert!((d - 1.014_941_606_409_653_6).abs() < 1e-14);
    }

    #[test]
    fn p3_special_values() {
        assert!((zagier_p3_real(1.0f64) - ZETA3).abs() < 1e-15);
        assert!((zagier_p3_real(0.5f64) - 7.0 * ZETA3 / 8.0).abs() < 1e-14);
        assert!((zagier_p3_real(2.0f64) - zagier_p3_real(0.5)).abs() < 1e-14);
        // P_3(-1) = Re Li_3(-1)
        assert!((zagier_p3_real(-1.0f64) + 0.75 * ZETA3).abs() < 1e-15);
        assert_eq!(zagier_p3_real(0.0f64), 0.0);
    }

    #[test]
    fn single_precision_instantiation() {
        let d = bloch_wigner_d(Complex::<f32>::from_polar(1.0, std::f32::consts::FRAC_PI_3));
        assert!((d - 1.014_941_6_f32).abs() < 1e-5);
        let p = zagier_p3_real(0.5f32);
        assert!((p - 7.0 * ZETA3 as f32 / 8.0).abs() < 1e-5);
    }
}
