//! Functional equations of `D` and `P_3` evaluated on random samples.
//!
//! This is the runtime self-check behind the CLI `identities` command.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{bloch_wigner_d, dirichlet_constants, li, zagier_p3};

/// Largest deviation observed for one identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: &'static str,
    pub samples: usize,
    pub max_abs_deviation: f64,
}

impl IdentityReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_abs_deviation <= tolerance
    }
}

/// A point with `0.1 < |z| < 10` and `|Im z|` bounded away from zero.
pub fn annulus_sample<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let r = (rng.random_range(0.1f64.ln()..10f64.ln())).exp();
        let t = rng.random_range(-PI..PI);
        let z = Complex64::from_polar(r, t);
        if z.im.abs() > 1e-3 && (z - 1.0).norm() > 1e-3 {
            return z;
        }
    }
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

/// `-2 int_0^theta log|2 sin t| dt`, with the `log t` singularity integrated
/// in closed form and the smooth remainder by adaptive Simpson quadrature.
pub fn clausen_quadrature(theta: f64) -> f64 {
    let smooth = |t: f64| {
        if t == 0.0 {
            std::f64::consts::LN_2
        } else {
            (2.0 * t.sin() / t).ln()
        }
    };
    let singular = theta * theta.ln() - theta;
    -2.0 * (singular + adaptive_simpson(&smooth, 0.0, theta, 1e-14, 40))
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson<G: Fn(f64) -> f64>(g: &G, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = g(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<G: Fn(f64) -> f64>(
        g: &G,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(g, a, fa, m, fm);
        let (rm, frm, right) = simpson(g, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(g, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(g, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (g(a), g(b));
    let (m, fm, whole) = simpson(g, a, fa, b, fb);
    recurse(g, a, fa, b, fb, m, fm, whole, tol, depth)
}

/// Runs every identity on `samples` random points drawn from `seed`.
pub fn identity_suite(samples: usize, seed: u64) -> Vec<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Complex64> = (0..samples).map(|_| annulus_sample(&mut rng)).collect();
    let reals: Vec<f64> = (0..samples)
        .map(|_| rng.random_range(1e-3..1.0 - 1e-3))
        .collect();
    let zeta3 = dirichlet_constants::<f64>().zeta3;
    let one = Complex64::new(1.0, 0.0);
    let report = |name, max_abs_deviation| IdentityReport {
        name,
        samples,
        max_abs_deviation,
    };

    let mut out = vec![
        report(
            "D(conj z) = -D(z)",
            max_over(points.iter().map(|&z| (bloch_wigner_d(z.conj()) + bloch_wigner_d(z)).abs())),
        ),
        report(
            "D(1/z) = -D(z)",
            max_over(points.iter().map(|&z| (bloch_wigner_d(z.inv()) + bloch_wigner_d(z)).abs())),
        ),
        report(
            "D(1-z) = -D(z)",
            max_over(points.iter().map(|&z| (bloch_wigner_d(one - z) + bloch_wigner_d(z)).abs())),
        ),
        report(
            "D three-term mean",
            max_over(points.iter().map(|&z| {
                let zb = z.conj();
                let rhs = 0.5
                    * (bloch_wigner_d(z / zb)
                        + bloch_wigner_d((one - z.inv()) / (one - zb.inv()))
                        + bloch_wigner_d((one - zb) / (one - z)));
                (bloch_wigner_d(z) - rhs).abs()
            })),
        ),
    ];

    let thetas: Vec<f64> = (1..=15).map(|k| k as f64 / 10.0).collect();
    out.push(IdentityReport {
        name: "D(exp(2 i theta)) = -2 int log|2 sin t|",
        samples: thetas.len(),
        max_abs_deviation: max_over(thetas.iter().map(|&th| {
            (bloch_wigner_d(Complex64::from_polar(1.0, 2.0 * th)) - clausen_quadrature(th)).abs()
        })),
    });

    out.push(report(
        "P3(conj z) = P3(z)",
        max_over(points.iter().map(|&z| (zagier_p3(z.conj()) - zagier_p3(z)).abs())),
    ));
    out.push(report(
        "P3(1/z) = P3(z)",
        max_over(points.iter().map(|&z| (zagier_p3(z.inv()) - zagier_p3(z)).abs())),
    ));
    let three_term = |z: Complex64| {
        (zagier_p3(z) + zagier_p3(one - z) + zagier_p3(one - z.inv()) - zeta3).abs()
    };
    out.push(report(
        "P3 three-term (real z in (0,1))",
        max_over(reals.iter().map(|&x| three_term(Complex64::new(x, 0.0)))),
    ));
    out.push(report(
        "P3 three-term (complex z)",
        max_over(points.iter().map(|&z| three_term(z))),
    ));
    out.push(IdentityReport {
        name: "P3(1/2) = 7 zeta(3) / 8",
        samples: 1,
        max_abs_deviation: (zagier_p3(Complex64::new(0.5, 0.0)) - 7.0 * zeta3 / 8.0).abs(),
    });
    out.push(IdentityReport {
        name: "Li3(-1) = -3 zeta(3) / 4",
        samples: 1,
        max_abs_deviation: (li(3, Complex64::new(-1.0, 0.0)).expect("off the cut") - (-0.75 * zeta3))
            .norm(),
    });
    out
}
