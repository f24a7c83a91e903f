use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use resmahler::special::{bloch_wigner_d, dirichlet_constants, li, zagier_p3};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Points away from 0, 1 and the real axis.
fn generic_point() -> impl Strategy<Value = Complex64> {
    (0.15f64..6.0, 0.05f64..3.09, prop::bool::ANY).prop_map(|(r, t, neg)| {
        let z = Complex64::from_polar(r, t);
        if neg {
            z.conj()
        } else {
            z
        }
    })
    .prop_filter("away from 1", |z| (z - 1.0).norm() > 0.05)
}

/// Direct summation of `sum z^n / n^q`, valid for `|z| <= 0.9`.
fn series(q: i32, z: Complex64) -> Complex64 {
    let mut sum = c(0.0, 0.0);
    let mut pow = z;
    for n in 1..2000 {
        sum += pow / (n as f64).powi(q);
        pow *= z;
    }
    sum
}

proptest! {
    #[test]
    fn li_matches_defining_series(r in 0.0f64..0.9, t in -PI..PI, q in 1u32..=3) {
        let z = Complex64::from_polar(r, t);
        let got = li(q, z).unwrap();
        prop_assert!((got - series(q as i32, z)).norm() < 1e-13, "{z} {got}");
    }

    /// Abel's five-term relation.
    #[test]
    fn d_five_term(x in generic_point(), y in generic_point()) {
        let xy = x * y;
        prop_assume!((xy - 1.0).norm() > 0.05);
        let one = c(1.0, 0.0);
        let sum = bloch_wigner_d(x)
            + bloch_wigner_d(y)
            + bloch_wigner_d((one - x) / (one - xy))
            + bloch_wigner_d(one - xy)
            + bloch_wigner_d((one - y) / (one - xy));
        prop_assert!(sum.abs() < 1e-11, "{sum}");
    }

    #[test]
    fn d_six_fold_symmetry(z in generic_point()) {
        let d = bloch_wigner_d(z);
        let one = c(1.0, 0.0);
        for w in [one / z, one - z, z.conj()] {
            prop_assert!((bloch_wigner_d(w) + d).abs() < 1e-12);
        }
        for w in [one / (one - z), one - one / z] {
            prop_assert!((bloch_wigner_d(w) - d).abs() < 1e-12);
        }
    }

    #[test]
    fn p3_symmetries(z in generic_point()) {
        let p = zagier_p3(z);
        prop_assert!((zagier_p3(z.conj()) - p).abs() < 1e-12);
        prop_assert!((zagier_p3(c(1.0, 0.0) / z) - p).abs() < 1e-12);
    }

    /// `P_3(z) + P_3(1 - z) + P_3(1 - 1/z) = zeta(3)`.
    #[test]
    fn p3_three_term(z in generic_point()) {
        let one = c(1.0, 0.0);
        let z3 = dirichlet_constants::<f64>().zeta3;
        let s = zagier_p3(z) + zagier_p3(one - z) + zagier_p3(one - one / z);
        prop_assert!((s - z3).abs() < 1e-11, "{s}");
    }

    /// The real-axis version of the three-term identity, including the cut.
    #[test]
    fn p3_three_term_real(x in prop_oneof![0.02f64..0.98, 1.02f64..8.0, -8.0f64..-0.02]) {
        let z3 = dirichlet_constants::<f64>().zeta3;
        let p = |t: f64| zagier_p3(c(t, 0.0));
        let s = p(x) + p(1.0 - x) + p(1.0 - 1.0 / x);
        prop_assert!((s - z3).abs() < 1e-11, "{x} {s}");
    }
}

#[test]
fn single_precision_agrees() {
    let z = c(0.3, 0.8);
    let d64 = bloch_wigner_d(z);
    let d32 = bloch_wigner_d(num_complex::Complex32::new(0.3, 0.8));
    assert!((f64::from(d32) - d64).abs() < 1e-5);
    let k32 = dirichlet_constants::<f32>();
    assert!((f64::from(k32.zeta3) - 1.202_056_903_159_594).abs() < 1e-6);
}
