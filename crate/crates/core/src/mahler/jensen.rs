use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MahlerError, MahlerEstimate, Method};
use crate::poly::{Coefficient, UnivariatePoly};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 2000;
const CLUSTER: f64 = 1e-5;

/// Value and derivative by Horner's scheme; `coeffs` ascending.
fn horner<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + *c;
    }
    (p, dp)
}

/// All complex roots of a polynomial with nonzero leading and constant
/// coefficients (ascending order), by Aberth–Ehrlich iteration followed by a
/// Newton polish. Roots that agree to `1e-5` relative are replaced by the
/// centroid of their cluster, which is far more accurate than the individual
/// members for a multiple root.
pub fn polynomial_roots<F: Real>(coeffs: &[Complex<F>]) -> Result<Vec<Complex<F>>, MahlerError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if n == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    let eps = F::epsilon();
    // Starting circle: geometric mean of the root moduli.
    let radius = (coeffs[0].norm() / lead.norm()).powf(F::one() / F::from_usize_lossy(n));
    let radius = if radius.is_finite() && radius > F::zero() { radius } else { F::one() };
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let theta = F::TAU() * F::from_usize_lossy(k) / F::from_usize_lossy(n) + F::lit(0.4);
            Complex::from_polar(radius, theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut largest = F::zero();
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<F> = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .fold(Complex::zero(), |a, b| a + b);
            let mut w = ratio / (Complex::from(F::one()) - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                w = if ratio.re.is_finite() && ratio.im.is_finite() {
                    ratio
                } else {
                    Complex::new(eps.sqrt() * (F::one() + z[k].norm()), F::zero())
                };
            }
            z[k] = z[k] - w;
            let rel = w.norm() / z[k].norm().max(F::min_positive_value());
            largest = largest.max(rel);
        }
        if largest <= F::lit(4.0) * eps {
            converged = true;
            break;
        }
    }
    if !converged {
        // Stagnation at a multiple root still leaves a usable cluster; only a
        // non-finite state is a failure.
        if z.iter().any(|r| !(r.re.is_finite() && r.im.is_finite())) {
            return Err(MahlerError::NoConvergence { degree: n });
        }
    }
    for r in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner(coeffs, *r);
            if dp.is_zero() {
                break;
            }
            let next = *r - p / dp;
            if horner(coeffs, next).0.norm() < p.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    Ok(cluster(z))
}

fn cluster<F: Real>(roots: Vec<Complex<F>>) -> Vec<Complex<F>> {
    let n = roots.len();
    let tol = F::lit(CLUSTER);
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = roots[i].norm().max(roots[j].norm()).max(F::one());
            if (roots[i] - roots[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out = roots.clone();
    for (i, slot) in out.iter_mut().enumerate() {
        let g = find(&mut group, i);
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut group, j) == g).collect();
        if members.len() > 1 {
            let sum = members.iter().fold(Complex::zero(), |a, &j| a + roots[j]);
            *slot = sum / F::from_usize_lossy(members.len());
        }
    }
    out
}

/// `m(f) = log|lead(f)| + sum over roots of max(log|alpha|, 0)`.
pub fn mm_jensen<F: Real>(f: &UnivariatePoly<Complex<F>>) -> Result<MahlerEstimate<F>, MahlerError> {
    let coeffs = f.coeffs();
    if coeffs.is_empty() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(MahlerError::NonFinite);
    }
    // A factor t^k has measure zero.
    let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let trimmed = &coeffs[low..];
    let lead = trimmed[trimmed.len() - 1];
    let roots = polynomial_roots(trimmed)?;
    let value = roots
        .iter()
        .map(|r| r.norm().ln().max(F::zero()))
        .fold(lead.norm().ln(), |a, b| a + b);
    Ok(MahlerEstimate::exact(value, Method::Jensen))
}

/// [`mm_jensen`] for exact or real coefficients.
pub fn mm_jensen_exact<F: Real, T: Coefficient + Zero>(f: &UnivariatePoly<T>) -> Result<MahlerEstimate<F>, MahlerError> {
    mm_jensen(&f.to_complex::<F>())
}

fn derivative(f: &UnivariatePoly<BigRational>) -> UnivariatePoly<BigRational> {
    UnivariatePoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Yun's squarefree decomposition of a monic polynomial: `f = prod a_i^i`
/// with each `a_i` monic and squarefree. Returns `(a_i, i)` for `a_i != 1`.
pub fn squarefree_decomposition(f: &UnivariatePoly<BigRational>) -> Vec<(UnivariatePoly<BigRational>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = derivative(f);
    let a0 = f.gcd(&df);
    let div = |x: &UnivariatePoly<BigRational>, y: &UnivariatePoly<BigRational>| x.div_rem(y).expect("nonzero divisor").0;
    let mut b = div(f, &a0);
    let c = div(&df, &a0);
    let mut d = &c - &derivative(&b);
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = div(&b, &a);
        let c = div(&d, &a);
        d = &c - &derivative(&b);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// [`mm_jensen`] for rational coefficients, applied to the squarefree
/// factors so that every root handed to the root finder is simple:
/// `m(f) = log|lead| + sum_i i * m(a_i)`.
pub fn mm_jensen_rational<F: Real>(f: &UnivariatePoly<BigRational>) -> Result<MahlerEstimate<F>, MahlerError> {
    let lead = f.leading().ok_or(MahlerError::ZeroPolynomial)?.clone();
    let low = f.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let monic = UnivariatePoly::new(f.coeffs()[low..].to_vec()).scale(&(BigRational::one() / &lead));
    let log_lead = {
        // log|p/q| without overflowing f64 for large integers
        let num = lead.numer().abs();
        let den = lead.denom().abs();
        F::lit(big_ln(&num) - big_ln(&den))
    };
    let mut value = log_lead;
    for (a, i) in squarefree_decomposition(&monic) {
        let m = mm_jensen(&a.to_complex::<F>())?.value;
        value = value + F::from_usize_lossy(i) * m;
    }
    Ok(MahlerEstimate::exact(value, Method::Jensen))
}

fn big_ln(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}
