use std::cmp::Ordering;

use num_complex::Complex;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{MahlerError, MahlerEstimate, Method};
use crate::poly::{Coefficient, LaurentPolynomial};
use crate::scalar::Real;

pub const MIN_SAMPLES: u64 = 1 << 10;
pub const MIN_SHIFTS: usize = 16;
const BLOCK: u64 = 4096;
const ZERO_SET: f64 = 1e-300;
const MAX_NUDGES: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// Kronecker points with independent uniform shifts.
    Qmc,
    /// Independent uniform points.
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QmcOptions {
    /// Total number of points over all shifts.
    pub samples: u64,
    pub seed: u64,
    pub shifts: usize,
    pub sampling: Sampling,
}

impl Default for QmcOptions {
    fn default() -> Self {
        Self {
            samples: 1 << 20,
            seed: 0,
            shifts: MIN_SHIFTS,
            sampling: Sampling::Qmc,
        }
    }
}

/// Kronecker generator in 64-bit fixed point: `alpha_j = g^-j mod 1` where
/// `g` is the positive root of `x^{d+1} = x + 1`.
fn kronecker_generator(d: usize) -> Vec<u64> {
    let mut g = 2.0f64;
    for _ in 0..64 {
        g = (1.0 + g).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d)
        .map(|j| {
            let a = g.powi(-(j as i32)).fract();
            (a * 18_446_744_073_709_551_616.0) as u64
        })
        .collect()
}

#[inline]
fn unit<F: Real>(u: u64) -> F {
    F::lit((u >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0))
}

/// A polynomial prepared for repeated evaluation on the torus: for each
/// variable the needed powers are tabulated once per point.
struct Compiled<F> {
    low: Vec<i32>,
    offset: Vec<usize>,
    len: Vec<usize>,
    terms: Vec<(Complex<F>, Vec<usize>)>,
    width: usize,
}

impl<F: Real> Compiled<F> {
    fn new<T: Coefficient + Clone + num_traits::Num>(p: &LaurentPolynomial<T>) -> Self {
        let d = p.nvars();
        let mut low = vec![0i32; d];
        let mut high = vec![0i32; d];
        for (k, (e, _)) in p.terms().enumerate() {
            for j in 0..d {
                let x = e[j] as i32;
                if k == 0 || x < low[j] {
                    low[j] = x;
                }
                if k == 0 || x > high[j] {
                    high[j] = x;
                }
            }
        }
        let len: Vec<usize> = (0..d).map(|j| (high[j] - low[j]) as usize + 1).collect();
        let mut offset = Vec::with_capacity(d);
        let mut width = 0;
        for l in &len {
            offset.push(width);
            width += l;
        }
        let terms = p
            .terms()
            .map(|(e, c)| {
                let idx = (0..d).map(|j| offset[j] + (e[j] as i32 - low[j]) as usize).collect();
                (c.to_complex::<F>(), idx)
            })
            .collect();
        Self {
            low,
            offset,
            len,
            terms,
            width,
        }
    }

    fn eval(&self, u: &[u64], pw: &mut [Complex<F>]) -> Complex<F> {
        for (j, &uj) in u.iter().enumerate() {
            let z = Complex::from_polar(F::one(), F::TAU() * unit::<F>(uj));
            let o = self.offset[j];
            pw[o] = z.powi(self.low[j]);
            for k in 1..self.len[j] {
                pw[o + k] = pw[o + k - 1] * z;
            }
        }
        let mut acc = Complex::new(F::zero(), F::zero());
        for (c, idx) in &self.terms {
            let mut t = *c;
            for &i in idx {
                t = t * pw[i];
            }
            acc = acc + t;
        }
        acc
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy)]
struct Sum<F> {
    s: F,
    c: F,
}

impl<F: Real> Sum<F> {
    fn new() -> Self {
        Self { s: F::zero(), c: F::zero() }
    }
    fn add(&mut self, x: F) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c = self.c + ((self.s - t) + x);
        } else {
            self.c = self.c + ((x - t) + self.s);
        }
        self.s = t;
    }
    fn total(&self) -> F {
        self.s + self.c
    }
}

struct BlockResult<F> {
    sum: F,
    abs_sum: F,
    count: u64,
    resampled: u64,
}

/// [`mm_qmc_with`] with the default number of shifts.
pub fn mm_qmc<F: Real, T: Coefficient + Clone + num_traits::Num>(
    p: &LaurentPolynomial<T>,
    samples: u64,
    seed: u64,
) -> Result<MahlerEstimate<F>, MahlerError> {
    mm_qmc_with(
        p,
        &QmcOptions {
            samples,
            seed,
            ..QmcOptions::default()
        },
    )
}

/// Estimates `m(P) = int_{[0,1)^d} log|P(e^{2 pi i u})| du`.
///
/// The points are split evenly over `shifts` randomizations. With
/// [`Sampling::Qmc`] each randomization is the Kronecker sequence translated
/// by an independent uniform shift, so every per-shift mean is an unbiased
/// estimate; `value` is their average and `std_error` their standard error.
/// Blocks of points are evaluated in parallel and merged in index order, so
/// the result depends only on `(P, options)`.
///
/// `std_error` never drops below `sqrt(N) * eps * (1 + mean |log|P||)`,
/// the rounding noise of `N` accumulated evaluations, which the spread over
/// shifts cannot see once the integrand is smooth.
///
/// A point with `|P| < 1e-300` is moved by one unit in the last place of
/// each coordinate until it leaves the zero set; the count is reported in
/// `resampled`.
pub fn mm_qmc_with<F: Real, T: Coefficient + Clone + num_traits::Num>(
    p: &LaurentPolynomial<T>,
    opts: &QmcOptions,
) -> Result<MahlerEstimate<F>, MahlerError> {
    if p.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    if opts.samples < MIN_SAMPLES {
        return Err(MahlerError::TooFewSamples {
            samples: opts.samples,
            min: MIN_SAMPLES,
        });
    }
    if opts.shifts < MIN_SHIFTS {
        return Err(MahlerError::TooFewShifts {
            shifts: opts.shifts,
            min: MIN_SHIFTS,
        });
    }
    let p = p.compact();
    let compiled = Compiled::<F>::new(&p);
    if compiled.terms.iter().any(|(c, _)| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(MahlerError::NonFinite);
    }
    let d = p.nvars();
    let shifts = opts.shifts;
    let per_shift = opts.samples.div_ceil(shifts as u64);
    let blocks_per_shift = per_shift.div_ceil(BLOCK);
    let alpha = kronecker_generator(d);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let shift_vectors: Vec<Vec<u64>> = (0..shifts).map(|_| (0..d).map(|_| rng.next_u64()).collect()).collect();
    let threshold = F::lit(ZERO_SET);

    let total_blocks = shifts as u64 * blocks_per_shift;
    let results: Vec<BlockResult<F>> = (0..total_blocks)
        .into_par_iter()
        .map(|b| {
            let shift = (b / blocks_per_shift) as usize;
            let start = (b % blocks_per_shift) * BLOCK;
            let end = (start + BLOCK).min(per_shift);
            let mut pw = vec![Complex::new(F::zero(), F::zero()); compiled.width];
            let mut u = vec![0u64; d];
            let mut mc = match opts.sampling {
                Sampling::Mc => {
                    let mut r = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
                    r.set_stream(b);
                    Some(r)
                }
                Sampling::Qmc => None,
            };
            let mut sum = Sum::new();
            let mut abs_sum = Sum::new();
            let mut resampled = 0;
            for n in start..end {
                for j in 0..d {
                    u[j] = match mc.as_mut() {
                        Some(r) => r.next_u64(),
                        None => n.wrapping_mul(alpha[j]).wrapping_add(shift_vectors[shift][j]),
                    };
                }
                let mut norm = compiled.eval(&u, &mut pw).norm();
                let mut nudges = 0;
                while norm.partial_cmp(&threshold) != Some(Ordering::Greater) && nudges < MAX_NUDGES {
                    for x in u.iter_mut() {
                        *x = x.wrapping_add(1 << 11);
                    }
                    norm = compiled.eval(&u, &mut pw).norm();
                    nudges += 1;
                }
                if nudges > 0 {
                    resampled += 1;
                }
                let v = norm.max(F::min_positive_value()).ln();
                sum.add(v);
                abs_sum.add(v.abs());
            }
            BlockResult {
                sum: sum.total(),
                abs_sum: abs_sum.total(),
                count: end - start,
                resampled,
            }
        })
        .collect();

    let mut means = Vec::with_capacity(shifts);
    let mut abs_total = Sum::new();
    let mut resampled = 0;
    for chunk in results.chunks(blocks_per_shift as usize) {
        let mut s = Sum::new();
        let mut count = 0;
        for r in chunk {
            s.add(r.sum);
            abs_total.add(r.abs_sum);
            count += r.count;
            resampled += r.resampled;
        }
        means.push(s.total() / F::lit(count as f64));
    }
    let r = F::from_usize_lossy(shifts);
    let mean = means.iter().copied().sum::<F>() / r;
    let var = means.iter().map(|&m| (m - mean) * (m - mean)).sum::<F>() / (r - F::one());
    let samples = per_shift * shifts as u64;
    let n = F::lit(samples as f64);
    let resolution = n.sqrt() * F::epsilon() * (F::one() + abs_total.total() / n);
    Ok(MahlerEstimate {
        value: mean,
        std_error: (var / r).sqrt().max(resolution),
        samples,
        method: match opts.sampling {
            Sampling::Qmc => Method::Qmc,
            Sampling::Mc => Method::Mc,
        },
        resampled,
    })
}
