//! Bernoulli numbers and the series coefficients derived from them.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Number of Bernoulli numbers kept in the tables.
pub(crate) const TABLE_LEN: usize = 64;

/// Exact Bernoulli numbers `B_0..B_{n-1}` with `B_1 = -1/2`.
pub fn bernoulli_exact(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    for m in 0..n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom is now C(m+1, m)
        b.push(-acc / BigRational::from_integer(binom));
    }
    b
}

/// `B_n` as `f64`, `n < TABLE_LEN`.
pub(crate) fn bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        bernoulli_exact(TABLE_LEN)
            .iter()
            .map(|b| b.to_f64().expect("finite"))
            .collect()
    })
}

/// `B_n / (n + 1)!`: `Li_2(z) = sum_n c_n u^{n+1}` with `u = -log(1 - z)`.
pub(crate) fn li2_log_series() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_exact(TABLE_LEN);
        let mut fact = BigInt::one();
        b.iter()
            .enumerate()
            .map(|(n, bn)| {
                fact *= BigInt::from(n + 1);
                (bn / BigRational::from_integer(fact.clone()))
                    .to_f64()
                    .expect("finite")
            })
            .collect()
    })
}

/// Coefficients of `Li_3(z) = sum_N d_N u^{N+1}` with `u = -log(1 - z)`.
///
/// From `dLi_3/du = Li_2(z) / (e^u - 1)`:
/// `d_N = 1/(N+1) * sum_{n+m=N} B_n B_m / ((n+1)! m!)`.
pub(crate) fn li3_log_series() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_exact(TABLE_LEN);
        let mut facts = vec![BigInt::one()];
        for i in 1..=TABLE_LEN + 1 {
            let next = facts[i - 1].clone() * BigInt::from(i);
            facts.push(next);
        }
        (0..TABLE_LEN)
            .map(|big_n| {
                let mut acc = BigRational::zero();
                for n in 0..=big_n {
                    let m = big_n - n;
                    let denom = facts[n + 1].clone() * facts[m].clone();
                    acc += &b[n] * &b[m] / BigRational::from_integer(denom);
                }
                (acc / BigRational::from_integer(BigInt::from(big_n + 1)))
                    .to_f64()
                    .expect("finite")
            })
            .collect()
    })
}
