use num_bigint::BigInt;
use num_traits::{Num, Signed};

use super::MahlerError;
use crate::poly::LaurentPolynomial;
use crate::resultant::determinant;

/// Square integer matrix with determinant `+-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMatrix {
    entries: Vec<Vec<i64>>,
}

impl UnimodularMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, MahlerError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(MahlerError::NotSquare);
        }
        let det = determinant(
            entries
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        if det.abs() != BigInt::from(1) {
            return Err(MahlerError::NotUnimodular { det: det.abs().to_string() });
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// `P(y^V)`: variable `i` becomes the monomial `prod_j y_j^{V[i][j]}`, so a
/// term with exponent `e` moves to `V^T e`. The Mahler measure is unchanged.
pub fn apply_unimodular<T: Clone + Num>(
    p: &LaurentPolynomial<T>,
    v: &UnimodularMatrix,
) -> Result<LaurentPolynomial<T>, MahlerError> {
    let d = v.dim();
    if p.nvars() != d {
        return Err(MahlerError::DimensionMismatch {
            expected: d,
            found: p.nvars(),
        });
    }
    Ok(p.map_exponents(p.vars().to_vec(), |e| {
        (0..d).map(|j| (0..d).map(|i| e[i] * v.entries[i][j]).sum()).collect()
    }))
}
