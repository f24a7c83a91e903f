//! Exact resultants: Sylvester determinants, the closed form for two
//! trinomials with the same support, and the explicit resultants whose
//! Mahler measures have closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use thiserror::Error;

use crate::poly::{LaurentPolynomial, UnivariatePoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("resultant of two constants is undefined")]
    BothConstant,
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("trinomial support {{0, {p}, {q}}} needs 0 < p < q and gcd(p, q) = 1")]
    InvalidTrinomial { p: u32, q: u32 },
    #[error("need at least {min} terms, got {ell}")]
    TooFewTerms { ell: usize, min: usize },
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every division is exact over an integral domain, so `T` may be `BigInt`
/// as well as a field.
pub fn determinant<T: Clone + Num>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        T::zero() - det
    } else {
        det
    }
}

/// The `(m + n) x (m + n)` Sylvester matrix of `f` (degree `m`) and `g`
/// (degree `n`): `n` shifted rows of `f` followed by `m` shifted rows of `g`,
/// coefficients in descending order.
pub fn sylvester_matrix<T: Clone + Num>(f: &UnivariatePoly<T>, g: &UnivariatePoly<T>) -> Vec<Vec<T>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = vec![vec![T::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = g.coeff(n - j);
        }
    }
    rows
}

/// `Res(f, g) = det Syl(f, g)`, which vanishes exactly when `f` and `g` have a
/// common root.
pub fn sylvester_resultant<T: Clone + Num>(
    f: &UnivariatePoly<T>,
    g: &UnivariatePoly<T>,
) -> Result<T, ResultantError> {
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(ResultantError::ZeroPolynomial),
    };
    if df == 0 && dg == 0 {
        return Err(ResultantError::BothConstant);
    }
    Ok(determinant(sylvester_matrix(f, g)))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Two monic trinomials `A + B t^p + t^q` and `C + E t^p + t^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialPair {
    p: u32,
    q: u32,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub e: BigRational,
}

/// Checks `0 < p < q`, `gcd(p, q) = 1`.
pub fn check_trinomial_exponents(p: u32, q: u32) -> Result<(), ResultantError> {
    if p == 0 || p >= q || p.gcd(&q) != 1 {
        return Err(ResultantError::InvalidTrinomial { p, q });
    }
    Ok(())
}

impl TrinomialPair {
    pub fn new(
        p: u32,
        q: u32,
        a: BigRational,
        b: BigRational,
        c: BigRational,
        e: BigRational,
    ) -> Result<Self, ResultantError> {
        check_trinomial_exponents(p, q)?;
        Ok(Self { p, q, a, b, c, e })
    }

    pub fn from_ints(p: u32, q: u32, a: i64, b: i64, c: i64, e: i64) -> Result<Self, ResultantError> {
        Self::new(p, q, rat(a), rat(b), rat(c), rat(e))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The two trinomials as dense polynomials.
    pub fn polys(&self) -> (UnivariatePoly<BigRational>, UnivariatePoly<BigRational>) {
        let build = |c0: &BigRational, cp: &BigRational| {
            let mut v = vec![BigRational::zero(); self.q as usize + 1];
            v[0] = c0.clone();
            v[self.p as usize] = cp.clone();
            v[self.q as usize] = BigRational::one();
            UnivariatePoly::new(v)
        };
        (build(&self.a, &self.b), build(&self.c, &self.e))
    }
}

/// `(C - A)^q - (EA - BC)^p (B - E)^(q - p)`.
pub fn trinomial_resultant_closed(tp: &TrinomialPair) -> BigRational {
    let (p, q) = (tp.p as usize, tp.q as usize);
    let first = num_traits::pow(&tp.c - &tp.a, q);
    let second = num_traits::pow(&tp.e * &tp.a - &tp.b * &tp.c, p) * num_traits::pow(&tp.b - &tp.e, q - p);
    first - second
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

type RatLaurent = LaurentPolynomial<BigRational>;

/// `det [[a, b, c], [d, e, f], [g, h, i]]` in nine variables: the resultant of
/// three generic affine-linear forms in two unknowns.
pub fn det3_resultant() -> RatLaurent {
    let vars = names(&["a", "b", "c", "d", "e", "f", "g", "h", "i"]);
    let mut terms = Vec::new();
    for (perm, sign) in [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([2, 1, 0], -1),
    ] {
        let mut e = vec![0i64; 9];
        for (row, col) in perm.iter().enumerate() {
            e[3 * row + col] = 1;
        }
        terms.push((e, rat(sign)));
    }
    RatLaurent::from_terms(vars, terms)
}

/// `(x - 1)(y - 1) - (z - 1)(w - 1)`, the determinant after eliminating the
/// homogeneous variables.
pub fn dim4_reduced_poly() -> RatLaurent {
    let vars = names(&["x", "y", "z", "w"]);
    let v = |i| RatLaurent::var(vars.clone(), i);
    let one = RatLaurent::constant(vars.clone(), rat(1));
    &(&(&v(0) - &one) * &(&v(1) - &one)) - &(&(&v(2) - &one) * &(&v(3) - &one))
}

/// `1 + s_1 + ... + s_ell`.
pub fn general_row_resultant_mm_form(ell: usize) -> Result<RatLaurent, ResultantError> {
    if ell < 1 {
        return Err(ResultantError::TooFewTerms { ell, min: 1 });
    }
    let vars: Vec<String> = (1..=ell).map(|j| format!("s{j}")).collect();
    let mut terms = vec![(vec![0; ell], rat(1))];
    for j in 0..ell {
        let mut e = vec![0; ell];
        e[j] = 1;
        terms.push((e, rat(1)));
    }
    Ok(RatLaurent::from_terms(vars, terms))
}

/// `sum_{j=0}^{ell} (-1)^j x_{1j} x_{00}^{ell-j} x_{01}^j`, the resultant of
/// `A_0 = {0, 1}` and `A_1 = {0, ..., ell}` in the coefficient variables.
pub fn general_row_resultant(ell: usize) -> Result<RatLaurent, ResultantError> {
    if ell < 1 {
        return Err(ResultantError::TooFewTerms { ell, min: 1 });
    }
    let mut vars = names(&["x00", "x01"]);
    vars.extend((0..=ell).map(|j| format!("x1{j}")));
    let n = vars.len();
    let terms = (0..=ell).map(|j| {
        let mut e = vec![0i64; n];
        e[0] = (ell - j) as i64;
        e[1] = j as i64;
        e[2 + j] = 1;
        (e, rat(if j % 2 == 0 { 1 } else { -1 }))
    });
    Ok(RatLaurent::from_terms(vars, terms))
}

/// `Z (C - 1)^q - (E - C)^p (1 - E)^(q - p)`, a three-variable polynomial with
/// the same Mahler measure as the trinomial-pair resultant.
pub fn trinomial_reduced_poly(p: u32, q: u32) -> Result<RatLaurent, ResultantError> {
    check_trinomial_exponents(p, q)?;
    let vars = names(&["Z", "C", "E"]);
    let v = |i| RatLaurent::var(vars.clone(), i);
    let one = RatLaurent::constant(vars.clone(), rat(1));
    let lhs = &v(0) * &(&v(1) - &one).pow(q);
    let rhs = &(&v(2) - &v(1)).pow(p) * &(&one - &v(2)).pow(q - p);
    Ok(&lhs - &rhs)
}

/// `(C - A)^q - (EA - BC)^p (B - E)^(q - p)` as a polynomial in the
/// coefficients `A, B, C, E` (leading coefficients dehomogenized to 1).
pub fn trinomial_resultant_poly(p: u32, q: u32) -> Result<RatLaurent, ResultantError> {
    check_trinomial_exponents(p, q)?;
    let vars = names(&["A", "B", "C", "E"]);
    let v = |i| RatLaurent::var(vars.clone(), i);
    let (a, b, c, e) = (v(0), v(1), v(2), v(3));
    let first = (&c - &a).pow(q);
    let second = &(&(&e * &a) - &(&b * &c)).pow(p) * &(&b - &e).pow(q - p);
    Ok(&first - &second)
}
