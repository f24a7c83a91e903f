use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Num, Zero};

use super::{Coefficient, UnivariatePoly};
use crate::scalar::Real;

/// Sparse multivariate Laurent polynomial with named variables.
///
/// Exponent vectors have one entry per variable; zero coefficients are never
/// stored. Arithmetic between polynomials over different variable lists works
/// on the union of the lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial<T> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, T>,
}

impl<T: Clone + Num> LaurentPolynomial<T> {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, c: T) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    /// The variable `vars[index]`.
    pub fn var(vars: Vec<String>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, T::one())
    }

    pub fn monomial(vars: Vec<String>, exponents: Vec<i64>, c: T) -> Self {
        assert_eq!(vars.len(), exponents.len(), "exponent length");
        let mut p = Self::zero(vars);
        p.add_term(exponents, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, T)>>(vars: Vec<String>, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &T)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> T {
        self.terms.get(exponents).cloned().unwrap_or_else(T::zero)
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    /// Drops variables that never occur.
    pub fn compact(&self) -> Self {
        let keep = self.active_vars();
        Self::from_terms(
            keep.iter().map(|&i| self.vars[i].clone()).collect(),
            self.terms
                .iter()
                .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())),
        )
    }

    /// The univariate polynomial obtained after dividing by the lowest power
    /// of the only active variable; `None` when more than one variable occurs.
    /// Constants give a degree-0 polynomial.
    pub fn to_univariate(&self) -> Option<UnivariatePoly<T>> {
        let active = self.active_vars();
        match active.as_slice() {
            [] => Some(UnivariatePoly::constant(self.coefficient(&vec![0; self.nvars()]))),
            [v] => {
                let low = self.terms.keys().map(|e| e[*v]).min()?;
                let high = self.terms.keys().map(|e| e[*v]).max()?;
                let mut coeffs = vec![T::zero(); (high - low) as usize + 1];
                for (e, c) in &self.terms {
                    coeffs[(e[*v] - low) as usize] = c.clone();
                }
                Some(UnivariatePoly::new(coeffs))
            }
            _ => None,
        }
    }

    /// Applies an exponent map term by term, merging collisions.
    pub fn map_exponents<G: Fn(&[i64]) -> Vec<i64>>(&self, vars: Vec<String>, g: G) -> Self {
        Self::from_terms(vars, self.terms.iter().map(|(e, c)| (g(e), c.clone())))
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        self.map_exponents(self.vars.clone(), |e| {
            e.iter().zip(shift).map(|(a, b)| a + b).collect()
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), T::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses `self` over `vars`, which must contain every active variable.
    fn over(&self, vars: &[String]) -> Self {
        if self.vars == vars {
            return self.clone();
        }
        let index: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable in union"))
            .collect();
        self.map_exponents(vars.to_vec(), |e| {
            let mut out = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                out[index[i]] += x;
            }
            out
        })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (self.over(&vars), other.over(&vars))
    }

    /// Evaluates at a point given in variable order.
    pub fn eval<F: Real>(&self, point: &[Complex<F>]) -> Complex<F>
    where
        T: Coefficient,
    {
        assert_eq!(point.len(), self.nvars(), "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.to_complex::<F>(), |acc, (&k, z)| acc * z.powi(k as i32))
            })
            .fold(Complex::zero(), |a, b| a + b)
    }
}

impl<T: Clone + Num> Add for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn add(self, rhs: Self) -> LaurentPolynomial<T> {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn neg(self) -> LaurentPolynomial<T> {
        LaurentPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<T: Clone + Num + Neg<Output = T>> Sub for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Clone + Num> Mul for &LaurentPolynomial<T> {
    type Output = LaurentPolynomial<T>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> LaurentPolynomial<T> {
        let (a, b) = self.aligned(rhs);
        let mut out = LaurentPolynomial::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T> fmt::Display for LaurentPolynomial<T>
where
    T: Clone + Num + PartialOrd + Neg<Output = T> + fmt::Display,
{
    /// Writes the polynomial in the syntax accepted by the parser, highest
    /// exponent vectors first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < T::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
