//! Support families of sparse resultants and the dimension of their Newton
//! polytopes.
//!
//! A family is `n + 1` finite point sets `A_0, ..., A_n` in `Z^n`. Callers
//! assert that the family is essential; this module only enforces the
//! necessary condition `k_i >= 2` on every support cardinality.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("support {index} has {cardinality} point(s); the k_i must be greater than 1")]
    SupportTooSmall { index: usize, cardinality: usize },
    #[error("a family in Z^{n} needs {expected} supports, got {found}")]
    WrongSupportCount { n: usize, expected: usize, found: usize },
    #[error("point {point:?} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        point: Vec<i64>,
        expected: usize,
        found: usize,
    },
    #[error("support contains the point {0:?} twice")]
    DuplicatePoint(Vec<i64>),
    #[error("empty support")]
    EmptySupport,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("binomial support {index} is not of the form {{0, eta*e_i}}: {points:?}")]
    NotAxisBinomial { index: usize, points: Vec<Vec<i64>> },
    #[error("binomial supports {first} and {second} use the same axis {axis}")]
    RepeatedAxis {
        first: usize,
        second: usize,
        axis: usize,
    },
    #[error("family is {found:?}, expected {expected:?}")]
    WrongClass {
        expected: FamilyClass,
        found: FamilyClass,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An exponent vector `a_ij`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportPoint(Vec<i64>);

impl SupportPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn translate(&self, by: &[i64]) -> SupportPoint {
        SupportPoint(self.0.iter().zip(by).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for SupportPoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// A finite set of lattice points, stored sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    points: Vec<SupportPoint>,
}

impl Support {
    /// Builds a support, rejecting repeated points. Single-point supports are
    /// representable so that the `k_i >= 2` check can report them.
    pub fn new<I, P>(points: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = P>,
        P: Into<SupportPoint>,
    {
        let mut points: Vec<SupportPoint> = points.into_iter().map(Into::into).collect();
        if points.is_empty() {
            return Err(LatticeError::EmptySupport);
        }
        let dim = points[0].dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(LatticeError::DimensionMismatch {
                point: bad.0.clone(),
                expected: dim,
                found: bad.dim(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(LatticeError::DuplicatePoint(w[0].0.clone()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[SupportPoint] {
        &self.points
    }

    /// `k_i`.
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// The same support shifted so that its lexicographically smallest point
    /// is the origin.
    pub fn anchored(&self) -> Support {
        let origin = self.points[0].0.clone();
        Support {
            points: self.points.iter().map(|p| p.translate(&origin)).collect(),
        }
    }

    /// If the support is exactly `{0, eta * e_axis}` with `eta > 0`, returns
    /// `(axis, eta)`.
    pub fn axis_binomial(&self) -> Option<(usize, i64)> {
        if self.points.len() != 2 || self.points[0].0.iter().any(|&c| c != 0) {
            return None;
        }
        let other = &self.points[1].0;
        let mut nonzero = other.iter().enumerate().filter(|(_, &c)| c != 0);
        let (axis, &eta) = nonzero.next()?;
        if nonzero.next().is_some() || eta <= 0 {
            return None;
        }
        Some((axis, eta))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, c) in p.0.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// The supports `A_0, ..., A_n` of a square sparse system in `n` unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    n: usize,
    supports: Vec<Support>,
}

impl SupportFamily {
    pub fn new(supports: Vec<Support>) -> Result<Self, LatticeError> {
        let first = supports.first().ok_or(LatticeError::WrongSupportCount {
            n: 0,
            expected: 1,
            found: 0,
        })?;
        let n = first.dim();
        if n == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if supports.len() != n + 1 {
            return Err(LatticeError::WrongSupportCount {
                n,
                expected: n + 1,
                found: supports.len(),
            });
        }
        for s in &supports {
            if s.dim() != n {
                return Err(LatticeError::DimensionMismatch {
                    point: s.points[0].0.clone(),
                    expected: n,
                    found: s.dim(),
                });
            }
        }
        Ok(Self { n, supports })
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    /// The cardinalities `k_0, ..., k_n`.
    pub fn cardinalities(&self) -> Vec<usize> {
        self.supports.iter().map(Support::cardinality).collect()
    }

    /// `k = sum k_i`.
    pub fn k(&self) -> usize {
        self.supports.iter().map(Support::cardinality).sum()
    }

    fn check_essential_candidate(&self) -> Result<(), LatticeError> {
        match self
            .supports
            .iter()
            .enumerate()
            .find(|(_, s)| s.cardinality() < 2)
        {
            Some((index, s)) => Err(LatticeError::SupportTooSmall {
                index,
                cardinality: s.cardinality(),
            }),
            None => Ok(()),
        }
    }
}

impl FromStr for SupportFamily {
    type Err = LatticeError;

    /// One support per line, points separated by `;` and coordinates by `,`,
    /// e.g. `0,0;1,0;0,1`. Blank lines and `#` comments are skipped.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut supports = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| LatticeError::Parse {
                line: lineno + 1,
                message,
            };
            let mut points = Vec::new();
            for point in line.split(';') {
                let coords = point
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|e| parse_err(format!("bad coordinate {:?}: {e}", c.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                points.push(coords);
            }
            supports.push(Support::new(points).map_err(|e| match e {
                LatticeError::Parse { .. } => e,
                other => parse_err(other.to_string()),
            })?);
        }
        if supports.is_empty() {
            return Err(LatticeError::Parse {
                line: 0,
                message: "no supports".into(),
            });
        }
        SupportFamily::new(supports)
    }
}

/// The case analysis of the dimension-one to dimension-four theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyClass {
    /// Every `k_i = 2`: the resultant is a binomial.
    DimOne,
    /// One trinomial support, the rest binomial.
    DimTwo,
    /// One support with four points, the rest binomial.
    DimThreeA,
    /// Two trinomial supports, the rest binomial.
    DimThreeB,
    /// `n = 2` and all three supports are the standard triangle (common translate).
    DimFourDet,
    /// One support with `l >= 5` points, the rest binomial.
    GeneralRowReduced,
    Other,
}

impl FamilyClass {
    /// The Newton-polytope dimension implied by the class, when it is fixed.
    pub fn implied_dim(self) -> Option<i64> {
        match self {
            FamilyClass::DimOne => Some(1),
            FamilyClass::DimTwo => Some(2),
            FamilyClass::DimThreeA | FamilyClass::DimThreeB => Some(3),
            FamilyClass::DimFourDet => Some(4),
            FamilyClass::GeneralRowReduced | FamilyClass::Other => None,
        }
    }
}

/// Dimension of the Newton polytope of the resultant, `k - 2n - 1`.
pub fn resultant_polytope_dim(family: &SupportFamily) -> Result<i64, LatticeError> {
    family.check_essential_candidate()?;
    Ok(family.k() as i64 - 2 * family.n() as i64 - 1)
}

pub fn classify_family(family: &SupportFamily) -> Result<FamilyClass, LatticeError> {
    family.check_essential_candidate()?;
    let ks = family.cardinalities();
    let count = |k: usize| ks.iter().filter(|&&x| x == k).count();
    let twos = count(2);
    let others = ks.len() - twos;

    let class = if others == 0 {
        FamilyClass::DimOne
    } else if others == 1 {
        match ks.iter().copied().find(|&k| k != 2) {
            Some(3) => FamilyClass::DimTwo,
            Some(4) => FamilyClass::DimThreeA,
            _ => FamilyClass::GeneralRowReduced,
        }
    } else if others == 2 && count(3) == 2 {
        FamilyClass::DimThreeB
    } else if family.n() == 2 && count(3) == 3 && is_determinantal(family) {
        FamilyClass::DimFourDet
    } else {
        FamilyClass::Other
    };
    Ok(class)
}

fn is_determinantal(family: &SupportFamily) -> bool {
    let triangle = Support::new([vec![0, 0], vec![1, 0], vec![0, 1]]).expect("valid triangle");
    let first = &family.supports[0];
    family.supports.iter().all(|s| s == first) && first.anchored() == triangle
}

/// `eta = sum eta_i` over the binomial supports `{0, eta_i e_i}`.
///
/// With `transformed = true` the binomial supports must already be in the
/// normalized form. With `transformed = false` each binomial support is first
/// translated so that its lexicographically smallest point sits at the origin;
/// no `SL(n, Z)` transform is computed in either case. Different binomial rows
/// must use different axes.
///
/// The Mahler-measure multiplier of the dimension 2 and 3 reductions is the
/// number of root-of-unity factors, `prod eta_i`; see [`binomial_multiplier`].
pub fn eta_of_binomial_rows(family: &SupportFamily, transformed: bool) -> Result<i64, LatticeError> {
    Ok(binomial_etas(family, transformed)?.iter().sum())
}

/// `prod eta_i` over the binomial supports, i.e. the number of root-of-unity
/// factors in the resultant and the multiplier of its Mahler measure. Same
/// preconditions as [`eta_of_binomial_rows`]. Equals 1 when there are no
/// binomial supports.
pub fn binomial_multiplier(family: &SupportFamily, transformed: bool) -> Result<i64, LatticeError> {
    Ok(binomial_etas(family, transformed)?.iter().product())
}

/// The `eta_i` of the binomial supports, in support order.
pub fn binomial_etas(family: &SupportFamily, transformed: bool) -> Result<Vec<i64>, LatticeError> {
    family.check_essential_candidate()?;
    let mut axes: Vec<Option<usize>> = vec![None; family.n()];
    let mut etas = Vec::new();
    for (index, support) in family.supports.iter().enumerate() {
        if support.cardinality() != 2 {
            continue;
        }
        let normalized = if transformed {
            support.clone()
        } else {
            support.anchored()
        };
        let (axis, eta) = normalized
            .axis_binomial()
            .ok_or_else(|| LatticeError::NotAxisBinomial {
                index,
                points: support.points.iter().map(|p| p.0.clone()).collect(),
            })?;
        if let Some(first) = axes[axis] {
            return Err(LatticeError::RepeatedAxis {
                first,
                second: index,
                axis,
            });
        }
        axes[axis] = Some(index);
        etas.push(eta);
    }
    Ok(etas)
}

/// Output of the dimension-three reduction `m(Res) = eta * m(Res_{A'_0, A'_1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dim3Reduction {
    /// `sum eta_i` over the binomial rows.
    pub eta: i64,
    /// `prod eta_i`, the Mahler-measure multiplier.
    pub multiplier: i64,
    /// Distinct first coordinates of the first trinomial support.
    pub first: Vec<i64>,
    /// Distinct first coordinates of the second trinomial support.
    pub second: Vec<i64>,
}

impl Dim3Reduction {
    /// `Some((p, q))` when both univariate supports equal `{0, p, q}` with
    /// `0 < p < q` and `gcd(p, q) = 1`.
    pub fn trinomial_normal_form(&self) -> Option<(u32, u32)> {
        if self.first != self.second || self.first.len() != 3 || self.first[0] != 0 {
            return None;
        }
        let (p, q) = (self.first[1], self.first[2]);
        (num_integer::gcd(p, q) == 1).then_some((p as u32, q as u32))
    }
}

/// Reduces a `DimThreeB` family whose binomial rows are normalized along the
/// axes `e_2, ..., e_n` to the pair of univariate supports made of the first
/// coordinates of the two trinomial supports.
pub fn dim3_reduction(family: &SupportFamily) -> Result<Dim3Reduction, LatticeError> {
    let class = classify_family(family)?;
    if class != FamilyClass::DimThreeB {
        return Err(LatticeError::WrongClass {
            expected: FamilyClass::DimThreeB,
            found: class,
        });
    }
    let etas = binomial_etas(family, true)?;
    // The first coordinate belongs to the trinomials.
    for (index, s) in family.supports.iter().enumerate() {
        if s.cardinality() == 2 && s.axis_binomial().map(|(axis, _)| axis) == Some(0) {
            return Err(LatticeError::NotAxisBinomial {
                index,
                points: s.points.iter().map(|p| p.0.clone()).collect(),
            });
        }
    }
    let mut firsts = family
        .supports
        .iter()
        .enumerate()
        .filter(|(_, s)| s.cardinality() == 3)
        .map(|(index, s)| {
            let coords: BTreeSet<i64> = s.points.iter().map(|p| p.0[0]).collect();
            if coords.len() < 2 {
                Err(LatticeError::SupportTooSmall {
                    index,
                    cardinality: coords.len(),
                })
            } else {
                Ok(coords.into_iter().collect::<Vec<_>>())
            }
        });
    let first = firsts.next().expect("two trinomials")?;
    let second = firsts.next().expect("two trinomials")?;
    Ok(Dim3Reduction {
        eta: etas.iter().sum(),
        multiplier: etas.iter().product(),
        first,
        second,
    })
}
