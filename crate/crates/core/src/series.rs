//! Truncated bivariate series `Σ_n c_n(t) z^n` with exact rational coefficients.
//!
//! Coefficients are stored as ordinary `z^n` coefficients; the `n!` of an
//! exponential generating function is applied only when a triangle row is read.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::oracles::recurrence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("square root needs constant term 1, found {0}")]
    ConstantTerm(BigRational),
    #[error("requested z-order {n} exceeds the truncation order {order}")]
    BeyondOrder { n: usize, order: usize },
    #[error("coefficient of t^{k} z^{n} times {n}! is not an integer: {value}")]
    NonIntegral { n: usize, k: usize, value: BigRational },
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
}

pub const MAX_ORDER: usize = 12;

/// A polynomial in `t` as its coefficient list (index = power of `t`).
type TPoly = Vec<BigRational>;

fn trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn tpoly_add(a: &[BigRational], b: &[BigRational]) -> TPoly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Zero::zero) + b.get(i).cloned().unwrap_or_else(Zero::zero)
            })
            .collect(),
    )
}

fn tpoly_mul(a: &[BigRational], b: &[BigRational]) -> TPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<TPoly>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from `z^n` coefficients, padding with zeros.
    pub fn new(order: usize, mut coeffs: Vec<Vec<BigRational>>) -> Self {
        coeffs.resize(order + 1, Vec::new());
        coeffs.truncate(order + 1);
        TruncatedSeries {
            coeffs: coeffs.into_iter().map(trim).collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![vec![BigRational::one()]])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n` as a list of `t`-coefficients, trailing zeros removed.
    pub fn coeff(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    pub fn coeff_t(&self, n: usize, k: usize) -> BigRational {
        self.coeffs[n].get(k).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            order,
            (0..=order)
                .map(|n| tpoly_add(&self.coeffs[n], &other.coeffs[n]))
                .collect(),
        )
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(Vec::new(), |acc, i| {
                    tpoly_add(&acc, &tpoly_mul(&self.coeffs[i], &other.coeffs[n - i]))
                })
            })
            .collect();
        Self::new(order, coeffs)
    }

    /// Applies `t ↦ c·t`.
    pub fn substitute_t_scale(&self, c: &BigInt) -> Self {
        let c = BigRational::from_integer(c.clone());
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| {
                let mut power = BigRational::one();
                p.iter()
                    .map(|a| {
                        let v = a * &power;
                        power *= &c;
                        v
                    })
                    .collect()
            })
            .collect();
        Self::new(self.order(), coeffs)
    }

    /// The unique square root with constant term 1, degree by degree:
    /// `2·S_n = s_n − Σ_{i=1}^{n-1} S_i·S_{n−i}`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff_t(0, 0);
        if !(self.coeffs[0].len() == 1 && c0.is_one()) {
            let lead = if self.coeffs[0].len() > 1 {
                BigRational::zero()
            } else {
                c0
            };
            return Err(SeriesError::ConstantTerm(lead));
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut root: Vec<TPoly> = vec![vec![BigRational::one()]];
        for n in 1..=self.order() {
            let mut rhs = self.coeffs[n].clone();
            for i in 1..n {
                let prod = tpoly_mul(&root[i], &root[n - i]);
                rhs = tpoly_add(&rhs, &prod.iter().map(|v| -v).collect::<Vec<_>>());
            }
            root.push(trim(rhs.iter().map(|v| v * &half).collect()));
        }
        Ok(Self::new(self.order(), root))
    }

    /// Entries `n!·[t^k z^n]` for `k = 1..=n`, each required to be an integer.
    pub fn egf_row(&self, n: usize) -> Result<Vec<BigInt>, SeriesError> {
        if n > self.order() {
            return Err(SeriesError::BeyondOrder {
                n,
                order: self.order(),
            });
        }
        let fact = BigRational::from_integer((1..=n).map(BigInt::from).product());
        (1..=n)
            .map(|k| {
                let v = self.coeff_t(n, k) * &fact;
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(SeriesError::NonIntegral { n, k, value: v })
                }
            })
            .collect()
    }
}

/// `A(t,z) = 1 + Σ_{n≥1} t·A_n(t) z^n / n!` truncated at `z^order`, with `A_n`
/// taken from the Eulerian recurrence.
pub fn a_series(order: usize) -> Result<TruncatedSeries, SeriesError> {
    if order > MAX_ORDER {
        return Err(SeriesError::OrderTooLarge(order));
    }
    let mut coeffs = vec![vec![BigRational::one()]];
    let mut fact = BigInt::one();
    for n in 1..=order {
        fact *= n;
        let mut c = vec![BigRational::zero()];
        c.extend(
            recurrence::eulerian(n)
                .into_iter()
                .take(n)
                .map(|a| BigRational::new(a, fact.clone())),
        );
        coeffs.push(c);
    }
    Ok(TruncatedSeries::new(order, coeffs))
}

/// Row `n` of the triangle `T(n,k)` read off `√A(2t,z)`.
pub fn sqrt_a2_row(n: usize) -> Result<Vec<BigInt>, SeriesError> {
    let root = a_series(n)?.substitute_t_scale(&BigInt::from(2)).sqrt()?;
    let row = root.egf_row(n)?;
    debug_assert!(row.iter().all(|v| !v.is_negative()));
    Ok(row)
}
