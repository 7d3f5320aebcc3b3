//! Truncated power series in `X` without constant term.

use num_bigint::BigInt;
use serde::Serialize;

use super::poly::{LaurentPoly, TermRecord};
use crate::error::{Error, Result};

/// `c[1] X + .. + c[N] X^N` with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    /// `coeffs[k]` is `c[k + 1]`.
    coeffs: Vec<LaurentPoly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be positive");
        Self {
            coeffs: vec![LaurentPoly::zero(); order],
        }
    }

    /// The series `X`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// From `c[1], c[2], ..`; missing coefficients are zero, extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// From a rule `n ↦ c[n]`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> LaurentPoly) -> Self {
        Self::from_coeffs(order, (1..=order).map(f))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c[n]` for `1 ≤ n ≤ N`.
    pub fn coefficient(&self, n: usize) -> Result<&LaurentPoly> {
        if n == 0 || n > self.order() {
            return Err(Error::IndexOutOfRange {
                index: n,
                order: self.order(),
            });
        }
        Ok(&self.coeffs[n - 1])
    }

    /// `c[n]`, panicking outside `1..=N`.
    pub fn c(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at `X^N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 1..n {
            if self.c(i).is_zero() {
                continue;
            }
            for j in 1..=n - i {
                if other.c(j).is_zero() {
                    continue;
                }
                out.coeffs[i + j - 1] += &(self.c(i) * other.c(j));
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a fixed Laurent polynomial.
    pub fn scalar_mul(&self, p: &LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// `Σ c[s] · inner^s`, i.e. `self(inner(X))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        let mut out = Self::zero(self.order());
        let mut power = inner.clone();
        for s in 1..=self.order() {
            if !self.c(s).is_zero() {
                out = out.add(&power.scalar_mul(self.c(s)))?;
            }
            if s < self.order() {
                power = power.mul(inner)?;
            }
        }
        Ok(out)
    }

    /// `self · (1 - d)⁻¹`.
    pub fn div_one_minus(&self, d: &Self) -> Result<Self> {
        self.check(d)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 1..=n {
            let mut acc = self.c(k).clone();
            for j in 1..k {
                if !d.c(j).is_zero() && !out.c(k - j).is_zero() {
                    acc += &(d.c(j) * out.c(k - j));
                }
            }
            out.coeffs[k - 1] = acc;
        }
        Ok(out)
    }

    /// Applies a coefficient map, e.g. a specialization of the variables.
    pub fn map(&self, f: impl FnMut(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// True when every coefficient is a polynomial with nonnegative coefficients.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_nonnegative)
    }

    pub fn to_records(&self) -> Vec<CoefficientRecord> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| CoefficientRecord {
                n: k + 1,
                terms: c.to_records(),
            })
            .collect()
    }

    /// JSON array of `{n, terms: [{eY, eA, eB, coeff}]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }
}

/// Serialized coefficient `c[n]`.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRecord {
    pub n: usize,
    pub terms: Vec<TermRecord>,
}
