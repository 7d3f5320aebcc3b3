//! Meander classes and loop polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Which pair of partition classes forms the two sides.
///
/// The first named class is the top (`α`), the second the bottom (`β`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MeanderClass {
    /// NC(n) × NC(n).
    Full,
    /// Int(n) × NC(n).
    ShallowTop,
    /// Int(n) × Int(n).
    Thin,
    /// Int(n) × {rainbow(n)}.
    SemiShallowTop,
}

impl MeanderClass {
    pub const ALL: [MeanderClass; 4] = [
        MeanderClass::Full,
        MeanderClass::ShallowTop,
        MeanderClass::Thin,
        MeanderClass::SemiShallowTop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeanderClass::Full => "full",
            MeanderClass::ShallowTop => "shallow-top",
            MeanderClass::Thin => "thin",
            MeanderClass::SemiShallowTop => "semi",
        }
    }

    /// Largest `n` handled by exhaustive enumeration by default.
    pub fn budget(self) -> usize {
        match self {
            MeanderClass::Full => 9,
            MeanderClass::ShallowTop => 10,
            MeanderClass::Thin | MeanderClass::SemiShallowTop => 16,
        }
    }

    /// Number of `(α, β)` pairs of order `n`.
    pub fn pair_count(self, n: usize) -> BigUint {
        let two = BigUint::from(2u32).pow(n as u32 - 1);
        let cat = catalan(n);
        match self {
            MeanderClass::Full => &cat * &cat,
            MeanderClass::ShallowTop => two * cat,
            MeanderClass::Thin => &two * &two,
            MeanderClass::SemiShallowTop => two,
        }
    }
}

impl fmt::Display for MeanderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeanderClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "nc-nc" => Ok(MeanderClass::Full),
            "shallow-top" | "st" => Ok(MeanderClass::ShallowTop),
            "thin" => Ok(MeanderClass::Thin),
            "semi" | "semi-shallow-top" => Ok(MeanderClass::SemiShallowTop),
            _ => Err(Error::InvalidArgument(format!(
                "unknown meander class {s:?}"
            ))),
        }
    }
}

impl Serialize for MeanderClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// `Cat_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of pairs of order `n` with `k` loops, for `k = 1..=n`.
///
/// `coeffs()[k - 1]` is the coefficient of `ℓ^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopPolynomial {
    n: usize,
    class: MeanderClass,
    coeffs: Vec<BigUint>,
}

impl LoopPolynomial {
    /// From counts by loop number, `counts[k - 1]` for `k = 1..=n`.
    pub fn new(class: MeanderClass, n: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} loop counts, got {}",
                counts.len()
            )));
        }
        Ok(Self {
            n,
            class,
            coeffs: counts,
        })
    }

    /// From counts in the norm grading: `by_norm[r]` pairs with `‖α⁻¹β‖ = r`,
    /// which have `n - r` loops.
    pub fn from_norm_grading(class: MeanderClass, n: usize, by_norm: &[BigUint]) -> Result<Self> {
        if by_norm.len() > n {
            return Err(Error::InvalidArgument(format!(
                "norm grading of order {n} has at most {n} entries"
            )));
        }
        let mut coeffs = vec![BigUint::zero(); n];
        for (r, c) in by_norm.iter().enumerate() {
            coeffs[n - 1 - r] = c.clone();
        }
        Self::new(class, n, coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> MeanderClass {
        self.class
    }

    /// Coefficient of `ℓ^k`; zero outside `1..=n`.
    pub fn coeff(&self, k: usize) -> BigUint {
        if k == 0 || k > self.n {
            return BigUint::zero();
        }
        self.coeffs[k - 1].clone()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Counts by `‖α⁻¹β‖ = n - k`, index `r` for `r = 0..n`.
    pub fn to_norm_grading(&self) -> Vec<BigUint> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Value at `ℓ = 1`: the number of pairs.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn evaluate(&self, l: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc + BigInt::from(c.clone())) * l;
        }
        acc
    }

    /// CSV rows `n,k,count` without header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.n, i + 1, c));
        }
        out
    }

    pub const CSV_HEADER: &'static str = "n,k,count";
}

impl Serialize for LoopPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [BigUint]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (i, c) in self.0.iter().enumerate() {
                    map.serialize_entry(&(i + 1).to_string(), &c.to_string())?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("class", &self.class)?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn catalan_and_binomials() {
        let cats: Vec<_> = (1..=10).map(catalan).collect();
        assert_eq!(cats.last().unwrap(), &big(16796));
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(2, 3), big(0));
    }

    #[test]
    fn pair_counts() {
        assert_eq!(MeanderClass::Full.pair_count(3), big(25));
        assert_eq!(MeanderClass::ShallowTop.pair_count(3), big(20));
        assert_eq!(MeanderClass::Thin.pair_count(3), big(16));
        assert_eq!(MeanderClass::SemiShallowTop.pair_count(3), big(4));
    }

    #[test]
    fn polynomial_json_and_csv() {
        let p = LoopPolynomial::new(MeanderClass::Full, 2, vec![big(2), big(2)]).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"n":2,"class":"full","coeffs":{"1":"2","2":"2"}}"#
        );
        assert_eq!(p.csv_rows(), "2,1,2\n2,2,2\n");
        assert_eq!(p.evaluate(&BigInt::from(2)), BigInt::from(12));
        assert_eq!(p.total(), big(4));
    }

    #[test]
    fn norm_grading_round_trip() {
        let p = LoopPolynomial::new(MeanderClass::Thin, 3, vec![big(4), big(8), big(4)]).unwrap();
        let r = p.to_norm_grading();
        assert_eq!(
            LoopPolynomial::from_norm_grading(MeanderClass::Thin, 3, &r).unwrap(),
            p
        );
        assert_eq!(p.coeff(0), big(0));
        assert_eq!(p.coeff(4), big(0));
    }

    #[test]
    fn class_names_parse() {
        for c in MeanderClass::ALL {
            assert_eq!(c.name().parse::<MeanderClass>().unwrap(), c);
        }
        assert!("bogus".parse::<MeanderClass>().is_err());
    }
}
