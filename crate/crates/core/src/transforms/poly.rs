//! Laurent polynomials in `Y, A, B` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent triple `(eY, eA, eB)`.
pub type Exponents = [i32; 3];

/// One of the three formal variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Y,
    A,
    B,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::Y => 0,
            Var::A => 1,
            Var::B => 2,
        }
    }
}

/// Exact Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0], 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(e, 1)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn a() -> Self {
        Self::var(Var::A)
    }

    pub fn b() -> Self {
        Self::var(Var::B)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of `(eY, eA, eB)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponents) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `Y^eY A^eA B^eB`.
    pub fn shift(&self, by: Exponents) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0] + by[0], e[1] + by[1], e[2] + by[2]], c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Sets one variable to 1, merging terms.
    pub fn set_one(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            e[v.index()] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// True when it is a polynomial with nonnegative coefficients.
    pub fn is_nonnegative(&self) -> bool {
        self.is_polynomial() && self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of all coefficients, i.e. the value at `Y = A = B = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn evaluate(
        &self,
        y: &BigRational,
        a: &BigRational,
        b: &BigRational,
    ) -> Result<BigRational> {
        let vals = [y, a, b];
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x < 0 && vals[k].is_zero() {
                    return Err(Error::DivisionByZero);
                }
                term *= num_traits::pow::Pow::pow(vals[k], x);
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluation at integer points.
    pub fn evaluate_int(&self, y: i64, a: i64, b: i64) -> Result<BigRational> {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        self.evaluate(&r(y), &r(a), &r(b))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let key = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
                *acc.entry(key).or_default() += c * d;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                write!(f, "{abs}")?;
            }
            for (name, &x) in ["Y", "A", "B"].iter().zip(e) {
                match x {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{x}")?,
                }
            }
        }
        Ok(())
    }
}

/// Serialized term of a series coefficient.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct TermRecord {
    #[serde(rename = "eY")]
    pub e_y: i32,
    #[serde(rename = "eA")]
    pub e_a: i32,
    #[serde(rename = "eB")]
    pub e_b: i32,
    pub coeff: String,
}

impl LaurentPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                e_y: e[0],
                e_a: e[1],
                e_b: e[2],
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-2i32..4, -2i32..4, -2i32..4), -20i64..20), 0..6).prop_map(|ts| {
            let mut p = LaurentPoly::zero();
            for ((y, a, b), c) in ts {
                p.add_term([y, a, b], BigInt::from(c));
            }
            p
        })
    }

    #[test]
    fn thin_quadratic() {
        let q = &(&LaurentPoly::one() + &(&LaurentPoly::a() * &LaurentPoly::b()))
            + &(&(&LaurentPoly::a() + &LaurentPoly::b()) * &LaurentPoly::y());
        assert_eq!(q.len(), 4);
        assert_eq!(q.to_string(), "1 + AB + YB + YA");
        let sq = q.pow(2);
        assert_eq!(
            sq.evaluate_int(1, 1, 1).unwrap(),
            BigRational::from_integer(16.into())
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &LaurentPoly::y() - &LaurentPoly::y();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn negative_exponents_and_zero_values() {
        let p = LaurentPoly::monomial([-1, 0, 0], 3);
        assert!(!p.is_polynomial());
        assert_eq!(p.evaluate_int(0, 1, 1), Err(Error::DivisionByZero));
        assert_eq!(
            p.evaluate_int(2, 1, 1).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn set_one_collapses() {
        let p = &LaurentPoly::a() + &LaurentPoly::b();
        assert_eq!(p.set_one(Var::B), &LaurentPoly::a() + &LaurentPoly::one());
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in arb_poly(), q in arb_poly(), y in 1i64..4, a in 1i64..4, b in 1i64..4) {
            let pv = p.evaluate_int(y, a, b).unwrap();
            let qv = q.evaluate_int(y, a, b).unwrap();
            prop_assert_eq!((&p * &q).evaluate_int(y, a, b).unwrap(), &pv * &qv);
            prop_assert_eq!((&p + &q).evaluate_int(y, a, b).unwrap(), pv + qv);
        }
    }
}
