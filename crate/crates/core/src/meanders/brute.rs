//! Exhaustive enumeration of class pairs.
//!
//! Every pair `(α, β)` contributes to a joint histogram over
//! `(‖α⁻¹β‖, weight(α), weight(β))`; polynomials and series coefficients are
//! read off that histogram. The outer side is split across the worker pool
//! and partial histograms are summed, so the result does not depend on the
//! number of workers.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::class::{LoopPolynomial, MeanderClass};
use super::lemmas::rainbow;
use crate::error::{Error, Result};
use crate::parallel::pool;
use crate::partitions::{enumerate_interval, enumerate_kr_interval, enumerate_nc, NcPartition};
use crate::transforms::LaurentPoly;

/// Hard ceiling of the fixed-width pair kernel.
pub const MAX_ORDER: usize = 32;

type Images = [u8; MAX_ORDER];

/// One side of the pair set, flattened for the inner loop.
struct Side {
    images: Vec<Images>,
    weights: Vec<u8>,
    /// Elements forbidden to meet the other side's mask; zero disables the test.
    masks: Vec<u32>,
}

impl Side {
    fn with_capacity(cap: usize) -> Self {
        Self {
            images: Vec::with_capacity(cap),
            weights: Vec::with_capacity(cap),
            masks: Vec::with_capacity(cap),
        }
    }

    fn push(&mut self, p: &NcPartition, weight: usize, mask: u32) {
        let mut images = [0u8; MAX_ORDER];
        for (i, &x) in p.to_geodesic().images().iter().enumerate() {
            images[i] = x as u8;
        }
        self.images.push(images);
        self.weights.push(weight as u8);
        self.masks.push(mask);
    }

    fn len(&self) -> usize {
        self.images.len()
    }
}

/// Elements of the block containing `n`, other than `n`, as a bitmask.
fn last_block_mask(p: &NcPartition) -> u32 {
    let n = p.n();
    p.block_containing(n - 1)
        .iter()
        .filter(|&&x| x + 1 < n)
        .fold(0, |m, &x| m | 1 << x)
}

fn interval_side(n: usize) -> Result<Side> {
    let mut side = Side::with_capacity(1 << (n - 1));
    for p in enumerate_interval(n)? {
        side.push(&p, p.norm(), 0);
    }
    Ok(side)
}

fn nc_side(n: usize) -> Result<Side> {
    let mut side = Side::with_capacity(1024);
    for p in enumerate_nc(n)? {
        side.push(&p, p.norm(), 0);
    }
    Ok(side)
}

/// Kreweras images of a class side, weighted by `n - 1 - ‖·‖` and carrying
/// the mask of the block containing `n`.
fn kr_side(n: usize, parts: impl Iterator<Item = NcPartition>) -> Side {
    let mut side = Side::with_capacity(1024);
    for p in parts {
        side.push(&p, n - 1 - p.norm(), last_block_mask(&p));
    }
    side
}

/// Histogram of `(‖α⁻¹β‖, weight(α), weight(β))` over a pair set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JointDistribution {
    n: usize,
    counts: Vec<u64>,
}

impl JointDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, r: usize, a: usize, b: usize) -> usize {
        (r * self.n + a) * self.n + b
    }

    /// Number of pairs with `‖α⁻¹β‖ = r` and the given side weights.
    pub fn count(&self, r: usize, a: usize, b: usize) -> u64 {
        if r >= self.n || a >= self.n || b >= self.n {
            return 0;
        }
        self.counts[self.index(r, a, b)]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts by `‖α⁻¹β‖`, index `r = 0..n`.
    pub fn by_norm(&self) -> Vec<u64> {
        let sq = self.n * self.n;
        self.counts.chunks(sq).map(|c| c.iter().sum()).collect()
    }

    /// `Σ count · Y^r A^a B^b`.
    pub fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for r in 0..self.n {
            for a in 0..self.n {
                for b in 0..self.n {
                    let c = self.count(r, a, b);
                    if c > 0 {
                        p.add_term([r as i32, a as i32, b as i32], c.into());
                    }
                }
            }
        }
        p
    }
}

fn joint(n: usize, left: &Side, right: &Side) -> JointDistribution {
    let len = n * n * n;
    let counts = pool().install(|| {
        (0..left.len())
            .into_par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, li| {
                    let mut inv = [0u8; MAX_ORDER];
                    for i in 0..n {
                        inv[left.images[li][i] as usize] = i as u8;
                    }
                    let wa = left.weights[li] as usize;
                    let mask = left.masks[li];
                    for ri in 0..right.len() {
                        if mask & right.masks[ri] != 0 {
                            continue;
                        }
                        let beta = &right.images[ri];
                        let mut composed = [0u8; MAX_ORDER];
                        for (c, &b) in composed.iter_mut().zip(beta.iter()) {
                            *c = inv[b as usize];
                        }
                        let r = n - cycle_count(&composed, n);
                        acc[(r * n + wa) * n + right.weights[ri] as usize] += 1;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    });
    JointDistribution { n, counts }
}

/// Cycles of the permutation stored in the first `n` entries.
#[inline]
fn cycle_count(p: &Images, n: usize) -> usize {
    let mut unseen: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut cycles = 0;
    while unseen != 0 {
        let start = unseen.trailing_zeros() as usize;
        cycles += 1;
        let mut j = start;
        loop {
            unseen &= !(1 << j);
            j = p[j] as usize;
            if j == start {
                break;
            }
        }
    }
    cycles
}

fn check_budget(what: &str, n: usize, budget: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > budget.min(MAX_ORDER) {
        return Err(Error::ResourceLimit {
            what: what.into(),
            n,
            budget: budget.min(MAX_ORDER),
        });
    }
    Ok(())
}

/// Joint distribution of `(‖α⁻¹β‖, ‖α‖, ‖β‖)` over the class pairs.
pub fn joint_distribution(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<JointDistribution> {
    check_budget(&format!("{class} enumeration"), n, budget)?;
    let (left, right) = match class {
        MeanderClass::Full => (nc_side(n)?, nc_side(n)?),
        MeanderClass::ShallowTop => (interval_side(n)?, nc_side(n)?),
        MeanderClass::Thin => (interval_side(n)?, interval_side(n)?),
        MeanderClass::SemiShallowTop => {
            let mut right = Side::with_capacity(1);
            let r = rainbow(n)?;
            right.push(&r, r.norm(), 0);
            (interval_side(n)?, right)
        }
    };
    Ok(joint(n, &left, &right))
}

/// Joint distribution of the cumulant sum: `α` over Kr Int(n), `β` over the
/// Kreweras image of the bottom class, restricted to `Q_α ∩ β(n) = ∅`, with
/// weights `n - 1 - ‖α‖` and `n - 1 - ‖β‖`.
pub fn cumulant_distribution(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<JointDistribution> {
    check_budget(&format!("{class} cumulant enumeration"), n, budget)?;
    let left = kr_side(n, enumerate_kr_interval(n)?.map(|q| q.to_partition()));
    let right = match class {
        MeanderClass::Thin => kr_side(n, enumerate_kr_interval(n)?.map(|q| q.to_partition())),
        MeanderClass::ShallowTop => kr_side(n, enumerate_nc(n)?),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "cumulant sums are defined for thin and shallow-top classes, not {class}"
            )))
        }
    };
    Ok(joint(n, &left, &right))
}

/// `coeffs[k]` = number of class pairs with `k` loops.
pub fn meander_polynomial(class: MeanderClass, n: usize) -> Result<LoopPolynomial> {
    meander_polynomial_with_budget(class, n, class.budget())
}

pub fn meander_polynomial_with_budget(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<LoopPolynomial> {
    let joint = joint_distribution(class, n, budget)?;
    let by_norm: Vec<BigUint> = joint.by_norm().into_iter().map(BigUint::from).collect();
    LoopPolynomial::from_norm_grading(class, n, &by_norm)
}

/// `Σ Y^{‖α⁻¹β‖} A^{‖α‖} B^{‖β‖}` over the class pairs.
pub fn generating_coefficient(class: MeanderClass, n: usize) -> Result<LaurentPoly> {
    generating_coefficient_with_budget(class, n, class.budget())
}

pub fn generating_coefficient_with_budget(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<LaurentPoly> {
    Ok(joint_distribution(class, n, budget)?.to_poly())
}

/// `Σ Y^{‖α⁻¹β‖} A^{n-1-‖α‖} B^{n-1-‖β‖}` over `α ∈ Kr Int(n)`, `β` in the
/// Kreweras image of the bottom class, with trivial Kr-interval meet.
pub fn cumulant_coefficient(class: MeanderClass, n: usize) -> Result<LaurentPoly> {
    cumulant_coefficient_with_budget(class, n, class.budget())
}

pub fn cumulant_coefficient_with_budget(
    class: MeanderClass,
    n: usize,
    budget: usize,
) -> Result<LaurentPoly> {
    Ok(cumulant_distribution(class, n, budget)?.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn order_one_is_a_single_loop() {
        for class in MeanderClass::ALL {
            let p = meander_polynomial(class, 1).unwrap();
            assert_eq!(p.coeffs(), &[big(1)]);
            assert_eq!(
                generating_coefficient(class, 1).unwrap(),
                LaurentPoly::one()
            );
        }
        for class in [MeanderClass::Thin, MeanderClass::ShallowTop] {
            assert_eq!(cumulant_coefficient(class, 1).unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn full_order_two() {
        let p = meander_polynomial(MeanderClass::Full, 2).unwrap();
        assert_eq!(p.coeffs(), &[big(2), big(2)]);
        assert_eq!(p.evaluate(&BigInt::from(2)), BigInt::from(12));
    }

    #[test]
    fn thin_order_two() {
        let expect = &(&(&LaurentPoly::one() + &LaurentPoly::monomial([0, 1, 1], 1))
            + &LaurentPoly::monomial([1, 1, 0], 1))
            + &LaurentPoly::monomial([1, 0, 1], 1);
        assert_eq!(
            generating_coefficient(MeanderClass::Thin, 2).unwrap(),
            expect
        );
    }

    #[test]
    fn totals_match_class_sizes() {
        for class in MeanderClass::ALL {
            for n in 1..=6 {
                let p = meander_polynomial(class, n).unwrap();
                assert_eq!(p.total(), class.pair_count(n), "{class} n = {n}");
            }
        }
    }

    #[test]
    fn budgets_are_enforced() {
        assert!(matches!(
            meander_polynomial(MeanderClass::Full, 10),
            Err(Error::ResourceLimit {
                n: 10,
                budget: 9,
                ..
            })
        ));
        assert!(meander_polynomial(MeanderClass::Full, 0).is_err());
        assert!(cumulant_coefficient(MeanderClass::Full, 3).is_err());
        assert!(meander_polynomial_with_budget(MeanderClass::Thin, 40, 100).is_err());
    }

    #[test]
    fn semi_order_three() {
        let p = generating_coefficient(MeanderClass::SemiShallowTop, 3)
            .unwrap()
            .set_one(crate::transforms::Var::A)
            .set_one(crate::transforms::Var::B);
        let expect = &LaurentPoly::monomial([1, 0, 0], 2) + &LaurentPoly::monomial([2, 0, 0], 2);
        assert_eq!(p, expect);
    }
}
