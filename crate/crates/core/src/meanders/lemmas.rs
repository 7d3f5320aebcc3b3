//! Loop counting and the combinatorial identities behind the closed forms.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::class::{binomial, LoopPolynomial, MeanderClass};
use crate::error::{Error, Result};
use crate::partitions::{CombSubset, NcPartition, SetPartition};

/// Number of loops of the meandric system with top `a` and bottom `b`:
/// `#(α⁻¹β)` on geodesic permutations.
pub fn loop_count(a: &NcPartition, b: &NcPartition) -> Result<usize> {
    let alpha = a.to_geodesic();
    let beta = b.to_geodesic();
    Ok(alpha.inverse().compose(&beta)?.cycle_count())
}

/// Loop count for a comb top `Q ⊔ {n}` over `β` with `Q ∩ β(n) = ∅`:
/// `2·#{c ∈ β′ : Q ∩ c = ∅} + 1 - #β′ + |Q|`, where `β′` drops the block of `n`.
pub fn loop_count_comb(q: &CombSubset, b: &NcPartition) -> Result<usize> {
    let n = b.n();
    if q.n() != n {
        return Err(Error::SizeMismatch {
            left: q.n(),
            right: n,
        });
    }
    let last = b.block_containing(n - 1);
    let hits: Vec<usize> = last
        .iter()
        .filter(|&&x| q.contains(x))
        .map(|x| x + 1)
        .collect();
    if !hits.is_empty() {
        return Err(Error::MeetNotTrivial(hits));
    }
    let rest: Vec<&Vec<usize>> = b.blocks().iter().filter(|c| c.as_slice() != last).collect();
    let untouched = rest
        .iter()
        .filter(|c| c.iter().all(|&x| !q.contains(x)))
        .count();
    Ok(2 * untouched + 1 + q.len() - rest.len())
}

/// The nested pairing `(1,n)(2,n-1)..`, with a middle singleton for odd `n`.
pub fn rainbow(n: usize) -> Result<NcPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut blocks: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![i, n - 1 - i]).collect();
    if n % 2 == 1 {
        blocks.push(vec![n / 2]);
    }
    NcPartition::new(n, blocks)
}

/// Largest ground set accepted by the subset sum.
pub const BINOMIAL_LEMMA_MAX: usize = 20;

/// `hist[q][u]` = number of `Q ⊆ [m]` with `|Q| = q` missing exactly `u` blocks.
pub fn binomial_lemma_histogram(b: &SetPartition) -> Result<Vec<Vec<u64>>> {
    let m = b.n();
    if m > BINOMIAL_LEMMA_MAX {
        return Err(Error::InvalidArgument(format!(
            "subset sum over [{m}] exceeds the limit {BINOMIAL_LEMMA_MAX}"
        )));
    }
    let masks: Vec<u32> = b
        .blocks()
        .iter()
        .map(|c| c.iter().fold(0, |acc, &x| acc | 1 << x))
        .collect();
    let mut hist = vec![vec![0u64; masks.len() + 1]; m + 1];
    for q in 0u32..1 << m {
        let untouched = masks.iter().filter(|&&c| c & q == 0).count();
        hist[q.count_ones() as usize][untouched] += 1;
    }
    Ok(hist)
}

/// Both sides of the block-product identity at `(A, B)`:
/// `Σ_{Q ⊆ [m]} A^{|Q|} B^{#{c : Q ∩ c = ∅}}` and `Π_c ((A+1)^{|c|} + B - 1)`.
pub fn binomial_lemma_check(
    b: &SetPartition,
    a_val: &BigInt,
    b_val: &BigInt,
) -> Result<(BigInt, BigInt)> {
    let hist = binomial_lemma_histogram(b)?;
    Ok(binomial_lemma_sides(b, &hist, a_val, b_val))
}

/// Both sides of the block-product identity from a precomputed histogram.
pub fn binomial_lemma_sides(
    b: &SetPartition,
    hist: &[Vec<u64>],
    a_val: &BigInt,
    b_val: &BigInt,
) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for (q, row) in hist.iter().enumerate() {
        for (u, &count) in row.iter().enumerate() {
            if count > 0 {
                lhs += BigInt::from(count) * Pow::pow(a_val, q) * Pow::pow(b_val, u);
            }
        }
    }
    let a1 = a_val + BigInt::one();
    let rhs = b
        .blocks()
        .iter()
        .map(|c| Pow::pow(&a1, c.len()) + b_val - BigInt::one())
        .product();
    (lhs, rhs)
}

fn check_range(what: &str, x: usize, n: usize) -> Result<()> {
    if n == 0 || x == 0 || x > n {
        return Err(Error::InvalidArgument(format!(
            "{what} = {x} outside 1..={n}"
        )));
    }
    Ok(())
}

/// Thin systems of order `n` with `k` loops: `2^{n-1} C(n-1, k-1)`.
pub fn thin_count(n: usize, k: usize) -> Result<BigUint> {
    check_range("k", k, n)?;
    Ok(BigUint::from(2u32).pow(n as u32 - 1) * binomial(n - 1, k - 1))
}

/// Loop distribution of shallow-top semi-meandric systems of order `n`.
///
/// In the `‖α⁻¹β‖` grading the polynomial is `(2Y(Y+1))^{k-1}` for
/// `n = 2k - 1` and `(2Y(Y+1))^{k-1}(Y+1)` for `n = 2k`; degree `r` maps to
/// `n - r` loops.
pub fn semi_loop_distribution(n: usize) -> Result<LoopPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let k = n.div_ceil(2);
    // (Y+1)^{k-1} or (Y+1)^k, shifted by Y^{k-1} and scaled by 2^{k-1}.
    let e = if n.is_multiple_of(2) { k } else { k - 1 };
    let scale = BigUint::from(2u32).pow(k as u32 - 1);
    let mut by_norm = vec![BigUint::zero(); n];
    for j in 0..=e {
        by_norm[k - 1 + j] = &scale * binomial(e, j);
    }
    LoopPolynomial::from_norm_grading(MeanderClass::SemiShallowTop, n, &by_norm)
}

/// Shallow-top meanders (one loop) of order `n` whose interval top has `m`
/// blocks: `C(n, m-1) C(n+m-1, 2m-1) / n`.
pub fn gnp_count(n: usize, m: usize) -> Result<BigUint> {
    check_range("m", m, n)?;
    let num = binomial(n, m - 1) * binomial(n + m - 1, 2 * m - 1);
    let d = BigUint::from(n);
    if !(&num % &d).is_zero() {
        return Err(Error::Inconsistent(format!(
            "count for n = {n}, m = {m} is not integral"
        )));
    }
    Ok(num / d)
}
