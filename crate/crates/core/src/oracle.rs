//! Reference computations that share no code path with the fast engines.
//!
//! Loops are counted geometrically from the two arch systems, and transforms
//! are evaluated straight from their block-product definitions.

use crate::error::{Error, Result};
use crate::partitions::{enumerate_interval, enumerate_nc, NcPartition};
use crate::transforms::{LaurentPoly, TruncSeries};

/// Connected components of the curve formed by the fattened top and bottom
/// arch systems on `2n` points.
pub fn loop_count_geometric(a: &NcPartition, b: &NcPartition) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let points = 2 * a.n();
    let mut partner = [vec![0; points], vec![0; points]];
    for (side, p) in [a, b].into_iter().enumerate() {
        for arch in p.fatten().blocks() {
            partner[side][arch[0]] = arch[1];
            partner[side][arch[1]] = arch[0];
        }
    }
    let mut seen = vec![false; points];
    let mut loops = 0;
    for start in 0..points {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut x = start;
        let mut side = 0;
        while !seen[x] {
            seen[x] = true;
            x = partner[side][x];
            seen[x] = true;
            side ^= 1;
            x = partner[side][x];
            side ^= 1;
        }
    }
    Ok(loops)
}

fn block_product(p: &NcPartition, kappa: &TruncSeries) -> LaurentPoly {
    p.blocks()
        .iter()
        .fold(LaurentPoly::one(), |acc, c| &acc * kappa.c(c.len()))
}

/// `m_n = Σ_{π ∈ Int(n)} Π_{c ∈ π} κ_{|c|}`.
pub fn boolean_moments(kappa: &TruncSeries) -> Result<TruncSeries> {
    let order = kappa.order();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = LaurentPoly::zero();
        for p in enumerate_interval(n)? {
            acc += &block_product(&p, kappa);
        }
        out.push(acc);
    }
    Ok(TruncSeries::from_coeffs(order, out))
}

/// `m_n = Σ_{π ∈ NC(n)} Π_{c ∈ π} κ_{|c|}`.
pub fn free_moments(kappa: &TruncSeries) -> Result<TruncSeries> {
    let order = kappa.order();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = LaurentPoly::zero();
        for p in enumerate_nc(n)? {
            acc += &block_product(&p, kappa);
        }
        out.push(acc);
    }
    Ok(TruncSeries::from_coeffs(order, out))
}

/// `Σ_{β ∈ NC(n)} h_{|β(n)|} Π_{c ∈ β′} g_{|c|}`, with `β′` the blocks not
/// containing `n`.
pub fn last_block_moments(h: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    let order = h.order();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut acc = LaurentPoly::zero();
        for p in enumerate_nc(n)? {
            let mut term = LaurentPoly::one();
            for c in p.blocks() {
                let weight = if c.contains(&(n - 1)) {
                    h.c(c.len())
                } else {
                    g.c(c.len())
                };
                term = &term * weight;
            }
            acc += &term;
        }
        out.push(acc);
    }
    Ok(TruncSeries::from_coeffs(order, out))
}
