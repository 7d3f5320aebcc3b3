//! Order, meet and join on NC(n), plus the interval and Kr-interval variants.

use super::comb::CombSubset;
use super::nc::{find_crossing, NcPartition};
use crate::error::{Error, Result};

fn same_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch { left: a, right: b });
    }
    Ok(())
}

/// `a ≤ b`: every block of `a` lies inside a block of `b`.
pub fn refinement_leq(a: &NcPartition, b: &NcPartition) -> Result<bool> {
    same_size(a.n(), b.n())?;
    let labels = b.labels();
    Ok(a.blocks()
        .iter()
        .all(|block| block.iter().all(|&x| labels[x] == labels[block[0]])))
}

/// Blockwise intersections; a refinement of a non-crossing partition never crosses.
pub fn nc_meet(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_size(a.n(), b.n())?;
    let lb = b.labels();
    let mut blocks = Vec::new();
    for block in a.blocks() {
        let mut parts: Vec<(usize, Vec<usize>)> = Vec::new();
        for &x in block {
            match parts.iter_mut().find(|(l, _)| *l == lb[x]) {
                Some((_, v)) => v.push(x),
                None => parts.push((lb[x], vec![x])),
            }
        }
        blocks.extend(parts.into_iter().map(|(_, v)| v));
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    Ok(NcPartition::from_canonical(a.n(), blocks))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smallest non-crossing partition above both arguments.
///
/// Starts from the set-partition join and merges crossing blocks until none
/// cross. Any non-crossing upper bound must contain each merged pair, so the
/// result is the minimum.
pub fn nc_join(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_size(a.n(), b.n())?;
    let n = a.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for block in a.blocks().iter().chain(b.blocks()) {
        for &x in &block[1..] {
            let (r, s) = (find(&mut parent, block[0]), find(&mut parent, x));
            parent[r.max(s)] = r.min(s);
        }
    }
    loop {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = find(&mut parent, x);
            blocks[r].push(x);
        }
        let blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        match find_crossing(n, &blocks) {
            None => return Ok(NcPartition::from_canonical(n, blocks)),
            Some((i, j)) => {
                let (r, s) = (blocks[i][0], blocks[j][0]);
                parent[r.max(s)] = r.min(s);
            }
        }
    }
}

/// Bit `i` set when some block of `p` contains elements on both sides of the
/// gap between `i` and `i + 1` (0-based).
fn straddled_gaps(p: &NcPartition) -> u64 {
    let mut mask = 0u64;
    for block in p.blocks() {
        for i in block[0]..*block.last().unwrap() {
            mask |= 1 << i;
        }
    }
    mask
}

/// Smallest interval partition above both arguments: cut at every gap that
/// no block of either argument straddles.
pub fn interval_join(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_size(a.n(), b.n())?;
    let n = a.n();
    if n > 64 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is too large for interval_join"
        )));
    }
    let all = if n == 1 { 0 } else { u64::MAX >> (65 - n) };
    let cuts = !(straddled_gaps(a) | straddled_gaps(b)) & all;
    Ok(super::enumerate::interval_from_cuts(n, cuts))
}

/// Kr-interval meet of a comb with an arbitrary partition: the comb on
/// `(Q ⊔ {n}) ∩ β(n)`.
pub fn kr_interval_meet(q: &CombSubset, b: &NcPartition) -> Result<NcPartition> {
    same_size(q.n(), b.n())?;
    Ok(meet_comb(q.n(), q.mask(), b).to_partition())
}

/// Kr-interval meet of two arbitrary non-crossing partitions, which is the
/// comb on `a(n) ∩ b(n)`.
pub fn kr_interval_meet_nc(a: &NcPartition, b: &NcPartition) -> Result<NcPartition> {
    same_size(a.n(), b.n())?;
    let n = a.n();
    let mask = a.block_containing(n - 1)[..]
        .iter()
        .filter(|&&x| x + 1 < n)
        .fold(0u64, |m, &x| m | 1 << x);
    Ok(meet_comb(n, mask, b).to_partition())
}

fn meet_comb(n: usize, mask: u64, b: &NcPartition) -> CombSubset {
    let last = b
        .block_containing(n - 1)
        .iter()
        .filter(|&&x| x + 1 < n)
        .fold(0u64, |m, &x| m | 1 << x);
    CombSubset::from_mask(n, mask & last).expect("subset of a valid comb")
}
