//! Elements of Kr Int(n) encoded by their comb.

use std::fmt;

use super::nc::NcPartition;
use crate::error::{Error, Result};

/// A subset `Q ⊆ [n-1]`, standing for the partition with one block `Q ⊔ {n}`
/// and singletons elsewhere.
///
/// Bit `i` of the mask is the 0-based element `i`; only bits below `n - 1`
/// may be set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CombSubset {
    n: usize,
    mask: u64,
}

impl CombSubset {
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::InvalidArgument(format!(
                "comb order {n} out of range 1..=64"
            )));
        }
        if n < 64 && mask >> (n - 1) != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} is not a subset of [{}]",
                n - 1
            )));
        }
        Ok(Self { n, mask })
    }

    /// From 1-based elements of `[n-1]`.
    pub fn from_elements(n: usize, q: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &x in q {
            if x == 0 || x >= n {
                return Err(Error::InvalidArgument(format!(
                    "comb element {x} outside [{}]",
                    n.saturating_sub(1)
                )));
            }
            mask |= 1 << (x - 1);
        }
        Self::from_mask(n, mask)
    }

    /// Reads the comb off a partition that lies in Kr Int(n).
    pub fn from_partition(p: &NcPartition) -> Result<Self> {
        let n = p.n();
        let last = p.block_containing(n - 1);
        if p.blocks()
            .iter()
            .any(|b| b.len() > 1 && b.as_slice() != last)
        {
            return Err(Error::InvalidArgument(format!(
                "{p} is not a comb partition"
            )));
        }
        let mask = last[..last.len() - 1].iter().fold(0u64, |m, &x| m | 1 << x);
        Self::from_mask(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// `|Q|`.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i + 1 < self.n && self.mask >> i & 1 == 1
    }

    /// 0-based elements of `Q` in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        (0..self.n - 1).filter(|&i| self.contains(i)).collect()
    }

    /// The partition `Q ⊔ {n}` plus singletons.
    pub fn to_partition(&self) -> NcPartition {
        let mut comb = self.elements();
        comb.push(self.n - 1);
        let mut blocks: Vec<Vec<usize>> = (0..self.n - 1)
            .filter(|&i| !self.contains(i))
            .map(|i| vec![i])
            .collect();
        blocks.push(comb);
        blocks.sort_unstable_by_key(|b| b[0]);
        NcPartition::from_canonical(self.n, blocks)
    }
}

impl fmt::Display for CombSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .elements()
            .iter()
            .map(|x| (x + 1).to_string())
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
