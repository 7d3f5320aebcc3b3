//! Streaming enumeration of NC(n), Int(n), Kr Int(n) and all set partitions.
//!
//! Every iterator here is successor-based: it holds O(n²) state and never
//! materializes the full class.

use super::comb::CombSubset;
use super::nc::NcPartition;
use crate::error::{Error, Result};

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// Iterator over NC(n).
///
/// Elements are placed left to right. Each element either opens a new block
/// or joins a block on the stack of open blocks, closing every block above
/// it. Different choice sequences give different partitions, and every
/// non-crossing partition arises, so the stream has no duplicates.
///
/// The first element produced is `0_n`.
#[derive(Clone, Debug)]
pub struct NcIter {
    n: usize,
    /// choice[i]: 0 opens a new block, c > 0 joins the c-th block from the top.
    choice: Vec<usize>,
    /// stacks[i]: open blocks before element i is placed.
    stacks: Vec<Vec<usize>>,
    /// blocks_before[i]: number of blocks before element i is placed.
    blocks_before: Vec<usize>,
    labels: Vec<usize>,
    done: bool,
}

impl NcIter {
    fn new(n: usize) -> Self {
        let mut it = Self {
            n,
            choice: vec![0; n],
            stacks: vec![Vec::new(); n + 1],
            blocks_before: vec![0; n + 1],
            labels: vec![0; n],
            done: false,
        };
        it.replay_from(0);
        it
    }

    /// Recomputes stacks and labels for positions `from..n` from `choice`.
    fn replay_from(&mut self, from: usize) {
        for i in from..self.n {
            let mut stack = self.stacks[i].clone();
            let mut blocks = self.blocks_before[i];
            match self.choice[i] {
                0 => {
                    self.labels[i] = blocks;
                    stack.push(blocks);
                    blocks += 1;
                }
                c => {
                    let keep = stack.len() + 1 - c;
                    stack.truncate(keep);
                    self.labels[i] = stack[keep - 1];
                }
            }
            self.stacks[i + 1] = stack;
            self.blocks_before[i + 1] = blocks;
        }
    }

    fn advance(&mut self) {
        for i in (0..self.n).rev() {
            if self.choice[i] < self.stacks[i].len() {
                self.choice[i] += 1;
                for c in &mut self.choice[i + 1..] {
                    *c = 0;
                }
                self.replay_from(i);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for NcIter {
    type Item = NcPartition;

    fn next(&mut self) -> Option<NcPartition> {
        if self.done {
            return None;
        }
        let out = NcPartition::from_labels(&self.labels);
        self.advance();
        Some(out)
    }
}

/// Streams NC(n); the count is `Cat_n`.
pub fn enumerate_nc(n: usize) -> Result<NcIter> {
    check_order(n)?;
    Ok(NcIter::new(n))
}

/// The interval partition whose block boundaries are the set bits of `cuts`:
/// bit `j` set means `j` and `j + 1` (0-based) lie in different blocks.
pub fn interval_from_cuts(n: usize, cuts: u64) -> NcPartition {
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for i in 0..n {
        current.push(i);
        if i + 1 == n || cuts >> i & 1 == 1 {
            blocks.push(std::mem::take(&mut current));
        }
    }
    NcPartition::from_canonical(n, blocks)
}

/// Iterator over Int(n) in increasing order of the cut mask; starts at `1_n`.
#[derive(Clone, Debug)]
pub struct IntervalIter {
    n: usize,
    next: u64,
    end: u64,
}

impl IntervalIter {
    /// Only masks in `range` (for splitting work across threads).
    pub fn with_range(n: usize, range: std::ops::Range<u64>) -> Self {
        let total = 1u64 << (n - 1);
        Self {
            n,
            next: range.start.min(total),
            end: range.end.min(total),
        }
    }
}

impl Iterator for IntervalIter {
    type Item = NcPartition;

    fn next(&mut self) -> Option<NcPartition> {
        if self.next >= self.end {
            return None;
        }
        let p = interval_from_cuts(self.n, self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for IntervalIter {}

/// Streams Int(n); the count is `2^(n-1)`.
pub fn enumerate_interval(n: usize) -> Result<IntervalIter> {
    check_order(n)?;
    if n > 63 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is too large for Int(n)"
        )));
    }
    Ok(IntervalIter::with_range(n, 0..u64::MAX))
}

/// Iterator over Kr Int(n) as combs `Q ⊆ [n-1]`, by increasing mask.
#[derive(Clone, Debug)]
pub struct CombIter {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for CombIter {
    type Item = CombSubset;

    fn next(&mut self) -> Option<CombSubset> {
        if self.next >= self.end {
            return None;
        }
        let q = CombSubset::from_mask(self.n, self.next).expect("mask below 2^(n-1)");
        self.next += 1;
        Some(q)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for CombIter {}

/// Streams Kr Int(n); the count is `2^(n-1)`.
pub fn enumerate_kr_interval(n: usize) -> Result<CombIter> {
    check_order(n)?;
    if n > 63 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} is too large for Kr Int(n)"
        )));
    }
    Ok(CombIter {
        n,
        next: 0,
        end: 1u64 << (n - 1),
    })
}

/// A set partition of `{0, .., n-1}` that may cross.
///
/// Only used as input to the block-sum identities; the lattice operations
/// live on [`NcPartition`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = super::nc::canonical_blocks(n, blocks)?;
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_non_crossing(&self) -> bool {
        super::nc::find_crossing(self.n, &self.blocks).is_none()
    }
}

impl From<&NcPartition> for SetPartition {
    fn from(p: &NcPartition) -> Self {
        Self {
            n: p.n(),
            blocks: p.blocks().to_vec(),
        }
    }
}

/// Iterator over all set partitions via restricted growth strings.
#[derive(Clone, Debug)]
pub struct SetPartitionIter {
    rgs: Vec<usize>,
    /// max_before[i] = max(rgs[0..i]).
    max_before: Vec<usize>,
    done: bool,
}

impl Iterator for SetPartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let width = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); width];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l].push(i);
        }
        let out = SetPartition { n, blocks };

        self.done = true;
        for i in (1..n).rev() {
            if self.rgs[i] <= self.max_before[i] {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max_before[j] = self.max_before[j - 1].max(self.rgs[j - 1]);
                }
                self.done = false;
                break;
            }
        }
        Some(out)
    }
}

/// Streams all set partitions of `[n]`; the count is the Bell number.
pub fn enumerate_set_partitions(n: usize) -> Result<SetPartitionIter> {
    check_order(n)?;
    Ok(SetPartitionIter {
        rgs: vec![0; n],
        max_before: vec![0; n],
        done: false,
    })
}
