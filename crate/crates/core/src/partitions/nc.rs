//! Non-crossing set partitions and their geodesic permutations.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A non-crossing partition of `{0, .., n-1}`.
///
/// Stored canonically: elements increase inside each block and blocks are
/// ordered by their minimum, so derived equality is set-partition equality.
/// JSON form is the 1-based block list, e.g. `[[1,4,5],[2,3]]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NcPartition {
    /// Validates and canonicalizes 0-based blocks covering `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = canonical_blocks(n, blocks)?;
        if let Some((a, b)) = find_crossing(n, &blocks) {
            return Err(Error::InvalidPartition(format!(
                "blocks {:?} and {:?} cross",
                one_based(&blocks[a]),
                one_based(&blocks[b])
            )));
        }
        Ok(Self { n, blocks })
    }

    /// Validates 1-based blocks of `[n]`.
    pub fn from_one_based(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.contains(&0) {
                return Err(Error::InvalidPartition(
                    "1-based blocks must hold positive entries".into(),
                ));
            }
            zero_based.push(block.iter().map(|&x| x - 1).collect());
        }
        Self::new(n, zero_based)
    }

    /// Blocks already canonical and non-crossing.
    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(Self::new(n, blocks.clone()).is_ok_and(|p| p.blocks == blocks));
        Self { n, blocks }
    }

    /// Builds the partition from a block label per element (labels arbitrary).
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let width = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut map: Vec<Option<usize>> = vec![None; width];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            let idx = *map[l].get_or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(i);
        }
        Self { n, blocks }
    }

    /// `0_n`, all singletons.
    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// `1_n`, a single block.
    pub fn full(n: usize) -> Self {
        Self {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `n - #blocks`, the length of the geodesic permutation.
    pub fn norm(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// The block containing element `i`.
    pub fn block_containing(&self, i: usize) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&i).is_ok())
            .expect("blocks cover 0..n")
    }

    /// Block label per element, labels numbered by block order.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (k, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x] = k;
            }
        }
        labels
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| one_based(b)).collect()
    }

    pub fn is_interval(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.windows(2).all(|w| w[1] == w[0] + 1))
    }

    /// Each block becomes a cycle with its elements in increasing order.
    pub fn to_geodesic(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for block in &self.blocks {
            for (k, &x) in block.iter().enumerate() {
                images[x] = block[(k + 1) % block.len()];
            }
        }
        Permutation::from_images_unchecked(images)
    }

    /// Inverse of [`to_geodesic`](Self::to_geodesic); rejects permutations with
    /// `‖p‖ + ‖p⁻¹γ‖ ≠ n - 1`.
    pub fn from_geodesic(p: &Permutation) -> Result<Self> {
        let n = p.n();
        let gamma = Permutation::full_cycle(n);
        let rest = p.inverse().compose(&gamma)?;
        if p.length() + rest.length() != n - 1 {
            return Err(Error::GeodesicViolation(p.to_string()));
        }
        let blocks: Vec<Vec<usize>> = p
            .cycles()
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        let part = Self::new(n, blocks)?;
        if part.to_geodesic() != *p {
            return Err(Error::GeodesicViolation(p.to_string()));
        }
        Ok(part)
    }

    /// Partition whose blocks are the cycles of a permutation known to be geodesic.
    pub(crate) fn from_geodesic_unchecked(p: &Permutation) -> Self {
        let blocks = p
            .cycles()
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Self::from_canonical(p.n(), blocks)
    }

    /// Kreweras complement, `α ↦ α⁻¹γ_n` on geodesic permutations.
    pub fn kreweras(&self) -> Self {
        let gamma = Permutation::full_cycle(self.n);
        let kr = self
            .to_geodesic()
            .inverse()
            .compose(&gamma)
            .expect("same size");
        Self::from_geodesic_unchecked(&kr)
    }

    /// The non-crossing pairing of `2n` points obtained by doubling each point.
    ///
    /// Point `i` splits into `i₋ = 2i` and `i₊ = 2i + 1` (0-based); the pairing
    /// joins `i₊` with `α(i)₋`.
    pub fn fatten(&self) -> NcPartition {
        let alpha = self.to_geodesic();
        let mut blocks: Vec<Vec<usize>> = (0..self.n)
            .map(|i| {
                let plus = 2 * i + 1;
                let minus = 2 * alpha.image(i);
                vec![plus.min(minus), plus.max(minus)]
            })
            .collect();
        blocks.sort_unstable();
        Self::from_canonical(2 * self.n, blocks)
    }

    pub fn is_pairing(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "⊔")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl Serialize for NcPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NcPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let n = blocks.iter().map(Vec::len).sum();
        Self::from_one_based(n, &blocks).map_err(serde::de::Error::custom)
    }
}

fn one_based(block: &[usize]) -> Vec<usize> {
    block.iter().map(|&x| x + 1).collect()
}

/// Sorts blocks and checks they are nonempty, disjoint and cover `0..n`.
pub(crate) fn canonical_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be positive".into()));
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(blocks.len());
    for mut block in blocks {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        block.sort_unstable();
        for &x in &block {
            if x >= n || seen[x] {
                return Err(Error::InvalidPartition(format!(
                    "element {} is out of range or repeated",
                    x + 1
                )));
            }
            seen[x] = true;
        }
        out.push(block);
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidPartition(format!(
            "blocks do not cover [{n}]"
        )));
    }
    out.sort_unstable_by_key(|b| b[0]);
    Ok(out)
}

/// Returns the indices of two crossing blocks, if any.
///
/// Single left-to-right scan keeping a stack of blocks that are started but
/// not finished: a non-first element must belong to the top of that stack.
pub(crate) fn find_crossing(n: usize, blocks: &[Vec<usize>]) -> Option<(usize, usize)> {
    let mut label = vec![0usize; n];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            label[x] = k;
        }
    }
    let mut stack: Vec<usize> = Vec::new();
    for (i, &b) in label.iter().enumerate() {
        let block = &blocks[b];
        let first = block[0] == i;
        let last = *block.last().unwrap() == i;
        if !first {
            match stack.last() {
                Some(&top) if top == b => {}
                Some(&top) => return Some((b.min(top), b.max(top))),
                None => unreachable!("started block must be on the stack"),
            }
            if last {
                stack.pop();
            }
        } else if !last {
            stack.push(b);
        }
    }
    None
}
