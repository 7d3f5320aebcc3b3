//! Permutations, non-crossing and interval partitions, Kreweras complements
//! and the lattice operations on them.

mod comb;
mod enumerate;
mod lattice;
mod nc;
mod permutation;

pub use comb::CombSubset;
pub use enumerate::{
    enumerate_interval, enumerate_kr_interval, enumerate_nc, enumerate_set_partitions,
    interval_from_cuts, CombIter, IntervalIter, NcIter, SetPartition, SetPartitionIter,
};
pub use lattice::{
    interval_join, kr_interval_meet, kr_interval_meet_nc, nc_join, nc_meet, refinement_leq,
};
pub use nc::NcPartition;
pub use permutation::Permutation;
