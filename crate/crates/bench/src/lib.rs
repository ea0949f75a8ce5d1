//! Shared inputs for the criterion benches.

use bmslab::Partition;

/// Partitions used to compare the brute-force and Fock routes at m = 2.
pub fn route_inputs() -> Vec<Partition> {
    [&[3][..], &[2, 1], &[2, 2], &[3, 1, 1], &[2, 2, 2]].iter().map(|p| Partition::of(p)).collect()
}
