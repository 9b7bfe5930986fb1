//! Workloads shared by the benchmarks.

use morifan::{RationalVector, WeightSystem};

/// The Cox ring grading of the blow-up of `P^3` in two points, without an
/// ample class so that construction does not compute the fan.
pub fn blowup_classes() -> Vec<Vec<i64>> {
    vec![
        vec![1, -1, -1],
        vec![1, -1, -1],
        vec![1, -1, 0],
        vec![1, 0, -1],
        vec![0, 1, 0],
        vec![0, 0, 1],
    ]
}

/// A fresh weight system with an empty cache.
pub fn fresh(classes: &[Vec<i64>]) -> WeightSystem {
    WeightSystem::from_classes(classes).expect("valid classes")
}

/// Rank-3 weight systems with `n` generators, taken from a fixed
/// deterministic sequence of pointed systems.
pub fn rank_three_family(n: usize) -> Vec<Vec<i64>> {
    let mut classes = blowup_classes();
    let extra = [[2, -1, -1], [1, 1, -1], [1, -1, 1], [2, -1, 0], [2, 0, -1], [0, 1, 1]];
    classes.extend(extra.iter().take(n.saturating_sub(6)).map(|c| c.to_vec()));
    classes.truncate(n);
    classes
}

/// Integral classes in `[0, max]^rank`.
pub fn grid(rank: usize, max: i64) -> Vec<RationalVector> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        out = out.iter().flat_map(|d| (0..=max).map(move |x| [d.clone(), vec![x]].concat())).collect();
    }
    out.iter().map(|d| RationalVector::from_ints(d)).collect()
}
