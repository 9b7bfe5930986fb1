#![allow(dead_code)]

use morifan::{Cone, FixtureLibrary, Rat, RationalVector, WeightSystem};
use proptest::prelude::*;
use rand::Rng;

pub fn v(xs: &[i64]) -> RationalVector {
    RationalVector::from_ints(xs)
}

pub fn cone(gens: &[&[i64]]) -> Cone {
    let gens: Vec<RationalVector> = gens.iter().map(|g| v(g)).collect();
    Cone::from_generators(gens[0].len(), &gens).unwrap()
}

pub fn fixture(name: &str) -> WeightSystem {
    FixtureLibrary::weight_system(name).unwrap()
}

pub fn fixtures() -> Vec<(&'static str, WeightSystem)> {
    FixtureLibrary::weight_names().map(|n| (n, fixture(n))).collect()
}

/// A nonzero vector with entries in `[-3, 3]` and positive coordinate sum.
fn positive_class(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
        .prop_filter("zero coordinate sum", |c| c.iter().sum::<i64>() != 0)
        .prop_map(|c| if c.iter().sum::<i64>() > 0 { c } else { c.iter().map(|x| -x).collect() })
}

/// Classes of a weight system whose effective cone is pointed (all classes
/// pair positively with the all-ones covector).
pub fn pointed_classes(max_rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rank).prop_flat_map(move |rank| {
        prop::collection::vec(positive_class(rank), rank..=max_len)
    })
}

pub fn weight_systems(max_rank: usize, max_len: usize) -> impl Strategy<Value = WeightSystem> {
    pointed_classes(max_rank, max_len)
        .prop_filter_map("rank deficient", |cs| WeightSystem::from_classes(&cs).ok())
}

/// Arbitrary integer vectors in `[-3, 3]^rank`.
pub fn generator_sets(max_rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rank).prop_flat_map(move |rank| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, rank), 0..=max_len)
    })
}

pub fn to_vectors(gens: &[Vec<i64>]) -> Vec<RationalVector> {
    gens.iter().map(|g| v(g)).collect()
}

/// A strictly positive rational combination of the rays of `c`.
pub fn relative_interior_sample<R: Rng>(c: &Cone, rng: &mut R) -> RationalVector {
    let mut x = RationalVector::zero(c.ambient());
    for r in c.ray_vectors() {
        let w = Rat::new(rng.gen_range(1..=9i64).into(), rng.gen_range(1..=4i64).into());
        x = &x + &r.scale(&w);
    }
    x
}

/// A nonnegative rational combination of the rays of `c`.
pub fn cone_sample<R: Rng>(c: &Cone, rng: &mut R) -> RationalVector {
    let mut x = RationalVector::zero(c.ambient());
    for r in c.ray_vectors() {
        let w = Rat::new(rng.gen_range(0..=6i64).into(), rng.gen_range(1..=3i64).into());
        x = &x + &r.scale(&w);
    }
    x
}

/// Whether `x` is a nonnegative combination of `gens`, decided by an LP.
pub fn lp_member(gens: &[RationalVector], x: &RationalVector) -> bool {
    use morifan::lp::{LinearProgram, Relation};
    let mut lp = LinearProgram::new(gens.len());
    for k in 0..x.len() {
        lp.constraint(gens.iter().map(|g| g[k].clone()).collect(), Relation::Eq, x[k].clone());
    }
    lp.solve().is_feasible()
}
