//! Exact Mori chamber fans for toric Mori dream spaces.
//!
//! A toric Mori dream space is presented by a [`WeightSystem`]: the divisor
//! classes of the generators of its polynomial Cox ring. From that data this
//! crate computes
//!
//! * the GIT fan of the effective cone, whose cones' relative interiors are
//!   the GIT equivalence classes of characters (equivalently, the strong Mori
//!   equivalence classes of divisors),
//! * (semi)stability of support sets by the cone criterion and by the
//!   one-parameter-subgroup criterion,
//! * Zariski decompositions `D = P + N` by exact linear programming, with a
//!   section-counting certificate,
//! * restrictions of fans along pullback maps `Pic(Y) -> Pic(X)`, used to check
//!   that the fan of a target equals the restricted fan of the source.
//!
//! All arithmetic is exact: integers are [`num_bigint::BigInt`] and rationals
//! are [`num_rational::BigRational`].

pub mod arith;
pub mod cone;
mod dd;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod git;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod mori;
pub mod morphism;
pub mod slice;

pub use arith::{Int, Rat, RationalVector};
pub use cone::{Cone, Location};
pub use error::{Error, Result};
pub use fan::{common_refinement, ConeKind, Fan};
pub use fixtures::FixtureLibrary;
pub use git::{
    git_fan, git_fan_exhaustive, semistability, semistability_via_1ps, signature, state_cone,
    OneParamSubgroup, Signature, Status, SupportSet, WeightSystem,
};
pub use mori::{
    chamber_info, effective_cone, h0, moving_cone, strong_mori_equivalent, zariski, ChamberInfo,
    DivisorClass, ZariskiDecomposition,
};
pub use morphism::{
    pullback_class, pullback_zariski_check, restrict_fan, restrict_region_fan, verify_restriction,
    PullbackMap, RestrictionReport, Verdict,
};
