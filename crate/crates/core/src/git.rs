//! Torus actions on affine space given by weight matrices, and their GIT data.
//!
//! A point of the affine Cox space is represented by its support: the set of
//! generators whose coordinate is nonzero. Because the Cox ring is a full
//! polynomial ring, every subset of generators is the support of some point.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat, RationalVector};
use crate::cone::{Cone, Location};
use crate::error::{Error, Result};
use crate::fan::{common_refinement, Fan};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// Largest number of generators accepted; signatures enumerate all `2^n` supports.
pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub class: Vec<Int>,
}

/// The grading of a polynomial Cox ring: one divisor class per generator.
///
/// Derived data (effective cone, moving cone, GIT fan, state cones) is
/// computed on first use and shared between clones.
#[derive(Clone)]
pub struct WeightSystem {
    rank: usize,
    basis: Vec<String>,
    generators: Vec<Generator>,
    ample: Option<Vec<Int>>,
    cache: Arc<Cache>,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub(crate) effective: OnceLock<Cone>,
    pub(crate) moving: OnceLock<Cone>,
    pub(crate) fan: OnceLock<Fan>,
    state_cones: OnceLock<Vec<OnceLock<Cone>>>,
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSystem")
            .field("rank", &self.rank)
            .field("basis", &self.basis)
            .field("generators", &self.generators)
            .field("ample", &self.ample)
            .finish()
    }
}

impl PartialEq for WeightSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.basis == other.basis
            && self.generators == other.generators
            && self.ample == other.ample
    }
}

impl Eq for WeightSystem {}

impl WeightSystem {
    pub fn new(
        rank: usize,
        basis: Vec<String>,
        generators: Vec<Generator>,
        ample: Option<Vec<Int>>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidWeightSystem(msg));
        if rank == 0 {
            return invalid("rank must be at least 1".into());
        }
        if basis.len() != rank {
            return invalid(format!("basis has {} names for rank {rank}", basis.len()));
        }
        if generators.is_empty() {
            return invalid("no generators".into());
        }
        if generators.len() > MAX_GENERATORS {
            return invalid(format!("more than {MAX_GENERATORS} generators"));
        }
        for g in &generators {
            if g.class.len() != rank {
                return invalid(format!("class of {} has length {}", g.name, g.class.len()));
            }
            if g.class.iter().all(Zero::is_zero) {
                return invalid(format!("class of {} is zero", g.name));
            }
        }
        let classes: Vec<Vec<Int>> = generators.iter().map(|g| g.class.clone()).collect();
        if crate::linalg::rank(&classes, rank) < rank {
            return invalid("generator classes do not span the class space".into());
        }
        let eff = Cone::from_int_generators(rank, classes).map_err(|e| {
            Error::InvalidWeightSystem(format!("effective cone is not pointed ({e})"))
        })?;
        if let Some(a) = &ample {
            if a.len() != rank {
                return invalid(format!("ample class has length {}", a.len()));
            }
        }
        let ws = WeightSystem { rank, basis, generators, ample, cache: Arc::default() };
        let _ = ws.cache.effective.set(eff);
        if let Some(a) = &ws.ample {
            let x = RationalVector::from_int_vec(a);
            let fan = git_fan(&ws);
            let ok = fan
                .locate(&x)
                .is_some_and(|i| fan.cones()[i].is_full_dimensional());
            if !ok {
                return invalid("ample class is not interior to a chamber".into());
            }
        }
        Ok(ws)
    }

    /// Generators named `x0, x1, ...` over a basis `D0, D1, ...`.
    pub fn from_classes<T: Into<Int> + Clone>(classes: &[Vec<T>]) -> Result<Self> {
        let rank = classes.first().map_or(0, Vec::len);
        let generators = classes
            .iter()
            .enumerate()
            .map(|(i, c)| Generator {
                name: format!("x{i}"),
                class: c.iter().cloned().map(Into::into).collect(),
            })
            .collect();
        let basis = (0..rank).map(|i| format!("D{i}")).collect();
        WeightSystem::new(rank, basis, generators, None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn class(&self, i: usize) -> &[Int] {
        &self.generators[i].class
    }

    pub fn class_vector(&self, i: usize) -> RationalVector {
        RationalVector::from_int_vec(&self.generators[i].class)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn ample(&self) -> Option<&[Int]> {
        self.ample.as_deref()
    }

    pub(crate) fn cache(&self) -> &Cache {
        &self.cache
    }

    /// Every support set of this weight system.
    pub fn supports(&self) -> impl Iterator<Item = SupportSet> {
        SupportSet::all(self.num_generators())
    }

    fn check_len(&self, x: &RationalVector) -> Result<()> {
        if x.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: x.len() });
        }
        Ok(())
    }
}

/// A set of generator indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SupportSet(u32);

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet(0)
    }

    pub fn full(n: usize) -> Self {
        SupportSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_mask(mask: u32) -> Self {
        SupportSet(mask)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        SupportSet(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn all(n: usize) -> impl Iterator<Item = SupportSet> {
        (0..(1u64 << n)).map(|m| SupportSet(m as u32))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: SupportSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A one-parameter subgroup, identified with an integer covector on the class space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    pub covector: Vec<Int>,
}

impl OneParamSubgroup {
    pub fn pairing(&self, chi: &RationalVector) -> Rat {
        chi.dot_int(&self.covector)
    }

    /// Whether `lim_{t -> 0} lambda(t) . x` exists for points with support `s`.
    pub fn limit_exists(&self, ws: &WeightSystem, s: SupportSet) -> bool {
        s.indices()
            .all(|i| !crate::arith::dot(ws.class(i), &self.covector).is_negative())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Status {
    pub fn is_semistable(self) -> bool {
        self != Status::Unstable
    }
}

/// The supports that are semistable, and stable, for one character.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    pub semistable_supports: BTreeSet<SupportSet>,
    pub stable_supports: BTreeSet<SupportSet>,
}

/// The cone spanned by the classes of the generators in `s`.
pub fn state_cone(ws: &WeightSystem, s: SupportSet) -> Cone {
    let n = ws.num_generators();
    let table = ws
        .cache()
        .state_cones
        .get_or_init(|| (0..1usize << n).map(|_| OnceLock::new()).collect());
    table[s.mask() as usize]
        .get_or_init(|| {
            let gens = s.indices().map(|i| ws.class(i).to_vec()).collect();
            Cone::from_int_generators(ws.rank(), gens).expect("subcone of a pointed cone")
        })
        .clone()
}

/// Cone criterion: semistable iff `chi` lies in the state cone, stable iff it
/// lies in its topological interior (empty for lower-dimensional state cones).
pub fn semistability(ws: &WeightSystem, s: SupportSet, chi: &RationalVector) -> Status {
    let cone = state_cone(ws, s);
    match cone.locate(chi) {
        Location::Outside => Status::Unstable,
        Location::RelativeInterior if cone.is_full_dimensional() => Status::Stable,
        _ => Status::StrictlySemistable,
    }
}

fn one_ps_program(ws: &WeightSystem, s: SupportSet) -> LinearProgram {
    let mut lp = LinearProgram::new(ws.rank()).all_free();
    for i in s.indices() {
        let row = ws.class_vector(i).0;
        lp.constraint(row, Relation::Ge, Rat::zero());
    }
    lp
}

/// A one-parameter subgroup with a limit on points of support `s` that pairs
/// negatively with `chi`, if one exists.
pub fn destabilizing_subgroup(
    ws: &WeightSystem,
    s: SupportSet,
    chi: &RationalVector,
) -> Option<OneParamSubgroup> {
    let mut lp = one_ps_program(ws, s);
    lp.constraint(chi.0.clone(), Relation::Eq, -Rat::one());
    match lp.solve() {
        LpOutcome::Optimal { point, .. } => Some(OneParamSubgroup {
            covector: RationalVector(point).primitive(),
        }),
        _ => None,
    }
}

/// Numerical criterion over one-parameter subgroups, decided by exact LPs.
pub fn semistability_via_1ps(ws: &WeightSystem, s: SupportSet, chi: &RationalVector) -> Status {
    if destabilizing_subgroup(ws, s, chi).is_some() {
        return Status::Unstable;
    }
    // Stable unless some nonzero admissible lambda pairs to zero with chi;
    // nonzero is encoded as +-lambda_j >= 1 for some coordinate j.
    for j in 0..ws.rank() {
        for sign in [1i64, -1] {
            let mut lp = one_ps_program(ws, s);
            lp.constraint(chi.0.clone(), Relation::Le, Rat::zero());
            let mut e = vec![Rat::zero(); ws.rank()];
            e[j] = Rat::from_integer(sign.into());
            lp.constraint(e, Relation::Ge, Rat::one());
            if lp.solve().is_feasible() {
                return Status::StrictlySemistable;
            }
        }
    }
    Status::Stable
}

fn refinement(ws: &WeightSystem, supports: impl Iterator<Item = SupportSet>) -> Fan {
    let eff = crate::mori::effective_cone(ws);
    let cones: BTreeSet<Cone> = supports.map(|s| state_cone(ws, s)).collect();
    let cones: Vec<Cone> = cones.into_iter().collect();
    common_refinement(&cones, eff)
}

/// The GIT fan on the effective cone.
///
/// Walls come from the state cones of supports with at most `rank` elements;
/// every state cone is a union of such cones.
pub fn git_fan(ws: &WeightSystem) -> &Fan {
    ws.cache().fan.get_or_init(|| {
        let rank = ws.rank();
        refinement(ws, ws.supports().filter(|s| !s.is_empty() && s.len() <= rank))
    })
}

/// The GIT fan from all `2^n` state cones; a cross-check for [`git_fan`].
pub fn git_fan_exhaustive(ws: &WeightSystem) -> Fan {
    refinement(ws, ws.supports())
}

pub fn signature(ws: &WeightSystem, chi: &RationalVector) -> Result<Signature> {
    ws.check_len(chi)?;
    let mut sig = Signature::default();
    for s in ws.supports() {
        match semistability(ws, s, chi) {
            Status::Stable => {
                sig.semistable_supports.insert(s);
                sig.stable_supports.insert(s);
            }
            Status::StrictlySemistable => {
                sig.semistable_supports.insert(s);
            }
            Status::Unstable => {}
        }
    }
    Ok(sig)
}

/// Whether two characters have the same semistable supports.
pub fn git_equivalent(ws: &WeightSystem, a: &RationalVector, b: &RationalVector) -> Result<bool> {
    Ok(signature(ws, a)?.semistable_supports == signature(ws, b)?.semistable_supports)
}
