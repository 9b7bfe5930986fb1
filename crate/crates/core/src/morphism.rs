//! Pullback maps between class spaces and restriction of fans along them.
//!
//! A surjection `f: X -> Y` of Mori dream spaces induces an injective map
//! `f*: Pic(Y)_Q -> Pic(X)_Q`; the fan of `Y` is then the restriction of the
//! fan of `X` to the image. Whether a realizing surjection exists is a
//! geometric question this module cannot decide: a failed verification means
//! either the map is wrong or no such morphism exists.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{Int, Rat, RationalVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::git::{git_fan, WeightSystem};
use crate::mori::{effective_cone, moving_cone, zariski, DivisorClass};

/// An injective integer matrix from source coordinates (`Pic(Y)`) to target
/// coordinates (`Pic(X)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackMap {
    source_rank: usize,
    matrix: Vec<Vec<Int>>,
}

impl PullbackMap {
    /// `matrix` has one row per target coordinate and `source_rank` columns.
    pub fn new(source_rank: usize, matrix: Vec<Vec<Int>>) -> Result<Self> {
        if source_rank == 0 || matrix.is_empty() {
            return Err(Error::InvalidMap("empty matrix".into()));
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source_rank) {
            return Err(Error::InvalidMap(format!(
                "row of length {} for source rank {source_rank}",
                row.len()
            )));
        }
        let columns: Vec<Vec<Int>> =
            (0..source_rank).map(|j| matrix.iter().map(|r| r[j].clone()).collect()).collect();
        if crate::linalg::rank(&columns, matrix.len()) < source_rank {
            return Err(Error::InvalidMap("matrix is not injective".into()));
        }
        Ok(PullbackMap { source_rank, matrix })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect())
            .collect();
        PullbackMap { source_rank: n, matrix }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Int>] {
        &self.matrix
    }

    /// Images of the source basis vectors.
    pub fn columns(&self) -> Vec<RationalVector> {
        (0..self.source_rank)
            .map(|j| RationalVector(self.matrix.iter().map(|r| Rat::from_integer(r[j].clone())).collect()))
            .collect()
    }

    pub fn apply(&self, d: &DivisorClass) -> Result<DivisorClass> {
        if d.len() != self.source_rank {
            return Err(Error::DimensionMismatch { expected: self.source_rank, found: d.len() });
        }
        Ok(RationalVector(self.matrix.iter().map(|row| d.dot_int(row)).collect()))
    }

    /// The map `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &PullbackMap) -> Result<PullbackMap> {
        if inner.target_rank() != self.source_rank {
            return Err(Error::DimensionMismatch {
                expected: self.source_rank,
                found: inner.target_rank(),
            });
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..inner.source_rank)
                    .map(|j| row.iter().zip(&inner.matrix).map(|(a, r)| a * &r[j]).sum())
                    .collect()
            })
            .collect();
        PullbackMap::new(inner.source_rank, matrix)
    }
}

pub fn pullback_class(f: &PullbackMap, d: &DivisorClass) -> Result<DivisorClass> {
    f.apply(d)
}

/// Intersects every cone of `fan` with the image of `f`, in source coordinates.
pub fn restrict_fan(fan: &Fan, f: &PullbackMap) -> Result<Fan> {
    if fan.ambient() != f.target_rank() {
        return Err(Error::DimensionMismatch { expected: f.target_rank(), found: fan.ambient() });
    }
    let columns = f.columns();
    let cones = fan.cones().iter().map(|c| c.restrict(&columns)).collect::<Result<BTreeSet<_>>>()?;
    Ok(Fan::from_cones(f.source_rank(), cones))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which fan of a comparison holds a cone the other lacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Expected,
    Actual,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Expected => "expected",
            Side::Actual => "actual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub cone: Cone,
    pub side: Side,
}

/// Comparison of a cone of the target with the restriction of the
/// corresponding cone of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCheck {
    pub name: &'static str,
    pub expected: Cone,
    pub actual: Cone,
}

impl ConeCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub verdict: Verdict,
    /// The fan of the target, computed directly.
    pub expected: Fan,
    /// The restriction of the source fan.
    pub actual: Fan,
    pub mismatches: Vec<Mismatch>,
    pub cone_checks: Vec<ConeCheck>,
}

impl RestrictionReport {
    fn new(expected: Fan, actual: Fan, cone_checks: Vec<ConeCheck>) -> Self {
        let e: BTreeSet<&Cone> = expected.cones().iter().collect();
        let a: BTreeSet<&Cone> = actual.cones().iter().collect();
        let mut mismatches: Vec<Mismatch> = e
            .difference(&a)
            .map(|c| Mismatch { cone: (*c).clone(), side: Side::Expected })
            .collect();
        mismatches.extend(
            a.difference(&e).map(|c| Mismatch { cone: (*c).clone(), side: Side::Actual }),
        );
        let ok = mismatches.is_empty() && cone_checks.iter().all(ConeCheck::passed);
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        RestrictionReport { verdict, expected, actual, mismatches, cone_checks }
    }
}

fn check_map(ws_x: &WeightSystem, ws_y_rank: usize, f: &PullbackMap) -> Result<()> {
    if f.target_rank() != ws_x.rank() {
        return Err(Error::DimensionMismatch { expected: ws_x.rank(), found: f.target_rank() });
    }
    if f.source_rank() != ws_y_rank {
        return Err(Error::DimensionMismatch { expected: ws_y_rank, found: f.source_rank() });
    }
    Ok(())
}

fn nef_cone(ws: &WeightSystem) -> Option<Cone> {
    let ample = RationalVector::from_int_vec(ws.ample()?);
    let fan = git_fan(ws);
    fan.locate(&ample).map(|i| fan.cones()[i].clone())
}

/// Compares the fan of `ws_y` with the restriction of the fan of `ws_x`, and
/// likewise the effective, moving and (with both ample classes) nef cones.
pub fn verify_restriction(
    ws_x: &WeightSystem,
    ws_y: &WeightSystem,
    f: &PullbackMap,
) -> Result<RestrictionReport> {
    check_map(ws_x, ws_y.rank(), f)?;
    let columns = f.columns();
    let mut checks = vec![
        ConeCheck {
            name: "eff",
            expected: effective_cone(ws_y).clone(),
            actual: effective_cone(ws_x).restrict(&columns)?,
        },
        ConeCheck {
            name: "mov",
            expected: moving_cone(ws_y).clone(),
            actual: moving_cone(ws_x).restrict(&columns)?,
        },
    ];
    if let (Some(nx), Some(ny)) = (nef_cone(ws_x), nef_cone(ws_y)) {
        checks.push(ConeCheck { name: "nef", expected: ny, actual: nx.restrict(&columns)? });
    }
    let actual = restrict_fan(git_fan(ws_x), f)?;
    Ok(RestrictionReport::new(git_fan(ws_y).clone(), actual, checks))
}

/// Compares the restriction of the fan of `ws_x` with a fan given directly,
/// for targets that are not presented by a weight system.
pub fn verify_subspace_restriction(
    ws_x: &WeightSystem,
    f: &PullbackMap,
    expected: &Fan,
) -> Result<RestrictionReport> {
    check_map(ws_x, expected.ambient(), f)?;
    let actual = restrict_fan(git_fan(ws_x), f)?;
    Ok(RestrictionReport::new(expected.clone(), actual, Vec::new()))
}

/// The fan induced on `region ∩ Eff`, optionally restricted along `f`.
pub fn restrict_region_fan(ws: &WeightSystem, region: &Cone, f: Option<&PullbackMap>) -> Result<Fan> {
    if region.ambient() != ws.rank() {
        return Err(Error::DimensionMismatch { expected: ws.rank(), found: region.ambient() });
    }
    let region = region.intersect(effective_cone(ws));
    let cones: BTreeSet<Cone> = git_fan(ws).cones().iter().map(|c| c.intersect(&region)).collect();
    let fan = Fan::from_cones(ws.rank(), cones);
    match f {
        Some(f) => restrict_fan(&fan, f),
        None => Ok(fan),
    }
}

/// Whether the Zariski decomposition of `f*D` is the pullback of that of `D`.
pub fn pullback_zariski_check(
    ws_x: &WeightSystem,
    ws_y: &WeightSystem,
    f: &PullbackMap,
    d: &DivisorClass,
) -> Result<bool> {
    check_map(ws_x, ws_y.rank(), f)?;
    let zy = zariski(ws_y, d)?;
    let zx = zariski(ws_x, &f.apply(d)?)?;
    Ok(zx.positive == f.apply(&zy.positive)? && zx.negative == f.apply(&zy.negative)?)
}

impl fmt::Display for PullbackMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", cols.join(","))
    }
}
