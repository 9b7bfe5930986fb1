//! Divisor classes on a toric Mori dream space: effective and moving cones,
//! section counts, Zariski decompositions, and chamber classification.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, Rat, RationalVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::ConeKind;
use crate::git::{git_equivalent, git_fan, SupportSet, WeightSystem};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// Coordinates of a class in the chosen basis of `Pic(X)_Q`. Characters of the
/// torus use the same coordinates.
pub type DivisorClass = RationalVector;

pub const DEFAULT_H0_CEILING: u64 = 1_000_000;

pub fn effective_cone(ws: &WeightSystem) -> &Cone {
    ws.cache().effective.get_or_init(|| {
        let gens = (0..ws.num_generators()).map(|i| ws.class(i).to_vec()).collect();
        Cone::from_int_generators(ws.rank(), gens).expect("validated weight system")
    })
}

/// Intersection over `i` of the cones spanned by all classes except the `i`-th.
pub fn moving_cone(ws: &WeightSystem) -> &Cone {
    ws.cache().moving.get_or_init(|| {
        let n = ws.num_generators();
        let mut mov = effective_cone(ws).clone();
        for i in 0..n {
            let others = SupportSet::from_indices((0..n).filter(|&j| j != i));
            mov = mov.intersect(&crate::git::state_cone(ws, others));
        }
        mov
    })
}

fn check_len(ws: &WeightSystem, d: &DivisorClass) -> Result<()> {
    if d.len() != ws.rank() {
        return Err(Error::DimensionMismatch { expected: ws.rank(), found: d.len() });
    }
    Ok(())
}

/// Number of monomials of degree `d` in the Cox ring.
pub fn h0(ws: &WeightSystem, d: &DivisorClass) -> Result<u64> {
    h0_with_ceiling(ws, d, DEFAULT_H0_CEILING)
}

pub fn h0_with_ceiling(ws: &WeightSystem, d: &DivisorClass, ceiling: u64) -> Result<u64> {
    check_len(ws, d)?;
    let target = d.to_ints().ok_or_else(|| Error::NonIntegral(d.to_string()))?;
    if !effective_cone(ws).contains(d) {
        return Ok(0);
    }
    let mut counter = MonomialCounter::new(ws, ceiling)?;
    let mut rem = to_i128(&target)?;
    counter.descend(0, &mut rem)?;
    Ok(counter.count)
}

fn to_i128(v: &[Int]) -> Result<Vec<i128>> {
    v.iter()
        .map(|x| {
            x.to_i128()
                .ok_or_else(|| Error::InvalidInput(format!("coordinate {x} is too large")))
        })
        .collect()
}

/// Depth-first enumeration of exponent vectors `u >= 0` with `sum u_i w_i = d`.
///
/// The residual after fixing `u_0..u_{i-1}` must lie in the cone spanned by
/// the remaining classes; the exponent of generator `i` is bounded through a
/// covector that is positive on every class.
struct MonomialCounter {
    classes: Vec<Vec<i128>>,
    suffix_facets: Vec<Vec<Vec<i128>>>,
    suffix_equations: Vec<Vec<Vec<i128>>>,
    weight: Vec<i128>,
    class_weight: Vec<i128>,
    count: u64,
    ceiling: u64,
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl MonomialCounter {
    fn new(ws: &WeightSystem, ceiling: u64) -> Result<Self> {
        let n = ws.num_generators();
        let classes = (0..n).map(|i| to_i128(ws.class(i))).collect::<Result<Vec<_>>>()?;
        let mut suffix_facets = Vec::with_capacity(n + 1);
        let mut suffix_equations = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let c = crate::git::state_cone(ws, SupportSet::from_indices(i..n));
            suffix_facets.push(c.facets().iter().map(|f| to_i128(f)).collect::<Result<Vec<_>>>()?);
            suffix_equations
                .push(c.equations().iter().map(|e| to_i128(e)).collect::<Result<Vec<_>>>()?);
        }
        let mut weight = vec![0i128; ws.rank()];
        for f in effective_cone(ws).facets() {
            for (w, x) in weight.iter_mut().zip(to_i128(f)?) {
                *w += x;
            }
        }
        let class_weight: Vec<i128> = classes.iter().map(|c| dot128(&weight, c)).collect();
        debug_assert!(class_weight.iter().all(|&w| w > 0));
        Ok(Self { classes, suffix_facets, suffix_equations, weight, class_weight, count: 0, ceiling })
    }

    fn feasible(&self, i: usize, rem: &[i128]) -> bool {
        self.suffix_equations[i].iter().all(|e| dot128(e, rem) == 0)
            && self.suffix_facets[i].iter().all(|f| dot128(f, rem) >= 0)
    }

    fn descend(&mut self, i: usize, rem: &mut Vec<i128>) -> Result<()> {
        if !self.feasible(i, rem) {
            return Ok(());
        }
        if i == self.classes.len() {
            self.count += 1;
            if self.count > self.ceiling {
                return Err(Error::ResourceLimit(self.ceiling));
            }
            return Ok(());
        }
        let budget = dot128(&self.weight, rem) / self.class_weight[i];
        let class = self.classes[i].clone();
        let mut used = 0;
        loop {
            self.descend(i + 1, rem)?;
            if used == budget {
                break;
            }
            for (r, c) in rem.iter_mut().zip(&class) {
                *r -= c;
            }
            used += 1;
        }
        for (r, c) in rem.iter_mut().zip(&class) {
            *r += c * used;
        }
        Ok(())
    }
}

/// `D = P + N` with `N = sum a_i w_i` the fixed part and `P` movable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: DivisorClass,
    pub negative: DivisorClass,
    /// The coefficient `a_i` of each generator in the negative part.
    pub coefficients: Vec<Rat>,
    /// The fan cone whose relative interior contains `D`.
    pub cone: Cone,
    pub kind: ConeKind,
}

impl ZariskiDecomposition {
    pub fn negative_support(&self) -> BTreeSet<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| a.is_positive())
            .map(|(i, _)| i)
            .collect()
    }
}

/// `min { u_i : u >= 0, sum u_j w_j = d }` for generator `i`.
fn min_exponent(ws: &WeightSystem, d: &DivisorClass, i: usize) -> Rat {
    let n = ws.num_generators();
    let mut lp = LinearProgram::new(n);
    for k in 0..ws.rank() {
        let row: Vec<Rat> = (0..n).map(|j| Rat::from_integer(ws.class(j)[k].clone())).collect();
        lp.constraint(row, Relation::Eq, d[k].clone());
    }
    let mut objective = vec![Rat::zero(); n];
    objective[i] = Rat::one();
    lp.minimize(objective);
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("effective class gave {other:?}"),
    }
}

pub fn zariski(ws: &WeightSystem, d: &DivisorClass) -> Result<ZariskiDecomposition> {
    check_len(ws, d)?;
    if !effective_cone(ws).contains(d) {
        return Err(Error::NotEffective(d.to_string()));
    }
    let coefficients: Vec<Rat> = (0..ws.num_generators()).map(|i| min_exponent(ws, d, i)).collect();
    let mut negative = RationalVector::zero(ws.rank());
    for (i, a) in coefficients.iter().enumerate() {
        if !a.is_zero() {
            negative = &negative + &ws.class_vector(i).scale(a);
        }
    }
    let positive = d - &negative;
    if !moving_cone(ws).contains(&positive) {
        return Err(Error::Inconsistent(format!("positive part {positive} is not movable")));
    }
    let fan = git_fan(ws);
    let idx = fan
        .locate(d)
        .ok_or_else(|| Error::Inconsistent(format!("{d} lies in no cone of the fan")))?;
    Ok(ZariskiDecomposition {
        positive,
        negative,
        coefficients,
        cone: fan.cones()[idx].clone(),
        kind: fan.kind(idx),
    })
}

/// Section counts for one multiple `k` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCheck {
    pub multiple: u64,
    pub h0_class: u64,
    pub h0_positive: u64,
    pub h0_negative: u64,
}

impl SectionCheck {
    /// Every section of `kD` is a section of `kP` times the unique section of `kN`.
    pub fn holds(&self) -> bool {
        self.h0_class == self.h0_positive && self.h0_negative == 1
    }
}

/// Least `m > 0` making `mD`, `mP` and `mN` integral.
pub fn clearing_multiple(d: &DivisorClass, zd: &ZariskiDecomposition) -> u64 {
    let m = d
        .denominator_lcm()
        .lcm(&zd.positive.denominator_lcm())
        .lcm(&zd.negative.denominator_lcm());
    m.to_u64().expect("denominators of small classes")
}

/// Checks `h0(kD) = h0(kP)` and `h0(kN) = 1` for `k` in `factors` times the
/// clearing multiple.
pub fn certify_sections(
    ws: &WeightSystem,
    d: &DivisorClass,
    zd: &ZariskiDecomposition,
    factors: &[u64],
) -> Result<Vec<SectionCheck>> {
    let m = clearing_multiple(d, zd);
    factors
        .iter()
        .map(|&f| {
            let k = Rat::from_integer((m * f).into());
            Ok(SectionCheck {
                multiple: m * f,
                h0_class: h0(ws, &d.scale(&k))?,
                h0_positive: h0(ws, &zd.positive.scale(&k))?,
                h0_negative: h0(ws, &zd.negative.scale(&k))?,
            })
        })
        .collect()
}

/// The fan cone whose relative interior contains a class, with its join
/// decomposition into a movable face and exceptional classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberInfo {
    pub cone: Cone,
    pub dim: usize,
    pub kind: ConeKind,
    /// Image of the cone under `D -> P(D)`.
    pub positive_face: Cone,
    /// Generators with a positive coefficient in the negative part on the
    /// relative interior of the cone.
    pub exceptional_indices: BTreeSet<usize>,
}

pub fn chamber_info(ws: &WeightSystem, d: &DivisorClass) -> Result<ChamberInfo> {
    check_len(ws, d)?;
    if d.is_zero() {
        return Err(Error::ZeroClass);
    }
    if !effective_cone(ws).contains(d) {
        return Err(Error::NotEffective(d.to_string()));
    }
    let fan = git_fan(ws);
    let idx = fan
        .locate(d)
        .ok_or_else(|| Error::Inconsistent(format!("{d} lies in no cone of the fan")))?;
    let cone = fan.cones()[idx].clone();
    let sample = zariski(ws, &cone.interior_point())?;
    let positive_images = cone
        .ray_vectors()
        .iter()
        .map(|r| zariski(ws, r).map(|z| z.positive))
        .collect::<Result<Vec<_>>>()?;
    let positive_face = Cone::from_generators(ws.rank(), &positive_images)?;
    Ok(ChamberInfo {
        dim: cone.dim(),
        kind: fan.kind(idx),
        cone,
        positive_face,
        exceptional_indices: sample.negative_support(),
    })
}

/// Decided twice: by fan cones and by semistable supports. The two answers
/// must agree.
pub fn strong_mori_equivalent(
    ws: &WeightSystem,
    d1: &DivisorClass,
    d2: &DivisorClass,
) -> Result<bool> {
    let by_chamber = chamber_info(ws, d1)?.cone == chamber_info(ws, d2)?.cone;
    let by_git = git_equivalent(ws, d1, d2)?;
    if by_chamber != by_git {
        return Err(Error::Inconsistent(format!(
            "{d1} and {d2}: fan cones say {by_chamber}, signatures say {by_git}"
        )));
    }
    Ok(by_chamber)
}
