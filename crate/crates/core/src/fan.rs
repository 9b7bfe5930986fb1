//! Fans and common refinements.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::arith::{dot, primitive_up_to_sign, Int, RationalVector};
use crate::cone::{Cone, Location};
use crate::linalg::nullspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeKind {
    /// A maximal cone of full dimension (relative to the support).
    Chamber,
    /// Any other nonzero cone.
    Cell,
    Origin,
}

impl ConeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConeKind::Chamber => "chamber",
            ConeKind::Cell => "cell",
            ConeKind::Origin => "origin",
        }
    }
}

/// A face-closed set of cones, sorted by `(dim, rays)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
    kinds: Vec<ConeKind>,
    maximal: Vec<usize>,
}

impl Fan {
    /// Closes `cones` under taking faces and removes duplicates.
    pub fn from_cones(ambient: usize, cones: impl IntoIterator<Item = Cone>) -> Fan {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        all.insert(Cone::zero(ambient));
        for c in cones {
            assert_eq!(c.ambient(), ambient, "cone in the wrong space");
            if all.contains(&c) {
                continue;
            }
            all.extend(c.faces());
        }
        let cones: Vec<Cone> = all.into_iter().collect();
        let maximal: Vec<usize> = (0..cones.len())
            .filter(|&i| {
                !cones[i + 1..]
                    .iter()
                    .any(|c| c.dim() > cones[i].dim() && c.contains_cone(&cones[i]))
            })
            .collect();
        let top = cones.iter().map(Cone::dim).max().unwrap_or(0);
        let kinds = (0..cones.len())
            .map(|i| {
                if cones[i].is_zero() {
                    ConeKind::Origin
                } else if cones[i].dim() == top && maximal.contains(&i) {
                    ConeKind::Chamber
                } else {
                    ConeKind::Cell
                }
            })
            .collect();
        Fan { ambient, cones, kinds, maximal }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn kinds(&self) -> &[ConeKind] {
        &self.kinds
    }

    pub fn kind(&self, i: usize) -> ConeKind {
        self.kinds[i]
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.maximal.iter().map(|&i| &self.cones[i])
    }

    pub fn chambers(&self) -> impl Iterator<Item = &Cone> {
        self.cones
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == ConeKind::Chamber)
            .map(|(c, _)| c)
    }

    pub fn position(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.position(c).is_some()
    }

    /// Index of the unique cone whose relative interior contains `x`.
    pub fn locate(&self, x: &RationalVector) -> Option<usize> {
        self.cones.iter().position(|c| c.in_relative_interior(x))
    }

    /// The cone spanned by all rays, i.e. the support when it is convex.
    pub fn support_cone(&self) -> Cone {
        let rays: Vec<Vec<Int>> = self.cones.iter().flat_map(|c| c.rays().to_vec()).collect();
        Cone::from_int_generators(self.ambient, rays).expect("fan supports are pointed")
    }

    /// Checks that every pair of maximal cones meets in a common face.
    pub fn is_fan(&self) -> bool {
        let maximal: Vec<&Cone> = self.maximal_cones().collect();
        for (i, a) in maximal.iter().enumerate() {
            for b in &maximal[i + 1..] {
                let meet = a.intersect(b);
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    return false;
                }
            }
        }
        true
    }

    /// The set of all distinct rays of the fan, sorted.
    pub fn rays(&self) -> Vec<Vec<Int>> {
        let set: BTreeSet<Vec<Int>> =
            self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }
}

/// Hyperplane normals that contain all walls induced by `cones` inside `within`.
fn walls(cones: &[Cone], within: &Cone) -> BTreeSet<Vec<Int>> {
    let d = within.dim();
    let mut out: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut add = |h: Vec<Int>| {
        if within.rays().iter().any(|r| !dot(&h, r).is_zero()) {
            out.insert(primitive_up_to_sign(h));
        }
    };
    for f in within.facets() {
        add(f.clone());
    }
    for c in cones {
        if c.dim() == d {
            for f in c.facets() {
                add(f.clone());
            }
        } else if c.dim() + 1 == d {
            // A codimension-one input lies in a single hyperplane of the span.
            let mut rows: Vec<Vec<Int>> = c.rays().to_vec();
            rows.extend(within.equations().iter().cloned());
            if let Some(n) = nullspace(&rows, within.ambient()).into_iter().next() {
                add(n);
            }
        }
    }
    out
}

/// The coarsest fan on `within` on whose open cones membership in every input
/// cone is constant.
///
/// Regions of the arrangement of all wall hyperplanes are grouped by their
/// membership pattern in the input cones of the same dimension as `within`,
/// and each group is replaced by its convex hull unless that hull is not the
/// union of the group or is crossed by an input of codimension one. Inputs of
/// codimension two or more do not induce walls. If the merged cones fail to form a fan, the
/// arrangement regions themselves are returned.
pub fn common_refinement(cones: &[Cone], within: &Cone) -> Fan {
    let ambient = within.ambient();
    let mut regions = vec![within.clone()];
    for h in walls(cones, within) {
        let mut next = Vec::with_capacity(regions.len());
        for r in regions {
            let signs: Vec<Int> = r.rays().iter().map(|x| dot(&h, x)).collect();
            if signs.iter().any(Signed::is_positive) && signs.iter().any(Signed::is_negative) {
                let neg: Vec<Int> = h.iter().map(|x| -x).collect();
                for side in [&h, &neg] {
                    let mut ineqs = r.facets().to_vec();
                    ineqs.push(side.clone());
                    let piece = Cone::from_constraints(ambient, &ineqs, r.equations())
                        .expect("subcone of a pointed cone");
                    next.push(piece);
                }
            } else {
                next.push(r);
            }
        }
        regions = next;
    }

    let d = within.dim();
    let full: Vec<&Cone> = cones.iter().filter(|c| c.dim() == d).collect();
    let thin: Vec<&Cone> = cones.iter().filter(|c| c.dim() + 1 == d).collect();
    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (i, r) in regions.iter().enumerate() {
        let x = r.interior_point();
        let pattern: Vec<bool> = full.iter().map(|c| c.locate(&x) != Location::Outside).collect();
        groups.entry(pattern).or_default().push(i);
    }

    let mut merged: Vec<Cone> = Vec::new();
    for members in groups.values() {
        if members.len() == 1 {
            merged.push(regions[members[0]].clone());
            continue;
        }
        let rays: Vec<Vec<Int>> =
            members.iter().flat_map(|&i| regions[i].rays().to_vec()).collect();
        let hull = Cone::from_int_generators(ambient, rays).expect("subcone of a pointed cone");
        let convex = regions
            .iter()
            .enumerate()
            .filter(|(i, _)| !members.contains(i))
            .all(|(_, r)| hull.intersect(r).dim() < d);
        // A codimension-one input crossing the hull is a class of its own.
        let crossed = thin.iter().any(|c| {
            let meet = hull.intersect(c);
            meet.dim() + 1 == d && hull.in_relative_interior(&meet.interior_point())
        });
        if convex && !crossed {
            merged.push(hull);
        } else {
            merged.extend(members.iter().map(|&i| regions[i].clone()));
        }
    }

    let fan = Fan::from_cones(ambient, merged);
    if fan.is_fan() {
        fan
    } else {
        Fan::from_cones(ambient, regions)
    }
}
