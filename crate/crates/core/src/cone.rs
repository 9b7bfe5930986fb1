//! Pointed rational polyhedral cones in canonical dual-pair form.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{dot, format_int_vec, is_zero_vec, primitive, primitive_up_to_sign, rat_dot};
use crate::arith::{Int, Rat, RationalVector};
use crate::dd::h_to_v;
use crate::error::{Error, Result};
use crate::linalg::{canonical_row_basis, project_out, rank_rat};

/// A pointed rational polyhedral cone.
///
/// Rays are the primitive generators of the extremal rays; facets are the
/// primitive inner normals of the facets, taken inside the linear span of the
/// cone; equations are the canonical basis of the orthogonal complement of the
/// span. All three lists are sorted, so two cones are equal as sets exactly
/// when they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    rays: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

/// Where a point sits relative to a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    RelativeInterior,
    /// In the relative interior of this proper face.
    OnFace(Cone),
    Outside,
}

impl Cone {
    /// The cone `{0}` in `Q^ambient`.
    pub fn zero(ambient: usize) -> Cone {
        Cone::from_extreme_rays(ambient, Vec::new())
    }

    /// The nonnegative span of `gens`.
    pub fn from_generators(ambient: usize, gens: &[RationalVector]) -> Result<Cone> {
        let ints = gens
            .iter()
            .map(|g| {
                if g.len() != ambient {
                    return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
                }
                Ok(g.primitive())
            })
            .collect::<Result<Vec<_>>>()?;
        Cone::from_int_generators(ambient, ints)
    }

    pub fn from_int_generators(ambient: usize, gens: Vec<Vec<Int>>) -> Result<Cone> {
        let mut gens: Vec<Vec<Int>> = gens
            .into_iter()
            .filter(|g| !is_zero_vec(g))
            .map(primitive)
            .collect();
        gens.sort();
        gens.dedup();
        // Facet normals are the extreme rays of the dual cone modulo its
        // lineality space, which is the orthogonal complement of the span.
        let dual = h_to_v(ambient, &gens, &[]);
        let equations = canonical_row_basis(&dual.lineality, ambient);
        let primal = h_to_v(ambient, &dual.rays, &equations);
        if let Some(line) = primal.lineality.into_iter().next() {
            return Err(Error::NonPointed { witness: primitive_up_to_sign(line) });
        }
        Ok(Cone::assemble(ambient, primal.rays, dual.rays, equations))
    }

    /// `{x : f.x >= 0 for f in ineqs, e.x = 0 for e in eqs}`.
    pub fn from_constraints(ambient: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Result<Cone> {
        let primal = h_to_v(ambient, ineqs, eqs);
        if let Some(line) = primal.lineality.into_iter().next() {
            return Err(Error::NonPointed { witness: primitive_up_to_sign(line) });
        }
        Ok(Cone::from_extreme_rays(ambient, primal.rays))
    }

    /// Builds the cone from rays already known to be extremal.
    pub(crate) fn from_extreme_rays(ambient: usize, rays: Vec<Vec<Int>>) -> Cone {
        let dual = h_to_v(ambient, &rays, &[]);
        let equations = canonical_row_basis(&dual.lineality, ambient);
        Cone::assemble(ambient, rays, dual.rays, equations)
    }

    fn assemble(
        ambient: usize,
        rays: Vec<Vec<Int>>,
        facets: Vec<Vec<Int>>,
        equations: Vec<Vec<Int>>,
    ) -> Cone {
        let mut rays: Vec<Vec<Int>> = rays.into_iter().map(primitive).collect();
        rays.sort();
        rays.dedup();
        let mut facets: Vec<Vec<Int>> = facets
            .iter()
            .map(|f| project_out(f, &equations))
            .collect();
        facets.sort();
        facets.dedup();
        Cone { ambient, dim: ambient - equations.len(), rays, facets, equations }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// The sum of the ray generators, a point of the relative interior.
    pub fn interior_point(&self) -> RationalVector {
        let mut sum = vec![Int::zero(); self.ambient];
        for r in &self.rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        RationalVector::from_int_vec(&sum)
    }

    pub fn ray_vectors(&self) -> Vec<RationalVector> {
        self.rays.iter().map(|r| RationalVector::from_int_vec(r)).collect()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.locate(x) != Location::Outside
    }

    fn contains_int(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_int(r))
    }

    /// Classifies `x` against the cone. Panics if the lengths differ.
    pub fn locate(&self, x: &RationalVector) -> Location {
        assert_eq!(x.len(), self.ambient, "point and cone live in different spaces");
        if self.equations.iter().any(|e| !rat_dot(&x.0, e).is_zero()) {
            return Location::Outside;
        }
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = rat_dot(&x.0, f);
            if v.is_negative() {
                return Location::Outside;
            }
            if v.is_zero() {
                tight.push(i);
            }
        }
        if tight.is_empty() {
            return Location::RelativeInterior;
        }
        let rays = self
            .rays
            .iter()
            .filter(|r| tight.iter().all(|&i| dot(&self.facets[i], r).is_zero()))
            .cloned()
            .collect();
        Location::OnFace(Cone::from_extreme_rays(self.ambient, rays))
    }

    pub fn in_relative_interior(&self, x: &RationalVector) -> bool {
        self.locate(x) == Location::RelativeInterior
    }

    /// `{y : y.x >= 0 for all x in self}`; defined when `self` is full-dimensional.
    pub fn dual(&self) -> Result<Cone> {
        if let Some(e) = self.equations.first() {
            return Err(Error::NonPointed { witness: e.clone() });
        }
        Ok(Cone::from_extreme_rays(self.ambient, self.facets.clone()))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient, "cones live in different spaces");
        let ineqs: Vec<Vec<Int>> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vec<Int>> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_constraints(self.ambient, &ineqs, &eqs)
            .expect("a subset of a pointed cone is pointed")
    }

    /// All faces, from `{0}` up to the cone itself, sorted by dimension.
    pub fn faces(&self) -> Vec<Cone> {
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let tight: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| all.iter().copied().filter(|&i| dot(f, &self.rays[i]).is_zero()).collect())
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut stack = vec![all];
        while let Some(set) = stack.pop() {
            for t in &tight {
                let sub: Vec<usize> = set.iter().copied().filter(|i| t.contains(i)).collect();
                if sub.len() < set.len() && seen.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        let mut faces: Vec<Cone> = seen
            .into_iter()
            .map(|idx| {
                let rays = idx.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::from_extreme_rays(self.ambient, rays)
            })
            .collect();
        faces.sort();
        faces
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        // A subcone is a face iff it is cut out by the facets of `other`
        // vanishing on it.
        let tight: Vec<&Vec<Int>> = other
            .facets
            .iter()
            .filter(|f| self.rays.iter().all(|r| dot(f, r).is_zero()))
            .collect();
        let face_rays: Vec<Vec<Int>> = other
            .rays
            .iter()
            .filter(|r| tight.iter().all(|f| dot(f, r).is_zero()))
            .cloned()
            .collect();
        Cone::from_extreme_rays(self.ambient, face_rays) == *self
    }

    /// The preimage `{y : sum y_i b_i in self}` in the coordinates of `basis`.
    pub fn restrict(&self, basis: &[RationalVector]) -> Result<Cone> {
        for b in basis {
            if b.len() != self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, found: b.len() });
            }
        }
        let k = basis.len();
        if rank_rat(&basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>(), self.ambient) < k {
            return Err(Error::NonInjectiveBasis);
        }
        let pull = |f: &Vec<Int>| -> Vec<Int> {
            RationalVector(basis.iter().map(|b| rat_dot(&b.0, f)).collect::<Vec<Rat>>()).primitive()
        };
        let ineqs: Vec<Vec<Int>> = self.facets.iter().map(pull).collect();
        let eqs: Vec<Vec<Int>> = self.equations.iter().map(pull).collect();
        Cone::from_constraints(k, &ineqs, &eqs)
    }

    /// The image of the cone under the linear map with the given columns.
    pub fn push_forward(&self, columns: &[RationalVector]) -> Result<Cone> {
        let target = columns.first().map_or(0, |c| c.len());
        let gens: Vec<RationalVector> = self
            .rays
            .iter()
            .map(|r| {
                let mut v = RationalVector::zero(target);
                for (c, x) in columns.iter().zip(r) {
                    v = &v + &c.scale(&Rat::from_integer(x.clone()));
                }
                v
            })
            .collect();
        Cone::from_generators(target, &gens)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| format_int_vec(r)).collect();
        write!(f, "cone{{{}}}", rays.join(","))
    }
}

pub fn cone_from_generators(vectors: &[RationalVector]) -> Result<Cone> {
    let ambient = vectors.first().map_or(0, |v| v.len());
    Cone::from_generators(ambient, vectors)
}

pub fn dual_cone(c: &Cone) -> Result<Cone> {
    c.dual()
}

pub fn locate(c: &Cone, x: &RationalVector) -> Location {
    c.locate(x)
}

pub fn intersect_cones(a: &Cone, b: &Cone) -> Cone {
    a.intersect(b)
}

pub fn faces(c: &Cone) -> Vec<Cone> {
    c.faces()
}

pub fn restrict_cone(c: &Cone, subspace_basis: &[RationalVector]) -> Result<Cone> {
    c.restrict(subspace_basis)
}
