//! Planar cross-sections of rank-3 fans.
//!
//! A pointed 3-dimensional cone with three rays `r0, r1, r2` meets the plane
//! `{a0 r0 + a1 r1 + a2 r2 : a0 + a1 + a2 = 1}` in a triangle. Each cone of the
//! fan meets it in a convex polygon; points are given by `(a1, a2)`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, Rat, RationalVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::ConeKind;
use crate::git::{git_fan, WeightSystem};
use crate::linalg::coordinates_in;
use crate::mori::effective_cone;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePoint {
    /// The primitive class on this ray.
    pub class: Vec<Int>,
    /// The class written in the basis names, e.g. `H-E1`.
    pub label: String,
    pub coords: [Rat; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub kind: ConeKind,
    /// Counterclockwise in slice coordinates.
    pub vertices: Vec<SlicePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub corners: Vec<SlicePoint>,
    pub polygons: Vec<Polygon>,
    /// The slice of `Eff ∩ V` for an overlaid subspace `V`.
    pub overlay: Option<Vec<SlicePoint>>,
}

/// Writes `class` as a combination of the basis names.
pub fn class_label(class: &[Int], basis: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in class.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !c.abs().is_one() {
            let _ = write!(out, "{}", c.abs());
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Frame<'a> {
    corners: Vec<RationalVector>,
    basis: &'a [String],
}

impl Frame<'_> {
    fn point(&self, ray: &[Int]) -> SlicePoint {
        let a = coordinates_in(&self.corners, &RationalVector::from_int_vec(ray))
            .expect("ray inside the effective cone");
        let total: Rat = a.iter().cloned().sum();
        SlicePoint {
            class: ray.to_vec(),
            label: class_label(ray, self.basis),
            coords: [&a[1] / &total, &a[2] / &total],
        }
    }
}

fn counterclockwise(mut pts: Vec<SlicePoint>) -> Vec<SlicePoint> {
    let n = Rat::from_integer(pts.len().into());
    let cx: Rat = pts.iter().map(|p| p.coords[0].clone()).sum::<Rat>() / &n;
    let cy: Rat = pts.iter().map(|p| p.coords[1].clone()).sum::<Rat>() / &n;
    let half = |u: &(Rat, Rat)| u.1.is_negative() || (u.1.is_zero() && u.0.is_negative());
    pts.sort_by(|p, q| {
        let u = (&p.coords[0] - &cx, &p.coords[1] - &cy);
        let v = (&q.coords[0] - &cx, &q.coords[1] - &cy);
        half(&u).cmp(&half(&v)).then_with(|| {
            let cross = &u.0 * &v.1 - &u.1 * &v.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts
}

/// Slices the maximal cones of the fan of a rank-3 weight system whose
/// effective cone is simplicial. `subspace` spans an overlaid subspace.
pub fn slice(ws: &WeightSystem, subspace: Option<&[RationalVector]>) -> Result<Slice> {
    if ws.rank() != 3 {
        return Err(Error::InvalidInput(format!("slices need rank 3, not {}", ws.rank())));
    }
    let eff = effective_cone(ws);
    if eff.rays().len() != 3 {
        return Err(Error::InvalidInput("the effective cone is not simplicial".into()));
    }
    let frame = Frame { corners: eff.ray_vectors(), basis: ws.basis() };
    let corners = eff.rays().iter().map(|r| frame.point(r)).collect();
    let fan = git_fan(ws);
    let polygons = fan
        .maximal_indices()
        .iter()
        .map(|&i| Polygon {
            kind: fan.kind(i),
            vertices: counterclockwise(fan.cones()[i].rays().iter().map(|r| frame.point(r)).collect()),
        })
        .collect();
    let overlay = match subspace {
        None => None,
        Some(basis) => {
            let part: Cone = eff.restrict(basis)?.push_forward(basis)?;
            Some(part.rays().iter().map(|r| frame.point(r)).collect())
        }
    };
    Ok(Slice { corners, polygons, overlay })
}

const SIZE: f64 = 500.0;

impl Slice {
    /// Screen position: the corners go to a fixed equilateral triangle.
    fn screen(p: &SlicePoint) -> (f64, f64) {
        let a1 = p.coords[0].to_f64().unwrap_or(0.0);
        let a2 = p.coords[1].to_f64().unwrap_or(0.0);
        let a0 = 1.0 - a1 - a2;
        let corners = [(50.0, 450.0), (450.0, 450.0), (250.0, 450.0 - 400.0 * 0.75f64.sqrt())];
        (
            a0 * corners[0].0 + a1 * corners[1].0 + a2 * corners[2].0,
            a0 * corners[0].1 + a1 * corners[1].1 + a2 * corners[2].1,
        )
    }

    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        for (i, poly) in self.polygons.iter().enumerate() {
            let pts: Vec<String> = poly
                .vertices
                .iter()
                .map(|v| {
                    let (x, y) = Self::screen(v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let shade = 235 - 12 * (i % 6);
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="rgb({shade},{shade},250)" stroke="black" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
        }
        if let Some(seg) = &self.overlay {
            let pts: Vec<String> = seg
                .iter()
                .map(|v| {
                    let (x, y) = Self::screen(v);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            for (w, color) in [(6, "black"), (2, "white")] {
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{w}"/>"#,
                    pts.join(" ")
                );
            }
        }
        let mut labels: Vec<&SlicePoint> =
            self.polygons.iter().flat_map(|p| p.vertices.iter()).collect();
        labels.extend(self.overlay.iter().flatten());
        labels.sort_by(|a, b| a.class.cmp(&b.class));
        labels.dedup_by(|a, b| a.class == b.class);
        for p in labels {
            let (x, y) = Self::screen(p);
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{}</text>"#,
                x + 6.0,
                y - 6.0,
                p.label
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
