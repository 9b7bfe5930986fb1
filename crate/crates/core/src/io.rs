//! File formats: weight systems, pullback maps, and fan documents.
//!
//! Every document is emitted in one canonical textual form: keys sorted,
//! objects indented by two spaces, arrays of scalars kept on one line, and a
//! trailing newline. Rationals are JSON strings `"p"` or `"p/q"`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{render_rat, Int, RationalVector};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::fan::{ConeKind, Fan};
use crate::git::{Generator, WeightSystem};
use crate::morphism::PullbackMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    pub rank: usize,
    pub basis: Vec<String>,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source_rank: usize,
    /// Rows are target coordinates; column `j` is the image of source basis vector `j`.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeEntry {
    pub rays: Vec<usize>,
    pub dim: usize,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<ConeEntry>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub(crate) fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("integer {x} does not fit in 64 bits")))
}

fn small_vec(v: &[Int]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

fn big_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

impl WeightFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_weight_system(&self) -> Result<WeightSystem> {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { name: g.name.clone(), class: big_vec(&g.class) })
            .collect();
        let ample = self.ample.as_deref().map(big_vec);
        WeightSystem::new(self.rank, self.basis.clone(), generators, ample)
    }

    pub fn from_weight_system(ws: &WeightSystem) -> Result<Self> {
        Ok(WeightFile {
            rank: ws.rank(),
            basis: ws.basis().to_vec(),
            generators: ws
                .generators()
                .iter()
                .map(|g| Ok(GeneratorEntry { name: g.name.clone(), class: small_vec(&g.class)? }))
                .collect::<Result<_>>()?,
            ample: ws.ample().map(small_vec).transpose()?,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_json(self)
    }
}

impl MapFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_map(&self) -> Result<PullbackMap> {
        PullbackMap::new(self.source_rank, self.matrix.iter().map(|r| big_vec(r)).collect())
    }

    pub fn from_map(map: &PullbackMap) -> Result<Self> {
        Ok(MapFile {
            source_rank: map.source_rank(),
            matrix: map.matrix().iter().map(|r| small_vec(r)).collect::<Result<_>>()?,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_json(self)
    }
}

impl FanDocument {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    /// Rays are the primitive generators of all one-dimensional cones in
    /// lexicographic order; cones are sorted by dimension, then ray indices.
    pub fn from_fan(fan: &Fan) -> Result<Self> {
        let rays = fan.rays();
        let mut cones: Vec<ConeEntry> = fan
            .cones()
            .iter()
            .zip(fan.kinds())
            .map(|(c, k)| {
                let mut idx: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray of the fan"))
                    .collect();
                idx.sort_unstable();
                ConeEntry { rays: idx, dim: c.dim(), kind: k.as_str().to_string() }
            })
            .collect();
        cones.sort_by(|a, b| (a.dim, &a.rays).cmp(&(b.dim, &b.rays)));
        Ok(FanDocument {
            rays: rays.iter().map(|r| small_vec(r)).collect::<Result<_>>()?,
            cones,
        })
    }

    /// Rebuilds the fan, checking that the recorded dimensions and kinds match.
    pub fn to_fan(&self, ambient: usize) -> Result<Fan> {
        if let Some(r) = self.rays.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: r.len() });
        }
        let mut cones = Vec::with_capacity(self.cones.len());
        for entry in &self.cones {
            let gens = entry
                .rays
                .iter()
                .map(|&i| {
                    self.rays
                        .get(i)
                        .map(|r| big_vec(r))
                        .ok_or_else(|| Error::InvalidInput(format!("ray index {i} out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            let cone = Cone::from_int_generators(ambient, gens)?;
            if cone.dim() != entry.dim {
                return Err(Error::InvalidInput(format!(
                    "cone {cone} has dimension {}, recorded {}",
                    cone.dim(),
                    entry.dim
                )));
            }
            cones.push((cone, entry.kind.clone()));
        }
        let fan = Fan::from_cones(ambient, cones.iter().map(|(c, _)| c.clone()));
        for (cone, kind) in &cones {
            let i = fan.position(cone).expect("cone of its own fan");
            if fan.kind(i).as_str() != kind {
                return Err(Error::InvalidInput(format!("cone {cone} is labeled {kind}")));
            }
        }
        if FanDocument::from_fan(&fan)? != *self {
            return Err(Error::InvalidInput("fan document is not face-closed or canonical".into()));
        }
        Ok(fan)
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_json(self)
    }
}

impl ConeKind {
    pub fn parse(s: &str) -> Option<ConeKind> {
        [ConeKind::Chamber, ConeKind::Cell, ConeKind::Origin]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

pub fn rational_json(v: &RationalVector) -> Value {
    Value::Array(v.iter().map(|q| Value::String(render_rat(q))).collect())
}

pub fn int_json(v: &[Int]) -> Result<Value> {
    Ok(Value::Array(small_vec(v)?.into_iter().map(Value::from).collect()))
}

/// A cone as `{"rays": [[..]], "dim": d}`.
pub fn cone_json(c: &Cone) -> Result<Value> {
    Ok(serde_json::json!({
        "rays": c.rays().iter().map(|r| int_json(r)).collect::<Result<Vec<_>>>()?,
        "dim": c.dim(),
    }))
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable document");
    render_canonical(&value)
}

/// Renders a JSON value in the canonical layout.
pub fn render_canonical(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, depth + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_scalar) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(v, depth + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&v.to_string());
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
