//! JSON documents for tilings and schedules.
//!
//! Tiling:
//! `{"dim": d, "prototiles": [[[x, y], ...], ...], "basis": [[...], ...],
//!   "placements": [{"offset": [...], "tile": j}], "geometry": [[...], ...]}`
//! with `geometry` optional. Schedule:
//! `{"basis": ..., "m": m, "slots": [{"coset_rep": [...], "slot": k, "tile": j}],
//!   "prototiles": ...}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{CosetSpace, GeometricBasis, Point, Prototile, SublatticeBasis};
use crate::schedule::Schedule;
use crate::tiling::{PeriodicTiling, Placement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub dim: usize,
    pub prototiles: Vec<Vec<Vec<i64>>>,
    pub basis: Vec<Vec<i64>>,
    pub placements: Vec<PlacementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementDoc {
    pub offset: Vec<i64>,
    pub tile: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    pub basis: Vec<Vec<i64>>,
    pub m: u32,
    pub slots: Vec<SlotDoc>,
    /// Cell lists of the deployed prototiles, indexed by `SlotDoc::tile`.
    pub prototiles: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotDoc {
    pub coset_rep: Vec<i64>,
    pub slot: u32,
    pub tile: usize,
}

fn basis_from(rows: &[Vec<i64>]) -> Result<SublatticeBasis> {
    SublatticeBasis::new(rows.iter().cloned().map(Point::new).collect())
}

fn basis_doc(b: &SublatticeBasis) -> Vec<Vec<i64>> {
    b.generators().iter().map(|g| g.coords().to_vec()).collect()
}

fn prototiles_from(docs: &[Vec<Vec<i64>>]) -> Result<Vec<Prototile>> {
    docs.iter()
        .enumerate()
        .map(|(i, cells)| Prototile::new(i, cells.iter().cloned().map(Point::new)))
        .collect()
}

fn prototiles_doc(ps: &[Prototile]) -> Vec<Vec<Vec<i64>>> {
    ps.iter()
        .map(|p| p.cells().iter().map(|c| c.coords().to_vec()).collect())
        .collect()
}

impl TilingDoc {
    pub fn from_tiling(t: &PeriodicTiling, geometry: Option<&GeometricBasis>) -> Self {
        TilingDoc {
            dim: t.dim(),
            prototiles: prototiles_doc(&t.prototiles),
            basis: basis_doc(&t.basis),
            placements: t
                .placements
                .iter()
                .map(|p| PlacementDoc {
                    offset: p.offset.coords().to_vec(),
                    tile: p.tile,
                })
                .collect(),
            geometry: geometry.map(|g| g.vectors().to_vec()),
        }
    }

    pub fn to_tiling(&self) -> Result<PeriodicTiling> {
        let basis = basis_from(&self.basis)?;
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: basis.dim(),
            });
        }
        let placements = self
            .placements
            .iter()
            .map(|p| Placement::new(p.offset.clone(), p.tile))
            .collect();
        PeriodicTiling::new(basis, prototiles_from(&self.prototiles)?, placements)
    }

    pub fn geometry(&self) -> Result<Option<GeometricBasis>> {
        match &self.geometry {
            None => Ok(None),
            Some(v) => {
                let g = GeometricBasis::new(v.clone())?;
                if g.dim() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: g.dim(),
                    });
                }
                Ok(Some(g))
            }
        }
    }
}

pub fn parse_tiling(json: &str) -> Result<(PeriodicTiling, Option<GeometricBasis>)> {
    let doc: TilingDoc = serde_json::from_str(json).map_err(|e| Error::Format(e.to_string()))?;
    Ok((doc.to_tiling()?, doc.geometry()?))
}

pub fn tiling_to_json(t: &PeriodicTiling, geometry: Option<&GeometricBasis>) -> String {
    to_compact_json(&TilingDoc::from_tiling(t, geometry))
}

/// Pretty JSON in which arrays and objects that hold only scalars, or
/// only arrays of scalars, stay on one line.
fn to_compact_json<T: Serialize>(doc: &T) -> String {
    let v = serde_json::to_value(doc).expect("serializable");
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn depth(v: &Value) -> usize {
    match v {
        Value::Array(a) => 1 + a.iter().map(depth).max().unwrap_or(0),
        Value::Object(o) => 1 + o.values().map(depth).max().unwrap_or(0),
        _ => 0,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    if depth(v) <= 2 {
        out.push_str(&v.to_string().replace(',', ", ").replace("\":", "\": "));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

impl ScheduleDoc {
    pub fn from_schedule(s: &Schedule) -> Self {
        let space = s.coset_space();
        let slots = (0..space.index())
            .map(|i| SlotDoc {
                coset_rep: space
                    .representative(crate::lattice::CosetId(i))
                    .coords()
                    .to_vec(),
                slot: s.slot_of_coset()[i],
                tile: s.deployment()[i],
            })
            .collect();
        ScheduleDoc {
            basis: basis_doc(s.basis()),
            m: s.m(),
            slots,
            prototiles: prototiles_doc(s.prototiles()),
        }
    }

    /// Entries may name any representative of their coset, in any order, but
    /// every coset must appear exactly once.
    pub fn to_schedule(&self) -> Result<Schedule> {
        let basis = basis_from(&self.basis)?;
        let space = CosetSpace::new(&basis)?;
        let n = space.index();
        let mut slots = vec![None; n];
        let mut deployment = vec![0; n];
        for e in &self.slots {
            let c = space.coset_of(&Point::new(e.coset_rep.clone()))?.0;
            if slots[c].replace(e.slot).is_some() {
                return Err(Error::Format(format!(
                    "coset of {:?} listed twice",
                    e.coset_rep
                )));
            }
            deployment[c] = e.tile;
        }
        let slots = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::Format(format!(
                        "no slot for coset of {:?}",
                        space.representative(crate::lattice::CosetId(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Schedule::from_parts(
            basis,
            prototiles_from(&self.prototiles)?,
            self.m,
            slots,
            deployment,
        )
    }
}

pub fn schedule_to_json(s: &Schedule) -> String {
    to_compact_json(&ScheduleDoc::from_schedule(s))
}

pub fn parse_schedule(json: &str) -> Result<Schedule> {
    let doc: ScheduleDoc = serde_json::from_str(json).map_err(|e| Error::Format(e.to_string()))?;
    doc.to_schedule()
}
