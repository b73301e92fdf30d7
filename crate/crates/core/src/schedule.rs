//! Periodic broadcast schedules derived from tilings.
//!
//! Let `N = {n_1 < ... < n_m}` be the union of all prototile cell sets in
//! lexicographic order. A point `o + n` covered by cell `n` of a tile placed
//! at `o` broadcasts in slot `k` where `n = n_k`, and the tile's shape is its
//! affected set. Slots are 1-based; time `t` fires slot `((t - 1) mod m) + 1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{
    common_point, same_dim, CosetId, CosetSpace, Point, Prototile, SublatticeBasis, Window,
};
use crate::tiling::{verify_tiling, PeriodicTiling};

#[derive(Clone, Debug)]
pub struct Schedule {
    basis: SublatticeBasis,
    space: CosetSpace,
    m: u32,
    slot_of_coset: Vec<u32>,
    deployment: Vec<usize>,
    prototiles: Vec<Prototile>,
}

impl Schedule {
    /// Assembles a schedule from explicit per-coset tables (indexed by
    /// [`CosetId`]). Used for deserialized and hand-built schedules.
    pub fn from_parts(
        basis: SublatticeBasis,
        prototiles: Vec<Prototile>,
        m: u32,
        slot_of_coset: Vec<u32>,
        deployment: Vec<usize>,
    ) -> Result<Self> {
        let space = CosetSpace::new(&basis)?;
        let n = space.index();
        if slot_of_coset.len() != n || deployment.len() != n {
            return Err(Error::BadConfig(format!(
                "schedule tables must have {n} entries"
            )));
        }
        if m == 0 || slot_of_coset.iter().any(|&s| s == 0 || s > m) {
            return Err(Error::BadConfig(format!("slots must lie in 1..={m}")));
        }
        for (i, &j) in deployment.iter().enumerate() {
            if j >= prototiles.len() {
                return Err(Error::BadTileIndex {
                    placement: i,
                    tile: j,
                    count: prototiles.len(),
                });
            }
            same_dim(basis.dim(), prototiles[j].dim())?;
        }
        Ok(Schedule {
            basis,
            space,
            m,
            slot_of_coset,
            deployment,
            prototiles,
        })
    }

    pub fn basis(&self) -> &SublatticeBasis {
        &self.basis
    }

    pub fn coset_space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn prototiles(&self) -> &[Prototile] {
        &self.prototiles
    }

    pub fn slot_of_coset(&self) -> &[u32] {
        &self.slot_of_coset
    }

    pub fn deployment(&self) -> &[usize] {
        &self.deployment
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn slot_of(&self, p: &Point) -> Result<u32> {
        Ok(self.slot_of_coset[self.space.coset_of(p)?.0])
    }

    /// The prototile governing the affected set of `p`.
    pub fn neighborhood_of(&self, p: &Point) -> Result<&Prototile> {
        Ok(&self.prototiles[self.deployment[self.space.coset_of(p)?.0]])
    }

    pub fn may_transmit(&self, p: &Point, time: i64) -> Result<bool> {
        Ok(slot_at_time(time, self.m) == self.slot_of(p)?)
    }
}

/// Slot firing at `time` in a period of `m` slots.
pub fn slot_at_time(time: i64, m: u32) -> u32 {
    (time - 1).rem_euclid(m as i64) as u32 + 1
}

/// Union of all prototile cells, lexicographically ordered: `n_1, ..., n_m`.
pub fn slot_order(prototiles: &[Prototile]) -> Vec<Point> {
    let mut all: Vec<Point> = prototiles
        .iter()
        .flat_map(|p| p.cells().iter().cloned())
        .collect();
    all.sort();
    all.dedup();
    all
}

/// Builds the schedule for a verified tiling. For a respectable tiling the
/// slot count equals the size of the largest prototile.
pub fn build_schedule(t: &PeriodicTiling) -> Result<Schedule> {
    let report = verify_tiling(t)?;
    if !report.valid {
        return Err(Error::InvalidTiling(format!(
            "{} violation(s), first: {:?}",
            report.violations.len(),
            report.violations[0]
        )));
    }
    let order = slot_order(&t.prototiles);
    let slot_index: BTreeMap<&Point, u32> = order
        .iter()
        .enumerate()
        .map(|(i, n)| (n, i as u32 + 1))
        .collect();

    let space = CosetSpace::new(&t.basis)?;
    let n = space.index();
    let mut slots = vec![0u32; n];
    let mut deployment = vec![0usize; n];
    for pl in &t.placements {
        for cell in t.prototiles[pl.tile].cells() {
            let c = space.coset_of(&pl.offset.checked_add(cell)?)?;
            slots[c.0] = slot_index[cell];
            deployment[c.0] = pl.tile;
        }
    }
    Schedule::from_parts(
        t.basis.clone(),
        t.prototiles.clone(),
        order.len() as u32,
        slots,
        deployment,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionWitness {
    pub slot: u32,
    pub p: Point,
    pub q: Point,
    pub common: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub collision_free: bool,
    pub pairs_checked: u64,
    pub witnesses: Vec<CollisionWitness>,
}

/// Checks every pair of distinct window points sharing a slot for
/// intersecting affected sets. Witnesses come out in lexicographic `(p, q)`
/// order.
pub fn verify_collision_free(s: &Schedule, window: &Window) -> Result<CollisionReport> {
    same_dim(s.dim(), window.dim())?;
    struct Sensor<'a> {
        p: Point,
        tile: &'a Prototile,
        lo: Vec<i64>,
        hi: Vec<i64>,
    }
    let mut by_slot: BTreeMap<u32, Vec<Sensor<'_>>> = BTreeMap::new();
    for p in window.points() {
        let c = s.space.coset_of(&p)?;
        let tile = &s.prototiles[s.deployment[c.0]];
        let bb = tile.bounding_box();
        let lo = p.coords().iter().zip(&bb).map(|(x, b)| x + b.0).collect();
        let hi = p.coords().iter().zip(&bb).map(|(x, b)| x + b.1).collect();
        by_slot
            .entry(s.slot_of_coset[c.0])
            .or_default()
            .push(Sensor { p, tile, lo, hi });
    }

    let mut witnesses = Vec::new();
    let mut pairs_checked = 0u64;
    for (&slot, group) in &by_slot {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                pairs_checked += 1;
                let disjoint_boxes =
                    (0..a.lo.len()).any(|k| a.hi[k] < b.lo[k] || b.hi[k] < a.lo[k]);
                if disjoint_boxes {
                    continue;
                }
                if let Some(common) = common_point(&a.p, a.tile, &b.p, b.tile)? {
                    witnesses.push(CollisionWitness {
                        slot,
                        p: a.p.clone(),
                        q: b.p.clone(),
                        common,
                    });
                }
            }
        }
    }
    witnesses.sort_by(|x, y| (&x.p, &x.q).cmp(&(&y.p, &y.q)));
    Ok(CollisionReport {
        collision_free: witnesses.is_empty(),
        pairs_checked,
        witnesses,
    })
}

/// The points of one coset class inside `window`, i.e. the sensors that are
/// all assigned the same schedule entry.
pub fn coset_members(s: &Schedule, c: CosetId, window: &Window) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for p in window.points() {
        if s.space.coset_of(&p)? == c {
            out.push(p);
        }
    }
    Ok(out)
}
