//! Periodic tilings of Z^d and their verification on the quotient torus.

use crate::error::{Error, Result};
use crate::lattice::{
    minkowski_sum, same_dim, CosetId, CosetSpace, Point, Prototile, SublatticeBasis, Window,
};

/// One Λ-orbit of translates: the tile `prototiles[tile]` placed at every
/// point of `offset + Λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Placement {
    pub offset: Point,
    pub tile: usize,
}

impl Placement {
    pub fn new(offset: impl Into<Point>, tile: usize) -> Self {
        Placement {
            offset: offset.into(),
            tile,
        }
    }
}

/// A Λ-periodic placement of prototiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTiling {
    pub basis: SublatticeBasis,
    pub prototiles: Vec<Prototile>,
    pub placements: Vec<Placement>,
}

impl PeriodicTiling {
    /// Checks structural well-formedness (dimensions and tile indices), not
    /// the tiling conditions; see [`verify_tiling`].
    pub fn new(
        basis: SublatticeBasis,
        prototiles: Vec<Prototile>,
        placements: Vec<Placement>,
    ) -> Result<Self> {
        if prototiles.is_empty() {
            return Err(Error::NoPrototiles);
        }
        let d = basis.dim();
        for p in &prototiles {
            same_dim(d, p.dim())?;
        }
        for (i, pl) in placements.iter().enumerate() {
            same_dim(d, pl.offset.dim())?;
            if pl.tile >= prototiles.len() {
                return Err(Error::BadTileIndex {
                    placement: i,
                    tile: pl.tile,
                    count: prototiles.len(),
                });
            }
        }
        Ok(PeriodicTiling {
            basis,
            prototiles,
            placements,
        })
    }

    /// A lattice tiling: one prototile, one placement at the origin.
    pub fn lattice(basis: SublatticeBasis, tile: Prototile) -> Result<Self> {
        let d = basis.dim();
        Self::new(basis, vec![tile], vec![Placement::new(Point::origin(d), 0)])
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn prototile_of(&self, placement: &Placement) -> &Prototile {
        &self.prototiles[placement.tile]
    }

    /// Total number of cells placed per fundamental domain.
    pub fn cell_count(&self) -> u64 {
        self.placements
            .iter()
            .map(|p| self.prototiles[p.tile].len() as u64)
            .sum()
    }

    /// Covering of each coset, in coset order: `(placement index, cell)`.
    /// Only meaningful for valid tilings.
    pub fn cover(&self) -> Result<Vec<(usize, Point)>> {
        let space = CosetSpace::new(&self.basis)?;
        let mut cover: Vec<Option<(usize, Point)>> = vec![None; space.index()];
        for (i, pl) in self.placements.iter().enumerate() {
            for cell in self.prototiles[pl.tile].cells() {
                let c = space.coset_of(&pl.offset.checked_add(cell)?)?;
                cover[c.0] = Some((i, cell.clone()));
            }
        }
        cover
            .into_iter()
            .map(|c| c.ok_or_else(|| Error::InvalidTiling("coset left uncovered".into())))
            .collect()
    }

    /// Translates every offset by `t`.
    pub fn shifted(&self, t: &Point) -> Result<Self> {
        let placements = self
            .placements
            .iter()
            .map(|p| {
                Ok(Placement {
                    offset: p.offset.checked_add(t)?,
                    tile: p.tile,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicTiling {
            basis: self.basis.clone(),
            prototiles: self.prototiles.clone(),
            placements,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// No placed cell lands in the coset of `witness`.
    Uncovered { witness: Point },
    /// `witness` is covered by a cell of both placements (which may be the
    /// same placement when a tile overlaps its own Λ-translates).
    Overlap {
        witness: Point,
        placements: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub valid: bool,
    pub index: u64,
    pub violations: Vec<Violation>,
}

/// Decides whether the periodic placement covers every point of Z^d exactly
/// once. Checking each coset of the quotient suffices, since the placement
/// is Λ-periodic.
pub fn verify_tiling(t: &PeriodicTiling) -> Result<TilingReport> {
    let space = CosetSpace::new(&t.basis)?;
    let n = space.index();
    let mut owner: Vec<Option<(usize, Point)>> = vec![None; n];
    let mut violations = Vec::new();

    for (i, pl) in t.placements.iter().enumerate() {
        let tile = t.prototiles.get(pl.tile).ok_or(Error::BadTileIndex {
            placement: i,
            tile: pl.tile,
            count: t.prototiles.len(),
        })?;
        for cell in tile.cells() {
            let p = pl.offset.checked_add(cell)?;
            let c = space.coset_of(&p)?;
            match &owner[c.0] {
                None => owner[c.0] = Some((i, p)),
                Some((j, _)) => violations.push(Violation::Overlap {
                    witness: p,
                    placements: (*j, i),
                }),
            }
        }
    }
    for (c, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(Violation::Uncovered {
                witness: space.representative(CosetId(c)),
            });
        }
    }
    Ok(TilingReport {
        valid: violations.is_empty(),
        index: t.basis.index(),
        violations,
    })
}

/// Index of a prototile containing every other one, if any. Among equal
/// candidates the lowest index wins.
pub fn respectable_index(prototiles: &[Prototile]) -> Option<usize> {
    prototiles.iter().position(|big| {
        prototiles
            .iter()
            .all(|small| small.cells().is_subset(big.cells()))
    })
}

/// Whether the box contains a translate of `N1 + N1`, the condition under
/// which the restricted schedule stays optimal.
pub fn window_supports_optimality(window: &Window, n1: &Prototile) -> Result<bool> {
    same_dim(window.dim(), n1.dim())?;
    let sum = minkowski_sum(n1.cells(), n1.cells())?;
    let bb = crate::lattice::bounding_box(sum.iter());
    Ok(bb
        .iter()
        .enumerate()
        .all(|(axis, (lo, hi))| ((hi - lo) as u64) < window.extent(axis)))
}
