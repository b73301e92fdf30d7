//! Exact-cover search for periodic tilings on a fixed quotient torus.

use crate::error::{Error, Result};
use crate::lattice::{CosetSpace, Point, Prototile, SublatticeBasis};
use crate::oracle::graph::DEFAULT_VERTEX_BOUND;
use crate::tiling::{PeriodicTiling, Placement};

/// Placements of one periodic tiling found by [`find_tilings`]. Offsets are
/// canonical coset representatives; the list is sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TilingSolution {
    pub placements: Vec<Placement>,
}

impl TilingSolution {
    pub fn into_tiling(
        self,
        basis: &SublatticeBasis,
        prototiles: &[Prototile],
    ) -> Result<PeriodicTiling> {
        PeriodicTiling::new(basis.clone(), prototiles.to_vec(), self.placements)
    }
}

/// Whether some multiset of the sizes sums to `target`.
pub fn sizes_reach(sizes: &[usize], target: usize) -> bool {
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for t in 1..=target {
        reach[t] = sizes.iter().any(|&s| s > 0 && s <= t && reach[t - s]);
    }
    reach[target]
}

/// Up to `limit` periodic tilings of Z^d by translates of `prototiles` with
/// translation group containing the sublattice of `basis`.
///
/// The search always covers the lowest uncovered coset next, trying every
/// prototile (in order) and every cell of it (in lexicographic order) as the
/// covering cell, so each solution is produced exactly once.
pub fn find_tilings(
    prototiles: &[Prototile],
    basis: &SublatticeBasis,
    limit: usize,
) -> Result<Vec<TilingSolution>> {
    find_tilings_bounded(prototiles, basis, limit, DEFAULT_VERTEX_BOUND)
}

pub fn find_tilings_bounded(
    prototiles: &[Prototile],
    basis: &SublatticeBasis,
    limit: usize,
    bound: usize,
) -> Result<Vec<TilingSolution>> {
    if prototiles.is_empty() {
        return Err(Error::NoPrototiles);
    }
    let space = CosetSpace::new(basis)?;
    let n = space.index();
    if n > bound {
        return Err(Error::TooLarge { size: n, bound });
    }
    for p in prototiles {
        crate::lattice::same_dim(basis.dim(), p.dim())?;
    }
    let sizes: Vec<usize> = prototiles.iter().map(Prototile::len).collect();
    if limit == 0 || !sizes_reach(&sizes, n) {
        return Ok(Vec::new());
    }

    // Cell coset offsets per prototile relative to its anchor.
    let shapes: Vec<Vec<Point>> = prototiles
        .iter()
        .map(|p| p.cells().iter().cloned().collect())
        .collect();

    let mut search = Search {
        space: &space,
        shapes: &shapes,
        covered: vec![false; n],
        chosen: Vec::new(),
        limit,
        out: Vec::new(),
    };
    search.run()?;
    Ok(search.out)
}

struct Search<'a> {
    space: &'a CosetSpace,
    shapes: &'a [Vec<Point>],
    covered: Vec<bool>,
    chosen: Vec<Placement>,
    limit: usize,
    out: Vec<TilingSolution>,
}

impl Search<'_> {
    fn run(&mut self) -> Result<()> {
        let Some(target) = self.covered.iter().position(|c| !c) else {
            let mut placements = self.chosen.clone();
            placements.sort();
            self.out.push(TilingSolution { placements });
            return Ok(());
        };
        let target_rep = self.space.representative(crate::lattice::CosetId(target));
        for (j, shape) in self.shapes.iter().enumerate() {
            for anchor_cell in shape {
                let offset = self.space.reduce(&target_rep.checked_sub(anchor_cell)?)?;
                let mut hit = Vec::with_capacity(shape.len());
                let mut ok = true;
                for cell in shape {
                    let c = self.space.coset_of(&offset.checked_add(cell)?)?.0;
                    if self.covered[c] || hit.contains(&c) {
                        ok = false;
                        break;
                    }
                    hit.push(c);
                }
                if !ok {
                    continue;
                }
                for &c in &hit {
                    self.covered[c] = true;
                }
                self.chosen.push(Placement { offset, tile: j });
                self.run()?;
                self.chosen.pop();
                for &c in &hit {
                    self.covered[c] = false;
                }
                if self.out.len() >= self.limit {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Every Hermite-normal-form basis of dimension `dim` with the given index,
/// in a deterministic order. Distinct entries generate distinct sublattices.
pub fn hnf_bases_of_index(dim: usize, index: u64) -> Vec<SublatticeBasis> {
    let mut out = Vec::new();
    let mut diag = Vec::with_capacity(dim);
    diagonals(dim, index, &mut diag, &mut |d| {
        let mut cols: Vec<Vec<i64>> = (0..dim)
            .map(|j| {
                let mut v = vec![0i64; dim];
                v[j] = d[j];
                v
            })
            .collect();
        fill_below(&mut cols, d, 1, 0, &mut out);
    });
    out
}

fn diagonals(left: usize, rest: u64, acc: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if left == 0 {
        if rest == 1 {
            f(acc);
        }
        return;
    }
    for k in 1..=rest {
        if rest.is_multiple_of(k) {
            acc.push(k as i64);
            diagonals(left - 1, rest / k, acc, f);
            acc.pop();
        }
    }
}

/// Enumerates the entries `cols[j][i]` for `j < i` in `[0, d_i)`.
fn fill_below(
    cols: &mut Vec<Vec<i64>>,
    d: &[i64],
    row: usize,
    col: usize,
    out: &mut Vec<SublatticeBasis>,
) {
    let dim = d.len();
    if row >= dim {
        let gens = cols.iter().map(|c| Point::new(c.clone())).collect();
        out.push(SublatticeBasis::new(gens).expect("positive diagonal"));
        return;
    }
    if col >= row {
        fill_below(cols, d, row + 1, 0, out);
        return;
    }
    for v in 0..d[row] {
        cols[col][row] = v;
        fill_below(cols, d, row, col + 1, out);
    }
    cols[col][row] = 0;
}

/// Searches every sublattice of index `|tile|` for a lattice tiling by the
/// tile. A `None` means "no lattice tiling at this index", which is a
/// definitive negative only where lattice tilings are known to be complete
/// (translates of polyominoes in the plane).
pub fn probe_exactness(tile: &Prototile) -> Result<Option<(SublatticeBasis, TilingSolution)>> {
    for basis in hnf_bases_of_index(tile.dim(), tile.len() as u64) {
        if let Some(sol) = find_tilings(std::slice::from_ref(tile), &basis, 1)?.pop() {
            return Ok(Some((basis, sol)));
        }
    }
    Ok(None)
}
