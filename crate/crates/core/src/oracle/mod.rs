//! Brute-force ground truth for the constructive results: conflict graphs on
//! the torus and on finite windows, exact chromatic numbers, exhaustive
//! tiling search and the minimum uniform schedule of a multi-tile tiling.

mod graph;
mod search;

pub use graph::{
    chromatic_number, chromatic_number_bounded, max_clique, optimal_coloring, ConflictGraph,
    DEFAULT_VERTEX_BOUND,
};
pub use search::{
    find_tilings, find_tilings_bounded, hnf_bases_of_index, probe_exactness, sizes_reach,
    TilingSolution,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{same_dim, CosetId, CosetSpace, Point, Prototile, SublatticeBasis, Window};
use crate::schedule::slot_order;
use crate::tiling::{verify_tiling, PeriodicTiling};

/// Conflict graph on Z^d / Λ: cosets `a != b` are adjacent when some
/// Λ-translates of their sensors have intersecting affected sets.
pub fn build_conflict_graph(
    deployment: &[usize],
    basis: &SublatticeBasis,
    prototiles: &[Prototile],
) -> Result<ConflictGraph> {
    let space = CosetSpace::new(basis)?;
    let n = space.index();
    if deployment.len() != n {
        return Err(Error::BadConfig(format!(
            "deployment has {} entries, torus has {n} cosets",
            deployment.len()
        )));
    }
    for (i, &j) in deployment.iter().enumerate() {
        let tile = prototiles.get(j).ok_or(Error::BadTileIndex {
            placement: i,
            tile: j,
            count: prototiles.len(),
        })?;
        same_dim(basis.dim(), tile.dim())?;
    }
    let all_cells = slot_order(prototiles);
    let labels = (0..n)
        .map(|i| (space.representative(CosetId(i)), deployment[i]))
        .collect();
    let mut g = ConflictGraph::new(labels);
    // p + x = q + λ + y with x in N_p, y in N_q  <=>  q ≡ p + x - y (mod Λ).
    for a in 0..n {
        let p = space.representative(CosetId(a));
        for x in prototiles[deployment[a]].cells() {
            let px = p.checked_add(x)?;
            for y in &all_cells {
                let b = space.coset_of(&px.checked_sub(y)?)?.0;
                if b != a && prototiles[deployment[b]].contains(y) {
                    g.add_edge(a, b);
                }
            }
        }
    }
    Ok(g)
}

/// Per-coset deployment (prototile index) of a tiling.
pub fn tiling_deployment(t: &PeriodicTiling) -> Result<Vec<usize>> {
    Ok(t.cover()?
        .into_iter()
        .map(|(pl, _)| t.placements[pl].tile)
        .collect())
}

/// Torus conflict graph of a valid tiling under its own deployment.
pub fn tiling_conflict_graph(t: &PeriodicTiling) -> Result<ConflictGraph> {
    ensure_valid(t)?;
    build_conflict_graph(&tiling_deployment(t)?, &t.basis, &t.prototiles)
}

/// Conflict graph of the sensors inside a finite window. Affected sets are
/// clipped to the window: `p` and `q` conflict when
/// `(p + N_p) ∩ (q + N_q) ∩ window` is nonempty.
pub fn window_conflict_graph(t: &PeriodicTiling, window: &Window) -> Result<ConflictGraph> {
    ensure_valid(t)?;
    same_dim(t.dim(), window.dim())?;
    let space = CosetSpace::new(&t.basis)?;
    let deployment = tiling_deployment(t)?;
    let pts = window.points();
    let tiles: Vec<usize> = pts
        .iter()
        .map(|p| Ok(deployment[space.coset_of(p)?.0]))
        .collect::<Result<_>>()?;
    // Receivers of each sensor, as window indices.
    let reach: Vec<Vec<usize>> = pts
        .iter()
        .zip(&tiles)
        .map(|(p, &j)| {
            let mut r = Vec::new();
            for c in t.prototiles[j].cells() {
                if let Some(i) = window.linear_index(&p.checked_add(c)?) {
                    r.push(i);
                }
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let mut heard_by: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    for (s, r) in reach.iter().enumerate() {
        for &c in r {
            heard_by[c].push(s);
        }
    }
    let labels = pts.iter().cloned().zip(tiles).collect();
    let mut g = ConflictGraph::new(labels);
    for senders in &heard_by {
        for (i, &a) in senders.iter().enumerate() {
            for &b in &senders[i + 1..] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

fn ensure_valid(t: &PeriodicTiling) -> Result<()> {
    let r = verify_tiling(t)?;
    if r.valid {
        Ok(())
    } else {
        Err(Error::InvalidTiling(format!(
            "{} violation(s)",
            r.violations.len()
        )))
    }
}

/// A uniform schedule: one slot per (prototile index, cell), shared by all
/// translates of that prototile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformSchedule {
    pub m: usize,
    /// `(prototile index, cell) -> slot` with slots in `1..=m`.
    pub slots: BTreeMap<(usize, Point), u32>,
}

/// Minimum slot count of a collision-free uniform schedule for the tiling.
pub fn min_uniform_schedule(t: &PeriodicTiling) -> Result<usize> {
    Ok(optimal_uniform_schedule(t)?.m)
}

/// Like [`min_uniform_schedule`], also returning an optimal labelling.
///
/// Labels are the vertices of a graph whose edges join two (tile, cell)
/// pairs whenever some pair of sensors carrying them conflict; the minimum
/// is that graph's chromatic number.
pub fn optimal_uniform_schedule(t: &PeriodicTiling) -> Result<UniformSchedule> {
    ensure_valid(t)?;
    let mut used: Vec<usize> = t.placements.iter().map(|p| p.tile).collect();
    used.sort_unstable();
    used.dedup();
    let labels: Vec<(usize, Point)> = used
        .iter()
        .flat_map(|&j| t.prototiles[j].cells().iter().map(move |c| (j, c.clone())))
        .collect();
    if labels.len() > DEFAULT_VERTEX_BOUND {
        return Err(Error::TooLarge {
            size: labels.len(),
            bound: DEFAULT_VERTEX_BOUND,
        });
    }
    let label_index: BTreeMap<&(usize, Point), usize> =
        labels.iter().enumerate().map(|(i, l)| (l, i)).collect();

    let cover = t.cover()?;
    let coset_label: Vec<usize> = cover
        .iter()
        .map(|(pl, cell)| label_index[&(t.placements[*pl].tile, cell.clone())])
        .collect();
    let torus = tiling_conflict_graph(t)?;

    let mut g = ConflictGraph::new(labels.iter().map(|(j, c)| (c.clone(), *j)).collect());
    for a in 0..torus.vertex_count() {
        for b in torus.neighbors(a) {
            let (la, lb) = (coset_label[a], coset_label[b]);
            if la == lb {
                return Err(Error::InvalidTiling(
                    "two conflicting sensors share a tile cell".into(),
                ));
            }
            g.add_edge(la, lb);
        }
    }
    let (m, colors) = optimal_coloring(&g, DEFAULT_VERTEX_BOUND)?;
    let slots = labels
        .into_iter()
        .zip(colors)
        .map(|(l, c)| (l, c as u32 + 1))
        .collect();
    Ok(UniformSchedule { m, slots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::Placement;

    fn ball() -> Prototile {
        Prototile::chebyshev_ball(0, 2, 1)
    }

    #[test]
    fn singleton_tile_has_edgeless_graph() {
        let b = SublatticeBasis::diagonal(&[2, 3]).unwrap();
        let single = Prototile::from_coords(0, &[[0, 0]]).unwrap();
        let g = build_conflict_graph(&[0; 6], &b, &[single]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(chromatic_number(&g).unwrap(), 1);
    }

    #[test]
    fn ball_on_3x3_torus_is_complete() {
        let b = SublatticeBasis::diagonal(&[3, 3]).unwrap();
        let g = build_conflict_graph(&[0; 9], &b, &[ball()]).unwrap();
        assert_eq!(g.edge_count(), 36);
        assert_eq!(chromatic_number(&g).unwrap(), 9);
    }

    #[test]
    fn ball_on_6x6_torus_has_degree_24() {
        let b = SublatticeBasis::diagonal(&[6, 6]).unwrap();
        let g = build_conflict_graph(&[0; 36], &b, &[ball()]).unwrap();
        for v in 0..36 {
            assert_eq!(g.degree(v), 24);
        }
    }

    #[test]
    fn plus_torus_needs_five() {
        let t = PeriodicTiling::lattice(
            SublatticeBasis::from_rows(&[[1, 2], [2, -1]]).unwrap(),
            Prototile::plus(0),
        )
        .unwrap();
        assert_eq!(
            chromatic_number(&tiling_conflict_graph(&t).unwrap()).unwrap(),
            5
        );
    }

    #[test]
    fn uniform_schedule_of_single_tile_is_its_size() {
        let t = PeriodicTiling::new(
            SublatticeBasis::diagonal(&[6, 3]).unwrap(),
            vec![ball()],
            vec![Placement::new([0, 0], 0), Placement::new([3, 1], 0)],
        )
        .unwrap();
        let u = optimal_uniform_schedule(&t).unwrap();
        assert_eq!(u.m, 9);
        assert_eq!(u.slots.len(), 9);
    }

    #[test]
    fn invalid_tiling_rejected() {
        let t =
            PeriodicTiling::lattice(SublatticeBasis::diagonal(&[3, 2]).unwrap(), ball()).unwrap();
        assert!(matches!(
            min_uniform_schedule(&t),
            Err(Error::InvalidTiling(_))
        ));
    }

    #[test]
    fn window_graph_of_ball() {
        let t =
            PeriodicTiling::lattice(SublatticeBasis::diagonal(&[3, 3]).unwrap(), ball()).unwrap();
        let g = window_conflict_graph(&t, &Window::cube(2, 0, 4).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 25);
        // (0,0) and (2,2) share (1,1); (0,0) and (3,0) share nothing.
        assert!(g.has_edge(0, 12));
        assert!(!g.has_edge(0, 15));
    }
}
