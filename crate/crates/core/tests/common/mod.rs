//! Randomised invariant suites shared by the `properties` and `acceptance`
//! test targets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lattice_sched::lattice::Point;
use lattice_sched::oracle::{probe_exactness, tiling_conflict_graph};
use lattice_sched::polyomino::{fixed_polyominoes, reverse_complement};
use lattice_sched::shapes;
use lattice_sched::{
    build_schedule, tiles_conflict, CosetId, CosetSpace, PeriodicTiling, Prototile, SublatticeBasis,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: [Suite; 7] = [
    ("coset bijectivity", coset_bijectivity),
    ("conflict symmetry", conflict_symmetry),
    ("clique within every prototile", clique_within_prototile),
    ("shifted tiling per slot", shifted_tiling_per_slot),
    ("HNF canonicity", hnf_canonicity),
    (
        "reverse-complement involution",
        reverse_complement_involution,
    ),
    ("schedule periodicity", schedule_periodicity),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn det2(r: &[[i64; 2]; 2]) -> i64 {
    r[0][0] * r[1][1] - r[0][1] * r[1][0]
}

fn det3(r: &[[i64; 3]; 3]) -> i64 {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

/// Nonsingular bases of Z^2 and Z^3 with small index.
fn basis() -> impl Strategy<Value = SublatticeBasis> {
    let two = prop::array::uniform2(prop::array::uniform2(-7i64..=7))
        .prop_filter("singular or large", |r| (1..=120).contains(&det2(r).abs()))
        .prop_map(|r| SublatticeBasis::from_rows(&r).unwrap());
    let three = prop::array::uniform3(prop::array::uniform3(-3i64..=3))
        .prop_filter("singular or large", |r| (1..=120).contains(&det3(r).abs()))
        .prop_map(|r| SublatticeBasis::from_rows(&r).unwrap());
    prop_oneof![3 => two, 1 => three]
}

fn point2(r: i64) -> impl Strategy<Value = Point> {
    prop::array::uniform2(-r..=r).prop_map(Point::from)
}

fn coords_in(basis: &SublatticeBasis, r: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(-r..=r, basis.dim()).prop_map(Point::new)
}

/// Random planar prototile inside [-3,3]^2 containing the origin.
fn prototile() -> impl Strategy<Value = Prototile> {
    prop::collection::btree_set(prop::array::uniform2(-3i64..=3), 0..8).prop_map(|cells| {
        let mut cells: BTreeSet<Point> = cells.into_iter().map(Point::from).collect();
        cells.insert(Point::from([0, 0]));
        Prototile::new(0, cells).unwrap()
    })
}

/// Valid periodic tilings: the reference tilings plus a lattice tiling of
/// every exact polyomino with at most four cells.
pub fn tiling_pool() -> Vec<PeriodicTiling> {
    let mut pool = vec![
        shapes::ball_tiling(),
        shapes::plus_tiling(),
        shapes::directional_tiling(),
        shapes::tetromino_islands(),
        shapes::tetromino_strips(),
        shapes::ball_and_plus_tiling(),
    ];
    for size in 1..=4 {
        for cells in fixed_polyominoes(size) {
            let tile = anchored(&cells);
            if let Some((basis, sol)) = probe_exactness(&tile).unwrap() {
                pool.push(sol.into_tiling(&basis, &[tile]).unwrap());
            }
        }
    }
    pool
}

/// The cell set translated so that its smallest cell is the origin.
pub fn anchored(cells: &BTreeSet<Point>) -> Prototile {
    let first = cells.iter().next().expect("nonempty").clone();
    Prototile::new(0, cells.iter().map(|c| c.checked_sub(&first).unwrap())).unwrap()
}

fn pooled_tiling() -> impl Strategy<Value = PeriodicTiling> {
    let pool = tiling_pool();
    (0..pool.len()).prop_map(move |i| pool[i].clone())
}

/// Distinct canonical representatives, one per coset, and reduction that
/// ignores added lattice vectors.
pub fn coset_bijectivity(cases: u32) -> Result<(), String> {
    let strategy = basis().prop_flat_map(|b| {
        let d = b.dim();
        (
            Just(b.clone()),
            coords_in(&b, 40),
            prop::collection::vec(-3i64..=3, d),
        )
    });
    run(cases, strategy, |(b, p, k)| {
        let space = CosetSpace::new(&b).unwrap();
        let domain = space.fundamental_domain();
        prop_assert_eq!(domain.len() as u64, b.index());
        let mut seen = vec![false; domain.len()];
        for (i, rep) in domain.iter().enumerate() {
            let c = space.coset_of(rep).unwrap().0;
            prop_assert!(!seen[c], "coset {} hit twice", c);
            seen[c] = true;
            prop_assert_eq!(&space.representative(CosetId(c)), rep);
            prop_assert_eq!(c, i);
        }
        let mut shifted = p.clone();
        for (g, &k) in b.generators().iter().zip(&k) {
            let scaled = Point::new(g.coords().iter().map(|x| x * k).collect());
            shifted = shifted.checked_add(&scaled).unwrap();
        }
        prop_assert_eq!(
            space.coset_of(&p).unwrap(),
            space.coset_of(&shifted).unwrap()
        );
        let r = space.reduce(&p).unwrap();
        prop_assert_eq!(space.reduce(&r).unwrap(), r.clone());
        prop_assert_eq!(space.coset_of(&r).unwrap(), space.coset_of(&p).unwrap());
        Ok(())
    })
}

/// `tiles_conflict` is symmetric and agrees with a direct intersection.
pub fn conflict_symmetry(cases: u32) -> Result<(), String> {
    let strategy = (
        prototile(),
        prototile().prop_map(|t| t.with_id(1)),
        point2(8),
        point2(8),
    );
    run(cases, strategy, |(a, b, s, t)| {
        let ab = tiles_conflict(&s, &a, &t, &b).unwrap();
        prop_assert_eq!(ab, tiles_conflict(&t, &b, &s, &a).unwrap());
        let sa: BTreeSet<Point> = a
            .cells()
            .iter()
            .map(|c| s.checked_add(c).unwrap())
            .collect();
        let direct = b
            .cells()
            .iter()
            .any(|c| sa.contains(&t.checked_add(c).unwrap()));
        prop_assert_eq!(ab, direct);
        Ok(())
    })
}

/// Any two sensors of one placed tile conflict, on the plane and as an
/// edge of the torus conflict graph.
pub fn clique_within_prototile(cases: u32) -> Result<(), String> {
    let strategy = pooled_tiling().prop_flat_map(|t| {
        let n = t.placements.len();
        (
            Just(t),
            0..n,
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        )
    });
    run(cases, strategy, |(t, pl, i, j)| {
        let placement = &t.placements[pl];
        let tile = t.prototile_of(placement);
        let cells: Vec<&Point> = tile.cells().iter().collect();
        let (a, b) = (i.get(&cells), j.get(&cells));
        let p = placement.offset.checked_add(a).unwrap();
        let q = placement.offset.checked_add(b).unwrap();
        // sensors inside one tile carry that tile's neighborhood
        prop_assert!(tiles_conflict(&p, tile, &q, tile).unwrap());
        if a != b {
            let space = CosetSpace::new(&t.basis).unwrap();
            let g = tiling_conflict_graph(&t).unwrap();
            let (cp, cq) = (space.coset_of(&p).unwrap().0, space.coset_of(&q).unwrap().0);
            prop_assert!(cp != cq);
            prop_assert!(g.has_edge(cp, cq));
        }
        Ok(())
    })
}

/// The affected sets of the sensors sharing a slot never overlap; with a
/// single prototile they cover every point exactly once (a translate of
/// the original tiling).
pub fn shifted_tiling_per_slot(cases: u32) -> Result<(), String> {
    let strategy = pooled_tiling().prop_flat_map(|t| {
        let m = build_schedule(&t).unwrap().m();
        (Just(t), 1..=m)
    });
    run(cases, strategy, |(t, slot)| {
        let s = build_schedule(&t).unwrap();
        let space = s.coset_space();
        let mut hits = vec![0u32; space.index()];
        for c in 0..space.index() {
            if s.slot_of_coset()[c] != slot {
                continue;
            }
            let p = space.representative(CosetId(c));
            for n in s.prototiles()[s.deployment()[c]].cells() {
                hits[space.coset_of(&p.checked_add(n).unwrap()).unwrap().0] += 1;
            }
        }
        prop_assert!(hits.iter().all(|&h| h <= 1), "slot {} overlaps", slot);
        let single = t.placements.iter().all(|p| p.tile == t.placements[0].tile);
        if single {
            prop_assert!(hits.iter().all(|&h| h == 1), "slot {} leaves a gap", slot);
        }
        Ok(())
    })
}

/// HNF is a function of the lattice: invariant under unimodular column
/// operations, idempotent, and in canonical shape.
pub fn hnf_canonicity(cases: u32) -> Result<(), String> {
    let strategy = basis().prop_flat_map(|b| {
        let d = b.dim();
        (
            Just(b),
            prop::collection::vec((0..d, 0..d, -3i64..=3, any::<bool>()), 0..6),
        )
    });
    run(cases, strategy, |(b, ops)| {
        let h = b.hermite_normal_form();
        prop_assert_eq!(h.hermite_normal_form(), h.clone());
        let mut gens: Vec<Vec<i64>> = b.generators().iter().map(|g| g.coords().to_vec()).collect();
        for (i, j, k, neg) in ops {
            if i != j {
                let gj = gens[j].clone();
                for (x, y) in gens[i].iter_mut().zip(gj) {
                    *x += k * y;
                }
            }
            if neg {
                gens[i].iter_mut().for_each(|x| *x = -*x);
            }
            gens.swap(i, j);
        }
        let other = SublatticeBasis::new(gens.into_iter().map(Point::new).collect()).unwrap();
        prop_assert_eq!(other.hermite_normal_form(), h.clone());
        prop_assert!(other.same_lattice(&b));
        // column-style shape: lower triangular, positive diagonal, entries
        // left of the diagonal reduced modulo it
        let d = h.dim();
        for col in 0..d {
            let g = h.generators()[col].coords();
            for &above in &g[..col] {
                prop_assert_eq!(above, 0);
            }
            prop_assert!(g[col] > 0);
        }
        for row in 0..d {
            let diag = h.generators()[row].coords()[row];
            for col in 0..row {
                let x = h.generators()[col].coords()[row];
                prop_assert!((0..diag).contains(&x));
            }
        }
        Ok(())
    })
}

pub fn reverse_complement_involution(cases: u32) -> Result<(), String> {
    let strategy = prop::collection::vec(prop::sample::select(vec!['u', 'd', 'l', 'r']), 0..60)
        .prop_map(|v| v.into_iter().collect::<String>());
    run(cases, strategy, |w| {
        let once = reverse_complement(&w).unwrap();
        prop_assert_eq!(once.len(), w.len());
        prop_assert_eq!(reverse_complement(&once).unwrap(), w);
        Ok(())
    })
}

/// Slots repeat along the sublattice and in time with period m.
pub fn schedule_periodicity(cases: u32) -> Result<(), String> {
    let strategy = (pooled_tiling(), point2(30), -4i64..=4, -4i64..=4, 1i64..200);
    run(cases, strategy, |(t, p, k0, k1, time)| {
        let s = build_schedule(&t).unwrap();
        let g = t.basis.generators();
        let lambda = Point::from([
            k0 * g[0].coords()[0] + k1 * g[1].coords()[0],
            k0 * g[0].coords()[1] + k1 * g[1].coords()[1],
        ]);
        let q = p.checked_add(&lambda).unwrap();
        prop_assert_eq!(s.slot_of(&p).unwrap(), s.slot_of(&q).unwrap());
        let m = s.m() as i64;
        prop_assert_eq!(
            s.may_transmit(&p, time).unwrap(),
            s.may_transmit(&p, time + m).unwrap()
        );
        prop_assert_eq!(
            s.may_transmit(&p, time).unwrap(),
            s.slot_of(&p).unwrap() as i64 == (time - 1).rem_euclid(m) + 1
        );
        Ok(())
    })
}
