//! Named prototiles and reference tilings used throughout the examples and
//! tests.

use crate::lattice::{Prototile, SublatticeBasis};
use crate::tiling::{PeriodicTiling, Placement};

/// 3x3 Chebyshev ball.
pub fn chebyshev_ball() -> Prototile {
    Prototile::chebyshev_ball(0, 2, 1)
}

/// Euclidean unit ball in Z^2, i.e. the plus pentomino.
pub fn plus() -> Prototile {
    Prototile::plus(0)
}

/// Eight-cell neighborhood of a sensor with a directional antenna: a short
/// arm `(0,0), (1,0)` leading to a 2x3 block.
pub fn directional() -> Prototile {
    Prototile::from_coords(
        0,
        &[
            [0, 0],
            [1, 0],
            [2, -1],
            [2, 0],
            [2, 1],
            [3, -1],
            [3, 0],
            [3, 1],
        ],
    )
    .expect("contains origin")
}

/// Vertical S tetromino: `(0,0), (0,1)` over `(1,-1), (1,0)`.
pub fn s_tetromino() -> Prototile {
    Prototile::from_coords(0, &[[0, 0], [0, 1], [1, -1], [1, 0]]).expect("contains origin")
}

/// Mirror image of [`s_tetromino`]: `(0,-1), (0,0)` under `(1,0), (1,1)`.
/// The origin sits in the left column, as it does for the S piece, so
/// both pieces reach one column to the right of the sensor.
pub fn z_tetromino() -> Prototile {
    Prototile::from_coords(1, &[[0, -1], [0, 0], [1, 0], [1, 1]]).expect("contains origin")
}

/// T tetromino. It tiles by translation.
pub fn t_tetromino() -> Prototile {
    Prototile::from_coords(0, &[[0, 0], [1, 0], [2, 0], [1, 1]]).expect("contains origin")
}

/// U pentomino, which does not tile by translation.
pub fn u_pentomino() -> Prototile {
    Prototile::from_coords(0, &[[0, 0], [1, 0], [2, 0], [0, 1], [2, 1]]).expect("contains origin")
}

pub fn ball_tiling() -> PeriodicTiling {
    PeriodicTiling::lattice(
        SublatticeBasis::diagonal(&[3, 3]).unwrap(),
        chebyshev_ball(),
    )
    .expect("well formed")
}

pub fn plus_tiling() -> PeriodicTiling {
    PeriodicTiling::lattice(
        SublatticeBasis::from_rows(&[[1, 2], [2, -1]]).unwrap(),
        plus(),
    )
    .expect("well formed")
}

/// The directional tile translated by the lattice spanned by (4,0), (2,2).
pub fn directional_tiling() -> PeriodicTiling {
    PeriodicTiling::lattice(
        SublatticeBasis::from_rows(&[[4, 0], [2, 2]]).unwrap(),
        directional(),
    )
    .expect("well formed")
}

/// S tetrominoes translated along `(1,1)` and `(2,-2)`, except that in every
/// 8x8 block one pair of neighbouring S pieces is replaced by two Z pieces
/// covering the same eight cells. Best uniform schedule: 6 slots.
pub fn tetromino_islands() -> PeriodicTiling {
    let mut placements: Vec<Placement> = (0..8i64)
        .flat_map(|x| (0..8i64).map(move |y| [x, y]))
        .filter(|&[x, y]| (x + y) % 2 == 0 && (x - y).rem_euclid(4) == 2)
        .filter(|p| *p != [3, 5] && *p != [4, 6])
        .map(|p| Placement::new(p, 0))
        .collect();
    placements.push(Placement::new([4, 5], 1));
    placements.push(Placement::new([3, 6], 1));
    PeriodicTiling::new(
        SublatticeBasis::diagonal(&[8, 8]).unwrap(),
        vec![s_tetromino(), z_tetromino()],
        placements,
    )
    .expect("well formed")
}

/// Vertical strips two columns wide, each filled by one tetromino stacked
/// with period 2: two Z strips, then two S strips, repeating every 8
/// columns. Best uniform schedule: 4 slots.
pub fn tetromino_strips() -> PeriodicTiling {
    PeriodicTiling::new(
        SublatticeBasis::diagonal(&[8, 2]).unwrap(),
        vec![s_tetromino(), z_tetromino()],
        vec![
            Placement::new([1, 0], 1),
            Placement::new([3, 0], 1),
            Placement::new([5, 0], 0),
            Placement::new([7, 0], 0),
        ],
    )
    .expect("well formed")
}

/// One 3x3 ball and four plus pentominoes per period of the lattice
/// spanned by (1,12), (0,29). The ball contains the plus, so 9 slots
/// suffice and are needed.
pub fn ball_and_plus_tiling() -> PeriodicTiling {
    PeriodicTiling::new(
        SublatticeBasis::from_rows(&[[1, 12], [0, 29]]).unwrap(),
        vec![chebyshev_ball(), plus().with_id(1)],
        vec![
            Placement::new([0, 0], 0),
            Placement::new([0, -7], 1),
            Placement::new([0, -3], 1),
            Placement::new([0, 3], 1),
            Placement::new([0, 7], 1),
        ],
    )
    .expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_uniform_schedule;
    use crate::schedule::build_schedule;
    use crate::tiling::verify_tiling;

    #[test]
    fn reference_tilings_are_valid() {
        for t in [
            ball_tiling(),
            plus_tiling(),
            directional_tiling(),
            tetromino_islands(),
            tetromino_strips(),
            ball_and_plus_tiling(),
        ] {
            assert!(verify_tiling(&t).unwrap().valid, "{:?}", t.basis);
        }
    }

    #[test]
    fn mixed_tilings() {
        assert_eq!(tetromino_islands().placements.len(), 16);
        assert_eq!(min_uniform_schedule(&tetromino_strips()).unwrap(), 4);
        let t = ball_and_plus_tiling();
        assert_eq!(build_schedule(&t).unwrap().m(), 9);
    }
}
