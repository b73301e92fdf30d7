//! Collision-free periodic broadcast schedules for sensors placed on a
//! lattice, built from tilings of the lattice by interference neighborhoods.
//!
//! * [`lattice`]: points, prototiles, sublattices and cosets of Z^d.
//! * [`tiling`]: periodic tilings and their exact verification on the torus.
//! * [`schedule`]: the tiling schedule and collision checks.
//! * [`oracle`]: brute-force conflict graphs, chromatic numbers and tiling
//!   search that certify optimality on small instances.
//! * [`polyomino`]: exactness of polyominoes from their boundary words.
//! * [`sim`], [`render`], [`format`]: simulator, SVG output and JSON files.

pub mod error;
pub mod format;
pub mod lattice;
pub mod oracle;
pub mod polyomino;
pub mod render;
pub mod schedule;
pub mod shapes;
pub mod sim;
pub mod tiling;

pub use error::{Error, Result};
pub use lattice::{
    coset_index, fundamental_domain, minkowski_sum, tiles_conflict, translate, CosetId, CosetSpace,
    GeometricBasis, Point, Prototile, SublatticeBasis, Window,
};
pub use schedule::{build_schedule, verify_collision_free, CollisionReport, Schedule};
pub use tiling::{
    respectable_index, verify_tiling, window_supports_optimality, PeriodicTiling, Placement,
    TilingReport, Violation,
};
