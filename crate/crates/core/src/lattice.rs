//! Integer lattice arithmetic: points of Z^d, prototiles, translation
//! sublattices and their cosets.
//!
//! Every lattice is handled in its integer coordinates. Real geometry only
//! enters through [`GeometricBasis`], which the renderer uses.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{checked, Error, Result};

/// A point of Z^d in lattice coordinates. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        same_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| checked(a.checked_add(*b)))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point> {
        same_dim(self.dim(), other.dim())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| checked(a.checked_sub(*b)))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn checked_neg(&self) -> Result<Point> {
        self.0
            .iter()
            .map(|a| checked(a.checked_neg()))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A finite neighborhood of the origin: the set of sensors affected when the
/// sensor at 0 broadcasts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prototile {
    id: usize,
    cells: BTreeSet<Point>,
}

impl Prototile {
    /// Builds a prototile, rejecting duplicates, mixed dimensions and cell
    /// sets that miss the origin.
    pub fn new(id: usize, cells: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut dim = None;
        for c in cells {
            match dim {
                None => dim = Some(c.dim()),
                Some(d) => same_dim(d, c.dim())?,
            }
            if !set.insert(c.clone()) {
                return Err(Error::DuplicateCell(c.0));
            }
        }
        if !set.iter().any(Point::is_origin) {
            return Err(Error::MissingOrigin);
        }
        if dim == Some(0) {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Prototile { id, cells: set })
    }

    pub fn from_coords<const N: usize>(id: usize, coords: &[[i64; N]]) -> Result<Self> {
        Self::new(id, coords.iter().map(|c| Point::from(*c)))
    }

    /// The Chebyshev (l-infinity) ball of the given radius in dimension `dim`.
    pub fn chebyshev_ball(id: usize, dim: usize, radius: i64) -> Self {
        let side: Vec<i64> = (-radius..=radius).collect();
        let mut cells = vec![Vec::new()];
        for _ in 0..dim {
            cells = cells
                .into_iter()
                .flat_map(|prefix| {
                    side.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        Prototile::new(id, cells.into_iter().map(Point)).expect("ball contains origin")
    }

    /// The 2-d plus pentomino: the l1 ball of radius 1.
    pub fn plus(id: usize) -> Self {
        Self::from_coords(id, &[[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]]).expect("valid")
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().next().map_or(0, Point::dim)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.cells.contains(p)
    }

    /// Per-axis (min, max) of the cell coordinates.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        bounding_box(self.cells.iter())
    }
}

pub(crate) fn bounding_box<'a>(pts: impl Iterator<Item = &'a Point>) -> Vec<(i64, i64)> {
    let mut bb: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if bb.is_empty() {
            bb = p.coords().iter().map(|&c| (c, c)).collect();
        } else {
            for (b, &c) in bb.iter_mut().zip(p.coords()) {
                b.0 = b.0.min(c);
                b.1 = b.1.max(c);
            }
        }
    }
    bb
}

/// Generators of a full-rank translation sublattice of Z^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeBasis {
    generators: Vec<Point>,
    index: u64,
}

impl SublatticeBasis {
    /// `generators` are the basis vectors (the columns of the basis matrix).
    pub fn new(generators: Vec<Point>) -> Result<Self> {
        let (_, index) = hnf_columns(&generators)?;
        Ok(SublatticeBasis { generators, index })
    }

    pub fn from_rows<const N: usize>(generators: &[[i64; N]]) -> Result<Self> {
        Self::new(generators.iter().map(|g| Point::from(*g)).collect())
    }

    /// The diagonal basis `diag(n_1, ..., n_d)`.
    pub fn diagonal(sizes: &[i64]) -> Result<Self> {
        let d = sizes.len();
        let gens = (0..d)
            .map(|i| {
                let mut v = vec![0; d];
                v[i] = sizes[i];
                Point(v)
            })
            .collect();
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Number of cosets of Z^d modulo the sublattice, `|det|`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Canonical lower-triangular basis of the same sublattice.
    pub fn hermite_normal_form(&self) -> SublatticeBasis {
        let (cols, index) = hnf_columns(&self.generators).expect("validated at construction");
        SublatticeBasis {
            generators: cols,
            index,
        }
    }

    /// True when both bases generate the same sublattice.
    pub fn same_lattice(&self, other: &SublatticeBasis) -> bool {
        self.dim() == other.dim()
            && self.hermite_normal_form().generators == other.hermite_normal_form().generators
    }
}

/// Column-style Hermite normal form. Column `j` is zero above row `j`,
/// the diagonal is positive and every entry left of the diagonal in row `i`
/// lies in `[0, h_ii)`.
fn hnf_columns(generators: &[Point]) -> Result<(Vec<Point>, u64)> {
    let d = generators.len();
    if d == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    for g in generators {
        same_dim(d, g.dim())?;
    }
    let mut cols: Vec<Vec<i64>> = generators.iter().map(|g| g.0.clone()).collect();

    for i in 0..d {
        for j in i + 1..d {
            while cols[j][i] != 0 {
                let q = cols[i][i] / cols[j][i];
                let (ci, cj) = pick2(&mut cols, i, j);
                axpy(ci, -q, cj)?;
                cols.swap(i, j);
            }
        }
        if cols[i][i] == 0 {
            return Err(Error::SingularBasis);
        }
        if cols[i][i] < 0 {
            for v in cols[i].iter_mut() {
                *v = checked(v.checked_neg())?;
            }
        }
        let pivot = cols[i][i];
        for k in 0..i {
            let q = cols[k][i].div_euclid(pivot);
            if q != 0 {
                let (ck, ci) = pick2(&mut cols, k, i);
                axpy(ck, -q, ci)?;
            }
        }
    }

    let mut index: u64 = 1;
    for (i, c) in cols.iter().enumerate() {
        index = index.checked_mul(c[i] as u64).ok_or(Error::Overflow)?;
    }
    Ok((cols.into_iter().map(Point).collect(), index))
}

fn pick2(cols: &mut [Vec<i64>], a: usize, b: usize) -> (&mut Vec<i64>, &Vec<i64>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = cols.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// `y += k * x`, checked.
fn axpy(y: &mut [i64], k: i64, x: &[i64]) -> Result<()> {
    for (yi, xi) in y.iter_mut().zip(x) {
        let t = checked(k.checked_mul(*xi))?;
        *yi = checked(yi.checked_add(t))?;
    }
    Ok(())
}

/// Canonical label of a coset of Z^d modulo a sublattice, in `[0, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CosetId(pub usize);

/// The finite quotient Z^d / Λ with canonical representatives.
///
/// A point is reduced against the Hermite basis one coordinate at a time,
/// which leaves coordinate `j` in `[0, h_jj)`. Ids are the mixed-radix
/// encoding of these representatives with the first coordinate most
/// significant, so id order equals lexicographic order of representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    hnf: Vec<Point>,
    diag: Vec<i64>,
    index: usize,
}

impl CosetSpace {
    pub fn new(basis: &SublatticeBasis) -> Result<Self> {
        let hnf = basis.hermite_normal_form().generators;
        let diag: Vec<i64> = hnf.iter().enumerate().map(|(i, c)| c.0[i]).collect();
        let index = usize::try_from(basis.index()).map_err(|_| Error::Overflow)?;
        Ok(CosetSpace { hnf, diag, index })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Canonical representative of the coset of `p`.
    pub fn reduce(&self, p: &Point) -> Result<Point> {
        same_dim(self.dim(), p.dim())?;
        let mut r = p.0.clone();
        for (j, col) in self.hnf.iter().enumerate() {
            let q = r[j].div_euclid(self.diag[j]);
            if q != 0 {
                axpy(&mut r, -q, &col.0)?;
            }
        }
        Ok(Point(r))
    }

    pub fn coset_of(&self, p: &Point) -> Result<CosetId> {
        let r = self.reduce(p)?;
        let mut id: usize = 0;
        for (c, d) in r.0.iter().zip(&self.diag) {
            id = id * (*d as usize) + (*c as usize);
        }
        Ok(CosetId(id))
    }

    /// The canonical representative with the given id.
    pub fn representative(&self, id: CosetId) -> Point {
        assert!(id.0 < self.index, "coset id out of range");
        let mut rest = id.0;
        let mut coords = vec![0i64; self.dim()];
        for j in (0..self.dim()).rev() {
            let d = self.diag[j] as usize;
            coords[j] = (rest % d) as i64;
            rest /= d;
        }
        Point(coords)
    }

    /// One representative per coset, in id order.
    pub fn fundamental_domain(&self) -> Vec<Point> {
        (0..self.index)
            .map(|i| self.representative(CosetId(i)))
            .collect()
    }
}

/// Coset label of `p` modulo the sublattice spanned by `basis`.
pub fn coset_index(p: &Point, basis: &SublatticeBasis) -> Result<CosetId> {
    CosetSpace::new(basis)?.coset_of(p)
}

/// One representative per coset, ordered so that entry `i` has coset id `i`.
pub fn fundamental_domain(basis: &SublatticeBasis) -> Result<Vec<Point>> {
    Ok(CosetSpace::new(basis)?.fundamental_domain())
}

/// `t + N`.
pub fn translate(tile: &Prototile, t: &Point) -> Result<BTreeSet<Point>> {
    tile.cells.iter().map(|c| t.checked_add(c)).collect()
}

/// Whether the affected sets `s + na` and `t + nb` intersect.
pub fn tiles_conflict(s: &Point, na: &Prototile, t: &Point, nb: &Prototile) -> Result<bool> {
    Ok(common_point(s, na, t, nb)?.is_some())
}

/// Smallest point of `(s + na) ∩ (t + nb)`, if any.
pub fn common_point(s: &Point, na: &Prototile, t: &Point, nb: &Prototile) -> Result<Option<Point>> {
    same_dim(s.dim(), t.dim())?;
    same_dim(s.dim(), na.dim())?;
    same_dim(s.dim(), nb.dim())?;
    // s + a = t + b  <=>  b = s - t + a
    let shift = s.checked_sub(t)?;
    for a in &na.cells {
        let b = shift.checked_add(a)?;
        if nb.cells.contains(&b) {
            return Ok(Some(s.checked_add(a)?));
        }
    }
    Ok(None)
}

/// `{a + b : a in A, b in B}`.
pub fn minkowski_sum(a: &BTreeSet<Point>, b: &BTreeSet<Point>) -> Result<BTreeSet<Point>> {
    if let (Some(x), Some(y)) = (a.iter().next(), b.iter().next()) {
        same_dim(x.dim(), y.dim())?;
    }
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.checked_add(y)?);
        }
    }
    Ok(out)
}

/// An axis-aligned integer box `[min_i, max_i]` per axis, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub min: Vec<i64>,
    pub max: Vec<i64>,
}

impl Window {
    pub fn new(min: Vec<i64>, max: Vec<i64>) -> Result<Self> {
        if min.is_empty() || min.len() != max.len() || min.iter().zip(&max).any(|(a, b)| a > b) {
            return Err(Error::BadWindow);
        }
        Ok(Window { min, max })
    }

    /// The square window `[lo, hi]^d`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn extent(&self, axis: usize) -> u64 {
        (self.max[axis] - self.min[axis]) as u64 + 1
    }

    pub fn len(&self) -> usize {
        (0..self.dim()).map(|a| self.extent(a) as usize).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.0
                .iter()
                .zip(self.min.iter().zip(&self.max))
                .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }

    /// Row-major position of `p` (first axis most significant), if inside.
    pub fn linear_index(&self, p: &Point) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let mut idx = 0usize;
        for a in 0..self.dim() {
            idx = idx * self.extent(a) as usize + (p.0[a] - self.min[a]) as usize;
        }
        Some(idx)
    }

    /// All points, lexicographically ordered (matches `linear_index`).
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.min.clone();
        loop {
            out.push(Point(cur.clone()));
            let mut axis = self.dim();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if cur[axis] < self.max[axis] {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = self.min[axis];
            }
        }
    }
}

/// Real embedding of Z^d, used only for drawing. Rows are the images of the
/// unit vectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeometricBasis {
    vectors: Vec<Vec<f64>>,
}

impl GeometricBasis {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 || vectors.iter().any(|v| v.len() != d) {
            return Err(Error::DegenerateGeometry);
        }
        if determinant(&vectors).abs() < 1e-9 {
            return Err(Error::DegenerateGeometry);
        }
        Ok(GeometricBasis { vectors })
    }

    pub fn square() -> Self {
        GeometricBasis {
            vectors: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        }
    }

    /// The hexagonal lattice generated by (1, 0) and (1/2, sqrt(3)/2).
    pub fn hexagonal() -> Self {
        GeometricBasis {
            vectors: vec![vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]],
        }
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn embed(&self, p: &Point) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (k, &a) in p.coords().iter().enumerate() {
            for (o, v) in out.iter_mut().zip(&self.vectors[k]) {
                *o += a as f64 * v;
            }
        }
        out
    }
}

fn determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest.iter_mut() {
            let f = row[c] / pivot[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * y;
            }
        }
    }
    det
}
