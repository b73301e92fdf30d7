//! Exactness of polyominoes through their boundary words.
//!
//! A polyomino tiles the plane by translation iff some rotation of its
//! boundary word factors as `X Y Z X' Y' Z'` where `W'` is the reverse
//! complement of `W` and at most one of `X, Y, Z` is empty.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Error;
use crate::lattice::{bounding_box, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
    Left,
    Right,
}

impl Step {
    pub fn complement(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            Step::Left => Step::Right,
            Step::Right => Step::Left,
        }
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Up => (0, 1),
            Step::Down => (0, -1),
            Step::Left => (-1, 0),
            Step::Right => (1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'u',
            Step::Down => 'd',
            Step::Left => 'l',
            Step::Right => 'r',
        }
    }

    pub fn from_letter(c: char) -> Result<Step, Error> {
        match c {
            'u' => Ok(Step::Up),
            'd' => Ok(Step::Down),
            'l' => Ok(Step::Left),
            'r' => Ok(Step::Right),
            other => Err(Error::BadLetter(other)),
        }
    }
}

pub fn parse_steps(s: &str) -> Result<Vec<Step>, Error> {
    s.chars().map(Step::from_letter).collect()
}

pub fn steps_to_string(w: &[Step]) -> String {
    w.iter().map(|s| s.letter()).collect()
}

/// Reverses the word and swaps u/d and l/r.
pub fn reverse_complement(w: &str) -> Result<String, Error> {
    let steps = parse_steps(w)?;
    Ok(steps
        .iter()
        .rev()
        .map(|s| s.complement().letter())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum PolyominoError {
    #[error("cell set is empty")]
    Empty,
    #[error("cells are not edge-connected")]
    NotConnected,
    #[error("union of cells is not simply connected")]
    HasHole,
    #[error("polyominoes live in dimension 2")]
    NotPlanar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word length must be even and at least 4")]
    BadLength,
    #[error("word is not closed")]
    NotClosed,
    #[error("word path revisits a vertex")]
    NotSimple,
}

/// A closed, simple, cyclic lattice path over `{u, d, l, r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryWord {
    steps: Vec<Step>,
}

impl BoundaryWord {
    pub fn new(steps: Vec<Step>) -> Result<Self, WordError> {
        if steps.len() < 4 || !steps.len().is_multiple_of(2) {
            return Err(WordError::BadLength);
        }
        let mut pos = (0i64, 0i64);
        let mut seen = BTreeSet::new();
        for (i, s) in steps.iter().enumerate() {
            if !seen.insert(pos) {
                return Err(WordError::NotSimple);
            }
            let (dx, dy) = s.delta();
            pos = (pos.0 + dx, pos.1 + dy);
            if i + 1 == steps.len() && pos != (0, 0) {
                return Err(WordError::NotClosed);
            }
        }
        Ok(BoundaryWord { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Twice the signed enclosed area; positive for counterclockwise words.
    pub fn signed_area2(&self) -> i64 {
        let mut pos = (0i64, 0i64);
        let mut acc = 0;
        for s in &self.steps {
            let (dx, dy) = s.delta();
            let next = (pos.0 + dx, pos.1 + dy);
            acc += pos.0 * next.1 - next.0 * pos.1;
            pos = next;
        }
        acc
    }
}

impl FromStr for BoundaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let steps = parse_steps(s)?;
        BoundaryWord::new(steps).map_err(|e| Error::Format(e.to_string()))
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_to_string(&self.steps))
    }
}

/// Counterclockwise boundary word of a polyomino, starting at the
/// lexicographically smallest boundary vertex. Cell `(x, y)` is the unit
/// square `[x, x+1] × [y, y+1]`.
pub fn boundary_word(cells: &BTreeSet<Point>) -> Result<BoundaryWord, PolyominoError> {
    check_polyomino(cells)?;
    let has = |x: i64, y: i64| cells.contains(&Point::from([x, y]));

    // Boundary edges oriented with the interior on the left.
    let mut next: BTreeMap<(i64, i64), ((i64, i64), Step)> = BTreeMap::new();
    for c in cells {
        let (x, y) = (c.coords()[0], c.coords()[1]);
        if !has(x, y - 1) {
            next.insert((x, y), ((x + 1, y), Step::Right));
        }
        if !has(x + 1, y) {
            next.insert((x + 1, y), ((x + 1, y + 1), Step::Up));
        }
        if !has(x, y + 1) {
            next.insert((x + 1, y + 1), ((x, y + 1), Step::Left));
        }
        if !has(x - 1, y) {
            next.insert((x, y + 1), ((x, y), Step::Down));
        }
    }
    let start = *next
        .keys()
        .next()
        .expect("nonempty polyomino has a boundary");
    let mut steps = Vec::new();
    let mut v = start;
    loop {
        let (to, s) = next[&v];
        steps.push(s);
        v = to;
        if v == start {
            break;
        }
    }
    Ok(BoundaryWord::new(steps).expect("boundary of a simply connected polyomino is simple"))
}

/// Nonempty, planar, edge-connected, and with 4-connected complement (which
/// excludes holes and corner-only pinches).
pub fn check_polyomino(cells: &BTreeSet<Point>) -> Result<(), PolyominoError> {
    let Some(first) = cells.iter().next() else {
        return Err(PolyominoError::Empty);
    };
    if cells.iter().any(|c| c.dim() != 2) {
        return Err(PolyominoError::NotPlanar);
    }
    let xy = |p: &Point| (p.coords()[0], p.coords()[1]);
    let set: BTreeSet<(i64, i64)> = cells.iter().map(xy).collect();
    const NB: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

    let mut seen = BTreeSet::from([xy(first)]);
    let mut queue = VecDeque::from([xy(first)]);
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in NB {
            let n = (x + dx, y + dy);
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    if seen.len() != set.len() {
        return Err(PolyominoError::NotConnected);
    }

    let bb = bounding_box(cells.iter());
    let (x0, x1, y0, y1) = (bb[0].0 - 1, bb[0].1 + 1, bb[1].0 - 1, bb[1].1 + 1);
    let empty_total = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize - set.len();
    let mut seen = BTreeSet::from([(x0, y0)]);
    let mut queue = VecDeque::from([(x0, y0)]);
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in NB {
            let n = (x + dx, y + dy);
            if (x0..=x1).contains(&n.0)
                && (y0..=y1).contains(&n.1)
                && !set.contains(&n)
                && seen.insert(n)
            {
                queue.push_back(n);
            }
        }
    }
    if seen.len() != empty_total {
        return Err(PolyominoError::HasHole);
    }
    Ok(())
}

/// A factorization `X Y Z X' Y' Z'` of the rotation of a boundary word that
/// starts at `start`. Factor lengths are `|X| = a`, `|Y| = b`, `|Z| = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnFactorization {
    pub start: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    word: Vec<Step>,
}

impl BnFactorization {
    pub fn empty_count(&self) -> usize {
        [self.a, self.b, self.c].iter().filter(|&&l| l == 0).count()
    }

    /// True for the degenerate form `X Y X' Y'`.
    pub fn is_pseudo_square(&self) -> bool {
        self.empty_count() == 1
    }

    fn segment(&self, from: usize, len: usize) -> Vec<Step> {
        let n = self.word.len();
        (0..len)
            .map(|k| self.word[(self.start + from + k) % n])
            .collect()
    }

    /// The six factors `[X, Y, Z, X', Y', Z']` as strings.
    pub fn factors(&self) -> [String; 6] {
        let h = self.word.len() / 2;
        let (a, b, c) = (self.a, self.b, self.c);
        [
            steps_to_string(&self.segment(0, a)),
            steps_to_string(&self.segment(a, b)),
            steps_to_string(&self.segment(a + b, c)),
            steps_to_string(&self.segment(h, a)),
            steps_to_string(&self.segment(h + a, b)),
            steps_to_string(&self.segment(h + a + b, c)),
        ]
    }

    /// Recomputes every defining relation from scratch.
    pub fn is_valid_for(&self, w: &BoundaryWord) -> bool {
        let n = w.len();
        if self.word != w.steps || self.start >= n || 2 * (self.a + self.b + self.c) != n {
            return false;
        }
        if self.empty_count() > 1 {
            return false;
        }
        let f = self.factors();
        let rotation: String = (0..n)
            .map(|k| w.steps[(self.start + k) % n].letter())
            .collect();
        f.concat() == rotation
            && (0..3).all(|i| reverse_complement(&f[i]).ok().as_deref() == Some(f[i + 3].as_str()))
    }
}

impl fmt::Display for BnFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, xh, yh, zh] = self.factors();
        let show = |s: &str| {
            if s.is_empty() {
                "ε".to_string()
            } else {
                s.to_string()
            }
        };
        write!(
            f,
            "rotation {}: X={} Y={} Z={} X^={} Y^={} Z^={}",
            self.start,
            show(&x),
            show(&y),
            show(&z),
            show(&xh),
            show(&yh),
            show(&zh)
        )
    }
}

/// Searches every rotation and every split of the first half into
/// `X Y Z` for a factorization whose second half is `X' Y' Z'`. Quartic in
/// the word length in the worst case; returns the first factorization in
/// (start, |X|, |Y|) order, with a zero length after all positive ones.
pub fn bn_exact(w: &BoundaryWord) -> Option<BnFactorization> {
    let n = w.len();
    let h = n / 2;
    let s = &w.steps;
    // seg_matches(i, len): the factor at i of length len has its reverse
    // complement at i + h.
    let seg_matches = |i: usize, len: usize| {
        (0..len).all(|k| s[(i + h + len - 1 - k) % n] == s[(i + k) % n].complement())
    };
    for start in 0..n {
        // empty X and Y are tried last, so a degenerate factorization
        // keeps its empty factor in third place when it can
        for a in (1..=h).chain([0]) {
            if !seg_matches(start, a) {
                continue;
            }
            for b in (1..=h - a).chain([0]) {
                let c = h - a - b;
                if [a, b, c].iter().filter(|&&l| l == 0).count() > 1 {
                    continue;
                }
                if seg_matches(start + a, b) && seg_matches(start + a + b, c) {
                    return Some(BnFactorization {
                        start,
                        a,
                        b,
                        c,
                        word: s.clone(),
                    });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact(BnFactorization),
    NotExact,
    NotPolyomino(PolyominoError),
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, Verdict::Exact(_))
    }
}

pub fn exactness_verdict(cells: &BTreeSet<Point>) -> Verdict {
    match boundary_word(cells) {
        Err(e) => Verdict::NotPolyomino(e),
        Ok(w) => match bn_exact(&w) {
            Some(f) => Verdict::Exact(f),
            None => Verdict::NotExact,
        },
    }
}

/// All fixed polyominoes (distinct up to translation) with `size` cells,
/// normalized so the minimum x and y are 0, in sorted order.
pub fn fixed_polyominoes(size: usize) -> Vec<BTreeSet<Point>> {
    if size == 0 {
        return Vec::new();
    }
    let mut layer: BTreeSet<Vec<(i64, i64)>> = BTreeSet::from([vec![(0, 0)]]);
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for poly in &layer {
            let cells: BTreeSet<(i64, i64)> = poly.iter().copied().collect();
            for &(x, y) in poly {
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let n = (x + dx, y + dy);
                    if !cells.contains(&n) {
                        let mut grown: Vec<(i64, i64)> = poly.clone();
                        grown.push(n);
                        next.insert(normalize(grown));
                    }
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .map(|p| p.into_iter().map(|(x, y)| Point::from([x, y])).collect())
        .collect()
}

fn normalize(mut cells: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    let mx = cells.iter().map(|c| c.0).min().unwrap();
    let my = cells.iter().map(|c| c.1).min().unwrap();
    for c in cells.iter_mut() {
        c.0 -= mx;
        c.1 -= my;
    }
    cells.sort_unstable();
    cells
}
