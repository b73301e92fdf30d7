//! Conflict graphs and exact vertex colouring.

use crate::error::{Error, Result};
use crate::lattice::Point;

/// Vertex count accepted by the exact searches unless a caller raises it.
pub const DEFAULT_VERTEX_BOUND: usize = 64;

/// Simple undirected graph stored as adjacency bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    words: usize,
    adj: Vec<Vec<u64>>,
    /// Per vertex: representative point and the prototile index deployed there.
    pub labels: Vec<(Point, usize)>,
}

impl ConflictGraph {
    pub fn new(labels: Vec<(Point, usize)>) -> Self {
        let n = labels.len();
        let words = n.div_ceil(64).max(1);
        ConflictGraph {
            n,
            words,
            adj: vec![vec![0; words]; n],
            labels,
        }
    }

    /// Graph without labels (every label is the empty point, tile 0).
    pub fn unlabeled(n: usize) -> Self {
        Self::new(vec![(Point::new(Vec::new()), 0); n])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds the edge `{a, b}`; loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.adj[a][b / 64] |= 1 << (b % 64);
        self.adj[b][a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Whether `colors` is a proper colouring.
    pub fn is_proper(&self, colors: &[usize]) -> bool {
        colors.len() == self.n
            && (0..self.n).all(|v| self.neighbors(v).all(|u| colors[u] != colors[v]))
    }
}

/// Exact maximum clique, returned as a sorted vertex list.
pub fn max_clique(g: &ConflictGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = Vec::new();
    let mut current = Vec::new();
    clique_expand(g, &mut current, order, &mut best);
    best.sort_unstable();
    best
}

fn clique_expand(
    g: &ConflictGraph,
    current: &mut Vec<usize>,
    cand: Vec<usize>,
    best: &mut Vec<usize>,
) {
    if cand.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // Greedy colouring of the candidates bounds the clique size reachable
    // through each prefix.
    let mut colour_of = vec![0usize; cand.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in cand.iter().enumerate() {
        let k = classes
            .iter()
            .position(|cls| cls.iter().all(|&u| !g.has_edge(u, v)))
            .unwrap_or_else(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
        classes[k].push(v);
        colour_of[i] = k + 1;
    }
    let mut ranked: Vec<(usize, usize)> = cand.iter().copied().zip(colour_of).collect();
    ranked.sort_by_key(|&(_, c)| c);

    while let Some((v, bound)) = ranked.pop() {
        if current.len() + bound <= best.len() {
            return;
        }
        current.push(v);
        let next: Vec<usize> = ranked
            .iter()
            .map(|&(u, _)| u)
            .filter(|&u| g.has_edge(u, v))
            .collect();
        clique_expand(g, current, next, best);
        current.pop();
    }
}

/// Exact chromatic number with the default vertex bound.
pub fn chromatic_number(g: &ConflictGraph) -> Result<usize> {
    chromatic_number_bounded(g, DEFAULT_VERTEX_BOUND)
}

pub fn chromatic_number_bounded(g: &ConflictGraph, bound: usize) -> Result<usize> {
    Ok(optimal_coloring(g, bound)?.0)
}

/// Exact minimum colouring by DSatur branch and bound, seeded with a
/// maximum clique as lower bound. Returns the colour count and a colouring
/// using colours `0..count`.
pub fn optimal_coloring(g: &ConflictGraph, bound: usize) -> Result<(usize, Vec<usize>)> {
    if g.n > bound {
        return Err(Error::TooLarge { size: g.n, bound });
    }
    if g.n == 0 {
        return Ok((0, Vec::new()));
    }
    let clique = max_clique(g);
    let mut s = Dsatur::new(g, clique.len());
    // Colour the clique first: it is forced up to symmetry.
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    s.used = clique.len();
    s.best = g.n + 1;
    s.search(clique.len());
    Ok((s.best, s.best_colors))
}

struct Dsatur<'a> {
    g: &'a ConflictGraph,
    lower: usize,
    colors: Vec<Option<usize>>,
    // forbidden[v][c]: number of neighbours of v coloured c
    forbidden: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    used: usize,
    best: usize,
    best_colors: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a ConflictGraph, lower: usize) -> Self {
        Dsatur {
            g,
            lower,
            colors: vec![None; g.n],
            forbidden: vec![vec![0; g.n + 1]; g.n],
            saturation: vec![0; g.n],
            used: 0,
            best: g.n + 1,
            best_colors: Vec::new(),
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        for u in self.g.neighbors(v) {
            if self.forbidden[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.forbidden[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = None;
        for u in self.g.neighbors(v) {
            self.forbidden[u][c] -= 1;
            if self.forbidden[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.n)
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| {
                let free_deg = self
                    .g
                    .neighbors(v)
                    .filter(|&u| self.colors[u].is_none())
                    .count();
                (self.saturation[v], free_deg, std::cmp::Reverse(v))
            })
    }

    /// Returns true once an optimal colouring is proven.
    fn search(&mut self, coloured: usize) -> bool {
        if coloured == self.g.n {
            if self.used < self.best {
                self.best = self.used;
                self.best_colors = self.colors.iter().map(|c| c.unwrap()).collect();
            }
            return self.best == self.lower;
        }
        let v = self.pick().expect("uncoloured vertex remains");
        let limit = (self.used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.forbidden[v][c] != 0 {
                continue;
            }
            let prev_used = self.used;
            if c == self.used {
                self.used += 1;
            }
            self.assign(v, c);
            let done = self.search(coloured + 1);
            self.unassign(v, c);
            self.used = prev_used;
            if done {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> ConflictGraph {
        let mut g = ConflictGraph::unlabeled(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn cycle(n: usize) -> ConflictGraph {
        let mut g = ConflictGraph::unlabeled(n);
        for a in 0..n {
            g.add_edge(a, (a + 1) % n);
        }
        g
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(chromatic_number(&ConflictGraph::unlabeled(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&ConflictGraph::unlabeled(5)).unwrap(), 1);
        assert_eq!(chromatic_number(&complete(9)).unwrap(), 9);
        assert_eq!(max_clique(&complete(9)).len(), 9);
    }

    #[test]
    fn odd_cycles_need_three() {
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(max_clique(&cycle(5)).len(), 2);
    }

    #[test]
    fn petersen_and_mycielski() {
        // Petersen graph: chromatic 3, clique 2.
        let mut p = ConflictGraph::unlabeled(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(chromatic_number(&p).unwrap(), 3);

        // Groetzsch graph (Mycielskian of C5): triangle-free, chromatic 4.
        let mut m = ConflictGraph::unlabeled(11);
        for i in 0..5 {
            m.add_edge(i, (i + 1) % 5);
            m.add_edge(5 + i, (i + 1) % 5);
            m.add_edge(5 + i, (i + 4) % 5);
            m.add_edge(5 + i, 10);
        }
        assert_eq!(max_clique(&m).len(), 2);
        let (k, colors) = optimal_coloring(&m, 64).unwrap();
        assert_eq!(k, 4);
        assert!(m.is_proper(&colors));
    }

    #[test]
    fn vertex_bound_enforced() {
        let g = ConflictGraph::unlabeled(65);
        assert_eq!(
            chromatic_number(&g),
            Err(Error::TooLarge {
                size: 65,
                bound: 64
            })
        );
        assert_eq!(chromatic_number_bounded(&g, 100).unwrap(), 1);
    }
}
