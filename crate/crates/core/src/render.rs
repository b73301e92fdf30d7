//! SVG drawings of planar tilings: every sensor's Voronoi cell, tile
//! outlines, and slot numbers when a schedule is given.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{CosetSpace, GeometricBasis, Point, Window};
use crate::schedule::Schedule;
use crate::tiling::PeriodicTiling;

const SCALE: f64 = 36.0;
const MARGIN: f64 = 12.0;
const PALETTE: [&str; 8] = [
    "#cfe2f3", "#fce5cd", "#d9ead3", "#ead1dc", "#fff2cc", "#d0e0e3", "#f4cccc", "#d9d2e9",
];

/// Polygon edge with the lattice neighbour across it.
#[derive(Clone, Debug)]
struct CellEdge {
    from: [f64; 2],
    to: [f64; 2],
    neighbor: [i64; 2],
}

/// Voronoi cell of the origin for a planar lattice embedding. Every edge is
/// the bisector with one lattice neighbour.
fn voronoi_cell(g: &GeometricBasis) -> Vec<CellEdge> {
    let embed = |a: i64, b: i64| -> [f64; 2] {
        let e = g.embed(&Point::from([a, b]));
        [e[0], e[1]]
    };
    let r = 4.0 * (norm(embed(1, 0)) + norm(embed(0, 1)));
    // (vertex, label of the edge leaving it)
    let mut poly: Vec<([f64; 2], Option<[i64; 2]>)> = vec![
        ([-r, -r], None),
        ([r, -r], None),
        ([r, r], None),
        ([-r, r], None),
    ];
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            if a == 0 && b == 0 {
                continue;
            }
            let v = embed(a, b);
            let h = dot(v, v) / 2.0;
            let inside = |p: [f64; 2]| dot(p, v) <= h + 1e-9;
            let mut out = Vec::with_capacity(poly.len() + 1);
            for i in 0..poly.len() {
                let (p, label) = poly[i];
                let q = poly[(i + 1) % poly.len()].0;
                let cross = |p: [f64; 2], q: [f64; 2]| {
                    let t = (h - dot(p, v)) / (dot(q, v) - dot(p, v));
                    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
                };
                match (inside(p), inside(q)) {
                    (true, true) => out.push((p, label)),
                    (true, false) => {
                        out.push((p, label));
                        out.push((cross(p, q), Some([a, b])));
                    }
                    (false, true) => out.push((cross(p, q), label)),
                    (false, false) => {}
                }
            }
            poly = out;
        }
    }
    let n = poly.len();
    (0..n)
        .filter_map(|i| {
            let (from, label) = poly[i];
            let to = poly[(i + 1) % n].0;
            let len = norm([to[0] - from[0], to[1] - from[1]]);
            match label {
                Some(neighbor) if len > 1e-9 => Some(CellEdge { from, to, neighbor }),
                _ => None,
            }
        })
        .collect()
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: [f64; 2]) -> f64 {
    dot(a, a).sqrt()
}

/// Renders the window of a planar tiling. Output bytes depend only on the
/// inputs.
pub fn render_svg(
    t: &PeriodicTiling,
    schedule: Option<&Schedule>,
    window: &Window,
    geometry: Option<&GeometricBasis>,
) -> Result<String> {
    if t.dim() != 2 {
        return Err(Error::UnsupportedDimension(t.dim()));
    }
    if window.dim() != 2 {
        return Err(Error::UnsupportedDimension(window.dim()));
    }
    let square = GeometricBasis::square();
    let g = geometry.unwrap_or(&square);
    if g.dim() != 2 {
        return Err(Error::UnsupportedDimension(g.dim()));
    }
    let space = CosetSpace::new(&t.basis)?;
    let cover = t.cover()?;
    let cell = voronoi_cell(g);

    // Tile instance of each point: (placement, translate origin).
    let instance = |p: &Point| -> Result<(usize, Point)> {
        let (pl, n) = &cover[space.coset_of(p)?.0];
        Ok((*pl, p.checked_sub(n)?))
    };

    let points = window.points();
    let centers: Vec<[f64; 2]> = points
        .iter()
        .map(|p| {
            let e = g.embed(p);
            [e[0], e[1]]
        })
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for c in &centers {
        for e in &cell {
            for k in 0..2 {
                lo[k] = lo[k].min(c[k] + e.from[k]);
                hi[k] = hi[k].max(c[k] + e.from[k]);
            }
        }
    }
    let width = (hi[0] - lo[0]) * SCALE + 2.0 * MARGIN;
    let height = (hi[1] - lo[1]) * SCALE + 2.0 * MARGIN;
    let sx = |x: f64| (x - lo[0]) * SCALE + MARGIN;
    let sy = |y: f64| (hi[1] - y) * SCALE + MARGIN;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    writeln!(
        svg,
        r##"<g id="cells" stroke="#bbbbbb" stroke-width="0.5">"##
    )
    .unwrap();
    for (p, c) in points.iter().zip(&centers) {
        let (pl, _) = instance(p)?;
        let fill = PALETTE[pl % PALETTE.len()];
        let pts: Vec<String> = cell
            .iter()
            .map(|e| format!("{:.2},{:.2}", sx(c[0] + e.from[0]), sy(c[1] + e.from[1])))
            .collect();
        writeln!(
            svg,
            r#"<polygon points="{}" fill="{fill}"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    writeln!(svg, "</g>").unwrap();

    writeln!(
        svg,
        r#"<g id="outlines" stroke="black" stroke-width="2" stroke-linecap="round">"#
    )
    .unwrap();
    for (p, c) in points.iter().zip(&centers) {
        let me = instance(p)?;
        for e in &cell {
            let q = p.checked_add(&Point::from(e.neighbor))?;
            if window.contains(&q) && instance(&q)? == me {
                continue;
            }
            writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                sx(c[0] + e.from[0]),
                sy(c[1] + e.from[1]),
                sx(c[0] + e.to[0]),
                sy(c[1] + e.to[1])
            )
            .unwrap();
        }
    }
    writeln!(svg, "</g>").unwrap();

    if let Some(s) = schedule {
        writeln!(
            svg,
            r#"<g id="slots" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="central">"#
        )
        .unwrap();
        for (p, c) in points.iter().zip(&centers) {
            writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                sx(c[0]),
                sy(c[1]),
                s.slot_of(p)?
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}
