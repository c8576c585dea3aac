//! Poincaré-disk rendering of uniform clean dessins.
//!
//! The hyperbolic surface of a uniform clean dessin of type `(2, 2m, k)` is
//! tiled by one quadrilateral per edge, each the union of the two
//! `(2, 2m, k)` triangles flanking that edge. The base quadrilateral sits
//! with its face-center corner at the origin; the remaining `E - 1` copies
//! are placed by propagating the numeric generator isometries along the
//! same breadth-first Schreier tree that produces the side pairings. On top
//! of the quadrilaterals the scene draws each face as a geodesic `2k`-gon,
//! each dessin edge once with bicoloured endpoints, and the multicurve
//! coloured per component.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::curve::decompose;
use crate::dessin::Dessin;
use crate::error::{Error, Result};
use crate::fuchsian::{schreier_tree, Gen};
use crate::hypgeom::{Isometry, Mobius, TriangleGroup};

/// Euclidean tolerance for placement coincidence and arc residuals.
pub const TOL_PLACEMENT: f64 = 1e-6;

/// Near-diameter threshold: below this collinearity defect a geodesic is
/// drawn as a straight chord instead of a circular arc.
const DIAMETER_EPS: f64 = 1e-9;

const PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#17becf",
];

/// Layer tag of a rendered geodesic arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcLayer {
    /// Boundary of one face, a geodesic `2k`-gon.
    FaceBoundary { face: usize },
    /// One dessin edge, from its white to its black endpoint.
    DessinEdge { edge: usize },
    /// One multicurve sub-arc, tagged with its component index.
    Curve { component: usize },
}

/// A geodesic arc between two interior points of the unit disk: either a
/// straight chord through the origin or a circular arc orthogonal to the
/// unit circle.
#[derive(Debug, Clone, Serialize)]
pub struct GeodesicArc {
    pub layer: ArcLayer,
    pub from: (f64, f64),
    pub to: (f64, f64),
    /// `Some((center, radius))` for circular arcs, `None` for chords.
    pub circle: Option<((f64, f64), f64)>,
}

/// Placements, arcs and colors of one rendered dessin.
#[derive(Debug, Clone, Serialize)]
pub struct RenderScene {
    pub degree: usize,
    pub type_triple: (usize, usize, usize),
    pub genus: usize,
    /// Quadrilateral label to the isometry positioning the base copy.
    pub placements: BTreeMap<usize, Isometry>,
    pub arcs: Vec<GeodesicArc>,
    /// Component index to SVG color.
    pub palette: Vec<String>,
    /// Euclidean coordinates of each face center, in face-cycle order.
    pub face_centers: Vec<(f64, f64)>,
    /// Number of multicurve components.
    pub components: usize,
    #[serde(skip)]
    disk: SceneDisk,
}

/// Disk-model payload kept for SVG emission.
#[derive(Debug, Clone)]
struct SceneDisk {
    /// Label-indexed placements; index 0 unused.
    placements: Vec<Mobius>,
    /// Base quadrilateral corners in drawing order: face center, black
    /// vertex, opposite face center, white vertex.
    corners: [Complex64; 4],
}

/// Solves for the circle through `p` and `q` orthogonal to the unit
/// circle; `None` when the two points are collinear with the origin and
/// the geodesic is a chord.
fn orthogonal_circle(p: Complex64, q: Complex64) -> Option<((f64, f64), f64)> {
    let det = p.re * q.im - p.im * q.re;
    if det.abs() < DIAMETER_EPS {
        return None;
    }
    // Orthogonality to the unit circle means |c|^2 = 1 + r^2, which turns
    // "passes through v" into the linear condition 2<v, c> = |v|^2 + 1.
    let rp = p.norm_sqr() + 1.0;
    let rq = q.norm_sqr() + 1.0;
    let cx = (rp * q.im - rq * p.im) / (2.0 * det);
    let cy = (rq * p.re - rp * q.re) / (2.0 * det);
    let r = (cx * cx + cy * cy - 1.0).sqrt();
    Some(((cx, cy), r))
}

fn arc_between(layer: ArcLayer, p: Complex64, q: Complex64) -> GeodesicArc {
    GeodesicArc {
        layer,
        from: (p.re, p.im),
        to: (q.re, q.im),
        circle: orthogonal_circle(p, q),
    }
}

fn check_close(kind: &str, p: Complex64, q: Complex64) -> Result<()> {
    let gap = (p - q).norm();
    if gap > TOL_PLACEMENT {
        return Err(Error::RenderTolerance {
            detail: format!("{kind}: endpoints differ by {gap:.3e}"),
        });
    }
    Ok(())
}

/// Builds the full scene for a uniform clean dessin of hyperbolic type.
pub fn build_scene(d: &Dessin) -> Result<RenderScene> {
    let (white, black, face) = d.uniform_type()?;
    if white != 2 {
        return Err(Error::NotClean);
    }
    let genus = d.genus();
    if genus < 2 {
        return Err(Error::GenusBelowTwo(genus));
    }
    let curve = decompose(d)?;
    let degree = d.degree();
    let group = TriangleGroup::new(2, black, face)?;

    let corner_c = group.vertex_c;
    let corner_a = group.vertex_a;
    let corner_b = group.vertex_b;
    let corner_cstar = group.x.apply(corner_c);

    // Right-propagation along the Schreier tree: appending a generator
    // to a path multiplies its placement on the inside, so tree-adjacent
    // quadrilaterals reproduce the base-level adjacency exactly and share
    // their common side (x, y) or face corner (z).
    let tree = schreier_tree(d);
    let mut placements = vec![Mobius::identity(); degree + 1];
    for &(from, gen, to) in &tree.edges {
        let step = match gen {
            Gen::X => &group.x,
            Gen::Y => &group.y,
            Gen::Z => &group.z,
        };
        placements[to] = placements[from].mul(step);
    }
    for &(from, gen, to) in &tree.edges {
        let tf = &placements[from];
        let tt = &placements[to];
        match gen {
            Gen::X => {
                check_close("x side", tt.apply(corner_c), tf.apply(corner_cstar))?;
                check_close("x side", tt.apply(corner_cstar), tf.apply(corner_c))?;
                check_close("x side", tt.apply(corner_a), tf.apply(corner_a))?;
            }
            Gen::Y => {
                check_close("y side", tt.apply(corner_b), tf.apply(corner_b))?;
                check_close("y side", tt.apply(corner_cstar), tf.apply(corner_c))?;
            }
            Gen::Z => {
                check_close("z corner", tt.apply(corner_c), tf.apply(corner_c))?;
            }
        }
    }

    let mut component_of = vec![0usize; degree + 1];
    for (index, component) in curve.components.iter().enumerate() {
        for &edge in component {
            component_of[edge] = index;
        }
    }

    let mut arcs = Vec::new();
    let faces = d.sigma_infinity().cycles();
    let mut face_centers = Vec::new();
    for (face_index, cycle) in faces.cycles.iter().enumerate() {
        let anchor = &placements[cycle[0]];
        let center = anchor.apply(corner_c);
        face_centers.push((center.re, center.im));
        let k = cycle.len();
        let mut whites = Vec::with_capacity(k);
        let mut blacks = Vec::with_capacity(k);
        let mut wa = corner_a;
        let mut wb = corner_b;
        for _ in 0..k {
            whites.push(anchor.apply(wa));
            blacks.push(anchor.apply(wb));
            wa = group.z.apply(wa);
            wb = group.z.apply(wb);
        }
        for t in 0..k {
            let layer = ArcLayer::FaceBoundary { face: face_index };
            arcs.push(arc_between(layer, whites[t], blacks[t]));
            arcs.push(arc_between(layer, blacks[t], whites[(t + 1) % k]));
        }
    }
    for edge in 1..=degree {
        let p = placements[edge].apply(corner_a);
        let q = placements[edge].apply(corner_b);
        arcs.push(arc_between(ArcLayer::DessinEdge { edge }, p, q));
    }
    for edge in 1..=degree {
        let p = placements[edge].apply(corner_a);
        let q = placements[edge].apply(corner_b);
        let layer = ArcLayer::Curve {
            component: component_of[edge],
        };
        arcs.push(arc_between(layer, p, q));
    }

    for arc in &arcs {
        let p = Complex64::new(arc.from.0, arc.from.1);
        let q = Complex64::new(arc.to.0, arc.to.1);
        if p.norm() >= 1.0 || q.norm() >= 1.0 {
            return Err(Error::RenderTolerance {
                detail: "arc endpoint escapes the unit disk".to_string(),
            });
        }
        if let Some(((cx, cy), r)) = arc.circle {
            let center = Complex64::new(cx, cy);
            let residual = ((p - center).norm() - r)
                .abs()
                .max(((q - center).norm() - r).abs())
                .max((center.norm_sqr() - r * r - 1.0).abs());
            if residual > TOL_PLACEMENT {
                return Err(Error::RenderTolerance {
                    detail: format!("arc circle residual {residual:.3e}"),
                });
            }
        }
    }

    let palette = (0..curve.r)
        .map(|i| PALETTE[i % PALETTE.len()].to_string())
        .collect();
    Ok(RenderScene {
        degree,
        type_triple: (white, black, face),
        genus,
        placements: (1..=degree)
            .map(|label| (label, placements[label].to_isometry()))
            .collect(),
        arcs,
        palette,
        face_centers,
        components: curve.r,
        disk: SceneDisk {
            placements,
            corners: [corner_c, corner_b, corner_cstar, corner_a],
        },
    })
}

fn fmt_point(p: Complex64) -> String {
    // SVG's y axis points down; flip at emission time.
    format!("{:.6} {:.6}", p.re, -p.im)
}

/// Appends one SVG path command moving from `p` to `q` along the geodesic.
fn push_arc_command(out: &mut String, p: Complex64, q: Complex64) {
    match orthogonal_circle(p, q) {
        None => {
            let _ = write!(out, " L {}", fmt_point(q));
        }
        Some(((cx, cy), r)) => {
            let center = Complex64::new(cx, cy);
            let cross = (p - center).re * (q - center).im - (p - center).im * (q - center).re;
            // Geodesic arcs are always the minor arc; counterclockwise in
            // disk coordinates becomes sweep 0 once y is flipped.
            let sweep = if cross > 0.0 { 0 } else { 1 };
            let _ = write!(out, " A {r:.6} {r:.6} 0 0 {sweep} {}", fmt_point(q));
        }
    }
}

fn closed_path(points: &[Complex64]) -> String {
    let mut d = format!("M {}", fmt_point(points[0]));
    for i in 0..points.len() {
        let next = points[(i + 1) % points.len()];
        push_arc_command(&mut d, points[i], next);
    }
    d.push_str(" Z");
    d
}

fn open_path(p: Complex64, q: Complex64) -> String {
    let mut d = format!("M {}", fmt_point(p));
    push_arc_command(&mut d, p, q);
    d
}

impl RenderScene {
    /// Emits the scene as a standalone SVG 1.1 document.
    pub fn to_svg(&self) -> String {
        let mut svg = String::new();
        svg.push_str(concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"700\" height=\"700\" ",
            "viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
        ));
        svg.push_str(
            "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.004\"/>\n",
        );

        let [corner_c, corner_b, corner_cstar, corner_a] = self.disk.corners;
        svg.push_str("<g id=\"quads\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.0025\">\n");
        for label in 1..=self.degree {
            let t = &self.disk.placements[label];
            let outline = [
                t.apply(corner_c),
                t.apply(corner_b),
                t.apply(corner_cstar),
                t.apply(corner_a),
            ];
            let _ = writeln!(svg, "<path d=\"{}\"/>", closed_path(&outline));
        }
        svg.push_str("</g>\n");

        svg.push_str("<g id=\"faces\" fill=\"none\" stroke=\"#444444\" stroke-width=\"0.005\">\n");
        let mut face = 0;
        loop {
            let boundary: Vec<&GeodesicArc> = self
                .arcs
                .iter()
                .filter(|arc| arc.layer == ArcLayer::FaceBoundary { face })
                .collect();
            if boundary.is_empty() {
                break;
            }
            let points: Vec<Complex64> = boundary
                .iter()
                .map(|arc| Complex64::new(arc.from.0, arc.from.1))
                .collect();
            let _ = writeln!(svg, "<path d=\"{}\"/>", closed_path(&points));
            face += 1;
        }
        svg.push_str("</g>\n");

        svg.push_str("<g id=\"edges\" fill=\"none\" stroke=\"#222222\" stroke-width=\"0.004\">\n");
        for arc in &self.arcs {
            if let ArcLayer::DessinEdge { .. } = arc.layer {
                let p = Complex64::new(arc.from.0, arc.from.1);
                let q = Complex64::new(arc.to.0, arc.to.1);
                let _ = writeln!(svg, "<path d=\"{}\"/>", open_path(p, q));
            }
        }
        svg.push_str("</g>\n");

        svg.push_str("<g id=\"curve\" fill=\"none\" stroke-width=\"0.009\" stroke-linecap=\"round\">\n");
        for component in 0..self.components {
            let _ = writeln!(
                svg,
                "<g class=\"component\" stroke=\"{}\">",
                self.palette[component]
            );
            for arc in &self.arcs {
                if arc.layer == (ArcLayer::Curve { component }) {
                    let p = Complex64::new(arc.from.0, arc.from.1);
                    let q = Complex64::new(arc.to.0, arc.to.1);
                    let _ = writeln!(svg, "<path d=\"{}\"/>", open_path(p, q));
                }
            }
            svg.push_str("</g>\n");
        }
        svg.push_str("</g>\n");

        svg.push_str("<g id=\"vertices\" stroke-width=\"0.003\">\n");
        let mut seen = std::collections::BTreeSet::new();
        for label in 1..=self.degree {
            let t = &self.disk.placements[label];
            for (corner, fill) in [(corner_a, "#ffffff"), (corner_b, "#000000")] {
                let p = t.apply(corner);
                let key = (
                    (p.re * 1e7).round() as i64,
                    (p.im * 1e7).round() as i64,
                    fill,
                );
                if seen.insert(key) {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.012\" fill=\"{fill}\" stroke=\"#000000\"/>",
                        p.re, -p.im
                    );
                }
            }
        }
        svg.push_str("</g>\n");
        svg.push_str("</svg>\n");
        svg
    }
}

/// Renders a uniform clean dessin straight to SVG.
pub fn render_svg(d: &Dessin) -> Result<String> {
    Ok(build_scene(d)?.to_svg())
}
