//! Planar face extraction for validated subdivisions.
//!
//! Not used by the counting paths; exists so tests and rendering can inspect
//! the polygon complex a set of internal edges induces.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Coord, Edge, Point};

use super::convexity::angle_cmp;
use super::{on_segment, PointConfiguration};

/// Boundary edges of the subdivision: each hull side split at the side points
/// that are used (have an incident internal edge). Corners are always used.
pub(crate) fn boundary_edges(cfg: &PointConfiguration, internal: &[Edge]) -> Vec<Edge> {
    let hull = cfg.hull();
    if hull.len() < 3 {
        return Vec::new();
    }
    let used: BTreeSet<Point> = internal.iter().flat_map(|e| e.endpoints()).collect();
    let pts = cfg.points();
    let mut out = Vec::new();
    for (i, &u) in hull.iter().enumerate() {
        let v = hull[(i + 1) % hull.len()];
        let mut stops: Vec<Point> = pts
            .iter()
            .copied()
            .filter(|&p| p == u || p == v || (on_segment(p, u, v) && used.contains(&p)))
            .collect();
        stops.sort_by_key(|p| {
            // Position along the side; the side direction has nonzero dx or dy.
            let d = (v.x - u.x, v.y - u.y);
            if d.0 != 0 {
                (p.x - u.x) * d.0.signum()
            } else {
                (p.y - u.y) * d.1.signum()
            }
        });
        for w in stops.windows(2) {
            out.push(Edge::new(w[0], w[1]));
        }
    }
    out
}

/// Extracts the bounded faces of the subdivision as counterclockwise vertex
/// cycles. The edge set must already be a valid subdivision.
pub fn extract_faces(cfg: &PointConfiguration, internal: &[Edge]) -> Vec<Vec<Point>> {
    if cfg.hull().len() < 3 {
        return Vec::new();
    }
    let mut all_edges: Vec<Edge> = internal.to_vec();
    all_edges.extend(boundary_edges(cfg, internal));
    all_edges.sort();
    all_edges.dedup();

    // Neighbors of each vertex in counterclockwise angular order.
    let mut nbrs: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    for e in &all_edges {
        nbrs.entry(e.a()).or_default().push(e.b());
        nbrs.entry(e.b()).or_default().push(e.a());
    }
    for (&v, list) in nbrs.iter_mut() {
        list.sort_by(|&p, &q| angle_cmp((p.x - v.x, p.y - v.y), (q.x - v.x, q.y - v.y)));
    }

    let mut seen: BTreeSet<(Point, Point)> = BTreeSet::new();
    let mut faces = Vec::new();
    for e in &all_edges {
        for (s, t) in [(e.a(), e.b()), (e.b(), e.a())] {
            if seen.contains(&(s, t)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (s, t);
            loop {
                seen.insert((u, v));
                face.push(u);
                // Next half-edge: rotate clockwise from the reverse direction,
                // i.e. take the cyclic predecessor of u in v's CCW order.
                let around = &nbrs[&v];
                let idx = around.iter().position(|&w| w == u).expect("half-edge endpoint");
                let w = around[(idx + around.len() - 1) % around.len()];
                u = v;
                v = w;
                if (u, v) == (s, t) {
                    break;
                }
            }
            if signed_area_doubled(&face) > 0 {
                faces.push(face);
            }
        }
    }
    faces
}

/// Twice the signed area of the polygon (positive iff counterclockwise).
pub(crate) fn signed_area_doubled(poly: &[Point]) -> Coord {
    let mut s = 0;
    for (i, p) in poly.iter().enumerate() {
        let q = poly[(i + 1) % poly.len()];
        s += p.x * q.y - q.x * p.y;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;

    #[test]
    fn empty_subdivision_has_one_face() {
        let cfg = PointConfiguration::grid(2, 2);
        let faces = extract_faces(&cfg, &[]);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
        assert_eq!(signed_area_doubled(&faces[0]), 2);
    }

    #[test]
    fn square_diagonal_gives_two_triangles() {
        let cfg = PointConfiguration::grid(2, 2);
        let faces = extract_faces(&cfg, &[Edge::new(pt(0, 0), pt(1, 1))]);
        assert_eq!(faces.len(), 2);
        for f in &faces {
            assert_eq!(f.len(), 3);
            assert_eq!(signed_area_doubled(f), 1);
        }
    }

    #[test]
    fn unused_side_points_stay_pass_through() {
        // Long diagonal of the 3x3 grid: two big triangles, side midpoints
        // spanned by single boundary edges.
        let cfg = PointConfiguration::grid(3, 3);
        let faces = extract_faces(&cfg, &[Edge::new(pt(0, 0), pt(2, 2))]);
        assert_eq!(faces.len(), 2);
        for f in &faces {
            assert_eq!(f.len(), 3);
            assert_eq!(signed_area_doubled(f), 4);
        }
    }

    #[test]
    fn used_side_point_splits_boundary() {
        let cfg = PointConfiguration::grid(3, 2);
        let internal = [Edge::new(pt(1, 0), pt(1, 1))];
        let be = boundary_edges(&cfg, &internal);
        assert!(be.contains(&Edge::new(pt(0, 0), pt(1, 0))));
        assert!(be.contains(&Edge::new(pt(1, 0), pt(2, 0))));
        assert!(be.contains(&Edge::new(pt(0, 1), pt(1, 1))));
        assert!(!be.contains(&Edge::new(pt(0, 1), pt(2, 1))));
        let faces = extract_faces(&cfg, &internal);
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
    }
}
