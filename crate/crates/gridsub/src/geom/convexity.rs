//! Local convexity at a configuration point: every angular gap between
//! cyclically consecutive incident directions must be at most pi.
//!
//! Directions are compared exactly. A direction `d` sorts by its angle in
//! [0, 2pi): first by half-plane (upper half including +x, then lower half
//! including -x), then by cross product within the half.

use std::cmp::Ordering;

use crate::scalar::GridScalar;
use crate::{Coord, Edge, Point};

use super::{cross, BoundaryClass, PointConfiguration};

/// Total angular order on nonzero direction vectors.
pub fn angle_cmp<C: GridScalar>(d1: (C, C), d2: (C, C)) -> Ordering {
    let half = |d: (C, C)| -> u8 {
        if d.1 > C::zero() || (d.1 == C::zero() && d.0 > C::zero()) {
            0
        } else {
            1
        }
    };
    match half(d1).cmp(&half(d2)) {
        Ordering::Equal => {
            let c = cross(d1, d2);
            if c > C::zero() {
                Ordering::Less
            } else if c < C::zero() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        other => other,
    }
}

/// Sorts the directions by angle and checks that every cyclic gap between
/// consecutive directions is at most pi. A single direction always fails
/// (its gap is the full turn); an empty list passes vacuously.
pub fn directions_pass_gap_test<C: GridScalar>(dirs: &mut [(C, C)]) -> bool {
    match dirs.len() {
        0 => return true,
        1 => return false,
        _ => {}
    }
    dirs.sort_by(|&a, &b| angle_cmp(a, b));
    // For sorted directions the gap d_i -> d_{i+1} exceeds pi exactly when
    // their cross product is negative (equal or opposite directions give 0).
    for i in 0..dirs.len() {
        let j = (i + 1) % dirs.len();
        if cross(dirs[i], dirs[j]) < C::zero() {
            return false;
        }
    }
    true
}

/// Gap test for a point of the given boundary class with the given incident
/// edge directions.
///
/// A point with no incident directions is unused and passes. Hull side
/// points contribute both directions along their side; hull corners always
/// pass, since every angular sector inside the (strictly convex) corner is
/// strictly below pi.
pub fn point_passes_convexity(class: BoundaryClass, dirs: &mut Vec<(Coord, Coord)>) -> bool {
    if dirs.is_empty() {
        return true;
    }
    match class {
        BoundaryClass::Corner => true,
        BoundaryClass::Interior => directions_pass_gap_test(dirs),
        BoundaryClass::Side { along } => {
            dirs.push(along);
            dirs.push((-along.0, -along.1));
            directions_pass_gap_test(dirs)
        }
    }
}

/// Spec-facing convexity check: gathers the directions of the edges with an
/// endpoint at `p` (edges merely passing through `p` contribute nothing) and
/// runs the gap test with the hull boundary directions included.
pub fn local_convexity_ok(cfg: &PointConfiguration, edges: &[Edge], p: Point) -> bool {
    let mut dirs: Vec<(Coord, Coord)> = edges
        .iter()
        .filter(|e| e.has_endpoint(p))
        .map(|e| e.direction_from(p))
        .collect();
    point_passes_convexity(cfg.boundary_class(p), &mut dirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;

    #[test]
    fn collinear_pair_at_interior_point_passes() {
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [
            Edge::new(pt(0, 0), pt(1, 1)),
            Edge::new(pt(1, 1), pt(2, 2)),
        ];
        assert!(local_convexity_ok(&cfg, &edges, pt(1, 1)));
    }

    #[test]
    fn dangling_edge_at_interior_point_fails() {
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [Edge::new(pt(0, 0), pt(1, 1))];
        assert!(!local_convexity_ok(&cfg, &edges, pt(1, 1)));
    }

    #[test]
    fn boundary_point_with_one_edge_passes() {
        // (1,0) on the bottom side of grid(3,2): gaps 90, 90, 180 degrees.
        let cfg = PointConfiguration::grid(3, 2);
        let edges = [Edge::new(pt(1, 0), pt(1, 1))];
        assert!(local_convexity_ok(&cfg, &edges, pt(1, 0)));
    }

    #[test]
    fn unused_points_pass() {
        let cfg = PointConfiguration::grid(3, 3);
        assert!(local_convexity_ok(&cfg, &[], pt(1, 1)));
        assert!(local_convexity_ok(&cfg, &[], pt(0, 0)));
        assert!(local_convexity_ok(&cfg, &[], pt(1, 0)));
    }

    #[test]
    fn pass_through_contributes_no_direction() {
        // (1,1) lies in the interior of (0,0)-(2,2); with only that edge the
        // point counts as unused.
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [Edge::new(pt(0, 0), pt(2, 2))];
        assert!(local_convexity_ok(&cfg, &edges, pt(1, 1)));
    }

    #[test]
    fn corner_with_steep_edge_passes() {
        // Any arrangement at a strictly convex corner stays below pi.
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [Edge::new(pt(0, 0), pt(1, 2))];
        assert!(local_convexity_ok(&cfg, &edges, pt(0, 0)));
    }

    #[test]
    fn interior_three_quarter_fan_fails() {
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [
            Edge::new(pt(1, 1), pt(2, 1)),
            Edge::new(pt(1, 1), pt(1, 2)),
        ];
        // Gap from (0,1) back to (1,0) is 270 degrees.
        assert!(!local_convexity_ok(&cfg, &edges, pt(1, 1)));
    }

    #[test]
    fn interior_cross_passes() {
        let cfg = PointConfiguration::grid(3, 3);
        let edges = [
            Edge::new(pt(1, 1), pt(2, 1)),
            Edge::new(pt(1, 1), pt(1, 2)),
            Edge::new(pt(0, 1), pt(1, 1)),
            Edge::new(pt(1, 0), pt(1, 1)),
        ];
        assert!(local_convexity_ok(&cfg, &edges, pt(1, 1)));
    }

    #[test]
    fn angle_order_is_total_and_cyclic() {
        let dirs: [(i64, i64); 8] = [
            (1, 0),
            (2, 1),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (1, -1),
        ];
        for w in dirs.windows(2) {
            assert_eq!(angle_cmp(w[0], w[1]), Ordering::Less, "{:?} {:?}", w[0], w[1]);
        }
        assert_eq!(angle_cmp((3, 0), (1, 0)), Ordering::Equal);
    }
}
