//! Point configurations (grids and two-row sets), their convex hulls, and the
//! candidate-edge model shared by all counting modules.

use std::fmt;

use crate::{Coord, Edge, Point};

use super::{cross, edge_in_mode, on_segment, orient, Mode};

/// A supported planar lattice point configuration.
///
/// * `Grid { cols, rows }`: the points `(i, j)` with `0 <= i < cols`,
///   `0 <= j < rows`.
/// * `TwoRow { top, bottom }`: `top` points on the line y = 1 and `bottom`
///   points on y = 0, left-aligned at x = 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PointConfiguration {
    Grid { cols: u32, rows: u32 },
    TwoRow { top: u32, bottom: u32 },
}

impl PointConfiguration {
    pub fn grid(cols: u32, rows: u32) -> Self {
        assert!(cols >= 1 && rows >= 1, "grid dimensions must be positive");
        PointConfiguration::Grid { cols, rows }
    }

    pub fn two_row(top: u32, bottom: u32) -> Self {
        assert!(top >= 1 && bottom >= 1, "two-row sizes must be positive");
        PointConfiguration::TwoRow { top, bottom }
    }

    /// All configuration points in row-major order (by y, then x).
    pub fn points(&self) -> Vec<Point> {
        match *self {
            PointConfiguration::Grid { cols, rows } => (0..rows as Coord)
                .flat_map(|j| (0..cols as Coord).map(move |i| Point::new(i, j)))
                .collect(),
            PointConfiguration::TwoRow { top, bottom } => (0..bottom as Coord)
                .map(|i| Point::new(i, 0))
                .chain((0..top as Coord).map(|i| Point::new(i, 1)))
                .collect(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match *self {
            PointConfiguration::Grid { cols, rows } => {
                p.x >= 0 && p.x < cols as Coord && p.y >= 0 && p.y < rows as Coord
            }
            PointConfiguration::TwoRow { top, bottom } => {
                (p.y == 0 && p.x >= 0 && p.x < bottom as Coord)
                    || (p.y == 1 && p.x >= 0 && p.x < top as Coord)
            }
        }
    }

    /// The grid reflected across y = x; `None` for two-row configurations
    /// with different row lengths (their transpose is not a supported kind).
    pub fn transpose(&self) -> Option<Self> {
        match *self {
            PointConfiguration::Grid { cols, rows } => {
                Some(PointConfiguration::Grid { cols: rows, rows: cols })
            }
            PointConfiguration::TwoRow { .. } => None,
        }
    }

    /// Vertices of the convex hull in counterclockwise order, strict corners
    /// only. Degenerate (collinear) configurations yield the two extreme
    /// points, or one point for a singleton.
    pub fn hull(&self) -> Vec<Point> {
        convex_hull(&self.points())
    }

    /// Where a configuration point sits relative to the hull boundary.
    pub fn boundary_class(&self, p: Point) -> BoundaryClass {
        debug_assert!(self.contains(p), "boundary_class of a non-member point");
        let hull = self.hull();
        if hull.len() <= 2 {
            // Fully collinear configuration: everything is boundary.
            return if hull.contains(&p) {
                BoundaryClass::Corner
            } else {
                BoundaryClass::Side {
                    along: direction(hull[0], hull[1]),
                }
            };
        }
        if hull.contains(&p) {
            return BoundaryClass::Corner;
        }
        for (i, &u) in hull.iter().enumerate() {
            let v = hull[(i + 1) % hull.len()];
            if on_segment(p, u, v) {
                return BoundaryClass::Side { along: direction(u, v) };
            }
        }
        BoundaryClass::Interior
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PointConfiguration::Grid { cols, rows } => write!(f, "grid({cols},{rows})"),
            PointConfiguration::TwoRow { top, bottom } => write!(f, "two-row({top},{bottom})"),
        }
    }
}

/// Position of a configuration point relative to the hull boundary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundaryClass {
    Interior,
    /// On a hull side but not a corner; `along` is the side's direction.
    Side { along: (Coord, Coord) },
    Corner,
}

fn direction(u: Point, v: Point) -> (Coord, Coord) {
    (v.x - u.x, v.y - u.y)
}

/// Andrew's monotone chain; returns the hull counterclockwise with collinear
/// points dropped, so every returned vertex is a strict corner.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear after trimming: report the two extremes.
        return vec![pts[0], pts[pts.len() - 1]];
    }
    lower
}

/// Which point pairs are admitted as candidate edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CandidateFilter {
    /// Every pair not contained in the hull boundary.
    AllPairs,
    /// Additionally drop edges with a lattice point in their relative
    /// interior (sensitivity toggle).
    PrimitiveOnly,
}

impl CandidateFilter {
    pub fn label(self) -> &'static str {
        match self {
            CandidateFilter::AllPairs => "all-pairs",
            CandidateFilter::PrimitiveOnly => "primitive-only",
        }
    }
}

/// True iff the segment `pq` lies inside the hull boundary (both endpoints on
/// one hull side). Such segments are implicit in every subdivision and never
/// enumerated.
pub(crate) fn pair_in_hull_boundary(hull: &[Point], p: Point, q: Point) -> bool {
    if hull.len() <= 2 {
        return true;
    }
    for (i, &u) in hull.iter().enumerate() {
        let v = hull[(i + 1) % hull.len()];
        if on_segment(p, u, v) && on_segment(q, u, v) {
            return true;
        }
    }
    false
}

/// All candidate internal edges of the configuration, normalized,
/// duplicate-free, in lexicographic order.
pub fn candidate_edges(
    cfg: &PointConfiguration,
    mode: Mode,
    filter: CandidateFilter,
) -> Vec<Edge> {
    let pts = cfg.points();
    let hull = cfg.hull();
    let mut out = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            if pair_in_hull_boundary(&hull, p, q) {
                continue;
            }
            let e = Edge::new(p, q);
            if !edge_in_mode(&e, mode) {
                continue;
            }
            if filter == CandidateFilter::PrimitiveOnly && !e.is_primitive() {
                continue;
            }
            out.push(e);
        }
    }
    out.sort();
    out
}

#[allow(dead_code)]
pub(crate) fn cross_coord(u: (Coord, Coord), v: (Coord, Coord)) -> Coord {
    cross(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;

    #[test]
    fn grid_points_row_major() {
        let cfg = PointConfiguration::grid(3, 2);
        assert_eq!(
            cfg.points(),
            vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 1), pt(1, 1), pt(2, 1)]
        );
    }

    #[test]
    fn two_row_points() {
        let cfg = PointConfiguration::two_row(3, 2);
        assert_eq!(
            cfg.points(),
            vec![pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1), pt(2, 1)]
        );
    }

    #[test]
    fn hull_of_grid_is_rectangle() {
        let cfg = PointConfiguration::grid(3, 3);
        assert_eq!(cfg.hull(), vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)]);
    }

    #[test]
    fn hull_of_uneven_two_row_is_trapezoid() {
        let cfg = PointConfiguration::two_row(4, 2);
        assert_eq!(cfg.hull(), vec![pt(0, 0), pt(1, 0), pt(3, 1), pt(0, 1)]);
    }

    #[test]
    fn hull_of_fan_two_row_is_triangle() {
        let cfg = PointConfiguration::two_row(3, 1);
        assert_eq!(cfg.hull(), vec![pt(0, 0), pt(2, 1), pt(0, 1)]);
    }

    #[test]
    fn boundary_classes_on_grid() {
        let cfg = PointConfiguration::grid(3, 3);
        assert_eq!(cfg.boundary_class(pt(0, 0)), BoundaryClass::Corner);
        assert_eq!(cfg.boundary_class(pt(1, 1)), BoundaryClass::Interior);
        assert!(matches!(
            cfg.boundary_class(pt(1, 0)),
            BoundaryClass::Side { along: (dx, 0) } if dx != 0
        ));
        assert!(matches!(
            cfg.boundary_class(pt(2, 1)),
            BoundaryClass::Side { along: (0, dy) } if dy != 0
        ));
    }

    #[test]
    fn square_candidates() {
        let cfg = PointConfiguration::grid(2, 2);
        let all = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
        assert_eq!(
            all,
            vec![
                Edge::new(pt(0, 0), pt(1, 1)),
                Edge::new(pt(0, 1), pt(1, 0)),
            ]
        );
        let bim = candidate_edges(&cfg, Mode::Bimonotone, CandidateFilter::AllPairs);
        assert_eq!(bim, vec![Edge::new(pt(0, 0), pt(1, 1))]);
    }

    // Independent oracle for the grid(3,3) candidate count: a pair is
    // hull-boundary-contained exactly when both points share a border row or
    // border column of the rectangle.
    #[test]
    fn grid_3x3_candidate_count_against_pair_scan() {
        let cfg = PointConfiguration::grid(3, 3);
        let pts = cfg.points();
        let mut boundary_pairs = 0usize;
        let mut total_pairs = 0usize;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                total_pairs += 1;
                let same_side = (p.y == 0 && q.y == 0)
                    || (p.y == 2 && q.y == 2)
                    || (p.x == 0 && q.x == 0)
                    || (p.x == 2 && q.x == 2);
                if same_side {
                    boundary_pairs += 1;
                }
            }
        }
        assert_eq!(total_pairs, 36);
        assert_eq!(boundary_pairs, 12);
        let all = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
        assert_eq!(all.len(), total_pairs - boundary_pairs);
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn candidate_sets_are_sorted_and_unique() {
        for cfg in [
            PointConfiguration::grid(3, 4),
            PointConfiguration::grid(4, 4),
            PointConfiguration::two_row(5, 3),
        ] {
            let edges = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
            let mut sorted = edges.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(edges, sorted);
        }
    }

    #[test]
    fn degenerate_single_row_has_no_candidates() {
        let cfg = PointConfiguration::grid(4, 1);
        assert!(candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs).is_empty());
    }

    #[test]
    fn primitive_filter_drops_long_diagonal() {
        let cfg = PointConfiguration::grid(3, 3);
        let all = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
        let prim = candidate_edges(&cfg, Mode::All, CandidateFilter::PrimitiveOnly);
        assert!(all.contains(&Edge::new(pt(0, 0), pt(2, 2))));
        assert!(!prim.contains(&Edge::new(pt(0, 0), pt(2, 2))));
        assert!(prim.len() < all.len());
    }
}
