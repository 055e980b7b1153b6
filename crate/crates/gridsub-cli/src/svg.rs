//! Standalone SVG emission for subdivisions and triangulations. Integer
//! coordinates only, so identical inputs produce identical bytes.

use std::fmt::Write as _;

use gridsub::enumeration::Subdivision;
use gridsub::flips::Triangulation;
use gridsub::geom::{slope_class, PointConfiguration, SlopeClass};
use gridsub::{Edge, Point};

const SCALE: i64 = 48;
const MARGIN: i64 = 24;
const POINT_RADIUS: i64 = 4;

struct Canvas {
    body: String,
    max_y: i64,
}

impl Canvas {
    fn new(max_y: i64) -> Self {
        Canvas { body: String::new(), max_y }
    }

    fn x(&self, v: i64) -> i64 {
        MARGIN + v * SCALE
    }

    // SVG y grows downward; flip so the lattice reads like the plane.
    fn y(&self, v: i64) -> i64 {
        MARGIN + (self.max_y - v) * SCALE
    }

    fn line(&mut self, a: Point, b: Point, stroke: &str, width: i64) {
        let (x1, y1, x2, y2) = (self.x(a.x), self.y(a.y), self.x(b.x), self.y(b.y));
        writeln!(
            self.body,
            r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{stroke}" stroke-width="{width}" stroke-linecap="round"/>"#
        )
        .unwrap();
    }

    fn circle(&mut self, p: Point) {
        let (cx, cy) = (self.x(p.x), self.y(p.y));
        writeln!(
            self.body,
            r##"  <circle cx="{cx}" cy="{cy}" r="{POINT_RADIUS}" fill="#1a1a1a"/>"##
        )
        .unwrap();
    }

    fn document(self, max_x: i64) -> String {
        let width = 2 * MARGIN + max_x * SCALE;
        let height = 2 * MARGIN + self.max_y * SCALE;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn edge_stroke(e: &Edge) -> (&'static str, i64) {
    if slope_class(e) == SlopeClass::Negative {
        ("#c0392b", 3)
    } else {
        ("#1a1a1a", 2)
    }
}

fn extent(points: &[Point]) -> (i64, i64) {
    let max_x = points.iter().map(|p| p.x).max().unwrap_or(0);
    let max_y = points.iter().map(|p| p.y).max().unwrap_or(0);
    (max_x, max_y)
}

/// Subdivision picture: hull boundary solid, internal edges solid,
/// negative-slope edges highlighted, every configuration point a circle.
pub fn subdivision_svg(s: &Subdivision) -> String {
    let cfg: &PointConfiguration = s.cfg();
    let points = cfg.points();
    let (max_x, max_y) = extent(&points);
    let mut canvas = Canvas::new(max_y);
    let hull = cfg.hull();
    for (i, &u) in hull.iter().enumerate() {
        let v = hull[(i + 1) % hull.len()];
        if hull.len() == 2 && i == 1 {
            break;
        }
        canvas.line(u, v, "#1a1a1a", 2);
    }
    for e in s.edges() {
        let (stroke, width) = edge_stroke(e);
        canvas.line(e.a(), e.b(), stroke, width);
    }
    for &p in &points {
        canvas.circle(p);
    }
    canvas.document(max_x)
}

/// Triangulation picture: one line per edge (boundary unit edges included).
pub fn triangulation_svg(t: &Triangulation) -> String {
    let points: Vec<Point> = {
        let (c, r) = (t.cols() as i64, t.rows() as i64);
        (0..r)
            .flat_map(|j| (0..c).map(move |i| Point::new(i, j)))
            .collect()
    };
    let (max_x, max_y) = extent(&points);
    let mut canvas = Canvas::new(max_y);
    for e in t.edges() {
        let (stroke, width) = edge_stroke(e);
        canvas.line(e.a(), e.b(), stroke, width);
    }
    for &p in &points {
        canvas.circle(p);
    }
    canvas.document(max_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gridsub::enumeration::{list_subdivisions, EnumOptions};
    use gridsub::flips::canonical_triangulation;
    use gridsub::geom::Mode;

    #[test]
    fn canonical_3x3_has_16_lines_and_9_circles() {
        let svg = triangulation_svg(&canonical_triangulation(3, 3));
        assert_eq!(svg.matches("<line").count(), 16);
        assert_eq!(svg.matches("<circle").count(), 9);
    }

    #[test]
    fn empty_square_subdivision_is_hull_only() {
        let cfg = PointConfiguration::grid(2, 2);
        let subs = list_subdivisions(&cfg, Mode::All, &EnumOptions::default(), Some(1)).unwrap();
        let svg = subdivision_svg(&subs[0]);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn byte_determinism() {
        let a = triangulation_svg(&canonical_triangulation(3, 2));
        let b = triangulation_svg(&canonical_triangulation(3, 2));
        assert_eq!(a, b);
    }

    #[test]
    fn negative_edges_are_highlighted() {
        let cfg = PointConfiguration::grid(2, 2);
        let subs = list_subdivisions(&cfg, Mode::All, &EnumOptions::default(), None).unwrap();
        let with_negative = subs
            .iter()
            .find(|s| s.edges().iter().any(|e| slope_class(e) == SlopeClass::Negative))
            .unwrap();
        assert!(subdivision_svg(with_negative).contains("#c0392b"));
    }
}
