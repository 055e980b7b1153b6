//! Exact integer plane geometry: lattice points, normalized edges, and the
//! orientation/intersection predicates the counting engines are built on.
//!
//! Slopes are never materialized as quotients; every predicate reduces to
//! integer cross products and comparisons.

use std::fmt;

use crate::scalar::GridScalar;

mod config;
mod convexity;
pub(crate) mod faces;

pub use config::{candidate_edges, BoundaryClass, CandidateFilter, PointConfiguration};
pub use convexity::{directions_pass_gap_test, local_convexity_ok, point_passes_convexity};
pub use faces::extract_faces;

/// A point of the integer lattice. Ordering is lexicographic by `(x, y)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LatticePoint<C> {
    pub x: C,
    pub y: C,
}

impl<C: GridScalar> LatticePoint<C> {
    pub fn new(x: C, y: C) -> Self {
        LatticePoint { x, y }
    }

    /// Reflection across the line y = x.
    pub fn transpose(self) -> Self {
        LatticePoint { x: self.y, y: self.x }
    }
}

impl<C: fmt::Display> fmt::Display for LatticePoint<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Shorthand constructor.
pub fn pt<C: GridScalar>(x: C, y: C) -> LatticePoint<C> {
    LatticePoint { x, y }
}

/// Cross product of two direction vectors.
pub fn cross<C: GridScalar>(u: (C, C), v: (C, C)) -> C {
    u.0 * v.1 - u.1 * v.0
}

/// Dot product of two direction vectors.
pub fn dot<C: GridScalar>(u: (C, C), v: (C, C)) -> C {
    u.0 * v.0 + u.1 * v.1
}

/// Twice the signed area of the triangle `a b c`; positive iff the triple is
/// counterclockwise, zero iff collinear.
pub fn orient<C: GridScalar>(a: LatticePoint<C>, b: LatticePoint<C>, c: LatticePoint<C>) -> C {
    cross((b.x - a.x, b.y - a.y), (c.x - a.x, c.y - a.y))
}

/// True iff `p` lies on the closed segment `ab` (endpoints included).
pub fn on_segment<C: GridScalar>(
    p: LatticePoint<C>,
    a: LatticePoint<C>,
    b: LatticePoint<C>,
) -> bool {
    orient(a, b, p) == C::zero()
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// A closed segment between two distinct lattice points, stored with the
/// endpoints in lexicographic order so equal segments compare equal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge<C> {
    a: LatticePoint<C>,
    b: LatticePoint<C>,
}

impl<C: GridScalar> Edge<C> {
    /// Builds the normalized edge. Panics if the endpoints coincide.
    pub fn new(p: LatticePoint<C>, q: LatticePoint<C>) -> Self {
        assert!(p != q, "degenerate edge at {p:?}");
        if p < q {
            Edge { a: p, b: q }
        } else {
            Edge { a: q, b: p }
        }
    }

    pub fn a(&self) -> LatticePoint<C> {
        self.a
    }

    pub fn b(&self) -> LatticePoint<C> {
        self.b
    }

    pub fn endpoints(&self) -> [LatticePoint<C>; 2] {
        [self.a, self.b]
    }

    pub fn has_endpoint(&self, p: LatticePoint<C>) -> bool {
        self.a == p || self.b == p
    }

    /// Displacement `b - a` of the normalized edge.
    pub fn delta(&self) -> (C, C) {
        (self.b.x - self.a.x, self.b.y - self.a.y)
    }

    /// Direction vector pointing away from endpoint `p`. Panics if `p` is
    /// not an endpoint.
    pub fn direction_from(&self, p: LatticePoint<C>) -> (C, C) {
        if p == self.a {
            (self.b.x - self.a.x, self.b.y - self.a.y)
        } else {
            assert!(p == self.b, "direction_from: {p:?} not an endpoint");
            (self.a.x - self.b.x, self.a.y - self.b.y)
        }
    }

    pub fn squared_length(&self) -> C {
        let (dx, dy) = self.delta();
        dx * dx + dy * dy
    }

    /// True iff the segment contains no lattice point in its relative
    /// interior.
    pub fn is_primitive(&self) -> bool {
        let (dx, dy) = self.delta();
        dx.abs().gcd(&dy.abs()) == C::one()
    }

    /// The edge reflected across y = x.
    pub fn transpose(&self) -> Edge<C> {
        Edge::new(self.a.transpose(), self.b.transpose())
    }
}

impl<C: fmt::Display> fmt::Display for Edge<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})-({},{})", self.a.x, self.a.y, self.b.x, self.b.y)
    }
}

/// Counting mode: restrict to bimonotone edges, or allow all.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Bimonotone,
    All,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Bimonotone => "bimonotone",
            Mode::All => "all",
        }
    }
}

/// Classification of an edge's slope.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlopeClass {
    Vertical,
    /// Horizontal or positively sloped.
    Nonnegative,
    Negative,
}

/// Slope class of an edge, computed from the sign of rise times run.
pub fn slope_class<C: GridScalar>(e: &Edge<C>) -> SlopeClass {
    let (dx, dy) = e.delta();
    if dx == C::zero() {
        SlopeClass::Vertical
    } else if dy * dx >= C::zero() {
        SlopeClass::Nonnegative
    } else {
        SlopeClass::Negative
    }
}

/// True iff the edge is admissible in the given mode.
pub fn edge_in_mode<C: GridScalar>(e: &Edge<C>, mode: Mode) -> bool {
    match mode {
        Mode::All => true,
        Mode::Bimonotone => slope_class(e) != SlopeClass::Negative,
    }
}

/// How two normalized edges meet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Interaction {
    /// The segments do not intersect at all.
    Disjoint,
    /// The segments intersect in exactly one point, an endpoint of both.
    SharedEndpoint,
    /// Anything else: proper crossing, T-junction, or collinear overlap.
    Conflict,
}

/// Exact classification of the intersection of two segments.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum SegCrossing<C> {
    /// No common point.
    Empty,
    /// Exactly one common point. `lattice` is `Some` iff the point has
    /// integer coordinates; `endpoint_of_both` iff it is an endpoint of both
    /// segments.
    At {
        lattice: Option<LatticePoint<C>>,
        endpoint_of_both: bool,
    },
    /// Collinear segments sharing more than one point.
    Overlap,
}

/// Classifies how two distinct-or-equal normalized segments intersect.
pub(crate) fn classify_crossing<C: GridScalar>(e1: &Edge<C>, e2: &Edge<C>) -> SegCrossing<C> {
    if e1 == e2 {
        return SegCrossing::Overlap;
    }
    let (a1, b1) = (e1.a, e1.b);
    let (a2, b2) = (e2.a, e2.b);

    let o1 = orient(a1, b1, a2);
    let o2 = orient(a1, b1, b2);

    if o1 == C::zero() && o2 == C::zero() {
        // Collinear: compare 1-D intervals along the (normalized) order.
        let (lo1, hi1) = (a1, b1);
        let (lo2, hi2) = (a2, b2);
        let lo = lo1.max(lo2);
        let hi = hi1.min(hi2);
        return if lo > hi {
            SegCrossing::Empty
        } else if lo == hi {
            SegCrossing::At {
                lattice: Some(lo),
                endpoint_of_both: true,
            }
        } else {
            SegCrossing::Overlap
        };
    }

    // Not collinear: two distinct lines meet in at most one point, so a
    // shared endpoint settles it.
    for p in e1.endpoints() {
        if e2.has_endpoint(p) {
            return SegCrossing::At {
                lattice: Some(p),
                endpoint_of_both: true,
            };
        }
    }

    let o3 = orient(a2, b2, a1);
    let o4 = orient(a2, b2, b1);

    if ((o1 > C::zero()) != (o2 > C::zero()))
        && o1 != C::zero()
        && o2 != C::zero()
        && ((o3 > C::zero()) != (o4 > C::zero()))
        && o3 != C::zero()
        && o4 != C::zero()
    {
        // Proper crossing strictly inside both segments; decide whether the
        // point is a lattice point without leaving integer arithmetic.
        let d1 = e1.delta();
        let d2 = e2.delta();
        let den = cross(d1, d2);
        let t_num = cross((a2.x - a1.x, a2.y - a1.y), d2);
        let px_num = a1.x * den + t_num * d1.0;
        let py_num = a1.y * den + t_num * d1.1;
        let lattice = if px_num % den == C::zero() && py_num % den == C::zero() {
            Some(LatticePoint::new(px_num / den, py_num / den))
        } else {
            None
        };
        return SegCrossing::At {
            lattice,
            endpoint_of_both: false,
        };
    }

    // A touch, if any, puts one segment's endpoint in the other's interior.
    if o1 == C::zero() && on_segment(a2, a1, b1) {
        return SegCrossing::At {
            lattice: Some(a2),
            endpoint_of_both: false,
        };
    }
    if o2 == C::zero() && on_segment(b2, a1, b1) {
        return SegCrossing::At {
            lattice: Some(b2),
            endpoint_of_both: false,
        };
    }
    if o3 == C::zero() && on_segment(a1, a2, b2) {
        return SegCrossing::At {
            lattice: Some(a1),
            endpoint_of_both: false,
        };
    }
    if o4 == C::zero() && on_segment(b1, a2, b2) {
        return SegCrossing::At {
            lattice: Some(b1),
            endpoint_of_both: false,
        };
    }

    SegCrossing::Empty
}

/// How two edges interact under the strict rule: segments may meet only in a
/// single point that is an endpoint of both; everything else conflicts.
pub fn interact<C: GridScalar>(e1: &Edge<C>, e2: &Edge<C>) -> Interaction {
    match classify_crossing(e1, e2) {
        SegCrossing::Empty => Interaction::Disjoint,
        SegCrossing::At {
            endpoint_of_both: true,
            ..
        } => Interaction::SharedEndpoint,
        SegCrossing::At { .. } | SegCrossing::Overlap => Interaction::Conflict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LatticePoint<i64>;

    fn e(ax: i64, ay: i64, bx: i64, by: i64) -> Edge<i64> {
        Edge::new(P::new(ax, ay), P::new(bx, by))
    }

    #[test]
    fn slope_classes() {
        assert_eq!(slope_class(&e(0, 0, 0, 1)), SlopeClass::Vertical);
        assert_eq!(slope_class(&e(0, 0, 1, 1)), SlopeClass::Nonnegative);
        assert_eq!(slope_class(&e(0, 1, 1, 0)), SlopeClass::Negative);
        assert_eq!(slope_class(&e(0, 0, 1, 0)), SlopeClass::Nonnegative);
        // Shallow positive slopes are admissible bimonotone edges.
        assert_eq!(slope_class(&e(0, 0, 2, 1)), SlopeClass::Nonnegative);
    }

    #[test]
    fn edge_normalization() {
        assert_eq!(e(1, 1, 0, 0), e(0, 0, 1, 1));
        assert_eq!(e(0, 0, 1, 1).a(), P::new(0, 0));
    }

    #[test]
    fn interact_proper_crossing() {
        assert_eq!(interact(&e(0, 0, 2, 2), &e(0, 2, 2, 0)), Interaction::Conflict);
    }

    #[test]
    fn interact_shared_endpoint() {
        assert_eq!(
            interact(&e(0, 0, 1, 1), &e(1, 1, 2, 2)),
            Interaction::SharedEndpoint
        );
        assert_eq!(
            interact(&e(0, 0, 1, 1), &e(1, 1, 2, 0)),
            Interaction::SharedEndpoint
        );
    }

    #[test]
    fn interact_t_junction() {
        assert_eq!(interact(&e(0, 0, 2, 2), &e(1, 1, 1, 2)), Interaction::Conflict);
    }

    #[test]
    fn interact_collinear_overlap() {
        assert_eq!(interact(&e(0, 0, 2, 2), &e(1, 1, 3, 3)), Interaction::Conflict);
        assert_eq!(interact(&e(0, 0, 3, 3), &e(1, 1, 2, 2)), Interaction::Conflict);
        // Collinear but sharing only one point.
        assert_eq!(
            interact(&e(0, 0, 1, 1), &e(1, 1, 3, 3)),
            Interaction::SharedEndpoint
        );
        // Collinear and disjoint.
        assert_eq!(interact(&e(0, 0, 1, 1), &e(2, 2, 3, 3)), Interaction::Disjoint);
    }

    #[test]
    fn interact_disjoint() {
        assert_eq!(interact(&e(0, 0, 1, 0), &e(0, 1, 1, 1)), Interaction::Disjoint);
    }

    #[test]
    fn crossing_at_lattice_point_is_detected() {
        // (0,0)-(2,2) and (0,2)-(2,0) cross at the lattice point (1,1).
        match classify_crossing(&e(0, 0, 2, 2), &e(0, 2, 2, 0)) {
            SegCrossing::At { lattice, endpoint_of_both } => {
                assert_eq!(lattice, Some(P::new(1, 1)));
                assert!(!endpoint_of_both);
            }
            other => panic!("unexpected crossing {other:?}"),
        }
        // (0,0)-(1,2) and (0,1)-(1,0) cross at (1/3, 2/3): not lattice.
        match classify_crossing(&e(0, 0, 1, 2), &e(0, 1, 1, 0)) {
            SegCrossing::At { lattice, .. } => assert_eq!(lattice, None),
            other => panic!("unexpected crossing {other:?}"),
        }
    }

    #[test]
    fn primitive_edges() {
        assert!(e(0, 0, 1, 1).is_primitive());
        assert!(e(0, 0, 2, 1).is_primitive());
        assert!(!e(0, 0, 2, 2).is_primitive());
        assert!(!e(0, 0, 0, 2).is_primitive());
    }
}
