//! Cross-module invariants: enumeration against the two-row recursions,
//! exact predicate symmetries, and the half-plane property behind the local
//! convexity test.

use gridsub::enumeration::{count_subdivisions, EnumOptions};
use gridsub::geom::{
    candidate_edges, interact, local_convexity_ok, slope_class, BoundaryClass, CandidateFilter,
    Interaction, Mode, PointConfiguration, SlopeClass,
};
use gridsub::two_row::two_row_count;
use gridsub::{Edge, Point};

use proptest::prelude::*;

// Enumeration agrees with the recursion on every two-row configuration with
// m, n <= 6, in both modes.
#[test]
fn enumeration_matches_two_row_recursion() {
    for m in 1u32..=6 {
        for n in 1u32..=6 {
            if m + n < 3 {
                continue;
            }
            let cfg = PointConfiguration::two_row(m, n);
            for mode in [Mode::Bimonotone, Mode::All] {
                let enumerated = count_subdivisions(&cfg, mode, &EnumOptions::default()).unwrap();
                let recursed = two_row_count(mode, m, n).to_count().unwrap();
                assert_eq!(enumerated, recursed, "{cfg} {}", mode.label());
            }
        }
    }
}

// interact is symmetric on every candidate pair of grids up to 4x4.
#[test]
fn interact_symmetry_on_candidate_pairs() {
    for cols in 2u32..=4 {
        for rows in 2u32..=4 {
            let cfg = PointConfiguration::grid(cols, rows);
            let edges = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
            for (i, e1) in edges.iter().enumerate() {
                for e2 in &edges[i + 1..] {
                    assert_eq!(interact(e1, e2), interact(e2, e1), "{e1} vs {e2}");
                }
            }
        }
    }
}

fn arb_point() -> impl Strategy<Value = Point> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Point::new(x, y))
}

fn arb_edge() -> impl Strategy<Value = Edge> {
    (arb_point(), arb_point())
        .prop_filter("distinct endpoints", |(p, q)| p != q)
        .prop_map(|(p, q)| Edge::new(p, q))
}

proptest! {
    // Reflecting across y = x never turns a vertical or nonnegative edge
    // into a negative one.
    #[test]
    fn slope_class_transpose_covariant(e in arb_edge()) {
        let before = slope_class(&e);
        let after = slope_class(&e.transpose());
        match before {
            SlopeClass::Negative => prop_assert_eq!(after, SlopeClass::Negative),
            _ => prop_assert_ne!(after, SlopeClass::Negative),
        }
    }

    // interact is symmetric for arbitrary edges, not just candidate pairs.
    #[test]
    fn interact_symmetric(e1 in arb_edge(), e2 in arb_edge()) {
        prop_assert_eq!(interact(&e1, &e2), interact(&e2, &e1));
    }

    // In any edge subset where every point passes the convexity test, no
    // used interior point has all its incident directions inside an open
    // half-plane. Random subsets rarely pass the convexity filter, so this
    // is complemented by the exhaustive check over all listed subdivisions
    // below.
    #[test]
    fn convexity_excludes_open_half_plane_vertices(mask in 0u32..(1 << 24)) {
        let cfg = PointConfiguration::grid(3, 3);
        let all = candidate_edges(&cfg, Mode::All, CandidateFilter::AllPairs);
        assert_eq!(all.len(), 24);
        let chosen: Vec<Edge> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, e)| *e)
            .collect();
        let everything_convex = cfg.points().iter().all(|&p| local_convexity_ok(&cfg, &chosen, p));
        if everything_convex {
            prop_assert!(no_open_half_plane_vertex(&cfg, &chosen));
        }
    }
}

/// No used interior point has all incident directions strictly inside an
/// open half-plane; the normal search is exhaustive for directions of this
/// magnitude.
fn no_open_half_plane_vertex(cfg: &PointConfiguration, edges: &[Edge]) -> bool {
    for p in cfg.points() {
        if cfg.boundary_class(p) != BoundaryClass::Interior {
            continue;
        }
        let dirs: Vec<(i64, i64)> = edges
            .iter()
            .filter(|e| e.has_endpoint(p))
            .map(|e| e.direction_from(p))
            .collect();
        if dirs.is_empty() {
            continue;
        }
        for nx in -9i64..=9 {
            for ny in -9i64..=9 {
                if (nx, ny) == (0, 0) {
                    continue;
                }
                if dirs.iter().all(|&(dx, dy)| nx * dx + ny * dy > 0) {
                    return false;
                }
            }
        }
    }
    true
}

// Every subdivision the engine emits (over the widest candidate model)
// satisfies the half-plane property at its interior points.
#[test]
fn all_listed_subdivisions_satisfy_half_plane_property() {
    use gridsub::enumeration::{list_subdivisions, EdgeRule};
    let cfg = PointConfiguration::grid(3, 3);
    let opts = EnumOptions {
        rule: EdgeRule::Strict,
        filter: CandidateFilter::AllPairs,
        budget_nodes: 1 << 40,
    };
    for mode in [Mode::Bimonotone, Mode::All] {
        for s in list_subdivisions(&cfg, mode, &opts, None).unwrap() {
            assert!(no_open_half_plane_vertex(&cfg, s.edges()), "{:?}", s.edges());
        }
    }
}

// Pairwise-valid and pointwise-convex subsets listed by the engine stay
// valid under a from-scratch check that also classifies every pair.
#[test]
fn listed_subdivisions_have_no_conflicting_pairs() {
    use gridsub::enumeration::list_subdivisions;
    let cfg = PointConfiguration::grid(3, 2);
    for mode in [Mode::Bimonotone, Mode::All] {
        for s in list_subdivisions(&cfg, mode, &EnumOptions::default(), None).unwrap() {
            let edges = s.edges();
            for (i, e1) in edges.iter().enumerate() {
                for e2 in &edges[i + 1..] {
                    assert_ne!(interact(e1, e2), Interaction::Conflict);
                }
            }
        }
    }
}
