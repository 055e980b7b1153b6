//! Full-point grid triangulations, diagonal flips, flip-graph BFS counting,
//! and the longest-diagonal canonicalization descent.
//!
//! A triangulation is stored as its complete canonical edge set, boundary
//! unit edges included. In a full-point unimodular triangulation a triple of
//! pairwise adjacent vertices spans a face exactly when its doubled area is
//! 1, which lets face adjacency be recovered from the edge set alone.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::enumeration::EnumError;
use crate::geom::{orient, pt, slope_class, Mode, SlopeClass};
use crate::{Coord, Count, Edge, Point};

/// A full-point triangulation of the `cols x rows` grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangulation {
    cols: u32,
    rows: u32,
    edges: BTreeSet<Edge>,
}

/// A single diagonal flip: `removed` and `inserted` are the two diagonals of
/// the strictly convex quadrilateral `quad` (in cyclic order).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Flip {
    pub removed: Edge,
    pub inserted: Edge,
    pub quad: [Point; 4],
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TriangulationError {
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("point ({x},{y}) has fewer than two incident edges")]
    UnderusedPoint { x: Coord, y: Coord },
    #[error("edge {edge} should bound {expected} unit triangles, bounds {found}")]
    BadEdgeLink { edge: Edge, expected: usize, found: usize },
    #[error("expected {expected} unit triangles, found {found}")]
    TriangleCount { expected: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum FlipError {
    #[error("flip removing {removed} is not available")]
    Unavailable { removed: Edge },
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum DescentError {
    #[error("input triangulation is not bimonotone (contains {edge})")]
    NotBimonotone { edge: Edge },
    #[error("input is not a valid full-point triangulation: {source}")]
    Invalid {
        #[from]
        source: TriangulationError,
    },
    #[error("longest diagonal {edge} is not framed by a parallelogram")]
    ParallelogramViolated { edge: Edge },
    #[error("flip of {removed} inserted {inserted}, which is not shorter")]
    LengthNotDecreasing { removed: Edge, inserted: Edge },
    #[error("flip of {removed} inserted the negative-slope edge {inserted}")]
    InsertedNegative { removed: Edge, inserted: Edge },
    #[error("descent reached a diagonal-free triangulation that is not canonical")]
    FixedPointNotCanonical,
}

/// Total edges of a full-point triangulation of the grid.
pub fn expected_edge_count(cols: u32, rows: u32) -> usize {
    (3 * cols * rows - 2 * cols - 2 * rows + 1) as usize
}

/// Unit triangles of a full-point triangulation of the grid.
pub fn expected_triangle_count(cols: u32, rows: u32) -> usize {
    (2 * (cols - 1) * (rows - 1)) as usize
}

/// The canonical triangulation: all unit horizontal and vertical edges plus
/// the positive unit diagonals (i,j)-(i+1,j+1).
pub fn canonical_triangulation(cols: u32, rows: u32) -> Triangulation {
    assert!(cols >= 2 && rows >= 2, "canonical triangulation needs a 2x2 grid at least");
    let (c, r) = (cols as Coord, rows as Coord);
    let mut edges = BTreeSet::new();
    for j in 0..r {
        for i in 0..c {
            if i + 1 < c {
                edges.insert(Edge::new(pt(i, j), pt(i + 1, j)));
            }
            if j + 1 < r {
                edges.insert(Edge::new(pt(i, j), pt(i, j + 1)));
            }
            if i + 1 < c && j + 1 < r {
                edges.insert(Edge::new(pt(i, j), pt(i + 1, j + 1)));
            }
        }
    }
    let t = Triangulation { cols, rows, edges };
    debug_assert!(t.validate().is_ok());
    t
}

impl Triangulation {
    /// Wraps a complete edge set (boundary included) after validation.
    pub fn from_edges(
        cols: u32,
        rows: u32,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, TriangulationError> {
        let t = Triangulation { cols, rows, edges: edges.into_iter().collect() };
        t.validate()?;
        Ok(t)
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list; the canonical visited-set key.
    pub fn key(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn is_bimonotone(&self) -> bool {
        self.edges.iter().all(|e| slope_class(e) != SlopeClass::Negative)
    }

    fn grid_points(&self) -> Vec<Point> {
        let (c, r) = (self.cols as Coord, self.rows as Coord);
        (0..r).flat_map(|j| (0..c).map(move |i| pt(i, j))).collect()
    }

    fn on_boundary(&self, e: &Edge) -> bool {
        let (c, r) = (self.cols as Coord - 1, self.rows as Coord - 1);
        let [a, b] = e.endpoints();
        (a.x == 0 && b.x == 0)
            || (a.x == c && b.x == c)
            || (a.y == 0 && b.y == 0)
            || (a.y == r && b.y == r)
    }

    /// Vertices completing a unit triangle on the two sides of the edge:
    /// points adjacent to both endpoints with doubled triangle area 1.
    fn opposite_vertices(&self, e: &Edge) -> Vec<Point> {
        let [a, b] = e.endpoints();
        let mut out = Vec::with_capacity(2);
        for w in self.grid_points() {
            if w == a || w == b {
                continue;
            }
            if orient(a, b, w).abs() == 1
                && self.edges.contains(&Edge::new(a, w))
                && self.edges.contains(&Edge::new(b, w))
            {
                out.push(w);
            }
        }
        out
    }

    /// Checks the structural invariants: edge and triangle count formulas,
    /// every point used by at least two edges, every edge bounding the right
    /// number of unit triangles.
    pub fn validate(&self) -> Result<(), TriangulationError> {
        let expected = expected_edge_count(self.cols, self.rows);
        if self.edges.len() != expected {
            return Err(TriangulationError::EdgeCount { expected, found: self.edges.len() });
        }
        for p in self.grid_points() {
            let degree = self.edges.iter().filter(|e| e.has_endpoint(p)).count();
            if degree < 2 {
                return Err(TriangulationError::UnderusedPoint { x: p.x, y: p.y });
            }
        }
        let mut triangles: BTreeSet<[Point; 3]> = BTreeSet::new();
        for e in &self.edges {
            let opposite = self.opposite_vertices(e);
            let expected = if self.on_boundary(e) { 1 } else { 2 };
            if opposite.len() != expected {
                return Err(TriangulationError::BadEdgeLink {
                    edge: *e,
                    expected,
                    found: opposite.len(),
                });
            }
            let [a, b] = e.endpoints();
            for w in opposite {
                let mut tri = [a, b, w];
                tri.sort();
                triangles.insert(tri);
            }
        }
        let expected_tris = expected_triangle_count(self.cols, self.rows);
        if triangles.len() != expected_tris {
            return Err(TriangulationError::TriangleCount {
                expected: expected_tris,
                found: triangles.len(),
            });
        }
        Ok(())
    }

    /// All flips currently available; in bimonotone mode only those whose
    /// inserted edge is vertical or of nonnegative slope. Deterministic
    /// order (by removed edge).
    pub fn available_flips(&self, mode: Mode) -> Vec<Flip> {
        let mut out = Vec::new();
        for e in &self.edges {
            if self.on_boundary(e) {
                continue;
            }
            let opposite = self.opposite_vertices(e);
            let [p, q] = match opposite[..] {
                [p, q] => [p, q],
                _ => continue,
            };
            let [a, b] = e.endpoints();
            // Strictly convex quadrilateral a p b q: the two diagonals must
            // properly cross.
            let o1 = orient(p, q, a);
            let o2 = orient(p, q, b);
            if o1 == 0 || o2 == 0 || (o1 > 0) == (o2 > 0) {
                continue;
            }
            let inserted = Edge::new(p, q);
            if mode == Mode::Bimonotone && slope_class(&inserted) == SlopeClass::Negative {
                continue;
            }
            out.push(Flip { removed: *e, inserted, quad: [a, p, b, q] });
        }
        out
    }

    /// Applies a flip, returning the new triangulation.
    pub fn apply_flip(&self, f: &Flip) -> Result<Triangulation, FlipError> {
        let current = self.available_flips(Mode::All);
        if !current
            .iter()
            .any(|g| g.removed == f.removed && g.inserted == f.inserted)
        {
            return Err(FlipError::Unavailable { removed: f.removed });
        }
        let mut edges = self.edges.clone();
        edges.remove(&f.removed);
        edges.insert(f.inserted);
        let t = Triangulation { cols: self.cols, rows: self.rows, edges };
        debug_assert!(t.validate().is_ok());
        Ok(t)
    }
}

/// Breadth-first search over the flip graph from the canonical triangulation;
/// returns the visited set keyed by sorted edge lists. `budget_states` bounds
/// the visited-set size.
pub fn bfs_reachable(
    cols: u32,
    rows: u32,
    mode: Mode,
    budget_states: u64,
) -> Result<HashSet<Vec<Edge>>, EnumError> {
    let start = canonical_triangulation(cols, rows);
    let mut visited: HashSet<Vec<Edge>> = HashSet::new();
    visited.insert(start.key());
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for f in t.available_flips(mode) {
            let mut edges = t.edges.clone();
            edges.remove(&f.removed);
            edges.insert(f.inserted);
            let next = Triangulation { cols, rows, edges };
            let key = next.key();
            if !visited.contains(&key) {
                if visited.len() as u64 >= budget_states {
                    return Err(EnumError::BudgetExceeded {
                        nodes: visited.len() as u64 + 1,
                        budget: budget_states,
                    });
                }
                visited.insert(key);
                queue.push_back(next);
            }
        }
    }
    Ok(visited)
}

/// Layer-synchronous parallel variant of [`bfs_reachable`]; the final visited
/// set is schedule-independent.
pub fn bfs_reachable_parallel(
    cols: u32,
    rows: u32,
    mode: Mode,
    budget_states: u64,
) -> Result<HashSet<Vec<Edge>>, EnumError> {
    let start = canonical_triangulation(cols, rows);
    let mut visited: HashSet<Vec<Edge>> = HashSet::new();
    visited.insert(start.key());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let expansions: Vec<Triangulation> = frontier
            .par_iter()
            .flat_map_iter(|t| {
                t.available_flips(mode).into_iter().map(move |f| {
                    let mut edges = t.edges.clone();
                    edges.remove(&f.removed);
                    edges.insert(f.inserted);
                    Triangulation { cols, rows, edges }
                })
            })
            .collect();
        let mut next_frontier = Vec::new();
        for t in expansions {
            let key = t.key();
            if !visited.contains(&key) {
                if visited.len() as u64 >= budget_states {
                    return Err(EnumError::BudgetExceeded {
                        nodes: visited.len() as u64 + 1,
                        budget: budget_states,
                    });
                }
                visited.insert(key);
                next_frontier.push(t);
            }
        }
        frontier = next_frontier;
    }
    Ok(visited)
}

/// Number of full-point triangulations reachable by flips from the canonical
/// triangulation (all of them, by flip connectivity).
pub fn bfs_count(cols: u32, rows: u32, mode: Mode, budget_states: u64) -> Result<Count, EnumError> {
    Ok(Count::from(bfs_reachable(cols, rows, mode, budget_states)?.len() as u64))
}

/// Repeatedly flips a maximal-length diagonal (squared length above 2, ties
/// broken by lexicographically smallest edge), checking the descent
/// guarantees at every step: the framing quadrilateral is a parallelogram and
/// the inserted edge is strictly shorter and bimonotone. Terminates at the
/// canonical triangulation and returns the flip sequence.
pub fn canonicalize_by_longest_diagonal(t: &Triangulation) -> Result<Vec<Flip>, DescentError> {
    if let Some(bad) = t.edges.iter().find(|e| slope_class(e) == SlopeClass::Negative) {
        return Err(DescentError::NotBimonotone { edge: *bad });
    }
    t.validate()?;
    let mut current = t.clone();
    let mut moves = Vec::new();
    loop {
        let longest = current
            .edges
            .iter()
            .filter(|e| e.squared_length() > 2)
            .max_by_key(|e| (e.squared_length(), std::cmp::Reverse(**e)))
            .copied();
        let Some(diag) = longest else {
            if current != canonical_triangulation(t.cols, t.rows) {
                return Err(DescentError::FixedPointNotCanonical);
            }
            return Ok(moves);
        };
        let opposite = current.opposite_vertices(&diag);
        let [a, b] = diag.endpoints();
        let [p, q] = match opposite[..] {
            [p, q] => [p, q],
            _ => return Err(DescentError::ParallelogramViolated { edge: diag }),
        };
        if (a.x + b.x, a.y + b.y) != (p.x + q.x, p.y + q.y) {
            return Err(DescentError::ParallelogramViolated { edge: diag });
        }
        let inserted = Edge::new(p, q);
        if inserted.squared_length() >= diag.squared_length() {
            return Err(DescentError::LengthNotDecreasing { removed: diag, inserted });
        }
        if slope_class(&inserted) == SlopeClass::Negative {
            return Err(DescentError::InsertedNegative { removed: diag, inserted });
        }
        let flip = Flip { removed: diag, inserted, quad: [a, p, b, q] };
        let mut edges = current.edges.clone();
        edges.remove(&diag);
        edges.insert(inserted);
        current = Triangulation { cols: t.cols, rows: t.rows, edges };
        moves.push(flip);
    }
}
