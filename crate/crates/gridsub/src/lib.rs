//! Exact counting and enumeration of subdivisions and triangulations of
//! planar lattice point configurations.
//!
//! The crate provides four independent routes to the same counts and the
//! machinery to cross-validate them:
//!
//! * [`enumeration`] — pruned backtracking over candidate edge subsets with
//!   conflict bitmasks (counts subdivisions of m×n grids and two-row
//!   configurations, and filters for full-point triangulations);
//! * [`two_row`] — the exact recursions for bimonotone and total subdivision
//!   counts of two-row configurations;
//! * [`closed_form`] — exact rational polynomial closed forms (power-sum
//!   polynomials with Bernoulli numbers, the monic polynomials behind the
//!   two-row counts) plus the asymptotic-equivalence check;
//! * [`sequences`] — large Schröder and central Delannoy numbers with
//!   lattice-path oracles, and the identity/conjecture checkers tying them
//!   to the two-row counts;
//! * [`flips`] — full-point grid triangulations, diagonal flips, flip-BFS
//!   counting, and the longest-diagonal canonicalization descent.
//!
//! All arithmetic is exact: integer coordinates, arbitrary-precision counts,
//! and exact rationals. There is no floating point anywhere in the library.

pub mod closed_form;
pub mod enumeration;
pub mod flips;
pub mod geom;
pub mod poly;
pub mod scalar;
pub mod sequences;
pub mod two_row;

/// Coordinate scalar used by the concrete configuration types.
pub type Coord = i64;

/// A lattice point over the concrete coordinate scalar.
pub type Point = geom::LatticePoint<Coord>;

/// A normalized segment over the concrete coordinate scalar.
pub type Edge = geom::Edge<Coord>;

/// Arbitrary-precision nonnegative count.
pub type Count = num_bigint::BigUint;

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Dense polynomial over exact rationals.
pub type RatPoly = poly::Poly<Rat>;

pub use geom::{
    candidate_edges, interact, local_convexity_ok, slope_class, BoundaryClass, CandidateFilter,
    Interaction, Mode, PointConfiguration, SlopeClass,
};
