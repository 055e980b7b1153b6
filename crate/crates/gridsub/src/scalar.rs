//! Scalar traits the generic layers are written against.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

/// Signed integer coordinate scalar: i32, i64, i128, ...
///
/// All geometric predicates are exact over any such type; products of
/// coordinate differences must not overflow, which holds comfortably for the
/// desk-scale configurations this crate targets.
pub trait GridScalar:
    PrimInt + Signed + num_integer::Integer + Hash + Debug + Display
{
}

impl<T> GridScalar for T where
    T: PrimInt + Signed + num_integer::Integer + Hash + Debug + Display
{
}

/// Field-like scalar for dense polynomial arithmetic and interpolation.
///
/// `num_traits::Num` supplies ring operations plus exact division, which is
/// all Lagrange interpolation needs. Instantiated in this crate at
/// [`crate::Rat`] only; everything stays exact.
pub trait PolyScalar: num_traits::Num + Clone {}

impl<T> PolyScalar for T where T: num_traits::Num + Clone {}
