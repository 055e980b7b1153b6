//! Dense univariate polynomials over an exact scalar, with Lagrange
//! interpolation. Generic over any `num_traits::Num` field-like scalar;
//! instantiated in this crate at [`crate::Rat`].

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::PolyScalar;

/// Coefficients ascending by degree, trailing zeros trimmed; the zero
/// polynomial stores no coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: PolyScalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == T::one())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }
}

impl<T: PolyScalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: PolyScalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: PolyScalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<T: PolyScalar + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// The unique polynomial of degree < points.len() through the given points.
/// Returns `None` on duplicate abscissae.
pub fn interpolate<T: PolyScalar>(points: &[(T, T)]) -> Option<Poly<T>> {
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[i + 1..] {
            if xi == xj {
                return None;
            }
        }
    }
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Lagrange basis polynomial for node i, scaled by y_i.
        let mut basis = Poly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi.clone() - xj.clone();
            let factor = Poly::from_coeffs(vec![
                T::zero() - xj.clone() / denom.clone(),
                T::one() / denom,
            ]);
            basis = &basis * &factor;
        }
        acc = &acc + &basis;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn rpoly(cs: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn eval_and_ops() {
        let p = rpoly(&[-6, 3, 1]); // x^2 + 3x - 6
        assert_eq!(p.eval(&rat(3)), rat(12));
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_monic());
        let q = rpoly(&[1, 1]);
        assert_eq!((&p * &q).eval(&rat(2)), p.eval(&rat(2)) * q.eval(&rat(2)));
        assert_eq!((&p - &p), Poly::zero());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = rpoly(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(rpoly(&[0, 0]), Poly::zero());
        assert_eq!(Poly::<Rat>::zero().degree(), None);
    }

    #[test]
    fn interpolate_line() {
        let pts = vec![(rat(2), rat(3)), (rat(3), rat(4))];
        let p = interpolate(&pts).unwrap();
        assert_eq!(p, rpoly(&[1, 1]));
    }

    #[test]
    fn interpolate_rejects_duplicate_nodes() {
        let pts = vec![(rat(1), rat(1)), (rat(1), rat(2))];
        assert!(interpolate(&pts).is_none());
    }

    proptest! {
        // Fitting a polynomial's own evaluations recovers it exactly.
        #[test]
        fn interpolation_round_trip(coeffs in proptest::collection::vec(-9i64..=9, 0..6)) {
            let p = rpoly(&coeffs);
            let deg = p.degree().map_or(0, |d| d + 1).max(1);
            let pts: Vec<(Rat, Rat)> =
                (0..deg as i64 + 1).map(|x| (rat(x), p.eval(&rat(x)))).collect();
            let fit = interpolate(&pts).unwrap();
            prop_assert_eq!(fit, p);
        }
    }
}
