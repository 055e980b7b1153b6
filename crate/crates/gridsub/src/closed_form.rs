//! Exact rational closed forms for the two-row counts: power-sum polynomials
//! via Faulhaber's formula with Bernoulli numbers, the monic polynomial
//! families P_n (derived from the recursion) and Q_n (derived by exact
//! interpolation with over-determined verification), and the asymptotic
//! equivalence check.
//!
//! The normalizations are `B(m,n) = 2^(m-2) P_n(m) / (n-1)!` and
//! `A(m,n) = 2^(m-2) Q_n(m) / (n-1)!`, both monic of degree n-1.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geom::Mode;
use crate::poly::{interpolate, Poly};
use crate::two_row::RecursionTable;
use crate::{Rat, RatPoly};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ClosedFormError {
    #[error("interpolated Q_{n} failed verification: {detail}")]
    QVerificationFailed { n: u32, detail: String },
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as u64).map(BigInt::from).fold(BigInt::one(), |a, b| a * b)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// 2^e as an exact rational, for any integer exponent.
pub fn pow2(e: i64) -> Rat {
    if e >= 0 {
        Rat::from_integer(BigInt::one() << e as usize)
    } else {
        Rat::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Bernoulli numbers in the convention with B_1 = +1/2, which makes
/// Faulhaber's formula sum k^p over 1..=m inclusive. B_0 = 1 and the odd
/// values from B_3 on vanish.
pub struct BernoulliCache {
    values: Vec<Rat>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache { values: vec![Rat::one()] }
    }

    pub fn get(&mut self, k: usize) -> Rat {
        while self.values.len() <= k {
            let m = self.values.len();
            // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j  (B_1 = -1/2 variant),
            // then flip the sign at m = 1 for the +1/2 convention.
            let mut acc = Rat::zero();
            for (j, bj) in self.values.iter().enumerate() {
                let mut term = Rat::from_integer(binomial(m as u32 + 1, j as u32)) * bj;
                if j == 1 {
                    // stored value uses the +1/2 convention; the recurrence
                    // wants -1/2
                    term = -term;
                }
                acc += term;
            }
            let mut b = -acc / rat_int(m as i64 + 1);
            if m == 1 {
                b = -b;
            }
            self.values.push(b);
        }
        self.values[k].clone()
    }
}

/// The polynomial S(m, p) with S(m, p) = sum_{k=1}^{m} k^p for every positive
/// integer m; degree p+1 with leading coefficient 1/(p+1).
pub fn power_sum_poly(p: usize) -> RatPoly {
    let mut bern = BernoulliCache::new();
    let mut coeffs = vec![Rat::zero(); p + 2];
    let inv = Rat::one() / rat_int(p as i64 + 1);
    for j in 0..=p {
        let c = Rat::from_integer(binomial(p as u32 + 1, j as u32)) * bern.get(j) * &inv;
        coeffs[p + 1 - j] = c;
    }
    Poly::from_coeffs(coeffs)
}

/// Sum over i of q(i) for i = 1..=m, as a polynomial in m.
fn prefix_sum_poly(q: &RatPoly) -> RatPoly {
    let mut acc = Poly::zero();
    for (j, c) in q.coeffs().iter().enumerate() {
        acc = &acc + &power_sum_poly(j).scale(c);
    }
    acc
}

/// P_n, the monic degree-(n-1) polynomial with
/// `B(m,n) = 2^(m-2) P_n(m) / (n-1)!`, built from the recursion
/// `P_n(m) = (n-1) (P_{n-1}(m) + sum_{i=n}^{m} P_{n-1}(i))`.
pub fn derive_p(n: u32) -> RatPoly {
    assert!(n >= 1);
    let mut p = Poly::one();
    for k in 2..=n {
        let phi = prefix_sum_poly(&p);
        let below = phi.eval(&rat_int(k as i64 - 1));
        let tail = &phi - &Poly::constant(below);
        p = (&p + &tail).scale(&rat_int(k as i64 - 1));
    }
    p
}

/// Q_n, the monic degree-(n-1) polynomial with
/// `A(m,n) = 2^(m-2) Q_n(m) / (n-1)!`, obtained by exact interpolation at
/// m = n..2n-1 and verified at the n further points m = 2n..3n-1.
pub fn derive_q(n: u32) -> Result<RatPoly, ClosedFormError> {
    assert!(n >= 1);
    let mut table = RecursionTable::new(Mode::All);
    let fact = Rat::from_integer(factorial(n - 1));
    let value = |table: &mut RecursionTable, m: u32| -> Rat {
        let a = table.get(m, n);
        Rat::new(a.twice().clone(), BigInt::from(2)) * &fact * pow2(2 - m as i64)
    };
    let nodes: Vec<(Rat, Rat)> = (n..2 * n)
        .map(|m| (rat_int(m as i64), value(&mut table, m)))
        .collect();
    let fit = interpolate(&nodes).expect("distinct interpolation nodes");
    if fit.degree() != Some(n as usize - 1) || !fit.is_monic() {
        return Err(ClosedFormError::QVerificationFailed {
            n,
            detail: format!(
                "fit has degree {:?} and leading coefficient {:?}",
                fit.degree(),
                fit.leading()
            ),
        });
    }
    for m in 2 * n..3 * n {
        let expected = value(&mut table, m);
        let got = fit.eval(&rat_int(m as i64));
        if got != expected {
            return Err(ClosedFormError::QVerificationFailed {
                n,
                detail: format!("mismatch at m={m}: fit gives {got}, recursion gives {expected}"),
            });
        }
    }
    Ok(fit)
}

/// Exact closed-form value of B(m,n) via P_n.
pub fn bimonotone_closed_form(m: u32, n: u32) -> Rat {
    derive_p(n).eval(&rat_int(m as i64)) * pow2(m as i64 - 2)
        / Rat::from_integer(factorial(n - 1))
}

/// Exact closed-form value of A(m,n) via Q_n.
pub fn all_closed_form(m: u32, n: u32) -> Result<Rat, ClosedFormError> {
    Ok(derive_q(n)?.eval(&rat_int(m as i64)) * pow2(m as i64 - 2)
        / Rat::from_integer(factorial(n - 1)))
}

/// The assertable form of the asymptotic-equivalence corollary: P_n and Q_n
/// share degree n-1 and leading coefficient 1, plus the exact count ratio at
/// a chosen m.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub n: u32,
    pub m_max: u32,
    pub deg_p: usize,
    pub deg_q: usize,
    pub lead_p: Rat,
    pub lead_q: Rat,
    /// Both degrees equal n-1 with leading coefficient 1.
    pub structure_ok: bool,
    /// Exact value of B(m_max,n) / A(m_max,n).
    pub ratio: Rat,
    /// The same ratio to 12 significant digits.
    pub ratio_decimal: String,
}

pub fn asymptotic_check(n: u32, m_max: u32) -> Result<AsymptoticReport, ClosedFormError> {
    assert!(n >= 1 && m_max >= n);
    let p = derive_p(n);
    let q = derive_q(n)?;
    let deg_p = p.degree().unwrap_or(0);
    let deg_q = q.degree().unwrap_or(0);
    let lead_p = p.leading().cloned().unwrap_or_else(Rat::zero);
    let lead_q = q.leading().cloned().unwrap_or_else(Rat::zero);
    let structure_ok = deg_p == (n as usize - 1)
        && deg_q == (n as usize - 1)
        && lead_p.is_one()
        && lead_q.is_one();
    let x = rat_int(m_max as i64);
    // The 2^(m-2)/(n-1)! prefactors cancel in the ratio.
    let ratio = p.eval(&x) / q.eval(&x);
    let ratio_decimal = decimal_string(&ratio, 12);
    Ok(AsymptoticReport {
        n,
        m_max,
        deg_p,
        deg_q,
        lead_p,
        lead_q,
        structure_ok,
        ratio,
        ratio_decimal,
    })
}

/// The exact nonnegative integer value of a rational, if it is one.
pub fn rat_to_count(r: &Rat) -> Option<crate::Count> {
    (r.is_integer() && !r.is_negative()).then(|| r.to_integer().magnitude().clone())
}

fn pow10(e: usize) -> BigUint {
    BigUint::from(10u32).pow(e as u32)
}

/// Renders an exact rational to `sig` significant digits (round half up).
pub fn decimal_string(r: &Rat, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();

    // E with 10^E <= |r| < 10^(E+1).
    let mut e: i64 = 0;
    if num >= den {
        while num >= &den * pow10((e + 1) as usize) {
            e += 1;
        }
    } else {
        let mut scaled = num.clone();
        loop {
            scaled *= 10u32;
            e -= 1;
            if scaled >= den {
                break;
            }
        }
    }

    let shift = sig as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num * pow10(shift as usize), den)
    } else {
        (num, den * pow10((-shift) as usize))
    };
    let mut rounded = (scaled_num * 2u32 + &scaled_den) / (scaled_den * 2u32);
    if rounded >= pow10(sig) {
        rounded /= 10u32;
        e += 1;
    }
    let s = rounded.to_string();
    debug_assert_eq!(s.len(), sig);

    let body = if e >= sig as i64 {
        format!("{s}{}", "0".repeat((e + 1 - sig as i64) as usize))
    } else if e >= 0 {
        let (int, frac) = s.split_at((e + 1) as usize);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_row::two_row_count;

    fn int_poly(cs: &[i64]) -> RatPoly {
        Poly::from_coeffs(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn bernoulli_values() {
        let mut b = BernoulliCache::new();
        assert_eq!(b.get(0), Rat::one());
        assert_eq!(b.get(1), Rat::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(b.get(2), Rat::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(b.get(4), Rat::new(BigInt::from(-1), BigInt::from(30)));
        assert_eq!(b.get(6), Rat::new(BigInt::from(1), BigInt::from(42)));
        for k in (3..=11).step_by(2) {
            assert!(b.get(k).is_zero(), "B_{k}");
        }
    }

    #[test]
    fn power_sum_small_cases() {
        assert_eq!(power_sum_poly(0), int_poly(&[0, 1]));
        assert_eq!(
            power_sum_poly(1),
            Poly::from_coeffs(vec![
                Rat::zero(),
                Rat::new(BigInt::from(1), BigInt::from(2)),
                Rat::new(BigInt::from(1), BigInt::from(2)),
            ])
        );
        // p = 2, checked against direct summation at m = 1..6.
        let s2 = power_sum_poly(2);
        for m in 1i64..=6 {
            let direct: i64 = (1..=m).map(|k| k * k).sum();
            assert_eq!(s2.eval(&rat_int(m)), rat_int(direct));
        }
    }

    // Direct summation is the source of truth for the Bernoulli convention.
    #[test]
    fn power_sums_match_direct_summation() {
        for p in 0..=10usize {
            let poly = power_sum_poly(p);
            assert_eq!(poly.degree(), Some(p + 1));
            assert_eq!(
                poly.leading().unwrap(),
                &(Rat::one() / rat_int(p as i64 + 1))
            );
            let mut direct = Rat::zero();
            for m in 1i64..=50 {
                direct += rat_int(m).pow(p as i32);
                assert_eq!(poly.eval(&rat_int(m)), direct, "S({m},{p})");
            }
        }
    }

    #[test]
    fn p_family_published_rows() {
        assert_eq!(derive_p(1), int_poly(&[1]));
        assert_eq!(derive_p(2), int_poly(&[0, 1]));
        assert_eq!(derive_p(3), int_poly(&[-6, 3, 1]));
        assert_eq!(derive_p(4), int_poly(&[-60, -4, 9, 1]));
        assert_eq!(derive_p(5), int_poly(&[-600, -258, 47, 18, 1]));
    }

    #[test]
    fn q_family_published_rows() {
        assert_eq!(derive_q(1).unwrap(), int_poly(&[1]));
        assert_eq!(derive_q(2).unwrap(), int_poly(&[1, 1]));
        assert_eq!(derive_q(3).unwrap(), int_poly(&[2, 5, 1]));
        assert_eq!(derive_q(4).unwrap(), int_poly(&[6, 29, 12, 1]));
        assert_eq!(derive_q(5).unwrap(), int_poly(&[24, 206, 131, 22, 1]));
    }

    #[test]
    fn closed_forms_match_recursion() {
        for n in 1..=8u32 {
            let p = derive_p(n);
            let q = derive_q(n).unwrap();
            assert!(p.is_monic() && p.degree() == Some(n as usize - 1), "P_{n}");
            assert!(q.is_monic() && q.degree() == Some(n as usize - 1), "Q_{n}");
            let fact = Rat::from_integer(factorial(n - 1));
            for m in n..=16 {
                let expect_b = Rat::new(
                    two_row_count(Mode::Bimonotone, m, n).twice().clone(),
                    BigInt::from(2),
                );
                let got_b = p.eval(&rat_int(m as i64)) * pow2(m as i64 - 2) / &fact;
                assert_eq!(got_b, expect_b, "B({m},{n})");
                let expect_a = Rat::new(
                    two_row_count(Mode::All, m, n).twice().clone(),
                    BigInt::from(2),
                );
                let got_a = q.eval(&rat_int(m as i64)) * pow2(m as i64 - 2) / &fact;
                assert_eq!(got_a, expect_a, "A({m},{n})");
            }
        }
    }

    #[test]
    fn p_values_are_integers_at_integer_arguments() {
        for n in 1..=8u32 {
            let p = derive_p(n);
            for m in n..=20 {
                let v = p.eval(&rat_int(m as i64));
                assert!(v.is_integer(), "P_{n}({m}) = {v}");
            }
        }
    }

    #[test]
    fn fitting_p_evaluations_recovers_p() {
        for n in 1..=6u32 {
            let p = derive_p(n);
            let pts: Vec<(Rat, Rat)> = (0..n as i64)
                .map(|m| (rat_int(m), p.eval(&rat_int(m))))
                .collect();
            assert_eq!(interpolate(&pts).unwrap(), p);
        }
    }

    #[test]
    fn asymptotic_structure() {
        let r = asymptotic_check(3, 10).unwrap();
        assert_eq!((r.deg_p, r.deg_q), (2, 2));
        assert!(r.lead_p.is_one() && r.lead_q.is_one());
        assert!(r.structure_ok);

        let r1 = asymptotic_check(1, 1).unwrap();
        assert_eq!(r1.ratio, Rat::one());
        assert_eq!(r1.ratio_decimal, "1.00000000000");

        let r5 = asymptotic_check(5, 200).unwrap();
        assert!(r5.structure_ok);
        let lo = Rat::new(BigInt::from(9), BigInt::from(10));
        assert!(r5.ratio > lo && r5.ratio <= Rat::one(), "ratio {}", r5.ratio);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat_int(1), 12), "1.00000000000");
        assert_eq!(
            decimal_string(&Rat::new(BigInt::from(1), BigInt::from(3)), 12),
            "0.333333333333"
        );
        assert_eq!(decimal_string(&rat_int(394), 3), "394");
        assert_eq!(decimal_string(&rat_int(-2), 3), "-2.00");
        assert_eq!(
            decimal_string(&Rat::new(BigInt::from(1), BigInt::from(64)), 4),
            "0.01563"
        );
        assert_eq!(decimal_string(&Rat::zero(), 5), "0");
        assert_eq!(decimal_string(&rat_int(123456), 3), "123000");
    }
}
