//! Exact recursions for the numbers of bimonotone and total subdivisions of
//! two-row configurations.
//!
//! Bimonotone counts follow the three-case recursion
//! `B(m,n) = 2B(m,n-1) + 2B(m-1,n) - 2B(m-1,n-1)` for `m > n`,
//! `B(m,n) = 2B(m,n-1)` for `m = n`, and `0` for `m < n`, with base
//! `B(m,1) = 2^(m-2)`. Total counts follow the uniform recursion with the
//! symmetric bases `A(m,1) = A(1,m) = 2^(m-2)`.
//!
//! The base convention makes the one-point-row values half-integers
//! (`B(1,1) = 1/2`), so the table stores twice the quantity; every output for
//! a configuration with at least three points is a genuine integer.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};

use crate::geom::Mode;

/// An exact half-integer: stores twice the value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt {
    twice: BigInt,
}

impl HalfInt {
    pub fn zero() -> Self {
        HalfInt { twice: BigInt::from(0) }
    }

    pub fn from_twice(twice: BigInt) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        HalfInt { twice: v.into() * 2 }
    }

    /// Twice the stored value.
    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        (&self.twice % 2u8) == BigInt::from(0)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| &self.twice / 2)
    }

    /// The value as a nonnegative integer count; `None` if negative or a
    /// half-integer.
    pub fn to_count(&self) -> Option<BigUint> {
        let int = self.to_integer()?;
        match int.sign() {
            Sign::Minus => None,
            _ => Some(int.magnitude().clone()),
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(i) => write!(f, "{i}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Memoized recursion table for one counting mode.
pub struct RecursionTable {
    mode: Mode,
    memo: HashMap<(u32, u32), HalfInt>,
}

impl RecursionTable {
    pub fn new(mode: Mode) -> Self {
        RecursionTable { mode, memo: HashMap::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The count for the two-row configuration with `m` top and `n` bottom
    /// points. Fills the table bottom-up on demand.
    pub fn get(&mut self, m: u32, n: u32) -> HalfInt {
        assert!(m >= 1 && n >= 1, "two-row sizes must be positive");
        if let Some(v) = self.memo.get(&(m, n)) {
            return v.clone();
        }
        for nn in 1..=n {
            for mm in 1..=m {
                if self.memo.contains_key(&(mm, nn)) {
                    continue;
                }
                let v = self.compute(mm, nn);
                self.memo.insert((mm, nn), v);
            }
        }
        self.memo[&(m, n)].clone()
    }

    /// All memoized entries, for invariant tests.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &HalfInt)> {
        self.memo.iter()
    }

    fn compute(&self, m: u32, n: u32) -> HalfInt {
        // value 2^(m-2), stored doubled as 2^(m-1)
        let pow_base = |m: u32| HalfInt::from_twice(BigInt::from(1) << (m - 1));
        match self.mode {
            Mode::Bimonotone => {
                if n == 1 {
                    return pow_base(m);
                }
                if m < n {
                    return HalfInt::zero();
                }
                let up = &self.memo[&(m, n - 1)].twice;
                if m == n {
                    HalfInt::from_twice(up * 2)
                } else {
                    let left = &self.memo[&(m - 1, n)].twice;
                    let diag = &self.memo[&(m - 1, n - 1)].twice;
                    HalfInt::from_twice((up + left - diag) * 2)
                }
            }
            Mode::All => {
                if n == 1 {
                    return pow_base(m);
                }
                if m == 1 {
                    return pow_base(n);
                }
                let up = &self.memo[&(m, n - 1)].twice;
                let left = &self.memo[&(m - 1, n)].twice;
                let diag = &self.memo[&(m - 1, n - 1)].twice;
                HalfInt::from_twice((up + left - diag) * 2)
            }
        }
    }
}

/// `B(m,n)`: bimonotone subdivisions of the two-row configuration.
pub fn count_two_row_bimonotone(m: u32, n: u32) -> HalfInt {
    RecursionTable::new(Mode::Bimonotone).get(m, n)
}

/// `A(m,n)`: all subdivisions of the two-row configuration.
pub fn count_two_row_all(m: u32, n: u32) -> HalfInt {
    RecursionTable::new(Mode::All).get(m, n)
}

pub fn two_row_count(mode: Mode, m: u32, n: u32) -> HalfInt {
    RecursionTable::new(mode).get(m, n)
}

/// Integer count for configurations with at least three points.
pub fn two_row_count_integer(mode: Mode, m: u32, n: u32) -> BigUint {
    assert!(m + n >= 3, "integer counts require at least three points");
    two_row_count(mode, m, n)
        .to_count()
        .expect("two-row counts with >= 3 points are nonnegative integers")
}
