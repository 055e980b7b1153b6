//! Large Schröder and central Delannoy numbers, their lattice-path oracles,
//! and the checks tying them to the two-row counts.

use num_bigint::BigUint;
use thiserror::Error;

use crate::geom::Mode;
use crate::two_row::RecursionTable;
use crate::Count;

/// Lazily extended caches for the two sequences; recomputing any prefix
/// yields identical values.
#[derive(Default)]
pub struct SequenceCache {
    schroeder: Vec<Count>,
    delannoy: Vec<Count>,
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// n-th large Schröder number via
    /// S_n = S_{n-1} + sum_{k=0}^{n-1} S_k S_{n-1-k}, S_0 = 1.
    pub fn schroeder(&mut self, n: usize) -> Count {
        if self.schroeder.is_empty() {
            self.schroeder.push(Count::from(1u32));
        }
        while self.schroeder.len() <= n {
            let m = self.schroeder.len();
            let mut s = self.schroeder[m - 1].clone();
            for k in 0..m {
                s += &self.schroeder[k] * &self.schroeder[m - 1 - k];
            }
            self.schroeder.push(s);
        }
        self.schroeder[n].clone()
    }

    /// n-th central Delannoy number via the standard two-index recurrence.
    pub fn delannoy(&mut self, n: usize) -> Count {
        if self.delannoy.len() <= n {
            self.delannoy = delannoy_row(n);
        }
        self.delannoy[n].clone()
    }
}

fn delannoy_row(n: usize) -> Vec<Count> {
    // D(i,j) = D(i-1,j) + D(i,j-1) + D(i-1,j-1); row-by-row, keeping the
    // diagonal values D(k,k).
    let mut diag = Vec::with_capacity(n + 1);
    let mut prev: Vec<Count> = vec![Count::from(1u32); n + 1];
    diag.push(Count::from(1u32));
    for i in 1..=n {
        let mut row: Vec<Count> = Vec::with_capacity(n + 1);
        row.push(Count::from(1u32));
        for j in 1..=n {
            let v = &prev[j] + &row[j - 1] + &prev[j - 1];
            row.push(v);
        }
        diag.push(row[i].clone());
        prev = row;
    }
    diag
}

/// n-th large Schröder number.
pub fn schroeder(n: usize) -> Count {
    SequenceCache::new().schroeder(n)
}

/// Independent oracle: counts N/E/NE lattice paths from (0,0) to (n,n) that
/// never rise above the line y = x.
pub fn schroeder_path_oracle(n: usize) -> Count {
    let mut ways = vec![vec![Count::from(0u32); n + 1]; n + 1];
    ways[0][0] = Count::from(1u32);
    for x in 0..=n {
        for y in 0..=x.min(n) {
            if x == 0 && y == 0 {
                continue;
            }
            let mut v = Count::from(0u32);
            if x > 0 {
                v += &ways[x - 1][y];
            }
            if y > 0 {
                v += &ways[x][y - 1];
            }
            if x > 0 && y > 0 {
                v += &ways[x - 1][y - 1];
            }
            ways[x][y] = v;
        }
    }
    ways[n][n].clone()
}

/// n-th central Delannoy number.
pub fn delannoy_central(n: usize) -> Count {
    SequenceCache::new().delannoy(n)
}

/// One row of the Schröder identity check: the bimonotone count of the
/// 2 x n grid against 2^(n-2) times the (n-1)-th large Schröder number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityRow {
    pub n: u32,
    pub two_row_count: Count,
    pub schroeder_side: Count,
    pub pass: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("Schröder identity fails first at n = {first_failing_n}")]
pub struct SchroederIdentityError {
    pub first_failing_n: u32,
}

/// Checks `B(n,n) = 2^(n-2) S_{n-1}` exactly for n = 2..=n_max.
pub fn verify_schroeder_identity(
    n_max: u32,
) -> Result<Vec<IdentityRow>, SchroederIdentityError> {
    assert!(n_max >= 2);
    let mut table = RecursionTable::new(Mode::Bimonotone);
    let mut cache = SequenceCache::new();
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let lhs = table
            .get(n, n)
            .to_count()
            .expect("two-row counts are integral for n >= 2");
        let rhs = (BigUint::from(1u32) << (n - 2)) * cache.schroeder(n as usize - 1);
        let pass = lhs == rhs;
        if !pass {
            return Err(SchroederIdentityError { first_failing_n: n });
        }
        rows.push(IdentityRow { n, two_row_count: lhs, schroeder_side: rhs, pass });
    }
    Ok(rows)
}

/// One row of the Delannoy comparison. Agreement is evidence for the
/// conjecture; disagreement is a reportable finding, never an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjectureRow {
    pub n: u32,
    pub two_row_count: Count,
    pub delannoy_side: Count,
    pub consistent: bool,
}

/// Compares `A(n,n)` with `2^(n-2) D_{n-1}` for n = 2..=n_max.
pub fn check_delannoy_conjecture(n_max: u32) -> Vec<ConjectureRow> {
    assert!(n_max >= 2);
    let mut table = RecursionTable::new(Mode::All);
    let mut cache = SequenceCache::new();
    (2..=n_max)
        .map(|n| {
            let lhs = table
                .get(n, n)
                .to_count()
                .expect("two-row counts are integral for n >= 2");
            let rhs = (BigUint::from(1u32) << (n - 2)) * cache.delannoy(n as usize - 1);
            let consistent = lhs == rhs;
            ConjectureRow { n, two_row_count: lhs, delannoy_side: rhs, consistent }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn schroeder_small_values() {
        assert_eq!(schroeder(0), n(1));
        assert_eq!(schroeder(1), n(2));
        assert_eq!(schroeder(2), n(6));
        assert_eq!(schroeder(3), n(22));
        assert_eq!(schroeder(5), n(394));
    }

    #[test]
    fn path_oracle_small_values() {
        assert_eq!(schroeder_path_oracle(0), n(1));
        assert_eq!(schroeder_path_oracle(1), n(2));
        assert_eq!(schroeder_path_oracle(3), n(22));
    }

    #[test]
    fn recurrence_matches_path_oracle() {
        let mut cache = SequenceCache::new();
        for k in 0..=15 {
            assert_eq!(cache.schroeder(k), schroeder_path_oracle(k), "S_{k}");
        }
    }

    #[test]
    fn delannoy_small_values() {
        assert_eq!(delannoy_central(0), n(1));
        assert_eq!(delannoy_central(1), n(3));
        assert_eq!(delannoy_central(2), n(13));
        assert_eq!(delannoy_central(3), n(63));
        assert_eq!(delannoy_central(4), n(321));
        assert_eq!(delannoy_central(5), n(1683));
    }

    #[test]
    fn unrestricted_paths_dominate_restricted() {
        let mut cache = SequenceCache::new();
        for k in 0..=15 {
            assert!(cache.delannoy(k) >= cache.schroeder(k), "n = {k}");
        }
    }

    #[test]
    fn schroeder_identity_holds_to_20() {
        let rows = verify_schroeder_identity(20).unwrap();
        assert_eq!(rows.len(), 19);
        assert!(rows.iter().all(|r| r.pass));
        let first: Vec<u64> = rows
            .iter()
            .take(5)
            .map(|r| r.two_row_count.to_string().parse().unwrap())
            .collect();
        assert_eq!(first, vec![2, 12, 88, 720, 6304]);
    }

    #[test]
    fn schroeder_identity_base_case() {
        let rows = verify_schroeder_identity(2).unwrap();
        assert_eq!(rows[0].two_row_count, n(2));
        assert_eq!(rows[0].schroeder_side, n(2));
    }

    #[test]
    fn delannoy_conjecture_consistent_to_20() {
        let rows = check_delannoy_conjecture(20);
        assert_eq!(rows.len(), 19);
        for r in &rows {
            assert!(r.consistent, "n = {}", r.n);
        }
        assert_eq!(rows[1].two_row_count, n(26));
        assert_eq!(rows[4].two_row_count, n(26928));
    }

    #[test]
    fn table_cross_checks() {
        // 2^4 * S_5 = 6304 and 2^3 * D_4 = 2568 tie the sequences to the
        // 2 x 6 and 2 x 5 grid columns.
        assert_eq!(n(16) * schroeder(5), n(6304));
        assert_eq!(n(8) * delannoy_central(4), n(2568));
    }
}
