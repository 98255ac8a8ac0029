//! Circulant graphs, circuit distance powers `C_n^(d)` and path distance
//! powers `P_n^(d)`.
//!
//! Vertices are numbered `0..n`. A circulant graph is described by its jump
//! set `N`: vertices `i` and `j` are adjacent iff `(j - i) mod n` lies in `N`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order. Keeps every product of two indices inside `u64`.
pub const MAX_ORDER: usize = 1 << 31;

/// A circulant graph on `n` vertices with a symmetric jump set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantGraph {
    n: usize,
    jumps: Vec<usize>,
}

impl CirculantGraph {
    /// Builds a circulant graph, rejecting jump sets that are not symmetric
    /// or contain `0` or values `>= n`. Duplicates are collapsed.
    pub fn new(n: usize, jumps: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidJumpSet {
                n,
                reason: "order must be positive".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let mut jumps: Vec<usize> = jumps.into_iter().collect();
        jumps.sort_unstable();
        jumps.dedup();
        if let Some(&j) = jumps.iter().find(|&&j| j == 0 || j >= n) {
            return Err(Error::InvalidJumpSet {
                n,
                reason: format!("jump {j} outside 1..{n}"),
            });
        }
        for &j in &jumps {
            if jumps.binary_search(&(n - j)).is_err() {
                return Err(Error::InvalidJumpSet {
                    n,
                    reason: format!("jump {j} present but {} missing", n - j),
                });
            }
        }
        Ok(Self { n, jumps })
    }

    /// The cycle `C_n` (jumps `{1, n-1}`).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall(n));
        }
        Self::new(n, [1, n - 1])
    }

    /// The complete graph `K_n` as a circulant.
    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, 1..n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted jump set.
    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn contains_jump(&self, j: usize) -> bool {
        self.jumps.binary_search(&j).is_ok()
    }

    /// Common vertex degree, `|N|`.
    pub fn degree(&self) -> usize {
        self.jumps.len()
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let n = self.n;
        let mut first_row = vec![0u8; n];
        for &j in &self.jumps {
            first_row[j] = 1;
        }
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            let row = &mut entries[i * n..(i + 1) * n];
            // row i is row 0 rotated right by i
            row[i..].copy_from_slice(&first_row[..n - i]);
            row[..i].copy_from_slice(&first_row[n - i..]);
        }
        AdjacencyMatrix { n, entries }
    }
}

/// The `d`-th distance power of the cycle `C_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircuitPower {
    n: usize,
    d: usize,
}

/// Builds `C_n^(d)`; requires `n >= 3` and `d >= 1`.
pub fn circuit_power(n: usize, d: usize) -> Result<CircuitPower> {
    CircuitPower::new(n, d)
}

impl CircuitPower {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall(n));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        if d < 1 {
            return Err(Error::ExponentTooSmall(d));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `true` iff `d >= (n - 1) / 2`, i.e. every pair of vertices is within
    /// distance `d` and the power is `K_n`.
    pub fn is_complete(&self) -> bool {
        2 * self.d >= self.n - 1
    }

    /// Errors with [`Error::CompleteGraph`] when the power is `K_n`.
    pub fn require_non_complete(&self) -> Result<()> {
        if self.is_complete() {
            Err(Error::CompleteGraph {
                n: self.n,
                d: self.d,
            })
        } else {
            Ok(())
        }
    }

    /// `{1..d} ∪ {n-d..n-1}`, or `{1..n-1}` for complete powers.
    pub fn jump_set(&self) -> Vec<usize> {
        let n = self.n;
        if self.is_complete() {
            return (1..n).collect();
        }
        (1..=self.d).chain(n - self.d..n).collect()
    }

    pub fn to_circulant(&self) -> CirculantGraph {
        CirculantGraph {
            n: self.n,
            jumps: self.jump_set(),
        }
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        self.to_circulant().adjacency()
    }
}

/// The `d`-th distance power of the path `P_n`: `i ~ j` iff `0 < |i - j| <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathPower {
    n: usize,
    d: usize,
}

impl PathPower {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidJumpSet {
                n,
                reason: "path needs at least one vertex".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        if d < 1 {
            return Err(Error::ExponentTooSmall(d));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `true` iff `d >= n - 1`.
    pub fn is_complete(&self) -> bool {
        self.d + 1 >= self.n
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            let lo = i.saturating_sub(self.d);
            let hi = (i + self.d).min(n - 1);
            for j in lo..=hi {
                if j != i {
                    entries[i * n + j] = 1;
                }
            }
        }
        AdjacencyMatrix { n, entries }
    }
}

/// Dense row-major 0/1 adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    /// Wraps row-major `entries`; checks shape, 0/1 values, zero diagonal and
    /// symmetry.
    pub fn from_entries(n: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let m = Self { n, entries };
        for i in 0..n {
            if m.get(i, i) != 0 {
                return Err(Error::InvalidJumpSet {
                    n,
                    reason: format!("loop at vertex {i}"),
                });
            }
            for j in 0..n {
                let a = m.get(i, j);
                if a > 1 {
                    return Err(Error::InvalidJumpSet {
                        n,
                        reason: format!("entry ({i}, {j}) = {a} is not 0/1"),
                    });
                }
                if a != m.get(j, i) {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks_exact(self.n.max(1)).take(self.n)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().map(|&a| a as usize).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact integer product `A v`.
    pub fn mul_vec_i64(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        self.rows()
            .map(|row| {
                row.iter().zip(v).try_fold(0i64, |acc, (&a, &x)| {
                    if a == 0 {
                        Ok(acc)
                    } else {
                        acc.checked_add(x).ok_or(Error::Overflow)
                    }
                })
            })
            .collect()
    }

    /// Row-major `f64` copy.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&a| a as f64).collect()
    }

    /// Matrix obtained by relabelling vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        Self { n, entries }
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> Self {
        let m = keep.len();
        let mut entries = vec![0u8; m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                entries[a * m + b] = self.get(i, j);
            }
        }
        Self { n: m, entries }
    }

    /// All-pairs hop distances by BFS from every vertex; `None` when
    /// unreachable.
    pub fn bfs_distances(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.n;
        let neighbours: Vec<Vec<usize>> = self
            .rows()
            .map(|r| (0..n).filter(|&j| r[j] == 1).collect())
            .collect();
        (0..n)
            .map(|s| {
                let mut dist = vec![None; n];
                dist[s] = Some(0);
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u].unwrap_or(0);
                    for &w in &neighbours[u] {
                        if dist[w].is_none() {
                            dist[w] = Some(du + 1);
                            queue.push_back(w);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// The `d`-th distance power: join every pair at hop distance `1..=d`.
    pub fn distance_power(&self, d: usize) -> Self {
        let n = self.n;
        let dist = self.bfs_distances();
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = dist[i][j] {
                    if k >= 1 && k <= d {
                        entries[i * n + j] = 1;
                    }
                }
            }
        }
        Self { n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circuit_power_jump_sets() {
        let g = circuit_power(6, 1).unwrap();
        assert_eq!(g.jump_set(), vec![1, 5]);
        assert!(!g.is_complete());

        let g = circuit_power(7, 3).unwrap();
        assert_eq!(g.jump_set(), (1..=6).collect::<Vec<_>>());
        assert!(g.is_complete());

        let g = circuit_power(36, 14).unwrap();
        let expected: Vec<usize> = (1..=14).chain(22..=35).collect();
        assert_eq!(g.jump_set(), expected);
        assert!(!g.is_complete());

        assert_eq!(circuit_power(9, 2).unwrap().jump_set(), vec![1, 2, 7, 8]);
        assert_eq!(
            circuit_power(12, 4).unwrap().jump_set(),
            vec![1, 2, 3, 4, 8, 9, 10, 11]
        );
    }

    #[test]
    fn circuit_power_rejects_bad_parameters() {
        assert_eq!(circuit_power(2, 1), Err(Error::OrderTooSmall(2)));
        assert_eq!(circuit_power(5, 0), Err(Error::ExponentTooSmall(0)));
    }

    #[test]
    fn completeness_boundary() {
        // complete iff floor(n/2) <= d
        for n in 3..40 {
            for d in 1..n {
                let g = circuit_power(n, d).unwrap();
                assert_eq!(g.is_complete(), n / 2 <= d, "n={n} d={d}");
            }
        }
        assert!(circuit_power(6, 3).unwrap().require_non_complete().is_err());
        assert!(circuit_power(6, 2).unwrap().require_non_complete().is_ok());
    }

    #[test]
    fn jump_set_validation() {
        assert!(CirculantGraph::new(6, [1, 5]).is_ok());
        assert!(CirculantGraph::new(6, [1]).is_err());
        assert!(CirculantGraph::new(6, [0]).is_err());
        assert!(CirculantGraph::new(6, [6]).is_err());
        assert_eq!(CirculantGraph::new(6, [5, 1, 1]).unwrap().jumps(), &[1, 5]);
    }

    #[test]
    fn cycle_adjacency() {
        let a = circuit_power(4, 1).unwrap().adjacency();
        for i in 0..4 {
            for j in 0..4 {
                let diff = (j + 4 - i) % 4;
                assert_eq!(a.get(i, j) == 1, diff == 1 || diff == 3);
            }
        }
    }

    #[test]
    fn path_adjacency() {
        let a = PathPower::new(4, 2).unwrap().adjacency();
        for i in 0..4usize {
            for j in 0..4usize {
                let diff = i.abs_diff(j);
                assert_eq!(a.get(i, j) == 1, diff == 1 || diff == 2);
            }
        }
        assert!(PathPower::new(4, 3).unwrap().is_complete());
        assert!(!PathPower::new(4, 2).unwrap().is_complete());
    }

    #[test]
    fn c36_14_is_28_regular() {
        let a = circuit_power(36, 14).unwrap().adjacency();
        assert!(a.degrees().iter().all(|&k| k == 28));
    }

    #[test]
    fn circulant_columns_rotate() {
        let a = circuit_power(11, 3).unwrap().adjacency();
        let n = a.n();
        for c in 1..n {
            for i in 0..n {
                assert_eq!(a.get(i, c), a.get((i + n - 1) % n, c - 1));
            }
        }
    }

    #[test]
    fn distance_power_matches_jump_set() {
        for n in 3..=64 {
            let cycle = CirculantGraph::cycle(n).unwrap().adjacency();
            for d in 1..n {
                let g = circuit_power(n, d).unwrap();
                assert_eq!(cycle.distance_power(d), g.adjacency(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn rotation_invariance() {
        for (n, d) in [(9, 2), (12, 4), (36, 14)] {
            let a = circuit_power(n, d).unwrap().adjacency();
            let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            assert_eq!(a.permuted(&shift), a);
        }
    }

    #[test]
    fn from_entries_checks() {
        assert!(AdjacencyMatrix::from_entries(2, vec![0, 1, 1, 0]).is_ok());
        assert_eq!(
            AdjacencyMatrix::from_entries(2, vec![0, 1, 0, 0]),
            Err(Error::NotSymmetric(0, 1))
        );
        assert!(AdjacencyMatrix::from_entries(2, vec![1, 0, 0, 0]).is_err());
        assert!(AdjacencyMatrix::from_entries(2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn exact_product() {
        let a = circuit_power(5, 1).unwrap().adjacency();
        assert_eq!(a.mul_vec_i64(&[1, 2, 3, 4, 5]).unwrap(), vec![7, 4, 6, 8, 5]);
        assert!(a.mul_vec_i64(&[1]).is_err());
    }
}
