//! Eigenspace bases with entries in `{-1, 0, 1}` for the integer eigenvalues
//! of `C_n^(d)`, verified in exact integer arithmetic.
//!
//! Two families of vectors of period `p` (with `p ∣ n`) do all the work:
//!
//! * the difference family `u'_k = Σ_m e_{k+mp} - e_{p+mp}`, `k = 1..p-1`;
//! * the alternating family `v'_k = Σ_m (-1)^m e_{k+mp}`, `k = 1..p`, which
//!   needs `2p ∣ n`.
//!
//! Unit vectors are 1-based in these formulas; `e_j` sits at position
//! `(j - 1) mod n`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, CircuitPower};
use crate::integer::{self, CaseTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "all_ones")]
    AllOnes,
    #[serde(rename = "period6_A")]
    Period6A,
    #[serde(rename = "period6_B")]
    Period6B,
    #[serde(rename = "u_prime")]
    UPrime,
    #[serde(rename = "v_prime")]
    VPrime,
}

/// A `{-1, 0, 1}` vector claimed to be an eigenvector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    pub entries: Vec<i8>,
    pub eigenvalue: i64,
    pub family: Family,
    /// Index `k` within the family (1-based, 0 for single-vector families).
    pub k: usize,
}

impl BasisVector {
    pub fn to_i64(&self) -> Vec<i64> {
        self.entries.iter().map(|&x| x as i64).collect()
    }

    pub fn component_sum(&self) -> i64 {
        self.entries.iter().map(|&x| x as i64).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenbasisReport {
    pub n: usize,
    pub d: usize,
    pub eigenvalue: i64,
    pub vectors: Vec<BasisVector>,
    pub rank: usize,
    pub predicted_multiplicity: usize,
    pub case_tag: CaseTag,
    /// Some candidates were dropped to reach a basis.
    pub reduced: bool,
    /// Every vector satisfies `A v = λ v` exactly.
    pub verified: bool,
    pub orthogonal: bool,
}

impl EigenbasisReport {
    /// Vectors in the aligned `±1/0` layout, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vectors {
            let cells: Vec<String> = v.entries.iter().map(|x| format!("{x:>2}")).collect();
            let _ = writeln!(out, "({})", cells.join(", "));
        }
        out
    }
}

/// Difference family `u'_k`, `k = 1..p-1`.
fn difference_family(n: usize, p: usize, eigenvalue: i64, family: Family) -> Vec<BasisVector> {
    (1..p)
        .map(|k| {
            let mut entries = vec![0i8; n];
            for m in 0..n / p {
                entries[(k - 1 + m * p) % n] += 1;
                entries[(p - 1 + m * p) % n] -= 1;
            }
            BasisVector {
                entries,
                eigenvalue,
                family,
                k,
            }
        })
        .collect()
}

/// Alternating family `v'_k`, `k = 1..p`. Empty unless `2p ∣ n`.
fn alternating_family(n: usize, p: usize, eigenvalue: i64, family: Family) -> Vec<BasisVector> {
    if n % (2 * p) != 0 {
        return Vec::new();
    }
    (1..=p)
        .map(|k| {
            let mut entries = vec![0i8; n];
            for m in 0..n / p {
                entries[(k - 1 + m * p) % n] = if m % 2 == 0 { 1 } else { -1 };
            }
            BasisVector {
                entries,
                eigenvalue,
                family,
                k,
            }
        })
        .collect()
}

fn period6(n: usize, eigenvalue: i64) -> Vec<BasisVector> {
    const A: [i8; 6] = [1, 1, 0, -1, -1, 0];
    const B: [i8; 6] = [1, 0, -1, -1, 0, 1];
    [(A, Family::Period6A), (B, Family::Period6B)]
        .into_iter()
        .map(|(pattern, family)| BasisVector {
            entries: (0..n).map(|i| pattern[i % 6]).collect(),
            eigenvalue,
            family,
            k: 0,
        })
        .collect()
}

/// Verifies, reduces to an independent subset and certifies the rank.
fn certify(
    g: &CircuitPower,
    eigenvalue: i64,
    candidates: Vec<BasisVector>,
    predicted: usize,
    case_tag: CaseTag,
) -> Result<EigenbasisReport> {
    let (n, d) = (g.n(), g.d());
    let fail = |reason: String| Error::BasisCertification {
        n,
        d,
        eigenvalue,
        reason,
    };
    let a = g.adjacency();
    for v in &candidates {
        if !verify_exact(&a, v, eigenvalue) {
            return Err(fail(format!("{:?} k = {} is not an eigenvector", v.family, v.k)));
        }
    }
    let rows: Vec<Vec<i64>> = candidates.iter().map(BasisVector::to_i64).collect();
    let keep = independent_subset(&rows);
    let reduced = keep.len() < candidates.len();
    let vectors: Vec<BasisVector> = keep.iter().map(|&i| candidates[i].clone()).collect();
    let rank = exact_rank(&vectors.iter().map(BasisVector::to_i64).collect::<Vec<_>>());
    if rank != predicted || vectors.len() != predicted {
        return Err(fail(format!(
            "{} independent vectors of rank {rank}, expected {predicted}",
            vectors.len()
        )));
    }
    let orthogonal = pairwise_orthogonal(&vectors);
    Ok(EigenbasisReport {
        n,
        d,
        eigenvalue,
        vectors,
        rank,
        predicted_multiplicity: predicted,
        case_tag,
        reduced,
        verified: true,
        orthogonal,
    })
}

fn graph(n: usize, d: usize) -> Result<CircuitPower> {
    let g = CircuitPower::new(n, d)?;
    g.require_non_complete()?;
    Ok(g)
}

/// The all-ones vector for `λ = 2d`.
pub fn basis_all_ones(n: usize, d: usize) -> Result<EigenbasisReport> {
    let g = graph(n, d)?;
    let lambda = 2 * d as i64;
    let v = BasisVector {
        entries: vec![1; n],
        eigenvalue: lambda,
        family: Family::AllOnes,
        k: 0,
    };
    certify(&g, lambda, vec![v], 1, CaseTag::Regularity)
}

/// The two period-6 vectors for `λ ∈ {1, -3}`.
pub fn basis_pm_one(n: usize, d: usize, lambda: i64) -> Result<EigenbasisReport> {
    let g = graph(n, d)?;
    let report = match lambda {
        1 => integer::mult_one(n, d)?,
        -3 => integer::mult_minus_three(n, d)?,
        _ => {
            return Err(Error::NotACandidate {
                n,
                d,
                eigenvalue: lambda,
            })
        }
    };
    if report.multiplicity == 0 {
        return Err(Error::EigenvalueAbsent {
            n,
            d,
            eigenvalue: lambda,
        });
    }
    certify(&g, lambda, period6(n, lambda), 2, report.case_tag)
}

/// Kernel basis following the three nullity cases.
pub fn basis_kernel(n: usize, d: usize) -> Result<EigenbasisReport> {
    let g = graph(n, d)?;
    let report = integer::nullity(n, d)?;
    let (gg, h) = (report.params.g as usize, report.params.h as usize);
    let mut candidates = difference_family(n, gg, 0, Family::UPrime);
    if report.case_tag != CaseTag::NullityOrdAtLeast {
        candidates.extend(alternating_family(n, h, 0, Family::VPrime));
    }
    certify(&g, 0, candidates, report.multiplicity, report.case_tag)
}

/// Basis for `λ = -2`, with the roles of `g` and `h` swapped relative to the
/// kernel. On the cycle (`d = 1`) this is the single alternating vector.
pub fn basis_minus_two(n: usize, d: usize) -> Result<EigenbasisReport> {
    let g = graph(n, d)?;
    let report = if d == 1 {
        integer::mult_minus_two_cycle(n)?
    } else {
        integer::mult_minus_two(n, d)?
    };
    let (gg, h) = (report.params.g as usize, report.params.h as usize);
    let mut candidates = Vec::new();
    if report.case_tag != CaseTag::MinusTwoOrdAtLeast {
        candidates.extend(alternating_family(n, gg, -2, Family::UPrime));
    }
    if d > 1 {
        candidates.extend(difference_family(n, h, -2, Family::VPrime));
    }
    certify(&g, -2, candidates, report.multiplicity, report.case_tag)
}

/// Difference family of period `gcd(2d + 1, n)` for `λ = -1`.
pub fn basis_minus_one(n: usize, d: usize) -> Result<EigenbasisReport> {
    let g = graph(n, d)?;
    let report = integer::mult_minus_one(n, d)?;
    let candidates = difference_family(n, report.params.g as usize, -1, Family::UPrime);
    certify(&g, -1, candidates, report.multiplicity, report.case_tag)
}

/// Basis for any integer eigenvalue; absent eigenvalues are an error.
pub fn basis_for(n: usize, d: usize, lambda: i64) -> Result<EigenbasisReport> {
    let predicted = integer::integer_report(n, d, lambda)?.multiplicity;
    if predicted == 0 {
        return Err(Error::EigenvalueAbsent {
            n,
            d,
            eigenvalue: lambda,
        });
    }
    match lambda {
        -3 | 1 => basis_pm_one(n, d, lambda),
        -2 => basis_minus_two(n, d),
        -1 => basis_minus_one(n, d),
        0 => basis_kernel(n, d),
        _ => basis_all_ones(n, d),
    }
}

/// `A v = λ v` in exact integer arithmetic.
pub fn verify_exact(a: &AdjacencyMatrix, v: &BasisVector, lambda: i64) -> bool {
    if v.entries.len() != a.n() {
        return false;
    }
    let x = v.to_i64();
    match a.mul_vec_i64(&x) {
        Ok(ax) => ax
            .iter()
            .zip(&x)
            .all(|(&l, &r)| lambda.checked_mul(r) == Some(l)),
        Err(_) => false,
    }
}

/// All pairwise dot products vanish.
pub fn orthogonality_check(report: &EigenbasisReport) -> bool {
    pairwise_orthogonal(&report.vectors)
}

fn pairwise_orthogonal(vectors: &[BasisVector]) -> bool {
    vectors.iter().enumerate().all(|(i, u)| {
        vectors[i + 1..].iter().all(|v| {
            u.entries
                .iter()
                .zip(&v.entries)
                .map(|(&a, &b)| a as i64 * b as i64)
                .sum::<i64>()
                == 0
        })
    })
}

/// Rank over the rationals by fraction-free (Bareiss) elimination. Runs in
/// checked `i128` and restarts with big integers on overflow.
pub fn exact_rank(vectors: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_rank(rows) {
        Some(r) => r,
        None => {
            let rows: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            bareiss_rank(rows).expect("big integer elimination cannot overflow")
        }
    }
}

/// Exact integer arithmetic used by the eliminations.
trait Exact: Clone + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `a x - b y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn div_exact(&self, by: &Self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn div_exact(&self, by: &Self) -> Self {
        self / by
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn div_exact(&self, by: &Self) -> Self {
        self / by
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_negative(&self) -> bool {
        self.sign() == num_bigint::Sign::Minus
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn bareiss_rank<T: Exact>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let p = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = T::cross(&p[col], &row[j], &lead, &p[j])?.div_exact(&prev);
            }
            row[col] = T::zero();
        }
        prev = top[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Indices of the earliest linearly independent vectors, in input order.
pub fn independent_subset(vectors: &[Vec<i64>]) -> Vec<usize> {
    let rows: Vec<Vec<i128>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match echelon_subset(&rows) {
        Some(keep) => keep,
        None => {
            let rows: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            echelon_subset(&rows).expect("big integer elimination cannot overflow")
        }
    }
}

/// Incremental echelon form over primitive integer rows.
fn echelon_subset<T: Exact>(vectors: &[Vec<T>]) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    let mut keep = Vec::new();
    for (index, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (pivot, e) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let (a, b) = (e[*pivot].clone(), v[*pivot].clone());
            for j in 0..v.len() {
                v[j] = T::cross(&a, &v[j], &b, &e[j])?;
            }
            normalize(&mut v);
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            basis.push((pivot, v));
            keep.push(index);
        }
    }
    Some(keep)
}

fn normalize<T: Exact>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(Exact::is_negative);
    if lead_negative {
        g = g.neg();
    }
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circuit_power;

    fn pattern(v: &BasisVector, len: usize) -> Vec<i8> {
        v.entries[..len].to_vec()
    }

    #[test]
    fn all_ones() {
        let r = basis_all_ones(7, 2).unwrap();
        assert_eq!(r.vectors[0].entries, vec![1; 7]);
        assert_eq!((r.rank, r.eigenvalue), (1, 4));
        assert_eq!(basis_all_ones(36, 14).unwrap().eigenvalue, 28);
        assert_eq!(basis_all_ones(6, 1).unwrap().eigenvalue, 2);
    }

    #[test]
    fn period_six() {
        let r = basis_pm_one(12, 1, 1).unwrap();
        assert_eq!(r.rank, 2);
        assert!(!r.orthogonal);
        let r = basis_pm_one(12, 4, -3).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(
            basis_pm_one(10, 1, 1),
            Err(Error::EigenvalueAbsent { n: 10, d: 1, eigenvalue: 1 })
        );
    }

    #[test]
    fn kernel_cases() {
        let r = basis_kernel(12, 3).unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.vectors.iter().all(|v| v.family == Family::UPrime));
        let r = basis_kernel(8, 1).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(pattern(&r.vectors[0], 4), vec![1, 0, -1, 0]);
        assert_eq!(pattern(&r.vectors[1], 4), vec![0, 1, 0, -1]);
        let r = basis_kernel(12, 2).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.reduced);
        let r = basis_kernel(9, 2).unwrap();
        assert!(r.vectors.is_empty());
    }

    #[test]
    fn minus_two_c36_14() {
        let r = basis_minus_two(36, 14).unwrap();
        assert_eq!(r.rank, 4);
        let got: Vec<Vec<i8>> = r.vectors.iter().map(|v| pattern(v, 9)).collect();
        assert_eq!(
            got,
            vec![
                vec![1, 0, -1, 0, 1, 0, -1, 0, 1],
                vec![0, 1, 0, -1, 0, 1, 0, -1, 0],
                vec![1, 0, -1, 1, 0, -1, 1, 0, -1],
                vec![0, 1, -1, 0, 1, -1, 0, 1, -1],
            ]
        );
    }

    #[test]
    fn minus_two_other_cases() {
        let r = basis_minus_two(10, 4).unwrap();
        assert_eq!(r.rank, 4);
        assert!(r.vectors.iter().all(|v| v.family == Family::VPrime));
        let r = basis_minus_two(12, 3).unwrap();
        assert_eq!(r.rank, 5);
        assert!(r.reduced);
        let r = basis_minus_two(8, 1).unwrap();
        assert_eq!(r.vectors[0].entries, vec![1, -1, 1, -1, 1, -1, 1, -1]);
    }

    #[test]
    fn minus_one() {
        assert_eq!(basis_minus_one(10, 2).unwrap().rank, 4);
        assert!(basis_minus_one(9, 2).unwrap().vectors.is_empty());
        assert_eq!(basis_minus_one(35, 2).unwrap().rank, 4);
    }

    #[test]
    fn dispatcher() {
        assert_eq!(basis_for(36, 14, -2).unwrap().rank, 4);
        assert_eq!(
            basis_for(9, 2, 0),
            Err(Error::EigenvalueAbsent { n: 9, d: 2, eigenvalue: 0 })
        );
        assert!(matches!(basis_for(9, 2, 5), Err(Error::NotACandidate { .. })));
    }

    #[test]
    fn exact_verification() {
        let a = circuit_power(7, 2).unwrap().adjacency();
        let ones = BasisVector {
            entries: vec![1; 7],
            eigenvalue: 4,
            family: Family::AllOnes,
            k: 0,
        };
        assert!(verify_exact(&a, &ones, 4));
        assert!(!verify_exact(&a, &ones, 3));
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(exact_rank(&[vec![1, 1], vec![2, 2]]), 1);
        assert_eq!(exact_rank(&[]), 0);
        let c12: Vec<Vec<i64>> = difference_family(12, 2, 0, Family::UPrime)
            .into_iter()
            .chain(alternating_family(12, 3, 0, Family::VPrime))
            .map(|v| v.to_i64())
            .collect();
        assert_eq!(c12.len(), 4);
        assert_eq!(exact_rank(&c12), 3);
        assert_eq!(independent_subset(&c12), vec![0, 1, 2]);
    }

    #[test]
    fn big_integer_fallback() {
        // a Hadamard-like 0/±1 matrix whose minors overflow i128 quickly
        let n = 80;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if (i * j + i + j) % 3 == 0 { 1 } else if (i + 2 * j) % 5 == 0 { -1 } else { 0 })
                    .collect()
            })
            .collect();
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(exact_rank(&rows), bareiss_rank(big).unwrap());
        assert_eq!(independent_subset(&rows).len(), exact_rank(&rows));
    }

    #[test]
    fn orthogonality() {
        assert!(basis_all_ones(7, 2).unwrap().orthogonal);
        assert!(!basis_pm_one(12, 1, 1).unwrap().orthogonal);
        let r = basis_minus_one(10, 2).unwrap();
        assert_eq!(orthogonality_check(&r), r.orthogonal);
    }

    #[test]
    fn text_layout() {
        let r = basis_minus_two(8, 1).unwrap();
        assert_eq!(r.to_text(), "( 1, -1,  1, -1,  1, -1,  1, -1)\n");
    }
}
