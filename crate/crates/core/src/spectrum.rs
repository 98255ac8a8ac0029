//! Closed-form eigenvalues of circulant graphs and circuit powers.
//!
//! For a circulant graph with jump set `N` the eigenvalue belonging to the
//! `r`-th Fourier vector is the cosine sum
//!
//! ```text
//! λ_r = Σ_{j ∈ N} cos(2π j r / n)
//! ```
//!
//! and for `C_n^(d)` the sum collapses to a Dirichlet kernel:
//! `λ_0 = 2d`, `λ_r = sin((2d+1) r π / n) / sin(r π / n) - 1`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CirculantGraph, CircuitPower};
use crate::tolerances;

/// One eigenvalue, indexed by its Fourier mode `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub r: usize,
    pub value: f64,
}

/// Equal eigenvalues merged into one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    /// Fourier indices (or input positions) in the group, ascending.
    pub indices: Vec<usize>,
}

/// Groups in strictly increasing order of value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupedSpectrum {
    pub groups: Vec<EigenGroup>,
    /// Number of adjacent groups closer than `10 tol`.
    pub near_gaps: usize,
}

impl GroupedSpectrum {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }

    /// Multiplicity of the group within `tol` of `value`, or 0.
    pub fn multiplicity_of(&self, value: f64, tol: f64) -> usize {
        self.groups
            .iter()
            .filter(|g| (g.value - value).abs() <= tol)
            .map(|g| g.multiplicity)
            .sum()
    }

    /// `(value, multiplicity)` pairs.
    pub fn pairs(&self) -> Vec<(f64, usize)> {
        self.groups
            .iter()
            .map(|g| (g.value, g.multiplicity))
            .collect()
    }
}

/// Cosine-sum eigenvalues of an arbitrary circulant graph, in index order.
///
/// Each term uses the reduced angle `min(jr mod n, n - jr mod n)`, so that
/// `λ_r` and `λ_{n-r}` are evaluated from identical terms and agree exactly.
pub fn circulant_spectrum(g: &CirculantGraph) -> Vec<SpectrumEntry> {
    let n = g.n();
    (0..n)
        .map(|r| SpectrumEntry {
            r,
            value: cosine_sum(n, g.jumps(), r),
        })
        .collect()
}

fn cosine_sum(n: usize, jumps: &[usize], r: usize) -> f64 {
    let (n64, r64) = (n as u64, r as u64);
    jumps
        .iter()
        .map(|&j| {
            let k = j as u64 * r64 % n64;
            let k = k.min(n64 - k);
            (TAU * k as f64 / n as f64).cos()
        })
        .sum()
}

/// Closed-form eigenvalues of `C_n^(d)` in index order.
///
/// Complete powers are `K_n`: `λ_0 = n - 1` and `-1` for every other index.
pub fn circuit_power_spectrum(g: &CircuitPower) -> Vec<SpectrumEntry> {
    let (n, d) = (g.n(), g.d());
    if g.is_complete() {
        return (0..n)
            .map(|r| SpectrumEntry {
                r,
                value: if r == 0 { (n - 1) as f64 } else { -1.0 },
            })
            .collect();
    }
    let jumps = g.jump_set();
    (0..n)
        .map(|r| {
            let value = if r == 0 {
                (2 * d) as f64
            } else {
                dirichlet_eigenvalue(n, d, r.min(n - r), &jumps)
            };
            SpectrumEntry { r, value }
        })
        .collect()
}

fn dirichlet_eigenvalue(n: usize, d: usize, r: usize, jumps: &[usize]) -> f64 {
    let denom = (PI * r as f64 / n as f64).sin();
    if denom < tolerances::DIRICHLET_SMALL_DENOMINATOR {
        return cosine_sum(n, jumps, r);
    }
    // reduce (2d+1) r modulo 2n before scaling by π / n
    let k = (2 * d as u64 + 1) * r as u64 % (2 * n as u64);
    (PI * k as f64 / n as f64).sin() / denom - 1.0
}

/// Merges a circulant spectrum into groups.
///
/// Indices `r` and `n - r` are always placed in the same group. Remaining
/// values are merged transitively whenever neighbours differ by at most `tol`.
pub fn group_spectrum(entries: &[SpectrumEntry], tol: f64) -> Result<GroupedSpectrum> {
    check_tol(tol)?;
    let n = entries.len();
    let mut value = vec![f64::NAN; n];
    for e in entries {
        if e.r >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: e.r + 1,
            });
        }
        value[e.r] = e.value;
    }
    let mut classes: Vec<(f64, Vec<usize>)> = Vec::new();
    for r in 0..n {
        let mate = (n - r) % n;
        if mate < r {
            continue;
        }
        if mate == r {
            classes.push((value[r], vec![r]));
        } else {
            classes.push((0.5 * (value[r] + value[mate]), vec![r, mate]));
        }
    }
    Ok(merge(classes, tol))
}

/// Groups a plain list of values, e.g. a numeric spectrum. Indices refer to
/// positions in `values`.
pub fn group_values(values: &[f64], tol: f64) -> Result<GroupedSpectrum> {
    check_tol(tol)?;
    let classes = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, vec![i]))
        .collect();
    Ok(merge(classes, tol))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

fn merge(mut classes: Vec<(f64, Vec<usize>)>, tol: f64) -> GroupedSpectrum {
    classes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut groups: Vec<(Vec<f64>, Vec<usize>)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (v, idx) in classes {
        match groups.last_mut() {
            Some((vals, members)) if v - last <= tol => {
                vals.extend(std::iter::repeat(v).take(idx.len()));
                members.extend(idx);
            }
            _ => groups.push((vec![v; idx.len()], idx)),
        }
        last = v;
    }
    let groups: Vec<EigenGroup> = groups
        .into_iter()
        .map(|(vals, mut indices)| {
            indices.sort_unstable();
            EigenGroup {
                value: vals.iter().sum::<f64>() / vals.len() as f64,
                multiplicity: indices.len(),
                indices,
            }
        })
        .collect();
    let near_gaps = groups
        .windows(2)
        .filter(|w| w[1].value - w[0].value < 10.0 * tol)
        .count();
    if near_gaps > 0 {
        log::warn!("{near_gaps} pair(s) of eigenvalue groups are closer than {:e}", 10.0 * tol);
    }
    GroupedSpectrum { groups, near_gaps }
}

/// The Dirichlet kernel `f_d(φ) = sin((2d+1)φ/2) / sin(φ/2)` with its zero
/// spacing `q = 2π/(2d+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletParams {
    pub d: usize,
    pub q: f64,
}

impl DirichletParams {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ExponentTooSmall(d));
        }
        Ok(Self {
            d,
            q: TAU / (2 * d + 1) as f64,
        })
    }

    /// `f_d(φ)`, with `f_d(0) = f_d(2π) = 2d + 1`.
    ///
    /// Near the endpoints the ratio is replaced by `1 + 2 Σ_{k=1}^{d} cos(kφ)`.
    pub fn f(&self, phi: f64) -> f64 {
        let peak = (2 * self.d + 1) as f64;
        if phi == 0.0 || phi == TAU {
            return peak;
        }
        let denom = (phi / 2.0).sin();
        if denom.abs() < tolerances::DIRICHLET_SMALL_DENOMINATOR {
            return 1.0 + 2.0 * (1..=self.d).map(|k| (k as f64 * phi).cos()).sum::<f64>();
        }
        (peak * phi / 2.0).sin() / denom
    }

    /// The upper bound `u(φ) = 1 / sin(φ/2)` on `|f_d|`.
    pub fn u(&self, phi: f64) -> f64 {
        1.0 / (phi / 2.0).sin()
    }

    /// Zeros `kq`, `k = 1..=2d`.
    pub fn zeros(&self) -> Vec<f64> {
        (1..=2 * self.d).map(|k| k as f64 * self.q).collect()
    }
}

/// Lower edges of the multiplicity-two window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultTwoBound {
    /// `u(2q) - 1 = 1 / sin(2π/(2d+1)) - 1`.
    pub sharp: f64,
    /// `d/π - 1`.
    pub relaxed: f64,
}

pub fn mult_two_bound(d: usize) -> Result<MultTwoBound> {
    let p = DirichletParams::new(d)?;
    Ok(MultTwoBound {
        sharp: p.u(2.0 * p.q) - 1.0,
        relaxed: d as f64 / PI - 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circuit_power;

    fn values(e: &[SpectrumEntry]) -> Vec<f64> {
        e.iter().map(|e| e.value).collect()
    }

    #[test]
    fn c6_cosine_sum() {
        let g = CirculantGraph::cycle(6).unwrap();
        let v = values(&circulant_spectrum(&g));
        for (a, b) in v.iter().zip([2.0, 1.0, -1.0, -2.0, -1.0, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn k4_as_circulant() {
        let g = CirculantGraph::complete(4).unwrap();
        let v = values(&circulant_spectrum(&g));
        for (a, b) in v.iter().zip([3.0, -1.0, -1.0, -1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn c5_golden_ratio() {
        let g = CirculantGraph::cycle(5).unwrap();
        let v = values(&circulant_spectrum(&g));
        assert!((v[1] - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_sum_is_exactly_symmetric() {
        let g = circuit_power(97, 13).unwrap().to_circulant();
        let v = values(&circulant_spectrum(&g));
        for r in 1..97 {
            assert_eq!(v[r], v[97 - r]);
        }
    }

    #[test]
    fn closed_form_matches_cosine_sum() {
        for n in 3..=60 {
            for d in 1..=n / 2 {
                let g = circuit_power(n, d).unwrap();
                if g.is_complete() {
                    continue;
                }
                let a = values(&circuit_power_spectrum(&g));
                let b = values(&circulant_spectrum(&g.to_circulant()));
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-9, "C_{n}^({d})");
                }
                assert_eq!(a[0], (2 * d) as f64);
                assert!(a[1..].iter().all(|&x| x < (2 * d) as f64));
            }
        }
    }

    #[test]
    fn complete_powers_route_to_kn() {
        let v = values(&circuit_power_spectrum(&circuit_power(7, 3).unwrap()));
        assert_eq!(v, vec![6.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn c36_14_has_minus_two_four_times() {
        let s = circuit_power_spectrum(&circuit_power(36, 14).unwrap());
        let grouped = group_spectrum(&s, 1e-9).unwrap();
        assert_eq!(grouped.multiplicity_of(-2.0, 1e-9), 4);
    }

    #[test]
    fn grouping_c6() {
        let g = CirculantGraph::cycle(6).unwrap();
        let grouped = group_spectrum(&circulant_spectrum(&g), 1e-9).unwrap();
        let pairs: Vec<(i64, usize)> = grouped
            .pairs()
            .iter()
            .map(|&(v, m)| (v.round() as i64, m))
            .collect();
        assert_eq!(pairs, vec![(-2, 1), (-1, 2), (1, 2), (2, 1)]);
        assert_eq!(grouped.groups[1].indices, vec![2, 4]);
        assert_eq!(grouped.total(), 6);
        assert_eq!(grouped.near_gaps, 0);
    }

    #[test]
    fn grouping_single_entry() {
        let grouped = group_spectrum(&[SpectrumEntry { r: 0, value: 3.5 }], 1e-9).unwrap();
        assert_eq!(grouped.len(), 1);
        assert_eq!(grouped.groups[0].multiplicity, 1);
    }

    #[test]
    fn c12_4_minus_three_twice() {
        let s = circuit_power_spectrum(&circuit_power(12, 4).unwrap());
        let grouped = group_spectrum(&s, 1e-9).unwrap();
        assert_eq!(grouped.multiplicity_of(-3.0, 1e-9), 2);
    }

    #[test]
    fn grouping_pairs_are_structural() {
        // a deliberately asymmetric perturbation must not split r from n - r
        let mut s = circulant_spectrum(&CirculantGraph::cycle(8).unwrap());
        s[1].value += 1e-6;
        let grouped = group_spectrum(&s, 1e-9).unwrap();
        assert!(grouped.groups.iter().any(|g| g.indices == vec![1, 7]));
    }

    #[test]
    fn grouping_rejects_bad_tolerance() {
        assert!(group_spectrum(&[], 0.0).is_err());
        assert!(group_values(&[1.0], f64::NAN).is_err());
    }

    #[test]
    fn near_gap_is_counted() {
        let grouped = group_values(&[0.0, 5e-9], 1e-9).unwrap();
        assert_eq!(grouped.len(), 2);
        assert_eq!(grouped.near_gaps, 1);
    }

    #[test]
    fn dirichlet_endpoints_and_zeros() {
        for d in 1..=20 {
            let p = DirichletParams::new(d).unwrap();
            assert_eq!(p.f(0.0), (2 * d + 1) as f64);
            assert_eq!(p.f(TAU), (2 * d + 1) as f64);
            assert!((p.f(PI).abs() - 1.0).abs() < 1e-12);
            for z in p.zeros() {
                assert!(p.f(z).abs() < 1e-12);
            }
            assert!((p.f(1e-9) - (2 * d + 1) as f64).abs() < 1e-6);
        }
        assert!(DirichletParams::new(0).is_err());
    }

    #[test]
    fn dirichlet_reproduces_eigenvalues() {
        let (n, d) = (23, 5);
        let p = DirichletParams::new(d).unwrap();
        let s = circuit_power_spectrum(&circuit_power(n, d).unwrap());
        for e in &s[1..] {
            let phi = TAU * e.r as f64 / n as f64;
            assert!((p.f(phi) - 1.0 - e.value).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds_for_d1() {
        let b = mult_two_bound(1).unwrap();
        assert!((b.sharp - 0.154_700_538_379_251_5).abs() < 1e-12);
        assert!((b.relaxed - (1.0 / PI - 1.0)).abs() < 1e-15);
        for d in 1..=100 {
            let b = mult_two_bound(d).unwrap();
            assert!(b.sharp > b.relaxed);
        }
    }
}
