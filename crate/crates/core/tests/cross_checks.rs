//! Closed forms and theorem formulas against the numerical oracles.

use circpow::eigenbasis;
use circpow::graph::{circuit_power, CirculantGraph, PathPower};
use circpow::integer::{self, mult_minus_one, mult_minus_three, mult_minus_two, mult_one, nullity};
use circpow::oracle::{self, numeric_multiplicity};
use circpow::spectrum::{circuit_power_spectrum, circulant_spectrum};

const TOL: f64 = 1e-7;

fn jacobi_values(n: usize, d: usize) -> Vec<f64> {
    oracle::symmetric_eigenvalues(&circuit_power(n, d).unwrap().adjacency()).unwrap()
}

fn non_complete(max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (3..=max_n).flat_map(|n| (1..=n / 2).filter(move |&d| 2 * d < n - 1).map(move |d| (n, d)))
}

#[test]
fn dirichlet_form_matches_cosine_sum_up_to_300() {
    for (n, d) in non_complete(300) {
        let g = circuit_power(n, d).unwrap();
        let a = circuit_power_spectrum(&g);
        let b = circulant_spectrum(&g.to_circulant());
        for (x, y) in a.iter().zip(&b) {
            assert!((x.value - y.value).abs() <= 1e-9, "C_{n}^({d}) r = {}", x.r);
        }
    }
}

#[test]
fn dft_oracle_matches_cosine_sum() {
    for (n, d) in non_complete(80) {
        let g = circuit_power(n, d).unwrap();
        let a = g.adjacency();
        let column: Vec<u8> = (0..n).map(|i| a.get(i, 0)).collect();
        let dft = oracle::dft_spectrum(&column);
        for (z, e) in dft.iter().zip(circuit_power_spectrum(&g)) {
            assert!(z.im.abs() < 1e-9 && (z.re - e.value).abs() < 1e-9);
        }
    }
}

#[test]
fn theorem_multiplicities_match_closed_form_counts() {
    for (n, d) in non_complete(120) {
        let values: Vec<f64> = circuit_power_spectrum(&circuit_power(n, d).unwrap())
            .iter()
            .map(|e| e.value)
            .collect();
        for r in integer::integer_spectrum(n, d).unwrap() {
            let count = numeric_multiplicity(&values, r.eigenvalue as f64, TOL);
            assert_eq!(count, r.multiplicity, "C_{n}^({d}) eigenvalue {}", r.eigenvalue);
        }
    }
}

#[test]
fn documented_examples_against_jacobi() {
    let count = |n, d, x: i64| numeric_multiplicity(&jacobi_values(n, d), x as f64, TOL);
    for (n, d) in [(9, 2), (10, 2), (35, 2)] {
        assert_eq!(mult_minus_one(n, d).unwrap().multiplicity, count(n, d, -1));
    }
    for (n, d) in [(12, 3), (12, 2), (8, 1)] {
        assert_eq!(nullity(n, d).unwrap().multiplicity, count(n, d, 0));
    }
    for (n, d) in [(36, 14), (10, 4), (12, 3)] {
        assert_eq!(mult_minus_two(n, d).unwrap().multiplicity, count(n, d, -2));
    }
    for (n, d) in [(12, 1), (18, 7), (10, 1)] {
        assert_eq!(mult_one(n, d).unwrap().multiplicity, count(n, d, 1));
    }
    for (n, d) in [(12, 4), (18, 4), (12, 2)] {
        assert_eq!(mult_minus_three(n, d).unwrap().multiplicity, count(n, d, -3));
    }
    assert_eq!(count(36, 14, -2), 4);
    let c5 = oracle::symmetric_eigenvalues(&CirculantGraph::cycle(5).unwrap().adjacency()).unwrap();
    assert!(c5.iter().any(|v| (v - 0.618_033_988_749_895).abs() < 1e-12));
}

#[test]
fn bases_lie_in_numeric_eigenspaces() {
    for (n, d) in non_complete(60) {
        let dec = oracle::symmetric_eigen(&circuit_power(n, d).unwrap().adjacency()).unwrap();
        for r in integer::integer_spectrum(n, d).unwrap() {
            if r.multiplicity == 0 {
                continue;
            }
            let lambda = r.eigenvalue as f64;
            let report = eigenbasis::basis_for(n, d, r.eigenvalue).unwrap();
            assert_eq!(numeric_multiplicity(dec.values(), lambda, TOL), report.rank);
            for v in &report.vectors {
                let x: Vec<f64> = v.entries.iter().map(|&e| e as f64).collect();
                let p = dec.project(&x, lambda, TOL);
                let err = x.iter().zip(&p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(err < 1e-7, "C_{n}^({d}) eigenvalue {lambda}: {err:e}");
            }
        }
    }
}

#[test]
fn component_sums_vanish() {
    // difference vectors cancel inside each period; alternating vectors span
    // an even number of periods
    for (n, d) in non_complete(120) {
        for lambda in [-2, -1, 0] {
            let Ok(report) = eigenbasis::basis_for(n, d, lambda) else {
                continue;
            };
            for v in &report.vectors {
                assert_eq!(v.component_sum(), 0, "C_{n}^({d}) {lambda} {:?} {}", v.family, v.k);
            }
        }
    }
}

#[test]
fn orthogonality_always_holds_for_regular_eigenvalue() {
    for (n, d) in non_complete(60) {
        assert!(eigenbasis::basis_all_ones(n, d).unwrap().orthogonal);
        for lambda in [1, -3] {
            if let Ok(r) = eigenbasis::basis_pm_one(n, d, lambda) {
                assert!(!r.orthogonal);
            }
        }
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn induced_subgraphs_interlace() {
    for (n, d) in non_complete(60) {
        let a = circuit_power(n, d).unwrap().adjacency();
        let parent = sorted(oracle::symmetric_eigenvalues(&a).unwrap());

        // one vertex removed
        let keep: Vec<usize> = (1..n).collect();
        let sub = sorted(oracle::symmetric_eigenvalues(&a.induced(&keep)).unwrap());
        assert!(oracle::interlaces(&parent, &sub, TOL), "C_{n}^({d}) minus a vertex");

        // d consecutive vertices removed leaves the path power P_{n-d}^(d)
        let path = PathPower::new(n - d, d).unwrap();
        assert_eq!(a.induced(&(d..n).collect::<Vec<_>>()), path.adjacency());
        let sub = sorted(oracle::path_power_spectrum(&path).unwrap().values().to_vec());
        assert!(oracle::interlaces(&parent, &sub, TOL), "C_{n}^({d}) vs P_{}^({d})", n - d);
    }
}

#[test]
fn cycle_minus_a_vertex_is_a_path() {
    for n in 4..=60 {
        let a = CirculantGraph::cycle(n).unwrap().adjacency();
        let keep: Vec<usize> = (1..n).collect();
        assert_eq!(a.induced(&keep), PathPower::new(n - 1, 1).unwrap().adjacency());
    }
}

#[test]
fn distance_power_equals_bfs_construction() {
    for n in 3..=64 {
        let cycle = CirculantGraph::cycle(n).unwrap().adjacency();
        for d in 1..=n / 2 {
            assert_eq!(cycle.distance_power(d), circuit_power(n, d).unwrap().adjacency());
        }
    }
}
