use std::f64::consts::PI;

use circpow::graph::{circuit_power, CirculantGraph};
use circpow::oracle;
use circpow::spectrum::{circuit_power_spectrum, circulant_spectrum, group_spectrum, mult_two_bound};
use proptest::prelude::*;

fn circulant() -> impl Strategy<Value = CirculantGraph> {
    (2usize..=64)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n / 2)))
        .prop_map(|(n, picks)| {
            let jumps = picks
                .iter()
                .enumerate()
                .filter(|(_, &p)| p)
                .flat_map(|(i, _)| [i + 1, n - i - 1]);
            CirculantGraph::new(n, jumps).unwrap()
        })
}

fn non_complete_power() -> impl Strategy<Value = (usize, usize)> {
    (5usize..=300).prop_flat_map(|n| (Just(n), 1usize..=(n - 2) / 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trace_vanishes(g in circulant()) {
        let sum: f64 = circulant_spectrum(&g).iter().map(|e| e.value).sum();
        prop_assert!(sum.abs() <= 1e-9 * g.n() as f64);
    }

    #[test]
    fn energy_counts_closed_walks(g in circulant()) {
        let sum: f64 = circulant_spectrum(&g).iter().map(|e| e.value * e.value).sum();
        let walks = (g.n() * g.jumps().len()) as f64;
        prop_assert!((sum - walks).abs() <= 1e-6 * g.n() as f64);
    }

    #[test]
    fn cosine_sum_symmetric(g in circulant()) {
        let s = circulant_spectrum(&g);
        let n = g.n();
        for r in 1..n {
            prop_assert_eq!(s[r].value, s[n - r].value);
        }
    }

    #[test]
    fn closed_form_symmetric_and_maximal((n, d) in non_complete_power()) {
        let s = circuit_power_spectrum(&circuit_power(n, d).unwrap());
        for r in 1..n {
            prop_assert!((s[r].value - s[n - r].value).abs() <= 1e-12);
            prop_assert!(s[r].value < s[0].value);
        }
    }

    #[test]
    fn grouping_covers_every_index(g in circulant()) {
        let grouped = group_spectrum(&circulant_spectrum(&g), 1e-9).unwrap();
        prop_assert_eq!(grouped.total(), g.n());
        let mut seen: Vec<usize> = grouped.groups.iter().flat_map(|x| x.indices.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
        prop_assert!(grouped.groups.windows(2).all(|w| w[0].value < w[1].value));
    }

    #[test]
    fn adjacency_is_rotation_invariant(g in circulant()) {
        let a = g.adjacency();
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        prop_assert!(a.is_symmetric());
        prop_assert_eq!(a.permuted(&perm), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn jacobi_orthonormal_and_accurate(g in circulant()) {
        let dec = oracle::symmetric_eigen(&g.adjacency()).unwrap();
        let n = g.n();
        prop_assert!(dec.orthonormality_error() <= 1e-8);
        prop_assert!(dec.residual() <= 1e-8 * n as f64);
        prop_assert!(dec.values().iter().sum::<f64>().abs() <= 1e-8 * n as f64);
        let mut closed: Vec<f64> = circulant_spectrum(&g).iter().map(|e| e.value).collect();
        closed.sort_by(f64::total_cmp);
        for (a, b) in closed.iter().zip(dec.values()) {
            prop_assert!((a - b).abs() <= 1e-7);
        }
    }
}

#[test]
fn bound_ratio_decreases_towards_one() {
    let mut last = f64::INFINITY;
    for d in 1..=10_000 {
        let b = mult_two_bound(d).unwrap();
        let ratio = (b.sharp + 1.0) / (d as f64 / PI);
        assert!(ratio > 1.0 && ratio < last, "d = {d}");
        last = ratio;
    }
    assert!(last - 1.0 < 1e-4);
}
