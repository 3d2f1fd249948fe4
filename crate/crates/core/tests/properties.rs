mod common;

use common::random_graph;
use nfvr::eval::{classification_metrics, regression_metrics, split};
use nfvr::featurize::{aggregate_set, FeatureConfig, Featurizer};
use nfvr::proclivity::{divergence, prone};
use nfvr::{FeatureMode, GenerativeFunction, MixingMatrix};
use proptest::prelude::*;

fn independence(rows: &[u64], cols: &[u64]) -> MixingMatrix {
    let counts = rows.iter().flat_map(|r| cols.iter().map(move |c| r * c)).collect();
    MixingMatrix::from_counts(rows.len(), cols.len(), counts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn permutation_matrices_are_fully_proclive(
        diag in prop::collection::vec(1u64..60, 2..6),
        shift in 0usize..5,
    ) {
        let n = diag.len();
        let mut counts = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            counts[i * n + (i + shift) % n] = d;
        }
        let m = MixingMatrix::from_counts(n, n, counts);
        for f in GenerativeFunction::ALL {
            let p = prone(&m, f);
            prop_assert!(!p.undefined);
            prop_assert!((p.value - 1.0).abs() <= 1e-9, "{} gives {}", f, p.value);
        }
    }

    #[test]
    fn independence_matrices_have_zero_proclivity(
        rows in prop::collection::vec(1u64..12, 2..5),
        cols in prop::collection::vec(1u64..12, 2..5),
    ) {
        let m = independence(&rows, &cols);
        for f in GenerativeFunction::ALL {
            let d = divergence(&m, f).unwrap();
            prop_assert!((d - 1.0).abs() <= 1e-9, "{} gives D = {}", f, d);
        }
    }

    #[test]
    fn divergence_invariant_under_transpose_and_row_swap(
        counts in prop::collection::vec(0u64..30, 9),
    ) {
        let m = MixingMatrix::from_counts(3, 3, counts.clone());
        let mut swapped = counts[3..6].to_vec();
        swapped.extend(&counts[0..3]);
        swapped.extend(&counts[6..9]);
        let s = MixingMatrix::from_counts(3, 3, swapped);
        for f in GenerativeFunction::ALL {
            match (divergence(&m, f), divergence(&m.transpose(), f), divergence(&s, f)) {
                (Ok(a), Ok(b), Ok(c)) => {
                    prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
                    prop_assert!((a - c).abs() <= 1e-9 * a.abs().max(1.0));
                }
                (Err(_), Err(_), Err(_)) => {}
                other => prop_assert!(false, "inconsistent: {:?}", other),
            }
        }
    }

    #[test]
    fn dimension_identities(
        levels in prop::collection::vec(1usize..6, 1..6),
        target_pick in 0usize..100,
        seed in 0u64..1000,
    ) {
        let g = random_graph(25, 0.2, &levels, 0.1, seed);
        let target = target_pick % levels.len();
        let n: Vec<usize> = (0..levels.len()).map(|j| g.attribute(j).level_count()).collect();
        let rho = vec![0.5; levels.len()];
        let dim = |mode| Featurizer::with_rho(&g, FeatureConfig::new(target, 1, mode), rho.clone()).dim();
        let nfvr = dim(FeatureMode::Nfvr);
        let nns = dim(FeatureMode::Nns);
        prop_assert_eq!(nfvr, n.iter().sum::<usize>());
        prop_assert_eq!(nns, nfvr - n[target]);
        prop_assert_eq!(dim(FeatureMode::Nnfvr), nns + nfvr);
    }

    #[test]
    fn nnfvr_is_nns_then_nfvr(seed in 0u64..500, h in 1usize..4) {
        let g = random_graph(30, 0.1, &[2, 3, 2], 0.1, seed);
        let rho = vec![0.3, -0.2, 0.9];
        let f = Featurizer::with_rho(&g, FeatureConfig::new(1, h, FeatureMode::Nnfvr), rho);
        for v in 0..g.node_count() {
            let full = f.nnfvr_vector(v).unwrap();
            let nns = f.nns_vector(v).unwrap();
            prop_assert_eq!(&full[..nns.len()], &nns[..]);
            prop_assert_eq!(&full[nns.len()..], &f.nfvr_vector(v).unwrap()[..]);
            prop_assert_eq!(nns.iter().filter(|&&x| x == 1.0).count(), 2);
            prop_assert_eq!(nns.iter().filter(|&&x| x == 0.0).count(), nns.len() - 2);
        }
    }

    #[test]
    fn aggregate_is_a_distribution(seed in 0u64..500, picks in prop::collection::btree_set(0usize..30, 1..15)) {
        let g = random_graph(30, 0.1, &[4], 0.2, seed);
        let nodes: Vec<usize> = picks.into_iter().collect();
        let a = aggregate_set(&g, &nodes, 0).unwrap();
        prop_assert!((a.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        let codes = g.codes(0).unwrap();
        for (k, x) in a.iter().enumerate() {
            let count = nodes.iter().filter(|&&v| codes[v] as usize == k).count();
            prop_assert_eq!(*x, count as f64 / nodes.len() as f64);
        }
    }

    #[test]
    fn split_partitions_labeled_nodes(seed in any::<u64>(), frac in 0.05f64..0.95) {
        let g = random_graph(40, 0.0, &[3], 0.25, seed % 97);
        if let Ok(s) = split(&g, 0, frac, seed) {
            let mut all: Vec<usize> = s.train.iter().chain(&s.test).copied().collect();
            all.sort_unstable();
            let labeled: Vec<usize> = (0..40).filter(|&v| g.is_observed(0, v)).collect();
            prop_assert_eq!(all, labeled);
            prop_assert!(!s.train.is_empty() && !s.test.is_empty());
        }
    }

    #[test]
    fn metric_ranges(
        pairs in prop::collection::vec((0u32..4, 0u32..4), 1..60),
        values in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 2..60),
    ) {
        let (p, a): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        let m = classification_metrics(&p, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.accuracy.unwrap()));
        prop_assert!((0.0..=1.0).contains(&m.f1_macro.unwrap()));
        let (p, a): (Vec<f64>, Vec<f64>) = values.into_iter().unzip();
        let r = regression_metrics(&p, &a).unwrap();
        prop_assert!(r.r2.unwrap() <= 1.0);
        prop_assert!((r.rmse.unwrap().powi(2) - r.mse.unwrap()).abs() <= 1e-12 * r.mse.unwrap().max(1.0));
    }
}
