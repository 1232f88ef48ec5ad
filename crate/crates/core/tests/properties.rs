use std::sync::Arc;

use msset::invariants::{homology, homology_table, homology_unnormalized};
use msset::marked::{count_marked_maps, MarkedSimplicialSet};
use msset::sset::{count_maps, nondegenerate_counts, product, simplex};
use msset::{SimplicialSet, Table};
use proptest::prelude::*;

/// A face-closed part of `Δᵏ` generated by a random set of its simplices.
fn subcomplex() -> impl Strategy<Value = SimplicialSet> {
    (0usize..=3).prop_flat_map(|k| {
        let full = simplex(k);
        let n = full.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |picks| {
            let full = simplex(k);
            let mut seeds: Vec<u32> = (0..n as u32).filter(|&g| picks[g as usize]).collect();
            if seeds.is_empty() {
                seeds.push(0);
            }
            full.restrict(&full.closure(seeds)).unwrap().0
        })
    })
}

fn complex() -> impl Strategy<Value = SimplicialSet> {
    prop::collection::vec(subcomplex(), 1..=2).prop_map(|parts| {
        parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.disjoint_union(p))
    })
}

fn euler(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normalized_and_unnormalized_homology_agree(x in complex()) {
        let t = Table::tabulate(&x, [4], None);
        prop_assert_eq!(homology_table(&t, 3), homology_unnormalized(&t, 3));
        prop_assert_eq!(homology(&x, 3), homology_table(&t, 3));
    }

    #[test]
    fn euler_characteristic_matches_ranks(x in complex()) {
        let ranks = homology(&x, 3).ranks();
        let alternating: i64 = ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(alternating, euler(&nondegenerate_counts(&x)));
    }

    #[test]
    fn tabulated_identities_hold(x in complex()) {
        prop_assert!(x.check_identities().is_ok());
        prop_assert!(Table::tabulate(&x, [4], None).check_identities().is_ok());
    }

    #[test]
    fn points_and_terminal_maps(x in complex()) {
        let vertices = nondegenerate_counts(&x)[0] as u64;
        prop_assert_eq!(count_maps(&simplex(0), &x), vertices);
        prop_assert_eq!(count_maps(&x, &simplex(0)), 1);
    }

    #[test]
    fn sharp_targets_accept_every_map(x in complex(), y in complex()) {
        let xm = MarkedSimplicialSet::sharp(Arc::new(x.clone()));
        let ym = MarkedSimplicialSet::sharp(Arc::new(y.clone()));
        let plain = count_maps(&x, &y);
        prop_assert_eq!(count_marked_maps(&xm, &ym), plain);
        prop_assert_eq!(count_marked_maps(&MarkedSimplicialSet::flat(Arc::new(x)), &ym), plain);
    }

    #[test]
    fn products_of_simplices_are_contractible(p in 0usize..=3, q in 0usize..=2) {
        let x = product(&simplex(p), &simplex(q));
        prop_assert_eq!(euler(&nondegenerate_counts(&x)), 1);
        prop_assert!(homology(&x, p + q).is_point());
    }
}
