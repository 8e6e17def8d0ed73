use std::collections::{BTreeMap, BTreeSet};

use ybx_core::search::{self, EnumOptions, Prune};
use ybx_core::Solution;

fn tables(sols: &[Solution]) -> BTreeSet<Vec<usize>> {
    sols.iter().map(Solution::flat_lambda).collect()
}

#[test]
fn pruned_search_matches_brute_force_at_four() {
    let pruned = search::enumerate(&EnumOptions::new(4)).unwrap();
    assert!(pruned.complete);
    let oracle = search::brute_force(4).unwrap();
    assert_eq!(tables(&pruned.solutions), tables(&oracle));
    assert_eq!(oracle.len(), 120);
}

#[test]
fn each_prune_alone_is_safe_at_three() {
    let oracle = tables(&search::brute_force(3).unwrap());
    let flags = [
        Prune { ybe1: true, ..Prune::NONE },
        Prune { idempotency: true, ..Prune::NONE },
        Prune { fixedpoint: true, ..Prune::NONE },
        Prune { divisibility: true, ..Prune::NONE },
    ];
    for prune in flags {
        let mut opts = EnumOptions::new(3);
        opts.prune = prune;
        assert_eq!(tables(&search::enumerate(&opts).unwrap().solutions), oracle, "{prune:?}");
    }
}

#[test]
fn partition_counts_up_to_four() {
    for n in 1..=4 {
        assert!(search::check_partition_count(n).unwrap());
    }
}

#[test]
fn prime_cases_are_covered_by_the_two_families() {
    for (p, perm, aut) in [(2, 2, 1), (3, 3, 2), (5, 7, 4)] {
        let rep = search::check_prime_classification(p, true).unwrap();
        assert_eq!((rep.permutation_classes, rep.automorphism_classes), (perm, aut));
        assert_eq!(rep.enumerated_classes, Some(perm + aut));
    }
}

#[test]
fn computed_class_counts() {
    // Regression values computed by this search; only the q-bijective and
    // prime counts have an independent closed form.
    assert_eq!(search::classify(3).unwrap().len(), 5);
    assert_eq!(search::by_diag_size(3).unwrap(), BTreeMap::from([(1, 2), (3, 3)]));
    assert_eq!(search::by_diag_size(4).unwrap(), BTreeMap::from([(1, 5), (2, 4), (4, 5)]));
    assert_eq!(search::by_diag_size(5).unwrap(), BTreeMap::from([(1, 4), (5, 7)]));
}

#[test]
fn class_records_are_consistent() {
    for n in 1..=4 {
        for r in search::classify(n).unwrap() {
            let s = search::solution_from_flat(n, &r.canonical).unwrap();
            assert_eq!(ybx_core::canonical_form(&s).unwrap(), r.canonical);
            assert_eq!(r.diag_size * r.rees_type.torsion_order, n);
            assert_eq!(r.rees_type.columns, r.diag_size);
            assert_eq!(r.d, s.d());
        }
    }
}
