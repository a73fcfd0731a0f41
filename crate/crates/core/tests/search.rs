mod common;

use std::collections::BTreeSet;

use dquad::search::{find_quadruples, search_range, CompatGraph, GraphStrategy, SearchTask};
use num_rational::BigRational;
use proptest::prelude::*;

fn found(n: i64, bound: i64) -> BTreeSet<[i64; 4]> {
    find_quadruples(n, bound)
        .unwrap()
        .iter()
        .map(|r| common::as_i64(&r.tuple).try_into().unwrap())
        .collect()
}

#[test]
fn matches_naive_oracle() {
    for n in [-15i64, -8, -3, -1, 1, 3, 7, 12, 17] {
        assert_eq!(found(n, 30), common::naive_quadruples(n, 30), "n = {n}");
    }
}

#[test]
fn strategies_agree_at_moderate_bounds() {
    for n in [-208i64, -7, 1, 105, 1312164] {
        let a = CompatGraph::build(n, 900, GraphStrategy::PairScan).quadruples(false);
        let b = CompatGraph::build(n, 900, GraphStrategy::RootSieve).quadruples(false);
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn output_is_sorted_and_certified() {
    let recs = find_quadruples(-255, 600).unwrap();
    assert!(!recs.is_empty());
    let keys: Vec<Vec<i64>> = recs.iter().map(|r| common::as_i64(&r.tuple)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for r in &recs {
        assert!(r.certificate.check(r.tuple.elements(), r.tuple.n()));
    }
}

#[test]
fn ratio_sieve_is_a_filter() {
    let all = find_quadruples(-208, 3000).unwrap();
    let mut task = SearchTask::single(-208, 3000);
    task.min_d_over_n2 = Some(BigRational::new(1.into(), 20.into()));
    let kept = search_range(&task, 2).unwrap();
    let bar = 208.0 * 208.0 / 20.0;
    for r in &all {
        let max: f64 = r.metrics.max_abs.to_string().parse().unwrap();
        assert_eq!(kept.contains(r), max > bar);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let task = SearchTask::range(-30, 30, 70);
    let one = search_range(&task, 1).unwrap();
    for w in [2, 3, 8] {
        assert_eq!(search_range(&task, w).unwrap(), one);
    }
    let single = SearchTask::single(-208, 5000);
    assert_eq!(
        search_range(&single, 1).unwrap(),
        search_range(&single, 6).unwrap()
    );
}

#[test]
fn large_bound_finds_known_row() {
    let mut task = SearchTask::single(-208, 200_000);
    task.min_d_over_n2 = Some(SearchTask::default_min_ratio());
    let recs = search_range(&task, 4).unwrap();
    assert!(recs
        .iter()
        .any(|r| common::as_i64(&r.tuple) == [1, 2912, 131977, 174097]));
    assert!(recs.iter().all(|r| r.metrics.d_over_n2 > 2.25));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn negation_symmetry(n in -400i64..400, bound in 5i64..120) {
        prop_assume!(n != 0);
        let set = found(n, bound);
        let negated: BTreeSet<[i64; 4]> = set.iter().map(|q| [-q[3], -q[2], -q[1], -q[0]]).collect();
        prop_assert_eq!(set, negated);
    }

    #[test]
    fn every_hit_satisfies_the_definition(n in -2000i64..2000, bound in 5i64..200) {
        prop_assume!(n != 0);
        for q in found(n, bound) {
            for i in 0..4 {
                prop_assert!(q[i] != 0 && q[i].abs() <= bound);
                for j in i + 1..4 {
                    prop_assert!(common::exact_sqrt(q[i] as i128 * q[j] as i128 + n as i128).is_some());
                }
            }
        }
    }
}
