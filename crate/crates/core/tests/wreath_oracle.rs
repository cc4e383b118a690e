mod support;

use std::collections::BTreeMap;

use floplab_core::{census, GroupParams, WreathElement};
use proptest::prelude::*;
use support::matrix_oracle as oracle;

fn params(m: u32, n: u32) -> GroupParams {
    GroupParams::new(m, n).unwrap()
}

#[test]
fn codim_matches_matrix_oracle_for_small_groups() {
    for m in 1..=3 {
        for n in 1..=3 {
            let p = params(m, n);
            let mut seen = 0u128;
            for a in p.elements() {
                assert_eq!(a.fixed_codim(), oracle::fixed_codim(&a), "m={m} n={n} {a}");
                assert_eq!(a.fixed_codim() % 2, 0);
                seen += 1;
            }
            assert_eq!(seen, p.order());
        }
    }
}

#[test]
fn compose_matches_matrix_product() {
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        let all: Vec<_> = params(m, n).elements().collect();
        for a in &all {
            for b in &all {
                let ab = a.compose(b).unwrap();
                let product = oracle::multiply(&oracle::matrix_of(a), &oracle::matrix_of(b));
                assert!(oracle::approx_eq(&oracle::matrix_of(&ab), &product), "{a} * {b}");
            }
        }
    }
}

#[test]
fn swap_examples_against_matrices() {
    let p = params(2, 2);
    let a = WreathElement::from_one_based(p, &[1, 0], &[2, 1]).unwrap();
    let b = WreathElement::from_one_based(p, &[0, 1], &[2, 1]).unwrap();
    assert!(oracle::is_identity(&oracle::multiply(&oracle::matrix_of(&a), &oracle::matrix_of(&b))));
    assert!(a.compose(&b).unwrap().is_identity());
    assert_eq!(a.inverse(), b);

    let c = WreathElement::from_one_based(p, &[1, 1], &[2, 1]).unwrap();
    assert_eq!(oracle::fixed_codim(&c), 2);
    let minus_one = WreathElement::from_one_based(params(2, 1), &[1], &[1]).unwrap();
    assert_eq!(oracle::fixed_codim(&minus_one), 2);
}

fn oracle_census(p: GroupParams) -> BTreeMap<u32, u64> {
    let mut counts = BTreeMap::new();
    for a in p.elements() {
        *counts.entry(oracle::fixed_codim(&a)).or_insert(0) += 1;
    }
    counts
}

#[test]
fn census_matches_oracle() {
    assert_eq!(oracle_census(params(2, 2)), BTreeMap::from([(0, 1), (2, 4), (4, 3)]));
    assert_eq!(oracle_census(params(3, 1)), BTreeMap::from([(0, 1), (2, 2)]));
    for m in 1..=4 {
        for n in 1..=3 {
            let p = params(m, n);
            let report = census(p).unwrap();
            assert_eq!(report.by_codim, oracle_census(p), "m={m} n={n}");
            assert_eq!(report.by_codim.values().sum::<u64>() as u128, p.order());
            assert!(report.by_codim.keys().all(|k| k % 2 == 0 && *k <= 2 * n));
            assert_eq!(report.by_codim[&0], 1);
        }
    }
}

fn element(max_m: u32, max_n: u32) -> impl Strategy<Value = GroupParams> {
    (1..=max_m, 1..=max_n).prop_map(|(m, n)| GroupParams::new(m, n).unwrap())
}

fn member(p: GroupParams) -> impl Strategy<Value = WreathElement> {
    let n = p.n() as usize;
    (proptest::collection::vec(0..p.m() as i64, n), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(move |(t, perm)| WreathElement::new(p, &t, &perm).unwrap())
}

fn triple(p: GroupParams) -> impl Strategy<Value = (WreathElement, WreathElement, WreathElement)> {
    (member(p), member(p), member(p))
}

proptest! {
    #[test]
    fn group_axioms((a, b, c) in element(4, 4).prop_flat_map(triple)) {
        let e = a.params().identity();
        prop_assert_eq!(e.compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.compose(&e).unwrap(), a.clone());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
    }

    #[test]
    fn codim_is_a_class_function((a, b, _) in element(4, 4).prop_flat_map(triple)) {
        let conj = b.compose(&a).unwrap().compose(&b.inverse()).unwrap();
        prop_assert_eq!(a.fixed_codim(), conj.fixed_codim());
    }
}

#[test]
fn inverse_of_random_elements_m3_n3() {
    use rand::{rngs::StdRng, seq::SliceRandom, Rng, SeedableRng};
    let p = params(3, 3);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let twists: Vec<i64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let mut perm: Vec<usize> = (0..3).collect();
        perm.shuffle(&mut rng);
        let a = WreathElement::new(p, &twists, &perm).unwrap();
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }
    assert_eq!(p.identity().inverse(), p.identity());
}
