use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::Config;
use symop::enumeration::{
    count_k, count_nhat, count_ntilde, count_ntilde_closed, count_s, killing_basis,
    killing_saturation, symmetrized_gradient, CountTable,
};
use symop::Rational;

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn binom(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[test]
fn sums_match_totals() {
    for n in 1..=4u32 {
        for q in 0..=8u32 {
            let s: BigUint = (0..=q).map(|j| count_s(n, q, j).unwrap()).sum();
            let k: BigUint = (0..=q).map(|j| count_k(n, j).unwrap()).sum();
            assert_eq!(s, count_nhat(n, q).unwrap(), "n={n} q={q}");
            assert_eq!(k, count_ntilde(n, q).unwrap(), "n={n} q={q}");
            assert_eq!(count_ntilde_closed(n, q).unwrap(), k, "n={n} q={q}");
        }
    }
}

#[test]
fn one_dimensional_counts() {
    // in one dimension each rank contributes only the constant tensor
    for q in 0..=8u32 {
        assert_eq!(count_ntilde(1, q).unwrap(), big(q as usize + 1));
    }
}

#[test]
fn small_values() {
    assert_eq!(count_nhat(1, 1).unwrap(), big(3));
    assert_eq!(count_nhat(3, 1).unwrap(), big(10));
    assert_eq!(count_nhat(3, 2).unwrap(), big(50));
    assert_eq!(count_ntilde(3, 2).unwrap(), big(27));
    assert_eq!(count_k(2, 1).unwrap(), big(3));
    assert_eq!(count_k(3, 2).unwrap(), big(20));
}

#[test]
fn rank_out_of_range_is_an_error() {
    assert!(count_s(2, 1, 2).is_err());
    assert!(count_nhat(0, 1).is_err());
}

#[test]
fn table_is_consistent() {
    for n in 1..=4 {
        for q in 0..=6 {
            assert!(CountTable::new(n, q).unwrap().is_consistent());
        }
    }
    assert!(CountTable::new(5, 1).unwrap().outside_proven_range);
}

#[test]
fn killing_solver_matches_counts() {
    for n in 1..=3u32 {
        for q in 0..=3u32 {
            for j in 0..=q {
                let d = killing_basis::<Rational>(n as usize, j, q - j + 1, q + 1).dim();
                assert_eq!(big(d), count_s(n, q, j).unwrap(), "S n={n} q={q} j={j}");
            }
        }
    }
    for q in 0..=2u32 {
        for j in 0..=q {
            let d = killing_basis::<Rational>(4, j, q - j + 1, q + 1).dim();
            assert_eq!(big(d), count_s(4, q, j).unwrap(), "S n=4 q={q} j={j}");
        }
    }
    for n in 1..=4u32 {
        for j in 0..=3u32 {
            let d = killing_basis::<Rational>(n as usize, j, 1, j).dim();
            assert_eq!(big(d), count_k(n, j).unwrap(), "K n={n} j={j}");
        }
    }
}

#[test]
fn killing_basis_is_sound_and_saturated() {
    for (n, rank, order) in [(2usize, 2u32, 2u32), (3, 1, 2), (2, 3, 1)] {
        let d = rank + order - 1;
        let basis = killing_basis::<Rational>(n, rank, order, d);
        for e in &basis.elements {
            assert!(symmetrized_gradient(n, rank, order, e).values().all(|p| p.is_empty()));
        }
        assert!(killing_saturation::<Rational>(n, rank, order, d).saturated());
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn one_dimensional_sum(q in 0u32..40) {
        let s: BigUint = (0..=q).map(|j| count_s(1, q, j).unwrap()).sum();
        prop_assert_eq!(s, count_nhat(1, q).unwrap());
    }

    #[test]
    fn counts_grow_with_order(n in 1u32..=4, q in 0u32..30) {
        prop_assert!(count_nhat(n, q + 1).unwrap() > count_nhat(n, q).unwrap());
        prop_assert!(count_ntilde(n, q + 1).unwrap() > count_ntilde(n, q).unwrap());
        prop_assert!(count_nhat(n, q).unwrap() >= count_ntilde(n, q).unwrap());
    }

    #[test]
    fn killing_vectors_count(n in 1u32..=12) {
        let m = n as u64;
        prop_assert_eq!(count_k(n, 1).unwrap(), binom(m + 1, 2));
        prop_assert_eq!(count_k(n, 0).unwrap(), BigUint::from(1u32));
    }
}
