mod common;

use common::{random_int_matrix, random_skew_int, random_unimodular};
use ncsphere_core::normal_form::{is_hermite_form, smith_diagonal};
use ncsphere_core::{hermite_normal_form, skew_normal_form, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Determinantal divisors: D_k = gcd of all k x k minors.
fn minor_gcds(m: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let kmax = m.rows().min(m.cols());
    (1..=kmax)
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let rows: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect())
                        .collect();
                    g = g.gcd(&IntMatrix::from_rows(&rows).unwrap().determinant().unwrap());
                }
            }
            g
        })
        .collect()
}

/// Elementary divisors from determinantal divisors: s_k = D_k / D_{k-1}.
fn elementary_divisors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let d = minor_gcds(m);
    let mut prev = BigInt::one();
    d.into_iter()
        .map(|dk| {
            if dk.is_zero() {
                BigInt::zero()
            } else {
                let s = &dk / &prev;
                prev = dk;
                s
            }
        })
        .collect()
}

#[test]
fn smith_matches_minor_oracle_on_fixed_cases() {
    for m in [
        IntMatrix::from_i64(&[&[2, 0], &[0, 3]]),
        IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]),
        IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
    ] {
        assert_eq!(smith_diagonal(&m), elementary_divisors_by_minors(&m));
    }
    assert_eq!(
        smith_diagonal(&IntMatrix::from_i64(&[
            &[2, 4, 4],
            &[-6, 6, 12],
            &[10, -4, -16]
        ])),
        vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
    );
}

proptest! {
    #[test]
    fn hermite_round_trip(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_int_matrix(&mut rng, rows, cols, 20);
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(u.is_unimodular());
        prop_assert!(is_hermite_form(&h));
    }

    #[test]
    fn smith_round_trip(seed in any::<u64>(), rows in 1usize..=6, cols in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_int_matrix(&mut rng, rows, cols, 20);
        let (s, u, v) = smith_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s.clone());
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert!(s[(i, j)].is_zero());
                }
            }
        }
        let diag = smith_diagonal(&m);
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
    }

    #[test]
    fn smith_agrees_with_minor_gcds(seed in any::<u64>(), rows in 1usize..=4, cols in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_int_matrix(&mut rng, rows, cols, 9);
        prop_assert_eq!(smith_diagonal(&m), elementary_divisors_by_minors(&m));
    }

    #[test]
    fn skew_form_is_literal_and_congruence_invariant(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_skew_int(&mut rng, n, 12);
        let f = skew_normal_form(&h).unwrap();
        prop_assert!(f.verify(&h));
        prop_assert_eq!(f.dim(), n);
        let u = random_unimodular(&mut rng, n, 12);
        let g = skew_normal_form(&h.congruent_by(&u).unwrap()).unwrap();
        prop_assert_eq!(g.divisors, f.divisors);
        prop_assert_eq!(g.zero_rank, f.zero_rank);
    }
}
