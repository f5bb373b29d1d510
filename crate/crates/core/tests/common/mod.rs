#![allow(dead_code)]

use ncsphere_core::{IntMatrix, Rational, SkewRationalMatrix};
use num_bigint::BigInt;
use rand::Rng;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn all_halves() -> SkewRationalMatrix {
    SkewRationalMatrix::from_rows(&[
        vec![r(0, 1), r(1, 2), r(1, 2)],
        vec![r(-1, 2), r(0, 1), r(1, 2)],
        vec![r(-1, 2), r(-1, 2), r(0, 1)],
    ])
    .unwrap()
}

pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

pub fn random_skew_int(rng: &mut impl Rng, n: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = BigInt::from(rng.gen_range(-bound..=bound));
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

/// Random skew rational with entry denominators drawn from `1..=max_den`.
/// Roughly a quarter of the entries are zero so that faces vary.
#[allow(clippy::needless_range_loop)]
pub fn random_theta(rng: &mut impl Rng, n: usize, max_den: i64) -> SkewRationalMatrix {
    let mut rows = vec![vec![r(0, 1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = if rng.gen_bool(0.25) {
                r(0, 1)
            } else {
                r(rng.gen_range(-12..=12), rng.gen_range(1..=max_den))
            };
            rows[j][i] = -&v;
            rows[i][j] = v;
        }
    }
    SkewRationalMatrix::from_rows(&rows).unwrap()
}

/// Random skew matrix with every entry in `(1/ell) Z`.
pub fn random_theta_with_ell(rng: &mut impl Rng, n: usize, ell: i64) -> SkewRationalMatrix {
    let h = random_skew_int(rng, n, 2 * ell);
    SkewRationalMatrix::from_scaled(&h, &BigInt::from(ell)).unwrap()
}

/// Integral skew matrix (entries in a small range).
pub fn random_integral_theta(rng: &mut impl Rng, n: usize) -> SkewRationalMatrix {
    SkewRationalMatrix::from_scaled(&random_skew_int(rng, n, 5), &BigInt::from(1)).unwrap()
}

/// Product of random elementary integer matrices.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 => t.swap_rows(i, j),
            1 => t.negate_row(i),
            _ if i != j => t.add_row_multiple(i, j, &BigInt::from(rng.gen_range(-3..=3))),
            _ => {}
        }
    }
    t
}
