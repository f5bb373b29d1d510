#![allow(dead_code)]

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

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

pub const ALL_HALVES_INLINE: &str = "0,1/2,1/2;-1/2,0,1/2;-1/2,-1/2,0";

/// Skew rational with entry denominators in `1..=max_den`, about a quarter zeros.
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

/// Entries in `(1/ell) Z`.
pub fn random_theta_with_ell(rng: &mut impl Rng, n: usize, ell: i64) -> SkewRationalMatrix {
    SkewRationalMatrix::from_scaled(&random_skew_int(rng, n, 2 * ell), &BigInt::from(ell)).unwrap()
}

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

pub fn bin() -> &'static Path {
    Path::new(env!("CARGO_BIN_EXE_ncsphere"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}
