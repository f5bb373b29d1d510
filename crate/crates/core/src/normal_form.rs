//! Canonical forms of integer matrices under unimodular transformations.
//!
//! * Hermite: `U * M = H`, row echelon with positive pivots and the entries
//!   above each pivot reduced into `[0, pivot)`.
//! * Smith: `U * M * V = S`, diagonal with `s_1 | s_2 | ...`, nonnegative.
//! * Skew: `T * H * T^t` equals the direct sum of blocks `[[0, d_i], [-d_i, 0]]`
//!   followed by a zero block, with `d_1 | d_2 | ...`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Hermite reduction of `h` in place; row operations are mirrored on `u` when given.
/// Returns the pivot columns in row order.
pub(crate) fn hermite_in_place(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> Vec<usize> {
    let (rows, cols) = (h.rows(), h.cols());
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        for r in pr + 1..rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let a = h[(pr, col)].clone();
            let b = h[(r, col)].clone();
            let (g, s, t) = xgcd(&a, &b);
            let c = -(&b / &g);
            let d = &a / &g;
            h.combine_rows(pr, r, [&s, &t, &c, &d]);
            if let Some(u) = u.as_deref_mut() {
                u.combine_rows(pr, r, [&s, &t, &c, &d]);
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(pr);
            }
        }
        let p = h[(pr, col)].clone();
        for r in 0..pr {
            let q = -h[(r, col)].div_floor(&p);
            h.add_row_multiple(r, pr, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(r, pr, &q);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

/// Row-style Hermite normal form: returns `(H, U)` with `U * m = H`, `U` unimodular.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hermite_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// True when `h` satisfies the row-style Hermite conditions.
pub fn is_hermite_form(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let lead = (0..h.cols()).find(|&c| !h[(r, c)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row || last_pivot.is_some_and(|p| c <= p) {
                    return false;
                }
                let p = &h[(r, c)];
                if !p.is_positive() {
                    return false;
                }
                for above in 0..r {
                    let e = &h[(above, c)];
                    if e.is_negative() || e >= p {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

/// Smith normal form: returns `(S, U, V)` with `U * m * V = S`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = &s[(i, j)];
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let p = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = -s[(i, t)].div_floor(&p);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = -s[(t, j)].div_floor(&p);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form, padded with zeros to `min(rows, cols)`.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = smith_normal_form(m);
    (0..m.rows().min(m.cols()))
        .map(|i| s[(i, i)].clone())
        .collect()
}

/// Congruence normal form of an integer skew-symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    /// Unimodular `T` with `T * H * T^t` in block form.
    pub transform: IntMatrix,
    /// Positive skew elementary divisors `d_1 | d_2 | ...`.
    pub divisors: Vec<BigInt>,
    /// Size of the trailing zero block.
    pub zero_rank: usize,
}

impl SkewNormalForm {
    pub fn dim(&self) -> usize {
        2 * self.divisors.len() + self.zero_rank
    }

    /// The block matrix `diag([[0, d_1], [-d_1, 0]], ..., 0_k)`.
    pub fn block_matrix(&self) -> IntMatrix {
        block_form(&self.divisors, self.zero_rank)
    }

    /// Checks every stated invariant against the original matrix `h`.
    pub fn verify(&self, h: &IntMatrix) -> bool {
        self.transform.is_unimodular()
            && h.congruent_by(&self.transform).ok().as_ref() == Some(&self.block_matrix())
            && self.divisors.iter().all(|d| d.is_positive())
            && self.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

/// Skew blocks for `divisors` followed by `zero_rank` zero rows/columns.
pub fn block_form(divisors: &[BigInt], zero_rank: usize) -> IntMatrix {
    let n = 2 * divisors.len() + zero_rank;
    let mut b = IntMatrix::zeros(n, n);
    for (i, d) in divisors.iter().enumerate() {
        b[(2 * i, 2 * i + 1)] = d.clone();
        b[(2 * i + 1, 2 * i)] = -d;
    }
    b
}

struct SkewWork {
    h: IntMatrix,
    t: IntMatrix,
}

impl SkewWork {
    fn swap(&mut self, i: usize, j: usize) {
        self.h.swap_rows(i, j);
        self.h.swap_cols(i, j);
        self.t.swap_rows(i, j);
    }

    /// Congruence by the elementary matrix `I + k * e_dst e_src^t`.
    fn add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.h.add_row_multiple(dst, src, k);
        self.h.add_col_multiple(dst, src, k);
        self.t.add_row_multiple(dst, src, k);
    }
}

/// Symplectic reduction of an integer skew-symmetric matrix over the integers.
pub fn skew_normal_form(h: &IntMatrix) -> Result<SkewNormalForm> {
    h.check_skew()?;
    let n = h.rows();
    let mut w = SkewWork {
        h: h.clone(),
        t: IntMatrix::identity(n),
    };
    let mut divisors = Vec::new();
    let mut t = 0;
    'blocks: while t + 1 < n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in i + 1..n {
                    let e = &w.h[(i, j)];
                    if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < w.h[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                break 'blocks;
            };
            w.swap(t, i);
            w.swap(t + 1, j);
            if w.h[(t, t + 1)].is_negative() {
                w.swap(t, t + 1);
            }
            let d = w.h[(t, t + 1)].clone();

            let mut clean = true;
            for k in t + 2..n {
                let q = -w.h[(t, k)].div_floor(&d);
                w.add(k, t + 1, &q);
                clean &= w.h[(t, k)].is_zero();
                let q = w.h[(t + 1, k)].div_floor(&d);
                w.add(k, t, &q);
                clean &= w.h[(t + 1, k)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 2..n).find(|&i| (i + 1..n).any(|j| !w.h[(i, j)].is_multiple_of(&d)));
            match offender {
                Some(i) => w.add(t, i, &BigInt::one()),
                None => break,
            }
        }
        divisors.push(w.h[(t, t + 1)].clone());
        t += 2;
    }
    let form = SkewNormalForm {
        transform: w.t,
        zero_rank: n - 2 * divisors.len(),
        divisors,
    };
    if form.block_matrix() != w.h {
        return Err(Error::InvariantViolated(
            "skew reduction left off-block entries".into(),
        ));
    }
    Ok(form)
}
