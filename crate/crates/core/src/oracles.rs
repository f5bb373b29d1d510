//! Brute-force verifiers for the lattice-based invariants.
//!
//! None of these touch the Hermite/Smith/skew reductions: image sizes come from
//! raw enumeration of `(Z/ell)^n`, indices from a breadth-first walk over cosets,
//! and fiber blocks from counting the radical of a finite bicharacter.
//! Every enumeration has a hard size guard.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::faces::{torus_fiber_blocks, Face, FaceInvariants};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::theta::{h_by_image_count, h_by_kernel_index, SkewRationalMatrix};

pub const IMAGE_COUNT_GUARD: u128 = 10_000_000;
pub const COSET_GUARD: u128 = 100_000;
pub const TWISTED_GUARD: u128 = 1_000_000;

/// One main-path value checked against its oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub checked_quantity: String,
    pub main_value: BigUint,
    pub oracle_value: BigUint,
    pub agrees: bool,
}

impl OracleReport {
    pub fn new(label: impl Into<String>, main_value: BigUint, oracle_value: BigUint) -> Self {
        OracleReport {
            checked_quantity: label.into(),
            agrees: main_value == oracle_value,
            main_value,
            oracle_value,
        }
    }
}

fn guarded_power(base: u64, exp: usize, limit: u128, what: &'static str) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..exp {
        size = size.saturating_mul(base as u128);
        if size > limit {
            return Err(Error::GuardExceeded { what, size, limit });
        }
    }
    Ok(size as u64)
}

fn residue(x: &BigInt, ell: u64) -> u64 {
    x.mod_floor(&BigInt::from(ell))
        .to_u64()
        .expect("reduced below ell")
}

/// Decodes `index` as a base-`ell` digit vector of length `k`.
fn digits(mut index: u64, ell: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(index % ell);
        index /= ell;
    }
    out
}

/// `|{ H v mod ell : v ∈ (Z/ell)^n }|` by listing every `v`.
pub fn brute_image_count(h: &IntMatrix, ell: u64) -> Result<u64> {
    if ell == 0 {
        return Err(Error::NotPositive("ell"));
    }
    let n = h.cols();
    let total = guarded_power(ell, n, IMAGE_COUNT_GUARD, "image enumeration")?;
    let a: Vec<Vec<u64>> = (0..h.rows())
        .map(|r| (0..n).map(|c| residue(&h[(r, c)], ell)).collect())
        .collect();
    let mut seen = BTreeSet::new();
    for index in 0..total {
        let v = digits(index, ell, n);
        let code = a.iter().rev().fold(0u128, |acc, row| {
            let y = row.iter().zip(&v).fold(0u128, |s, (x, y)| {
                (s + (*x as u128) * (*y as u128)) % ell as u128
            });
            acc * ell as u128 + y
        });
        seen.insert(code);
    }
    Ok(seen.len() as u64)
}

/// Representative of `v + L` for full-rank echelon `L`: pivot coordinates land in `[0, pivot)`.
fn reduce_mod(l: &Lattice, v: &mut [BigInt]) {
    for row in l.basis() {
        let p = row.iter().position(|e| !e.is_zero()).expect("nonzero row");
        let c = v[p].div_floor(&row[p]);
        if !c.is_zero() {
            for (x, b) in v.iter_mut().zip(row) {
                *x -= &c * b;
            }
        }
    }
}

/// `[sup : sub]` by walking the cosets of `sub` reachable from 0 with the generators of `sup`.
pub fn brute_coset_index(sub: &Lattice, sup: &Lattice) -> Result<u64> {
    if sub.ambient_rank() != sup.ambient_rank() {
        return Err(Error::AmbientMismatch {
            left: sub.ambient_rank(),
            right: sup.ambient_rank(),
        });
    }
    for l in [sub, sup] {
        if !l.is_full_rank() {
            return Err(Error::InfiniteIndex {
                rank: l.rank(),
                ambient: l.ambient_rank(),
            });
        }
    }
    for b in sub.basis() {
        let mut w = b.clone();
        reduce_mod(sup, &mut w);
        if w.iter().any(|e| !e.is_zero()) {
            return Err(Error::NotContained);
        }
    }
    let n = sup.ambient_rank();
    let start: Vec<BigInt> = alloc::vec![BigInt::zero(); n];
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(rep) = queue.pop_front() {
        for g in sup.basis() {
            let mut next: Vec<BigInt> = rep.iter().zip(g).map(|(a, b)| a + b).collect();
            reduce_mod(sub, &mut next);
            if seen.insert(next.clone()) {
                if seen.len() as u128 > COSET_GUARD {
                    return Err(Error::GuardExceeded {
                        what: "coset enumeration",
                        size: seen.len() as u128,
                        limit: COSET_GUARD,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// `(block_count, block_size)` of the twisted group algebra of `(Z/ell)^F`
/// under the bicharacter `e(theta|_F)`: the radical has `block_count`
/// elements and each block is `block_size x block_size`.
pub fn twisted_block_structure(
    theta: &SkewRationalMatrix,
    face: Face,
    ell: u64,
) -> Result<(u64, u64)> {
    if ell == 0 {
        return Err(Error::NotPositive("ell"));
    }
    let vertices = face.vertices();
    if let Some(&v) = vertices.iter().find(|&&v| v >= theta.n()) {
        return Err(Error::FaceOutOfRange {
            vertex: v,
            n: theta.n(),
        });
    }
    let k = vertices.len();
    let scaled = theta.restrict(&vertices).scaled(&BigInt::from(ell))?;
    let group = guarded_power(ell, k, TWISTED_GUARD, "twisted group enumeration")?;
    let a: Vec<Vec<u64>> = (0..k)
        .map(|r| (0..k).map(|c| residue(&scaled[(r, c)], ell)).collect())
        .collect();
    let mut radical = 0u64;
    for index in 0..group {
        let g = digits(index, ell, k);
        let pairs_trivially = a.iter().all(|row| {
            row.iter().zip(&g).fold(0u128, |s, (x, y)| {
                (s + (*x as u128) * (*y as u128)) % ell as u128
            }) == 0
        });
        if pairs_trivially {
            radical += 1;
        }
    }
    if group % radical != 0 {
        return Err(Error::InvariantViolated(
            "radical order does not divide group order".into(),
        ));
    }
    let quotient = group / radical;
    let size = quotient.sqrt();
    if size * size != quotient {
        return Err(Error::NotSquare(format!("[G : radical] = {}", quotient)));
    }
    Ok((radical, size))
}

/// Runs every oracle against `theta` and the faces in `table`.
/// A guard breach aborts the whole run: a partial certificate is never returned.
pub fn certify(theta: &SkewRationalMatrix, table: &[FaceInvariants]) -> Result<Vec<OracleReport>> {
    let ell = theta.ell();
    let l = ell.to_u64().ok_or(Error::GuardExceeded {
        what: "oracle modulus",
        size: u128::MAX,
        limit: u64::MAX as u128,
    })?;
    let mut out = Vec::new();
    let count = brute_image_count(&theta.integer_form(), l)?;
    out.push(OracleReport::new(
        "h (image count)",
        h_by_image_count(theta),
        BigUint::from(count),
    ));
    let kernel = crate::lattice::integrality_kernel(theta.as_matrix());
    let index = brute_coset_index(&kernel, &Lattice::standard(theta.n()))?;
    out.push(OracleReport::new(
        "h (kernel cosets)",
        h_by_kernel_index(theta),
        BigUint::from(index),
    ));
    for inv in table {
        let (count, size) = twisted_block_structure(theta, inv.face, l)?;
        let (main_count, _) = torus_fiber_blocks(theta, inv.face, &ell)?;
        out.push(OracleReport::new(
            format!("face {} block size", inv.face),
            inv.pi_degree.clone(),
            BigUint::from(size),
        ));
        out.push(OracleReport::new(
            format!("face {} block count", inv.face),
            main_count,
            BigUint::from(count),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn all_halves() -> SkewRationalMatrix {
        SkewRationalMatrix::from_rows(&[
            vec![r(0, 1), r(1, 2), r(1, 2)],
            vec![r(-1, 2), r(0, 1), r(1, 2)],
            vec![r(-1, 2), r(-1, 2), r(0, 1)],
        ])
        .unwrap()
    }

    #[test]
    fn image_count_examples() {
        assert_eq!(brute_image_count(&IntMatrix::zeros(3, 3), 5).unwrap(), 1);
        assert_eq!(
            brute_image_count(&IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]), 2).unwrap(),
            4
        );
        assert_eq!(
            brute_image_count(&all_halves().integer_form(), 2).unwrap(),
            4
        );
        let h = IntMatrix::from_i64(&[&[0, 2], &[-2, 0]]);
        assert_eq!(brute_image_count(&h, 4).unwrap(), 4);
        assert!(matches!(
            brute_image_count(&IntMatrix::zeros(8, 8), 10),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn coset_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(brute_coset_index(&z2, &z2).unwrap(), 1);
        let two = Lattice::scaled_standard(2, &BigInt::from(2));
        assert_eq!(brute_coset_index(&two, &z2).unwrap(), 4);
        assert_eq!(brute_coset_index(&z2, &two), Err(Error::NotContained));
        let k = crate::lattice::integrality_kernel(all_halves().as_matrix());
        assert_eq!(brute_coset_index(&k, &Lattice::standard(3)).unwrap(), 4);
        let big = Lattice::scaled_standard(2, &BigInt::from(1000));
        assert!(matches!(
            brute_coset_index(&big, &z2),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn twisted_examples() {
        let z = SkewRationalMatrix::zero(3);
        assert_eq!(
            twisted_block_structure(&z, Face::full(3), 2).unwrap(),
            (8, 1)
        );
        let half = SkewRationalMatrix::block_diagonal(0, &[r(1, 2)]);
        assert_eq!(
            twisted_block_structure(&half, Face::full(2), 2).unwrap(),
            (1, 2)
        );
        assert_eq!(
            twisted_block_structure(&all_halves(), Face::full(3), 2).unwrap(),
            (2, 2)
        );
        assert_eq!(
            twisted_block_structure(&all_halves(), Face::full(3), 3),
            Err(Error::NotIntegral)
        );
    }

    #[test]
    fn certify_all_halves() {
        let t = all_halves();
        let table = crate::faces::face_table(&t, Default::default()).unwrap();
        let reports = certify(&t, &table).unwrap();
        assert_eq!(reports.len(), 2 + 2 * 8);
        assert!(reports.iter().all(|r| r.agrees), "{:?}", reports);
    }

    #[test]
    fn certify_refuses_oversized_runs() {
        let big = SkewRationalMatrix::block_diagonal(0, &[r(1, 101), r(1, 103), r(1, 107)]);
        assert!(matches!(
            certify(&big, &[]),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
