//! Sublattices of `Z^n` kept in row-style Hermite normal form.
//!
//! Because the Hermite form of a lattice is unique, two `Lattice` values
//! describe the same set exactly when they compare equal.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::normal_form::{hermite_in_place, smith_normal_form};
use crate::rational::RationalMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    /// Nonzero Hermite rows, increasing pivot columns.
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// The lattice spanned by `generators`, each of length `ambient`.
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: (1, ambient),
                found: (1, bad.len()),
            });
        }
        let mut entries = Vec::with_capacity(generators.len() * ambient);
        for g in generators {
            entries.extend(g.iter().cloned());
        }
        let mut m = IntMatrix::new(generators.len(), ambient, entries)?;
        let pivots = hermite_in_place(&mut m, None);
        let basis = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Ok(Lattice { ambient, basis })
    }

    /// The lattice spanned by the rows of `m`.
    pub fn from_rows(m: &IntMatrix) -> Self {
        Self::from_generators(m.cols(), &m.row_vecs()).expect("rows have matching width")
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Self::scaled_standard(n, &BigInt::one())
    }

    /// `k Z^n` for `k != 0`.
    pub fn scaled_standard(n: usize, k: &BigInt) -> Self {
        let diag: Vec<BigInt> = (0..n).map(|_| k.clone()).collect();
        Self::diagonal(&diag)
    }

    /// `d_1 Z x d_2 Z x ...`; zero entries contribute nothing.
    pub fn diagonal(d: &[BigInt]) -> Self {
        let n = d.len();
        let gens: Vec<Vec<BigInt>> = d
            .iter()
            .enumerate()
            .map(|(i, di)| {
                let mut v = alloc::vec![BigInt::zero(); n];
                v[i] = di.clone();
                v
            })
            .collect();
        Self::from_generators(n, &gens).expect("square diagonal")
    }

    pub fn zero(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.basis).unwrap_or_else(|_| IntMatrix::zeros(0, self.ambient))
    }

    fn pivot_col(row: &[BigInt]) -> usize {
        row.iter()
            .position(|e| !e.is_zero())
            .expect("basis rows are nonzero")
    }

    /// Membership by back-substitution through the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rest = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot_col(row);
            if rest[..p].iter().any(|e| !e.is_zero()) {
                return false;
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|b| self.contains(b))
    }

    /// Covolume `[Z^n : self]` of a full-rank lattice.
    pub fn covolume(&self) -> Result<BigUint> {
        if !self.is_full_rank() {
            return Err(Error::InfiniteIndex {
                rank: self.rank(),
                ambient: self.ambient,
            });
        }
        let det = self
            .basis
            .iter()
            .fold(BigInt::one(), |acc, row| acc * &row[Self::pivot_col(row)]);
        Ok(det.abs().to_biguint().expect("nonnegative"))
    }
}

/// `[sup : sub]` for full-rank `sub ⊆ sup`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<BigUint> {
    if sub.ambient != sup.ambient {
        return Err(Error::AmbientMismatch {
            left: sub.ambient,
            right: sup.ambient,
        });
    }
    if !sub.is_full_rank() {
        return Err(Error::InfiniteIndex {
            rank: sub.rank(),
            ambient: sub.ambient,
        });
    }
    if !sup.contains_lattice(sub) {
        return Err(Error::NotContained);
    }
    let (a, b) = (sub.covolume()?, sup.covolume()?);
    debug_assert!((&a % &b).is_zero());
    Ok(a / b)
}

/// `L ∩ Z^F`, re-indexed to the coordinates of `face` (which must be increasing).
pub fn lattice_restrict(l: &Lattice, face: &[usize]) -> Result<Lattice> {
    let n = l.ambient;
    if let Some(&v) = face.iter().find(|&&v| v >= n) {
        return Err(Error::FaceOutOfRange { vertex: v, n });
    }
    debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
    if l.basis.is_empty() || face.is_empty() {
        return Ok(Lattice::zero(face.len()));
    }
    // Outside coordinates first, so the echelon rows vanishing there span the intersection.
    let outside: Vec<usize> = (0..n).filter(|i| !face.contains(i)).collect();
    let order: Vec<usize> = outside.iter().chain(face.iter()).copied().collect();
    let permuted: Vec<Vec<BigInt>> = l
        .basis
        .iter()
        .map(|row| order.iter().map(|&i| row[i].clone()).collect())
        .collect();
    let reduced = Lattice::from_generators(n, &permuted)?;
    let inside: Vec<Vec<BigInt>> = reduced
        .basis
        .iter()
        .filter(|row| row[..outside.len()].iter().all(Zero::is_zero))
        .map(|row| row[outside.len()..].to_vec())
        .collect();
    Lattice::from_generators(face.len(), &inside)
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Result<Lattice> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch {
            left: a.ambient,
            right: b.ambient,
        });
    }
    let gens: Vec<Vec<BigInt>> = a.basis.iter().chain(b.basis.iter()).cloned().collect();
    Lattice::from_generators(a.ambient, &gens)
}

/// `{ m ∈ Z^n : A m ∈ Z^n }` for a rational `A` with `n` columns.
///
/// With `H = ell * A` integral and `U H V = S` in Smith form, the condition
/// is `s_i y_i ≡ 0 (mod ell)` for `y = V^{-1} m`.
pub fn integrality_kernel(a: &RationalMatrix) -> Lattice {
    let n = a.cols();
    let ell = a.common_denominator();
    let h = a
        .scaled_to_integer(&ell)
        .expect("common denominator clears A");
    let (s, _, v) = smith_normal_form(&h);
    let gens: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let si = if i < s.rows() {
                s[(i, i)].clone()
            } else {
                BigInt::zero()
            };
            let step = &ell / si.gcd(&ell);
            (0..n).map(|r| &v[(r, i)] * &step).collect()
        })
        .collect();
    Lattice::from_generators(n, &gens).expect("square generator set")
}
