//! Invariants of a single rational skew-symmetric deformation matrix.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integrality_kernel, lattice_index, lattice_sum, Lattice};
use crate::matrix::IntMatrix;
use crate::normal_form::{skew_normal_form, smith_diagonal, SkewNormalForm};
use crate::rational::{denominator_lcm, Rational, RationalMatrix};

/// A skew-symmetric matrix with rational entries and zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewRationalMatrix {
    inner: RationalMatrix,
}

impl SkewRationalMatrix {
    /// Validates row-major `entries` of an `n x n` matrix, reporting the first
    /// violated condition in row-major order.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        let inner = RationalMatrix::new(n, n, entries)?;
        for i in 0..n {
            for j in 0..n {
                if i == j && !inner.get(i, i).is_zero() {
                    return Err(Error::NonzeroDiagonal { index: i });
                }
                if j > i && *inner.get(i, j) != -inner.get(j, i) {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(SkewRationalMatrix { inner })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: (n, n),
                found: (n, bad.len()),
            });
        }
        Self::new(n, rows.iter().flatten().cloned().collect())
    }

    /// Integer skew matrix divided by `denominator`.
    pub fn from_scaled(h: &IntMatrix, denominator: &BigInt) -> Result<Self> {
        if !denominator.is_positive() {
            return Err(Error::NotPositive("denominator"));
        }
        let mut entries = Vec::with_capacity(h.rows() * h.cols());
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                entries.push(Rational::new(h[(r, c)].clone(), denominator.clone()));
            }
        }
        if !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (h.rows(), h.rows()),
                found: (h.rows(), h.cols()),
            });
        }
        Self::new(h.rows(), entries)
    }

    pub fn zero(n: usize) -> Self {
        SkewRationalMatrix {
            inner: RationalMatrix::zeros(n, n),
        }
    }

    /// `diag(0_k, [[0, f_1], [-f_1, 0]], ...)`.
    pub fn block_diagonal(zero_rank: usize, factors: &[Rational]) -> Self {
        let n = zero_rank + 2 * factors.len();
        let mut rows = alloc::vec![alloc::vec![Rational::zero(); n]; n];
        for (i, f) in factors.iter().enumerate() {
            let a = zero_rank + 2 * i;
            rows[a][a + 1] = f.clone();
            rows[a + 1][a] = -f;
        }
        Self::from_rows(&rows).expect("block matrix is skew")
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.inner.get(i, j)
    }

    pub fn as_matrix(&self) -> &RationalMatrix {
        &self.inner
    }

    /// `ell`: least common multiple of all entry denominators.
    pub fn ell(&self) -> BigInt {
        self.inner.common_denominator()
    }

    /// `k * self` as an integer matrix; fails unless every entry becomes integral.
    pub fn scaled(&self, k: &BigInt) -> Result<IntMatrix> {
        self.inner.scaled_to_integer(k)
    }

    /// `H = ell * theta`.
    pub fn integer_form(&self) -> IntMatrix {
        self.scaled(&self.ell())
            .expect("ell clears all denominators")
    }

    pub fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    /// `q_i`: lcm of the denominators in row `i`.
    pub fn row_denominators(&self) -> Vec<BigInt> {
        (0..self.n())
            .map(|i| denominator_lcm((0..self.n()).map(|j| self.get(i, j))))
            .collect()
    }

    /// Principal submatrix on `indices` (increasing, in range).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        SkewRationalMatrix {
            inner: RationalMatrix::new(k, k, entries).expect("square"),
        }
    }

    /// `T * self * T^t`.
    pub fn congruent_by(&self, t: &IntMatrix) -> Result<Self> {
        let ell = self.ell();
        let h = self.integer_form().congruent_by(t)?;
        Self::from_scaled(&h, &ell)
    }
}

/// All global invariants of `theta` gathered in one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaProfile {
    pub theta: SkewRationalMatrix,
    pub ell: BigInt,
    pub integer_form: IntMatrix,
    /// Integral kernel `{ m : theta m ∈ Z^n }`.
    pub kernel: Lattice,
    /// Azumaya rank.
    pub h: BigUint,
    pub pi_degree: BigUint,
    pub q: Vec<BigInt>,
    pub normal_form: SkewNormalForm,
}

/// Exact square root, or an error naming `what`.
pub(crate) fn exact_sqrt(v: &BigUint, what: &str) -> Result<BigUint> {
    let r = v.sqrt();
    if &r * &r == *v {
        Ok(r)
    } else {
        Err(Error::NotSquare(format!("{} = {}", what, v)))
    }
}

/// `[(Z^n + theta Z^n) : Z^n]`, computed after scaling by `ell` as
/// `[(ell Z^n + H Z^n) : ell Z^n]`.
pub fn azumaya_rank(theta: &SkewRationalMatrix) -> BigUint {
    let n = theta.n();
    let ell = theta.ell();
    let h = theta.integer_form();
    let scaled = Lattice::scaled_standard(n, &ell);
    let image = Lattice::from_rows(&h.transpose());
    let sum = lattice_sum(&scaled, &image).expect("same ambient");
    lattice_index(&scaled, &sum).expect("ell Z^n is full rank inside the sum")
}

pub fn profile(theta: &SkewRationalMatrix) -> Result<ThetaProfile> {
    let h = azumaya_rank(theta);
    let pi_degree = exact_sqrt(&h, "Azumaya rank")?;
    let integer_form = theta.integer_form();
    let normal_form = skew_normal_form(&integer_form)?;
    let p = ThetaProfile {
        ell: theta.ell(),
        kernel: integrality_kernel(theta.as_matrix()),
        q: theta.row_denominators(),
        theta: theta.clone(),
        integer_form,
        h,
        pi_degree,
        normal_form,
    };
    debug_assert!(p
        .kernel
        .contains_lattice(&Lattice::scaled_standard(theta.n(), &p.ell)));
    Ok(p)
}

/// Size of the image of `H = ell * theta` acting on `(Z/ell)^n`, read off the Smith form.
pub fn h_by_image_count(theta: &SkewRationalMatrix) -> BigUint {
    h_by_image_count_with_ell(theta, &theta.ell()).expect("ell clears all denominators")
}

/// As [`h_by_image_count`] with an explicit positive multiple `ell` of the denominators.
pub fn h_by_image_count_with_ell(theta: &SkewRationalMatrix, ell: &BigInt) -> Result<BigUint> {
    if !ell.is_positive() {
        return Err(Error::NotPositive("ell"));
    }
    let h = theta.scaled(ell)?;
    let count = smith_diagonal(&h)
        .iter()
        .fold(BigInt::one(), |acc, s| acc * (ell / s.gcd(ell)));
    Ok(count.to_biguint().expect("positive"))
}

/// `[Z^n : theta^perp]`.
pub fn h_by_kernel_index(theta: &SkewRationalMatrix) -> BigUint {
    let kernel = integrality_kernel(theta.as_matrix());
    lattice_index(&kernel, &Lattice::standard(theta.n())).expect("kernel has full rank")
}

/// Unimodular change of basis splitting `theta` into a commutative part and 2x2 blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDecomposition {
    /// Rank of the commutative (zero) block.
    pub k: usize,
    /// Nonzero block parameters `p_i / q_i` in lowest terms.
    pub factors: Vec<Rational>,
    /// `witness * theta * witness^t` is the block matrix with the zero block first.
    pub witness: IntMatrix,
}

impl TorusDecomposition {
    pub fn block_matrix(&self) -> SkewRationalMatrix {
        SkewRationalMatrix::block_diagonal(self.k, &self.factors)
    }
}

pub fn decompose(theta: &SkewRationalMatrix) -> Result<TorusDecomposition> {
    let ell = theta.ell();
    let form = skew_normal_form(&theta.integer_form())?;
    let n = theta.n();
    let r = 2 * form.divisors.len();
    // skew_normal_form puts the zero block last; rotate it to the front.
    let mut witness = IntMatrix::zeros(n, n);
    for (dst, src) in (r..n).chain(0..r).enumerate() {
        for c in 0..n {
            witness[(dst, c)] = form.transform[(src, c)].clone();
        }
    }
    let factors = form
        .divisors
        .iter()
        .map(|d| Rational::new(d.clone(), ell.clone()))
        .collect();
    Ok(TorusDecomposition {
        k: form.zero_rank,
        factors,
        witness,
    })
}

/// Skew elementary divisors of `scale * theta`, with the zero rank.
fn divisor_chain(theta: &SkewRationalMatrix, scale: &BigInt) -> Result<(Vec<BigInt>, usize)> {
    let f = skew_normal_form(&theta.scaled(scale)?)?;
    Ok((f.divisors, f.zero_rank))
}

/// Whether `theta' = T theta T^t` for some `T ∈ GL_n(Z)`.
pub fn congruent_over_z(theta: &SkewRationalMatrix, theta_prime: &SkewRationalMatrix) -> bool {
    if theta.n() != theta_prime.n() {
        return false;
    }
    let ell = theta.ell().lcm(&theta_prime.ell());
    match (divisor_chain(theta, &ell), divisor_chain(theta_prime, &ell)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Skew elementary divisors and zero rank of `ell * theta`.
pub type DivisorChain = (Vec<BigInt>, usize);

/// Both skew divisor chains at the common denominator, for display.
pub fn congruence_chains(
    theta: &SkewRationalMatrix,
    theta_prime: &SkewRationalMatrix,
) -> Result<(BigInt, DivisorChain, DivisorChain)> {
    let ell = theta.ell().lcm(&theta_prime.ell());
    Ok((
        ell.clone(),
        divisor_chain(theta, &ell)?,
        divisor_chain(theta_prime, &ell)?,
    ))
}
