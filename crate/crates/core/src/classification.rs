//! Isomorphism decisions for 3-spheres and 2-tori, their characteristic-class
//! arithmetic, and invariants that recover `(m, n)` from `C(S^{2m-1}_theta) ⊗ M_n`
//! or `C(T^m_theta) ⊗ M_n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::faces::{face_invariants, Face, FaceContext};
use crate::normal_form::xgcd;
use crate::rational::Rational;
use crate::theta::{azumaya_rank, exact_sqrt, SkewRationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Torus,
    Sphere,
}

/// `C(T^m_theta) ⊗ M_n` or `C(S^{2m-1}_theta) ⊗ M_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    kind: AlgebraKind,
    theta: SkewRationalMatrix,
    n_tensor: BigUint,
}

impl AlgebraDescriptor {
    pub fn new(kind: AlgebraKind, theta: SkewRationalMatrix, n_tensor: BigUint) -> Result<Self> {
        if n_tensor.is_zero() {
            return Err(Error::NotPositive("n_tensor"));
        }
        if theta.n() < 1 || (kind == AlgebraKind::Sphere && theta.n() < 2) {
            return Err(Error::DimensionMismatch {
                expected: (2, 2),
                found: (theta.n(), theta.n()),
            });
        }
        Ok(AlgebraDescriptor {
            kind,
            theta,
            n_tensor,
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.theta.n()
    }

    pub fn theta(&self) -> &SkewRationalMatrix {
        &self.theta
    }

    pub fn n_tensor(&self) -> &BigUint {
        &self.n_tensor
    }
}

/// A class in `Z/(qn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharClass {
    pub modulus: BigInt,
    pub residue: BigInt,
}

impl CharClass {
    pub fn negated(&self) -> CharClass {
        CharClass {
            modulus: self.modulus.clone(),
            residue: (-&self.residue).mod_floor(&self.modulus),
        }
    }

    pub fn equal_up_to_sign(&self, other: &CharClass) -> bool {
        self.modulus == other.modulus && (self == other || *self == other.negated())
    }
}

/// Inverse of `p` modulo `q` in `[0, q)`; `q = 1` gives 0.
pub fn mod_inverse(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    if !q.is_positive() {
        return Err(Error::NotPositive("q"));
    }
    let (g, s, _) = xgcd(&p.mod_floor(q), q);
    if !g.is_one() {
        return Err(Error::NotCoprime);
    }
    Ok(s.mod_floor(q))
}

/// The class `n * p~` in `Z/(qn)`, where `p~` inverts `p` modulo `q`.
pub fn characteristic_two_class(p: &BigInt, q: &BigInt, n: &BigInt) -> Result<CharClass> {
    if !n.is_positive() {
        return Err(Error::NotPositive("n"));
    }
    let inv = mod_inverse(p, q)?;
    let modulus = q * n;
    Ok(CharClass {
        residue: (n * inv).mod_floor(&modulus),
        modulus,
    })
}

/// Which trivial modification relates two isomorphic parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoRelation {
    /// `theta - theta' ∈ Z`
    Difference,
    /// `theta + theta' ∈ Z`
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic(IsoRelation),
    DifferentTensorSize,
    UnrelatedParameters,
}

impl IsoVerdict {
    pub fn is_isomorphic(self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Decides `C(S^3_theta) ⊗ M_n ≅ C(S^3_theta') ⊗ M_n'` for rational parameters.
/// The same criterion decides the 2-torus case.
pub fn decide_rank_one(
    theta: &Rational,
    n: &BigUint,
    theta_prime: &Rational,
    n_prime: &BigUint,
) -> IsoVerdict {
    if n != n_prime {
        IsoVerdict::DifferentTensorSize
    } else if (theta - theta_prime).is_integer() {
        IsoVerdict::Isomorphic(IsoRelation::Difference)
    } else if (theta + theta_prime).is_integer() {
        IsoVerdict::Isomorphic(IsoRelation::Sum)
    } else {
        IsoVerdict::UnrelatedParameters
    }
}

pub fn iso_sphere3(
    theta: &Rational,
    n: &BigUint,
    theta_prime: &Rational,
    n_prime: &BigUint,
) -> bool {
    decide_rank_one(theta, n, theta_prime, n_prime).is_isomorphic()
}

pub fn iso_torus2(
    theta: &Rational,
    n: &BigUint,
    theta_prime: &Rational,
    n_prime: &BigUint,
) -> bool {
    decide_rank_one(theta, n, theta_prime, n_prime).is_isomorphic()
}

/// Compares the classes of `p/q` and `p'/q` up to sign modulo `qn`.
///
/// Panics if that comparison ever disagrees with `q | p ± p'` or with
/// [`iso_sphere3`] at equal tensor size.
pub fn class_chain_check(
    p: &BigInt,
    q: &BigInt,
    p_prime: &BigInt,
    q_prime: &BigInt,
    n: &BigInt,
) -> Result<bool> {
    if q != q_prime {
        return Err(Error::DenominatorMismatch);
    }
    let c = characteristic_two_class(p, q, n)?;
    let c_prime = characteristic_two_class(p_prime, q, n)?;
    let by_class = c.equal_up_to_sign(&c_prime);
    let by_divisibility = (p - p_prime).is_multiple_of(q) || (p + p_prime).is_multiple_of(q);
    let size = n.to_biguint().expect("n checked positive");
    let by_parameters = iso_sphere3(
        &Rational::new(p.clone(), q.clone()),
        &size,
        &Rational::new(p_prime.clone(), q.clone()),
        &size,
    );
    assert_eq!(
        by_class, by_divisibility,
        "class comparison disagrees with q | p ± p'"
    );
    assert_eq!(
        by_divisibility, by_parameters,
        "q | p ± p' disagrees with the parameter test"
    );
    Ok(by_class)
}

/// Isomorphism invariants that pin down `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecoveryInvariants {
    pub min_irrep_dim: BigUint,
    pub k0_rank: BigUint,
    pub identity_divisibility: BigUint,
    pub dim_center_spectrum: usize,
}

pub fn recovery_invariants(d: &AlgebraDescriptor) -> Result<RecoveryInvariants> {
    let m = d.m();
    let theta = d.theta();
    let n = d.n_tensor().clone();
    let ctx = FaceContext::new(theta);
    let kernel_rank = ctx.kernel().rank();
    let k0_rank = fiber_k0_rank_with(&ctx, m, Face::EMPTY)?;
    match d.kind() {
        AlgebraKind::Sphere => {
            let smallest = (0..m)
                .map(|v| face_invariants(theta, Face::singleton(v)).map(|inv| inv.pi_degree))
                .collect::<Result<alloc::vec::Vec<_>>>()?
                .into_iter()
                .min()
                .unwrap_or_else(BigUint::one);
            Ok(RecoveryInvariants {
                min_irrep_dim: &n * smallest,
                k0_rank,
                identity_divisibility: n,
                dim_center_spectrum: m - 1 + kernel_rank,
            })
        }
        AlgebraKind::Torus => {
            let pi = exact_sqrt(&azumaya_rank(theta), "Azumaya rank")?;
            Ok(RecoveryInvariants {
                min_irrep_dim: &n * pi,
                k0_rank,
                identity_divisibility: n,
                dim_center_spectrum: kernel_rank,
            })
        }
    }
}

fn fiber_k0_rank_with(ctx: &FaceContext<'_>, m: usize, face: Face) -> Result<BigUint> {
    if face == Face::full(m) {
        return Err(Error::FullFace);
    }
    let r = m - ctx.restricted_kernel(face)?.rank();
    if r == 0 {
        return Err(Error::InvariantViolated(
            "quotient of a proper face has rank 0".into(),
        ));
    }
    Ok(BigUint::one() << (r - 1))
}

/// `2^{r-1}` with `r = rank(Z^m / (theta^perp ∩ Z^F))`, for a proper face `F`.
pub fn fiber_k0_rank(theta: &SkewRationalMatrix, face: Face) -> Result<BigUint> {
    fiber_k0_rank_with(&FaceContext::new(theta), theta.n(), face)
}

/// `(algebraically center-finite, topologically center-finite)`.
pub fn center_finiteness(theta: &SkewRationalMatrix) -> (bool, bool) {
    (theta.is_integral(), true)
}
