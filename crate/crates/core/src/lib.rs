//! Exact invariants of rational noncommutative tori `A^n_theta` and the
//! spheres `C(S^{2n-1}_theta)` built from them.
//!
//! Everything is integer or rational arithmetic on arbitrary-precision
//! values; there is no floating point anywhere. The crate is `no_std` with
//! `alloc`; the `parallel` feature enables `std` and evaluates the `2^n`
//! faces of the simplex concurrently.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classification;
mod error;
pub mod faces;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod oracles;
pub mod rational;
pub mod theta;

pub use classification::{
    center_finiteness, characteristic_two_class, class_chain_check, decide_rank_one, fiber_k0_rank,
    iso_sphere3, iso_torus2, recovery_invariants, AlgebraDescriptor, AlgebraKind, CharClass,
    IsoRelation, IsoVerdict, RecoveryInvariants,
};
pub use error::{Error, Result};
pub use faces::{
    azumaya_faces, center_skeleton, face_invariants, face_table, fiber_structure, is_azumaya,
    jump_complex, CenterSkeleton, Face, FaceBound, FaceInvariants, FiberStructure, JumpComplex,
};
pub use lattice::{integrality_kernel, lattice_index, lattice_restrict, lattice_sum, Lattice};
pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, skew_normal_form, smith_normal_form, SkewNormalForm};
pub use oracles::OracleReport;
pub use rational::{parse_rational, Rational, RationalMatrix};
pub use theta::{
    congruent_over_z, decompose, h_by_image_count, h_by_kernel_index, profile, SkewRationalMatrix,
    ThetaProfile, TorusDecomposition,
};
