//! Per-face invariants over the coordinate simplex with vertex set `[n]`.
//!
//! A point of the center's spectrum is represented only by the smallest face
//! containing its base point; every quantity here depends on nothing else.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integrality_kernel, lattice_index, lattice_restrict, Lattice};
use crate::theta::{azumaya_rank, exact_sqrt, SkewRationalMatrix};

/// Largest vertex count a [`Face`] can address.
pub const MAX_VERTICES: usize = 63;

/// A subset of `[n]`, stored as a bitmask. Vertices are 0-based internally
/// and displayed 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Face((1u64 << n) - 1)
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES);
        Face(1 << v)
    }

    pub fn from_vertices(vertices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::FaceOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << v))
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vec<usize> {
        (0..64).filter(|&v| self.contains(v)).collect()
    }

    fn check_within(self, n: usize) -> Result<()> {
        match self.vertices().into_iter().find(|&v| v >= n) {
            Some(vertex) => Err(Error::FaceOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }
}

/// Faces sort by size, then lexicographically by vertex list.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(&other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Upper bound on `n` for anything that walks all `2^n` faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceBound(pub usize);

impl Default for FaceBound {
    fn default() -> Self {
        FaceBound(20)
    }
}

impl FaceBound {
    fn check(self, n: usize) -> Result<()> {
        if n > self.0 || n > MAX_VERTICES {
            Err(Error::EnumerationBound {
                n,
                max: self.0.min(MAX_VERTICES),
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInvariants {
    pub face: Face,
    /// Azumaya rank of the restricted matrix `theta|_F`.
    pub h: BigUint,
    pub pi_degree: BigUint,
    /// `[(theta|_F)^perp : theta^perp ∩ Z^F]`: number of matrix blocks in a fiber.
    pub multiplicity: BigUint,
    /// `[theta^perp ∩ Z^F : ⊕_{i∈F} q_i Z]`.
    pub cover_degree: BigUint,
    /// Rank of `Z^n / (theta^perp ∩ Z^F)`.
    pub quotient_rank: usize,
}

/// Data shared by every face of one `theta`.
#[derive(Clone, Debug)]
pub struct FaceContext<'a> {
    theta: &'a SkewRationalMatrix,
    kernel: Lattice,
    q: Vec<BigInt>,
}

impl<'a> FaceContext<'a> {
    pub fn new(theta: &'a SkewRationalMatrix) -> Self {
        FaceContext {
            theta,
            kernel: integrality_kernel(theta.as_matrix()),
            q: theta.row_denominators(),
        }
    }

    pub fn kernel(&self) -> &Lattice {
        &self.kernel
    }

    pub fn q(&self) -> &[BigInt] {
        &self.q
    }

    /// `theta^perp ∩ Z^F`, re-indexed to `F`.
    pub fn restricted_kernel(&self, face: Face) -> Result<Lattice> {
        face.check_within(self.theta.n())?;
        lattice_restrict(&self.kernel, &face.vertices())
    }

    pub fn invariants(&self, face: Face) -> Result<FaceInvariants> {
        let n = self.theta.n();
        face.check_within(n)?;
        let vertices = face.vertices();
        let sub = self.theta.restrict(&vertices);
        let h = azumaya_rank(&sub);
        let pi_degree = exact_sqrt(&h, "face Azumaya rank")?;
        let gamma = lattice_restrict(&self.kernel, &vertices)?;
        let multiplicity = lattice_index(&gamma, &integrality_kernel(sub.as_matrix()))?;
        let q_face: Vec<BigInt> = vertices.iter().map(|&i| self.q[i].clone()).collect();
        let cover_degree = lattice_index(&Lattice::diagonal(&q_face), &gamma)?;
        Ok(FaceInvariants {
            face,
            h,
            pi_degree,
            multiplicity,
            cover_degree,
            quotient_rank: n - gamma.rank(),
        })
    }
}

pub fn face_invariants(theta: &SkewRationalMatrix, face: Face) -> Result<FaceInvariants> {
    FaceContext::new(theta).invariants(face)
}

#[cfg(feature = "parallel")]
fn map_faces<T: Send>(n: usize, f: impl Fn(Face) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..1u64 << n)
        .into_par_iter()
        .map(|bits| f(Face(bits)))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn map_faces<T>(n: usize, f: impl Fn(Face) -> T) -> Vec<T> {
    (0..1u64 << n).map(|bits| f(Face(bits))).collect()
}

/// `(F, h_{theta,F})` for every face, sorted.
pub fn face_ranks(theta: &SkewRationalMatrix, bound: FaceBound) -> Result<Vec<(Face, BigUint)>> {
    let n = theta.n();
    bound.check(n)?;
    let mut out = map_faces(n, |face| {
        (face, azumaya_rank(&theta.restrict(&face.vertices())))
    });
    out.sort_by_key(|a| a.0);
    Ok(out)
}

/// Full per-face table, sorted.
pub fn face_table(theta: &SkewRationalMatrix, bound: FaceBound) -> Result<Vec<FaceInvariants>> {
    let n = theta.n();
    bound.check(n)?;
    let ctx = FaceContext::new(theta);
    let mut out = map_faces(n, |face| ctx.invariants(face))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|a| a.face);
    Ok(out)
}

/// Faces on which the restricted Azumaya rank drops below the global one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpComplex {
    pub n: usize,
    pub faces: BTreeSet<Face>,
}

impl JumpComplex {
    /// Builds the family from a complete rank table and checks downward closure.
    pub fn from_ranks<'r>(
        n: usize,
        ranks: impl IntoIterator<Item = (Face, &'r BigUint)>,
    ) -> Result<Self> {
        let ranks: Vec<(Face, &BigUint)> = ranks.into_iter().collect();
        let full = Face::full(n);
        let h_total = ranks
            .iter()
            .find(|(f, _)| *f == full)
            .map(|(_, h)| *h)
            .ok_or_else(|| Error::InvariantViolated("rank table lacks the full face".into()))?;
        let faces = ranks
            .iter()
            .filter(|(_, h)| *h < h_total)
            .map(|(f, _)| *f)
            .collect();
        let jc = JumpComplex { n, faces };
        if !jc.is_downward_closed() {
            return Err(Error::InvariantViolated(
                "jump family is not a subcomplex".into(),
            ));
        }
        Ok(jc)
    }

    /// Closure under removing one vertex implies closure under all subsets.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            f.vertices()
                .into_iter()
                .all(|v| self.faces.contains(&f.without(v)))
        })
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Facets: faces not strictly contained in another member.
    pub fn maximal_faces(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g != *f && f.is_subset_of(*g)))
            .copied()
            .collect()
    }
}

pub fn jump_complex(theta: &SkewRationalMatrix, bound: FaceBound) -> Result<JumpComplex> {
    let ranks = face_ranks(theta, bound)?;
    JumpComplex::from_ranks(theta.n(), ranks.iter().map(|(f, h)| (*f, h)))
}

/// Faces whose relative interiors consist of Azumaya points: `h_{theta,F} = h_theta`.
pub fn azumaya_faces(theta: &SkewRationalMatrix, bound: FaceBound) -> Result<BTreeSet<Face>> {
    let ranks = face_ranks(theta, bound)?;
    let full = Face::full(theta.n());
    let h_total = ranks
        .iter()
        .find(|(f, _)| *f == full)
        .map(|(_, h)| h.clone())
        .unwrap_or_default();
    Ok(ranks
        .into_iter()
        .filter(|(_, h)| *h == h_total)
        .map(|(f, _)| f)
        .collect())
}

/// Minimal members of an upward-closed family of faces.
pub fn minimal_faces(faces: &BTreeSet<Face>) -> Vec<Face> {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && g.is_subset_of(**f)))
        .copied()
        .collect()
}

/// Whether the sphere algebra is Azumaya, i.e. `theta` is integral.
///
/// Panics if the entrywise test and `h_theta = 1` ever disagree.
pub fn is_azumaya(theta: &SkewRationalMatrix) -> bool {
    let integral = theta.is_integral();
    let trivial_rank = azumaya_rank(theta).is_one();
    assert_eq!(
        integral, trivial_rank,
        "integrality and h_theta = 1 disagree"
    );
    integral
}

/// Matrix-block shape of a fiber over an interior point of a face, after
/// tensoring with `M_{n_tensor}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStructure {
    pub block_size: BigUint,
    pub block_count: BigUint,
    pub total_dim: BigUint,
}

impl FiberStructure {
    pub fn from_invariants(inv: &FaceInvariants, n_tensor: &BigUint) -> Result<Self> {
        if n_tensor.is_zero() {
            return Err(Error::NotPositive("n_tensor"));
        }
        let block_size = n_tensor * &inv.pi_degree;
        let block_count = inv.multiplicity.clone();
        let total_dim = &block_count * &block_size * &block_size;
        Ok(FiberStructure {
            block_size,
            block_count,
            total_dim,
        })
    }
}

pub fn fiber_structure(
    theta: &SkewRationalMatrix,
    face: Face,
    n_tensor: &BigUint,
) -> Result<FiberStructure> {
    FiberStructure::from_invariants(&face_invariants(theta, face)?, n_tensor)
}

/// Blocks of the finite twisted group algebra on `(Z/ell)^F`, computed from lattices:
/// `([(theta|_F)^perp : ell Z^F], sqrt(h_{theta,F}))`.
pub fn torus_fiber_blocks(
    theta: &SkewRationalMatrix,
    face: Face,
    ell: &BigInt,
) -> Result<(BigUint, BigUint)> {
    face.check_within(theta.n())?;
    let sub = theta.restrict(&face.vertices());
    sub.scaled(ell)?;
    let kernel = integrality_kernel(sub.as_matrix());
    let count = lattice_index(&Lattice::scaled_standard(sub.n(), ell), &kernel)?;
    let size = exact_sqrt(&azumaya_rank(&sub), "face Azumaya rank")?;
    Ok((count, size))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonFace {
    pub face: Face,
    /// Rank of `theta^perp ∩ Z^F`.
    pub torus_rank: usize,
    pub cover_degree: BigUint,
}

/// Combinatorial skeleton of the center's spectrum as a branched cover of `S^{2n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSkeleton {
    pub n: usize,
    pub faces: Vec<SkeletonFace>,
    pub dim_x: usize,
    /// `theta^perp = ⊕ q_i Z`, which forces the spectrum to be a sphere.
    pub sphere_sufficient: bool,
}

impl CenterSkeleton {
    pub fn from_table(ctx: &FaceContext<'_>, n: usize, table: &[FaceInvariants]) -> Self {
        let faces: Vec<SkeletonFace> = table
            .iter()
            .map(|inv| SkeletonFace {
                face: inv.face,
                torus_rank: n - inv.quotient_rank,
                cover_degree: inv.cover_degree.clone(),
            })
            .collect();
        let full = Face::full(n);
        let generic_rank = faces
            .iter()
            .find(|f| f.face == full)
            .map_or(0, |f| f.torus_rank);
        CenterSkeleton {
            n,
            dim_x: n.saturating_sub(1) + generic_rank,
            sphere_sufficient: *ctx.kernel() == Lattice::diagonal(ctx.q()),
            faces,
        }
    }

    pub fn generic_cover_degree(&self) -> Option<&BigUint> {
        let full = Face::full(self.n);
        self.faces
            .iter()
            .find(|f| f.face == full)
            .map(|f| &f.cover_degree)
    }
}

pub fn center_skeleton(theta: &SkewRationalMatrix, bound: FaceBound) -> Result<CenterSkeleton> {
    let table = face_table(theta, bound)?;
    Ok(CenterSkeleton::from_table(
        &FaceContext::new(theta),
        theta.n(),
        &table,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use alloc::vec;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn half2() -> SkewRationalMatrix {
        SkewRationalMatrix::block_diagonal(0, &[r(1, 2)])
    }

    fn all_halves() -> SkewRationalMatrix {
        SkewRationalMatrix::from_rows(&[
            vec![r(0, 1), r(1, 2), r(1, 2)],
            vec![r(-1, 2), r(0, 1), r(1, 2)],
            vec![r(-1, 2), r(-1, 2), r(0, 1)],
        ])
        .unwrap()
    }

    fn f(vs: &[usize]) -> Face {
        Face::from_vertices(vs).unwrap()
    }

    fn u(x: u32) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn face_order_and_display() {
        let mut faces = vec![f(&[0, 2]), f(&[1]), Face::EMPTY, f(&[0, 1]), f(&[0])];
        faces.sort();
        assert_eq!(
            faces,
            vec![Face::EMPTY, f(&[0]), f(&[1]), f(&[0, 1]), f(&[0, 2])]
        );
        assert_eq!(alloc::format!("{}", f(&[0, 2])), "{1,3}");
        assert_eq!(alloc::format!("{}", Face::EMPTY), "{}");
    }

    #[test]
    fn empty_face_is_trivial() {
        for t in [all_halves(), half2(), SkewRationalMatrix::zero(2)] {
            let inv = face_invariants(&t, Face::EMPTY).unwrap();
            assert_eq!(
                (
                    inv.h.clone(),
                    inv.multiplicity.clone(),
                    inv.cover_degree.clone()
                ),
                (u(1), u(1), u(1))
            );
            assert_eq!(inv.quotient_rank, t.n());
        }
    }

    #[test]
    fn all_halves_face_examples() {
        let t = all_halves();
        let v = face_invariants(&t, f(&[0])).unwrap();
        assert_eq!((v.h, v.multiplicity, v.cover_degree), (u(1), u(2), u(1)));
        let e = face_invariants(&t, f(&[0, 1])).unwrap();
        assert_eq!((e.h, e.multiplicity), (u(4), u(1)));
        let full = face_invariants(&t, Face::full(3)).unwrap();
        assert_eq!(
            (full.h, full.multiplicity, full.cover_degree),
            (u(4), u(1), u(2))
        );
        assert_eq!(full.quotient_rank, 0);
        assert!(face_invariants(&t, f(&[3])).is_err());
    }

    #[test]
    fn jump_examples() {
        let b = FaceBound::default();
        assert!(jump_complex(&SkewRationalMatrix::zero(3), b)
            .unwrap()
            .is_empty());
        let j = jump_complex(&half2(), b).unwrap();
        assert_eq!(
            j.faces.iter().copied().collect::<Vec<_>>(),
            vec![Face::EMPTY, f(&[0]), f(&[1])]
        );
        let j = jump_complex(&all_halves(), b).unwrap();
        assert_eq!(
            j.faces.iter().copied().collect::<Vec<_>>(),
            vec![Face::EMPTY, f(&[0]), f(&[1]), f(&[2])]
        );
        assert_eq!(j.maximal_faces(), vec![f(&[0]), f(&[1]), f(&[2])]);
    }

    #[test]
    fn azumaya_face_examples() {
        let b = FaceBound::default();
        assert_eq!(
            azumaya_faces(&SkewRationalMatrix::zero(3), b)
                .unwrap()
                .len(),
            8
        );
        let a = azumaya_faces(&half2(), b).unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![f(&[0, 1])]);
        let a = azumaya_faces(&all_halves(), b).unwrap();
        assert!(a.iter().all(|face| face.len() >= 2));
        assert_eq!(a.len(), 4);
        assert_eq!(minimal_faces(&a), vec![f(&[0, 1]), f(&[0, 2]), f(&[1, 2])]);
    }

    #[test]
    fn enumeration_bound_enforced() {
        let t = SkewRationalMatrix::zero(4);
        assert_eq!(
            jump_complex(&t, FaceBound(3)),
            Err(Error::EnumerationBound { n: 4, max: 3 })
        );
    }

    #[test]
    fn azumaya_examples() {
        assert!(is_azumaya(&SkewRationalMatrix::zero(3)));
        assert!(!is_azumaya(&half2()));
        assert!(is_azumaya(&SkewRationalMatrix::block_diagonal(
            0,
            &[r(3, 1)]
        )));
    }

    #[test]
    fn fiber_examples() {
        let one = u(1);
        let z = SkewRationalMatrix::zero(3);
        let fs = fiber_structure(&z, f(&[0, 2]), &one).unwrap();
        assert_eq!(
            (fs.block_size, fs.block_count, fs.total_dim),
            (u(1), u(1), u(1))
        );
        let fs = fiber_structure(&all_halves(), f(&[0]), &one).unwrap();
        assert_eq!(
            (fs.block_size, fs.block_count, fs.total_dim),
            (u(1), u(2), u(2))
        );
        let fs = fiber_structure(&all_halves(), Face::full(3), &one).unwrap();
        assert_eq!(
            (fs.block_size, fs.block_count, fs.total_dim),
            (u(2), u(1), u(4))
        );
        let fs = fiber_structure(&all_halves(), Face::full(3), &u(3)).unwrap();
        assert_eq!((fs.block_size, fs.total_dim), (u(6), u(36)));
        assert_eq!(
            fiber_structure(&all_halves(), Face::EMPTY, &u(0)),
            Err(Error::NotPositive("n_tensor"))
        );
    }

    #[test]
    fn skeleton_examples() {
        let b = FaceBound::default();
        let sk = center_skeleton(&half2(), b).unwrap();
        assert_eq!(sk.dim_x, 3);
        assert!(sk.faces.iter().all(|f| f.cover_degree == u(1)));
        assert!(sk.sphere_sufficient);
        let sk = center_skeleton(&all_halves(), b).unwrap();
        assert_eq!(sk.dim_x, 5);
        assert_eq!(sk.generic_cover_degree(), Some(&u(2)));
        assert!(!sk.sphere_sufficient);
        let sk = center_skeleton(&SkewRationalMatrix::zero(4), b).unwrap();
        assert_eq!(sk.dim_x, 7);
        assert!(sk
            .faces
            .iter()
            .all(|f| f.cover_degree == u(1) && f.torus_rank == f.face.len()));
        assert!(sk.sphere_sufficient);
    }

    #[test]
    fn torus_blocks_match_hand_counts() {
        let (c, s) = torus_fiber_blocks(&all_halves(), Face::full(3), &BigInt::from(2)).unwrap();
        assert_eq!((c, s), (u(2), u(2)));
        let (c, s) = torus_fiber_blocks(&half2(), Face::full(2), &BigInt::from(2)).unwrap();
        assert_eq!((c, s), (u(1), u(2)));
        assert_eq!(
            torus_fiber_blocks(&all_halves(), Face::full(3), &BigInt::from(3)),
            Err(Error::NotIntegral)
        );
    }
}
