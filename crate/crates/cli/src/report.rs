//! The invariant report: one serializable bundle per input matrix.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use ncsphere_core::faces::{minimal_faces, FaceContext};
use ncsphere_core::oracles::certify;
use ncsphere_core::{
    azumaya_faces, center_finiteness, decompose, face_table, fiber_k0_rank, is_azumaya,
    jump_complex, profile, recovery_invariants, AlgebraDescriptor, CenterSkeleton, Face, FaceBound,
    FiberStructure,
};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::input::{Input, MatrixFile};

/// How many faces the report lists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FacesMode {
    /// Every face of the simplex.
    #[default]
    All,
    /// Facets of the jump complex and minimal Azumaya faces.
    Maximal,
    /// Every jump face and the minimal Azumaya faces.
    Jump,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub faces: FacesMode,
    pub oracle: bool,
    pub bound: FaceBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub ell: String,
    pub h: String,
    pub pi_degree: String,
    pub q: Vec<String>,
    pub kernel_basis: Vec<Vec<String>>,
    pub skew_divisors: Vec<String>,
    pub zero_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub k: usize,
    pub factors: Vec<String>,
    pub witness: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonRow {
    pub face: Vec<usize>,
    pub torus_rank: usize,
    pub cover_degree: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonSummary {
    pub dim_x: usize,
    pub generic_cover_degree: String,
    pub sphere_sufficient: bool,
    pub faces: Vec<SkeletonRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRow {
    pub face: Vec<usize>,
    pub h: String,
    pub pi_degree: String,
    pub multiplicity: String,
    pub cover_degree: String,
    pub block_size: String,
    pub block_count: String,
    pub total_dim: String,
    pub k0_rank: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finiteness {
    pub algebraic: bool,
    pub topological: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverySummary {
    pub min_irrep_dim: String,
    pub k0_rank: String,
    pub identity_divisibility: String,
    pub dim_center_spectrum: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub checked_quantity: String,
    pub main_value: String,
    pub oracle_value: String,
    pub agrees: bool,
}

/// Everything `ncsphere report` prints. Big integers are decimal strings and
/// faces are sorted lists of 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input: MatrixFile,
    pub profile: ProfileSummary,
    pub decomposition: DecompositionSummary,
    pub faces_shown: FacesMode,
    pub azumaya: bool,
    pub jump_complex: Vec<Vec<usize>>,
    pub azumaya_faces: Vec<Vec<usize>>,
    pub center_skeleton: SkeletonSummary,
    pub fibers: Vec<FiberRow>,
    pub center_finiteness: Finiteness,
    pub recovery: RecoverySummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleRow>>,
}

fn face_list(f: Face) -> Vec<usize> {
    f.vertices().into_iter().map(|v| v + 1).collect()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn build_report(input: &Input, opts: &ReportOptions) -> Result<InvariantReport, CliError> {
    let theta = &input.theta;
    let n = theta.n();
    let descriptor = AlgebraDescriptor::new(input.kind, theta.clone(), input.n_tensor.clone())?;

    let prof = profile(theta)?;
    let decomposition = decompose(theta)?;
    let table = face_table(theta, opts.bound)?;
    let jumps = jump_complex(theta, opts.bound)?;
    let az = azumaya_faces(theta, opts.bound)?;
    let ctx = FaceContext::new(theta);
    let skeleton = CenterSkeleton::from_table(&ctx, n, &table);
    let full = Face::full(n);

    let mut fibers = Vec::with_capacity(table.len());
    for inv in &table {
        let fiber = FiberStructure::from_invariants(inv, &input.n_tensor)?;
        // The fiber over the open top cell is finite dimensional: its K0 is free on its blocks.
        let k0 = if inv.face == full {
            fiber.block_count.clone()
        } else {
            fiber_k0_rank(theta, inv.face)?
        };
        fibers.push((inv, fiber, k0));
    }

    // Self-consistency: a violation here is a bug, never a report.
    assert_eq!(
        &prof.pi_degree * &prof.pi_degree,
        prof.h,
        "pi_degree^2 != h"
    );
    assert_eq!(
        jumps.faces.len() + az.len(),
        1usize << n,
        "jump and Azumaya faces do not cover the simplex"
    );
    assert!(
        jumps.faces.iter().all(|f| !az.contains(f)),
        "a face is both jump and Azumaya"
    );
    assert!(
        jumps.is_downward_closed(),
        "jump family is not a subcomplex"
    );
    assert_eq!(skeleton.dim_x, 2 * n - 1, "dim X != 2n - 1");
    let azumaya = is_azumaya(theta);
    assert_eq!(
        azumaya,
        jumps.is_empty(),
        "Azumaya verdict disagrees with the jump complex"
    );
    for (inv, fiber, _) in &fibers {
        assert_eq!(
            &inv.pi_degree * &inv.pi_degree,
            inv.h,
            "face pi_degree^2 != h_F"
        );
        let blocks = &fiber.block_count * &fiber.block_size * &fiber.block_size;
        assert_eq!(
            blocks, fiber.total_dim,
            "fiber blocks do not fill the fiber"
        );
    }
    let q_prod: BigInt = prof.q.iter().product();
    let generic = skeleton
        .generic_cover_degree()
        .cloned()
        .unwrap_or_else(BigUint::one);
    assert_eq!(
        BigInt::from(&generic * &prof.h),
        q_prod,
        "generic cover degree * h != prod q_i"
    );

    let oracle = if opts.oracle {
        let reports = certify(theta, &table)?;
        assert!(
            reports.iter().all(|r| r.agrees),
            "oracle disagreement: {reports:?}"
        );
        Some(
            reports
                .into_iter()
                .map(|r| OracleRow {
                    checked_quantity: r.checked_quantity,
                    main_value: r.main_value.to_string(),
                    oracle_value: r.oracle_value.to_string(),
                    agrees: r.agrees,
                })
                .collect(),
        )
    } else {
        None
    };

    let az_min: BTreeSet<Face> = minimal_faces(&az).into_iter().collect();
    let (jump_shown, az_shown): (BTreeSet<Face>, BTreeSet<Face>) = match opts.faces {
        FacesMode::All => (jumps.faces.clone(), az.clone()),
        FacesMode::Maximal => (jumps.maximal_faces().into_iter().collect(), az_min),
        FacesMode::Jump => (jumps.faces.clone(), az_min),
    };
    let shown = |f: Face| f == full || jump_shown.contains(&f) || az_shown.contains(&f);

    let recovery = recovery_invariants(&descriptor)?;
    let (algebraic, topological) = center_finiteness(theta);
    Ok(InvariantReport {
        input: MatrixFile::from_input(input),
        profile: ProfileSummary {
            ell: prof.ell.to_string(),
            h: prof.h.to_string(),
            pi_degree: prof.pi_degree.to_string(),
            q: strings(&prof.q),
            kernel_basis: prof.kernel.basis().iter().map(|v| strings(v)).collect(),
            skew_divisors: strings(&prof.normal_form.divisors),
            zero_rank: prof.normal_form.zero_rank,
        },
        decomposition: DecompositionSummary {
            k: decomposition.k,
            factors: strings(&decomposition.factors),
            witness: decomposition
                .witness
                .row_vecs()
                .iter()
                .map(|v| strings(v))
                .collect(),
        },
        faces_shown: opts.faces,
        azumaya,
        jump_complex: jump_shown.iter().map(|&f| face_list(f)).collect(),
        azumaya_faces: az_shown.iter().map(|&f| face_list(f)).collect(),
        center_skeleton: SkeletonSummary {
            dim_x: skeleton.dim_x,
            generic_cover_degree: generic.to_string(),
            sphere_sufficient: skeleton.sphere_sufficient,
            faces: skeleton
                .faces
                .iter()
                .filter(|s| shown(s.face))
                .map(|s| SkeletonRow {
                    face: face_list(s.face),
                    torus_rank: s.torus_rank,
                    cover_degree: s.cover_degree.to_string(),
                })
                .collect(),
        },
        fibers: fibers
            .into_iter()
            .filter(|(inv, _, _)| shown(inv.face))
            .map(|(inv, fiber, k0)| FiberRow {
                face: face_list(inv.face),
                h: inv.h.to_string(),
                pi_degree: inv.pi_degree.to_string(),
                multiplicity: inv.multiplicity.to_string(),
                cover_degree: inv.cover_degree.to_string(),
                block_size: fiber.block_size.to_string(),
                block_count: fiber.block_count.to_string(),
                total_dim: fiber.total_dim.to_string(),
                k0_rank: k0.to_string(),
            })
            .collect(),
        center_finiteness: Finiteness {
            algebraic,
            topological,
        },
        recovery: RecoverySummary {
            min_irrep_dim: recovery.min_irrep_dim.to_string(),
            k0_rank: recovery.k0_rank.to_string(),
            identity_divisibility: recovery.identity_divisibility.to_string(),
            dim_center_spectrum: recovery.dim_center_spectrum,
        },
        oracle,
    })
}

pub fn render_json(report: &InvariantReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn fmt_face(f: &[usize]) -> String {
    let inner: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn fmt_faces(fs: &[Vec<usize>]) -> String {
    if fs.is_empty() {
        return "(none)".into();
    }
    fs.iter().map(|f| fmt_face(f)).collect::<Vec<_>>().join(" ")
}

fn fmt_row(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

pub fn render_text(r: &InvariantReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let line = |w: &mut String, label: &str, def: &str, value: &str| {
        let _ = writeln!(w, "  {label:<22} {value:<12} {def}");
    };
    let kind = r.input.kind.as_deref().unwrap_or("sphere");
    let nt = r
        .input
        .n_tensor
        .as_ref()
        .map(|v| v.as_str().map(str::to_string).unwrap_or(v.to_string()));
    let _ = writeln!(
        w,
        "theta ({0}x{0}), kind {kind}, n_tensor {1}",
        r.input.n,
        nt.unwrap_or_else(|| "1".into())
    );
    for row in &r.input.entries {
        let cells: Vec<String> = row
            .iter()
            .map(|v| v.as_str().map(str::to_string).unwrap_or(v.to_string()))
            .collect();
        let _ = writeln!(
            w,
            "  [{}]",
            cells
                .iter()
                .map(|c| format!("{c:>6}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }

    let p = &r.profile;
    let _ = writeln!(w, "\nprofile");
    line(w, "ell", "lcm of all denominators", &p.ell);
    line(w, "h", "[Z^n + theta Z^n : Z^n]", &p.h);
    line(w, "PI degree", "sqrt(h)", &p.pi_degree);
    line(w, "q", "lcm of row i denominators", &fmt_row(&p.q));
    line(
        w,
        "skew divisors",
        "ell*theta ~ 0_k + sum d_i [[0,1],[-1,0]]",
        &fmt_row(&p.skew_divisors),
    );
    line(
        w,
        "zero rank",
        "k in the form above",
        &p.zero_rank.to_string(),
    );
    let _ = writeln!(
        w,
        "  theta^perp basis       {{m : theta m in Z^n}}, Hermite form"
    );
    for b in &p.kernel_basis {
        let _ = writeln!(w, "    {}", fmt_row(b));
    }

    let d = &r.decomposition;
    let _ = writeln!(
        w,
        "\ndecomposition            T theta T^t = 0_k + sum theta_i [[0,1],[-1,0]]"
    );
    line(w, "k", "commutative directions", &d.k.to_string());
    line(w, "theta_i", "block parameters", &fmt_row(&d.factors));
    let _ = writeln!(w, "  witness T");
    for row in &d.witness {
        let _ = writeln!(w, "    {}", fmt_row(row));
    }

    let _ = writeln!(
        w,
        "\nfaces ({})",
        serde_json::to_value(r.faces_shown)
            .unwrap()
            .as_str()
            .unwrap_or("")
    );
    line(
        w,
        "Azumaya",
        "theta integral, equivalently h = 1",
        &r.azumaya.to_string(),
    );
    let _ = writeln!(
        w,
        "  jump faces             h_F < h:  {}",
        fmt_faces(&r.jump_complex)
    );
    let _ = writeln!(
        w,
        "  Azumaya faces          h_F = h:  {}",
        fmt_faces(&r.azumaya_faces)
    );

    let s = &r.center_skeleton;
    let _ = writeln!(w, "\ncenter spectrum X");
    line(
        w,
        "dim X",
        "(n - 1) + rank theta^perp",
        &s.dim_x.to_string(),
    );
    line(
        w,
        "generic cover degree",
        "[theta^perp : sum q_i Z]",
        &s.generic_cover_degree,
    );
    line(
        w,
        "sphere sufficient",
        "theta^perp = sum q_i Z",
        &s.sphere_sufficient.to_string(),
    );

    let _ = writeln!(
        w,
        "\nfibers: h_F, multiplicity [(theta|F)^perp : Gamma_F], cover [Gamma_F : sum q_i Z], Gamma_F = theta^perp on Z^F"
    );
    let _ = writeln!(
        w,
        "  {:<14} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6}",
        "face", "h_F", "pi_F", "mult", "cover", "size", "count", "dim", "K0"
    );
    for f in &r.fibers {
        let _ = writeln!(
            w,
            "  {:<14} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>8} {:>6}",
            fmt_face(&f.face),
            f.h,
            f.pi_degree,
            f.multiplicity,
            f.cover_degree,
            f.block_size,
            f.block_count,
            f.total_dim,
            f.k0_rank
        );
    }

    let _ = writeln!(w, "\ncenter finiteness");
    line(
        w,
        "algebraic",
        "finitely generated over the center",
        &r.center_finiteness.algebraic.to_string(),
    );
    line(
        w,
        "topological",
        "dense finitely generated submodule",
        &r.center_finiteness.topological.to_string(),
    );

    let rc = &r.recovery;
    let _ = writeln!(w, "\nrecovery invariants");
    line(
        w,
        "min irrep dim",
        "smallest irreducible representation",
        &rc.min_irrep_dim,
    );
    line(w, "K0 rank", "2^(m-1)", &rc.k0_rank);
    line(
        w,
        "unit divisibility",
        "largest n with [1] in n K0",
        &rc.identity_divisibility,
    );
    line(
        w,
        "dim center spectrum",
        "covering dimension of X",
        &rc.dim_center_spectrum.to_string(),
    );

    if let Some(rows) = &r.oracle {
        let _ = writeln!(w, "\noracle cross-checks");
        for o in rows {
            let verdict = if o.agrees { "ok" } else { "MISMATCH" };
            let _ = writeln!(
                w,
                "  {:<28} main {:>8}  oracle {:>8}  {verdict}",
                o.checked_quantity, o.main_value, o.oracle_value
            );
        }
    }
    out
}
