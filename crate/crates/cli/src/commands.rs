//! `iso` and `congruence`: verdicts with their supporting arithmetic.

use std::fmt::Write as _;

use ncsphere_core::theta::congruence_chains;
use ncsphere_core::{
    characteristic_two_class, congruent_over_z, decide_rank_one, parse_rational, IsoRelation,
    IsoVerdict, Rational, SkewRationalMatrix,
};
use num_bigint::{BigInt, BigUint};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum IsoFamily {
    /// C(S^3_theta) tensor M_n
    Sphere3,
    /// C(T^2_theta) tensor M_n
    Torus2,
}

pub fn parse_parameter(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(format!("{what}: {e}: \"{s}\"")))
}

fn class_line(label: &str, theta: &Rational, n: &BigUint) -> Result<String, CliError> {
    let c = characteristic_two_class(theta.numer(), theta.denom(), &BigInt::from(n.clone()))?;
    Ok(format!(
        "class({label}) = {} mod {}  (n * p^-1 mod q with {label} = {theta}, n = {n})",
        c.residue, c.modulus
    ))
}

pub fn iso(
    family: IsoFamily,
    theta: &Rational,
    n: &BigUint,
    theta_p: &Rational,
    n_p: &BigUint,
) -> Result<String, CliError> {
    let mut out = String::new();
    let verdict = decide_rank_one(theta, n, theta_p, n_p);
    let _ = match verdict {
        IsoVerdict::Isomorphic(IsoRelation::Difference) => {
            writeln!(
                out,
                "ISOMORPHIC (theta - theta' = {} is an integer)",
                theta - theta_p
            )
        }
        IsoVerdict::Isomorphic(IsoRelation::Sum) => {
            writeln!(
                out,
                "ISOMORPHIC (theta + theta' = {} is an integer)",
                theta + theta_p
            )
        }
        IsoVerdict::DifferentTensorSize => {
            writeln!(out, "NOT ISOMORPHIC (n = {n} differs from n' = {n_p})")
        }
        IsoVerdict::UnrelatedParameters => {
            writeln!(
                out,
                "NOT ISOMORPHIC (neither theta - theta' nor theta + theta' is an integer)"
            )
        }
    };
    let family_name = match family {
        IsoFamily::Sphere3 => "C(S^3_theta) (x) M_n",
        IsoFamily::Torus2 => "C(T^2_theta) (x) M_n",
    };
    let _ = writeln!(out, "family: {family_name}");
    let _ = writeln!(out, "{}", class_line("theta", theta, n)?);
    let _ = writeln!(out, "{}", class_line("theta'", theta_p, n_p)?);
    Ok(out)
}

fn chain(divisors: &[BigInt], zero_rank: usize) -> String {
    let ds: Vec<String> = divisors.iter().map(ToString::to_string).collect();
    format!("divisors ({}), zero rank {zero_rank}", ds.join(", "))
}

pub fn congruence(a: &SkewRationalMatrix, b: &SkewRationalMatrix) -> Result<String, CliError> {
    let (ell, (da, za), (db, zb)) = congruence_chains(a, b)?;
    let mut out = String::new();
    let _ = writeln!(out, "ell = {ell}");
    let _ = writeln!(out, "theta:  n = {}, {}", a.n(), chain(&da, za));
    let _ = writeln!(out, "theta': n = {}, {}", b.n(), chain(&db, zb));
    let verdict = if congruent_over_z(a, b) {
        "CONGRUENT"
    } else {
        "NOT CONGRUENT"
    };
    let _ = writeln!(out, "{verdict}");
    Ok(out)
}
