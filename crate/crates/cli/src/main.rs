use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncsphere::commands::{self, IsoFamily};
use ncsphere::input::{parse_kind, parse_positive};
use ncsphere::{
    build_report, parse_inline, read_source, render_json, render_text, CliError, FacesMode, Input,
    ReportOptions,
};
use ncsphere_core::faces::MAX_VERTICES;
use ncsphere_core::{AlgebraKind, FaceBound};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(
    name = "ncsphere",
    version,
    about = "Exact invariants of rational noncommutative spheres and tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one deformation matrix.
    Report {
        /// JSON matrix file, or `-` for stdin.
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        input: Option<PathBuf>,
        /// Inline matrix, rows separated by `;`, entries by `,`: "0,1/2;-1/2,0".
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Size of the matrix-algebra tensor factor (overrides the file).
        #[arg(long)]
        n_tensor: Option<String>,
        /// sphere or torus (overrides the file).
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "all")]
        faces: FacesMode,
        /// Append brute-force cross-checks.
        #[arg(long)]
        oracle: bool,
        /// Largest n for which all 2^n faces are enumerated.
        #[arg(long, default_value_t = FaceBound::default().0 as u64,
              value_parser = clap::value_parser!(u64).range(1..=MAX_VERTICES as u64))]
        max_bits: u64,
    },
    /// Decide whether two rank-one parameters give isomorphic algebras.
    Iso {
        #[arg(value_enum)]
        family: IsoFamily,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        n: String,
        #[arg(allow_hyphen_values = true)]
        theta_prime: String,
        n_prime: String,
    },
    /// Compare two matrices up to integral congruence T theta T^t.
    Congruence {
        /// JSON matrix files (`-` for stdin), taken before any --matrix values.
        files: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Vec<String>,
    },
}

fn report_input(
    input: Option<PathBuf>,
    matrix: Option<String>,
    n_tensor: Option<String>,
    kind: Option<String>,
) -> Result<Input, CliError> {
    let mut parsed = match (input, matrix) {
        (_, Some(m)) => Input {
            theta: parse_inline(&m)?,
            n_tensor: BigUint::from(1u32),
            kind: AlgebraKind::Sphere,
        },
        (Some(path), None) => read_source(&path)?,
        (None, None) => return Err(CliError::Parse("no input matrix given".into())),
    };
    if let Some(nt) = n_tensor {
        parsed.n_tensor = parse_positive(&nt, "n_tensor")?;
    }
    if let Some(k) = kind {
        parsed.kind = parse_kind(&k)?;
    }
    Ok(parsed)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Report {
            input,
            matrix,
            n_tensor,
            kind,
            format,
            faces,
            oracle,
            max_bits,
        } => {
            let parsed = report_input(input, matrix, n_tensor, kind)?;
            let opts = ReportOptions {
                faces,
                oracle,
                bound: FaceBound(max_bits as usize),
            };
            let report = build_report(&parsed, &opts)?;
            Ok(match format {
                Format::Json => render_json(&report),
                Format::Text => render_text(&report),
            })
        }
        Command::Iso {
            family,
            theta,
            n,
            theta_prime,
            n_prime,
        } => commands::iso(
            family,
            &commands::parse_parameter(&theta, "theta")?,
            &parse_positive(&n, "n")?,
            &commands::parse_parameter(&theta_prime, "theta'")?,
            &parse_positive(&n_prime, "n'")?,
        ),
        Command::Congruence { files, matrix } => {
            if files.len() + matrix.len() != 2 {
                return Err(CliError::Parse(format!(
                    "congruence needs exactly two matrices, got {}",
                    files.len() + matrix.len()
                )));
            }
            let mut thetas = Vec::with_capacity(2);
            for f in &files {
                thetas.push(read_source(f)?.theta);
            }
            for m in &matrix {
                thetas.push(parse_inline(m)?);
            }
            commands::congruence(&thetas[0], &thetas[1])
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
