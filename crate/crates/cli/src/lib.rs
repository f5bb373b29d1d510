//! Library side of the `ncsphere` command: input parsing, the invariant
//! report, and the `iso`/`congruence` verdicts.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use error::{CliError, EXIT_BOUND, EXIT_INVALID};
pub use input::{parse_file_text, parse_inline, read_source, Input, MatrixFile};
pub use report::{
    build_report, render_json, render_text, FacesMode, InvariantReport, ReportOptions,
};
