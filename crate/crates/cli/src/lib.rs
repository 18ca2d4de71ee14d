//! Command-line front end: spec files, presets and the staged pipeline.

pub mod pipeline;
pub mod presets;
pub mod spec;

use pipeline::{execute, Artifacts, Report, Stage};
use spec::{parse_spec, AlgebraSpec, SpecError};

/// A path, or `preset:<name>`.
pub fn load_source(src: &str) -> Result<AlgebraSpec, SpecError> {
    match src.strip_prefix("preset:") {
        Some(name) => Ok(AlgebraSpec::from_hopf(&presets::preset(name)?)),
        None => {
            let text = std::fs::read_to_string(src)
                .map_err(|e| SpecError::Io { path: src.to_string(), message: e.to_string() })?;
            parse_spec(&text)
        }
    }
}

/// Exit code contract: 0 all stages passed, 1 some stage failed, 2 the
/// input could not be read.
pub mod exit {
    pub const OK: i32 = 0;
    pub const STAGE_FAILURE: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
}

pub fn run_source(src: &str, stages: &[Stage]) -> Result<(Report, Artifacts), SpecError> {
    let spec = load_source(src)?;
    Ok(execute(&spec, src, stages))
}
