//! Report envelope and deterministic rendering helpers.

use serde::Serialize;
use unikit::numerics::Tolerances;

/// Common wrapper around every JSON report. Field order is fixed by the
/// struct; there are no timestamps, so repeated runs are byte-identical.
#[derive(Serialize)]
pub struct ReportEnvelope<T: Serialize> {
    pub tool_version: &'static str,
    pub command: String,
    pub inputs: Vec<String>,
    pub grid_n: usize,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub pass: bool,
    pub payload: T,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// 17-significant-digit decimal rendering: lossless for binary64.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes to the path when given, to stdout otherwise.
pub fn emit(out: Option<&std::path::Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(content.as_bytes())
        }
    }
}
