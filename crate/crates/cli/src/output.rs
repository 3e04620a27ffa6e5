//! Atomic file output with metadata sidecars.

use crate::CliResult;
use serde::Serialize;
use std::path::Path;

/// Write via a temp file and rename, so readers never see partial output.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Run provenance attached to every output: tool version plus the seed and
/// parameters that produced it.
#[derive(Debug, Serialize)]
pub struct Meta<P: Serialize> {
    pub tool_version: &'static str,
    pub seed: u64,
    pub params: P,
}

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

pub fn write_meta<P: Serialize>(path: &Path, seed: u64, params: &P) -> CliResult<()> {
    let meta = Meta {
        tool_version: tool_version(),
        seed,
        params,
    };
    let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    write_atomic(path, json.as_bytes())
}
