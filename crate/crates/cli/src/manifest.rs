//! Run manifests: every output file embeds or accompanies a manifest with
//! the full resolved configuration, and rerunning a command from its
//! manifest reproduces the output byte for byte (Monte-Carlo mode included).

use crate::errors::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub rng: String,
    pub dataset_sha256: String,
    /// Seconds since the Unix epoch. A fresh run stamps the current time
    /// (or `SOURCE_DATE_EPOCH` when set); a rerun from a manifest reuses the
    /// original stamp so embedded manifests stay byte-identical.
    pub timestamp_unix: u64,
    pub config: serde_json::Value,
}

impl RunManifest {
    pub fn new<C: Serialize>(command: &str, config: &C, timestamp: u64) -> CliResult<Self> {
        Ok(RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            rng: dispersim_core::engine::RNG_DESCRIPTION.to_string(),
            dataset_sha256: dispersim_core::refmodels::dataset_sha256(),
            timestamp_unix: timestamp,
            config: serde_json::to_value(config)
                .map_err(|e| CliError::Io(format!("manifest encode: {e}")))?,
        })
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Io(format!("manifest encode: {e}")))
    }

    /// Writes the sidecar `<out>.manifest.json` next to an output file.
    pub fn write_sidecar(&self, out: &Path) -> CliResult<()> {
        let mut path = out.as_os_str().to_owned();
        path.push(".manifest.json");
        std::fs::write(Path::new(&path), self.to_json()? + "\n")?;
        Ok(())
    }
}

/// Wall-clock timestamp, overridable through `SOURCE_DATE_EPOCH` for
/// reproducible fresh runs.
pub fn fresh_timestamp() -> u64 {
    if let Ok(v) = std::env::var("SOURCE_DATE_EPOCH") {
        if let Ok(t) = v.trim().parse() {
            return t;
        }
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// A `--config` file layer: either a plain `key = value` text file or a
/// previously written manifest JSON (detected by a leading `{`).
pub enum ConfigLayer {
    KeyValue(Vec<(String, String)>),
    Manifest(RunManifest),
}

pub fn load_config_layer(path: &Path) -> CliResult<ConfigLayer> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        // Either a bare manifest or a JSON output document embedding one.
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Io(format!("malformed manifest {}: {e}", path.display())))?;
        let manifest_value = match value.get("manifest") {
            Some(embedded) => embedded.clone(),
            None => value,
        };
        let manifest: RunManifest = serde_json::from_value(manifest_value)
            .map_err(|e| CliError::Io(format!("malformed manifest {}: {e}", path.display())))?;
        return Ok(ConfigLayer::Manifest(manifest));
    }
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Io(format!(
                "{}:{}: expected 'key = value', got '{raw}'",
                path.display(),
                idx + 1
            )));
        };
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(ConfigLayer::KeyValue(pairs))
}
