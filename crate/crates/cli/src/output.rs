//! Output formatting: CSV with round-trip-safe floats, file-or-stdout sinks.

use crate::errors::CliResult;
use std::path::Path;

/// Serializes a float with 17 significant digits, enough for an exact f64
/// round trip through text.
pub fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes text to the path, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
