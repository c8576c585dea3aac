//! Shared helpers for the criterion benchmarks.

use std::path::Path;

use fillcurve::Dessin;

/// Loads a dessin fixture from the workspace `fixtures/` directory.
pub fn fixture(name: &str) -> Dessin {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()));
    serde_json::from_str(&text).expect("fixture deserializes")
}
