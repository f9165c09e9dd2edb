//! On-disk cache of closures, keyed by `n` and the JSON format version.

use std::fs;
use std::path::{Path, PathBuf};

use brandt_affine::closure::{NearSemiringJson, FORMAT_VERSION};
use brandt_affine::{a_plus, NearSemiring, Result};

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("a_plus_n{n}_v{FORMAT_VERSION}.json"))
}

pub fn write_json(path: &Path, ns: &NearSemiring) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, serde_json::to_string(&ns.to_json())?)?;
    Ok(())
}

pub fn read_json(path: &Path) -> Result<NearSemiring> {
    let json: NearSemiringJson = serde_json::from_str(&fs::read_to_string(path)?)?;
    NearSemiring::from_json(&json)
}

/// Loads `A^+(B_n)` from `dir` if cached, otherwise computes it and stores
/// it there. Without a directory the closure is always recomputed.
pub fn load_or_build(n: usize, dir: Option<&Path>) -> Result<NearSemiring> {
    let Some(dir) = dir else {
        return a_plus(n);
    };
    let path = cache_path(dir, n);
    if path.exists() {
        return read_json(&path);
    }
    let ns = a_plus(n)?;
    write_json(&path, &ns)?;
    Ok(ns)
}
