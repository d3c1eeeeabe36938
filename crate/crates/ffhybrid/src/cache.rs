//! On-disk cache of unit-group tables, one JSON file per modulus.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use ffhybrid_core::chargroup::{UnitGroup, UnitGroupData};
use ffhybrid_core::polyring::Poly;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "FFHYBRID_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    key: String,
    group: UnitGroupData,
}

/// Cache file for `r` under `dir`, named after its canonical text form.
pub fn path_for(dir: &Path, r: &Poly) -> PathBuf {
    let coeffs: Vec<String> = r.coeffs().iter().map(|c| c.to_string()).collect();
    dir.join(format!("q{}", r.q())).join(format!("{}.json", coeffs.join("-")))
}

/// Build the unit group of `r`, reading and filling the cache when `dir` is set.
///
/// A stale or corrupt entry is rebuilt and overwritten.
pub fn unit_group(r: &Poly, dir: Option<&Path>) -> Result<Arc<UnitGroup>> {
    let Some(dir) = dir else {
        return Ok(Arc::new(UnitGroup::new(r)?));
    };
    let path = path_for(dir, r);
    if let Ok(text) = fs::read_to_string(&path) {
        match load(&text, r) {
            Ok(g) => return Ok(Arc::new(g)),
            Err(e) => log::warn!("ignoring cache entry {}: {e:#}", path.display()),
        }
    }
    let g = UnitGroup::new(r)?;
    store(&path, r, &g).with_context(|| format!("writing cache entry {}", path.display()))?;
    Ok(Arc::new(g))
}

fn load(text: &str, r: &Poly) -> Result<UnitGroup> {
    let entry: Entry = serde_json::from_str(text)?;
    anyhow::ensure!(entry.key == r.to_text(), "key {} does not match", entry.key);
    Ok(UnitGroup::from_data(entry.group)?)
}

fn store(path: &Path, r: &Poly, g: &UnitGroup) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let entry = Entry {
        key: r.to_text(),
        group: g.to_data(),
    };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&entry)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
