use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::h1::{combine_digests_raw, h1_weight_detailed, H1Config, H1Report, Plan};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    version: String,
    config: H1Config,
    columns_per_block: Vec<usize>,
    report: H1Report,
}

/// Content address of a run configuration.
pub fn cache_key(cfg: &H1Config) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    h.update(serde_json::to_vec(cfg).expect("serializable config"));
    hex::encode(h.finalize())
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("h1-{key}.json"))
}

/// Recomputes the column-stream digest of a cached run.
fn revalidate(cfg: &H1Config, e: &CacheEntry) -> Result<bool> {
    let plan = Plan::new(cfg.algebra, cfg.size, cfg.k, &cfg.resolved_partitions()?)?;
    if plan.blocks.len() != e.columns_per_block.len() {
        return Ok(false);
    }
    let digests: Vec<[u8; 32]> = (0..plan.blocks.len())
        .into_par_iter()
        .map(|b| plan.block_digest(b, e.columns_per_block[b]))
        .collect::<Result<_>>()?;
    Ok(combine_digests_raw(&digests) == e.report.column_digest)
}

/// [`super::h1_weight`] backed by a directory of digest-checked results.
pub fn h1_weight_cached(cfg: &H1Config, dir: &Path) -> Result<H1Report> {
    let key = cache_key(cfg);
    let path = entry_path(dir, &key);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(e) = serde_json::from_str::<CacheEntry>(&text) {
            if e.key == key && e.config == *cfg && revalidate(cfg, &e)? {
                let mut r = e.report;
                r.cache_hit = true;
                return Ok(r);
            }
        }
    }
    let (report, columns_per_block) = h1_weight_detailed(cfg)?;
    fs::create_dir_all(dir)?;
    let entry = CacheEntry {
        key: key.clone(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        columns_per_block,
        report: report.clone(),
    };
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
    fs::rename(&tmp, &path)?;
    Ok(report)
}
