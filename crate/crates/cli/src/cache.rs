//! Versioned JSON cache of coefficient tables:
//!
//! ```json
//! {"version": 1, "genus": "L", "b_coeffs": [{"num": "1", "den": "1"}, ...],
//!  "checksum": "<sha256 of b_coeffs>", "tables": {"1": [...], "2": [...]}}
//! ```
//!
//! A cache whose version, genus name or series disagrees is discarded; an
//! unreadable one is recomputed with a warning on stderr.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use lgenus::exact::Rational;
use lgenus::genus::{coefficient_table, CoefficientTable, GenusSpec};
use lgenus::partitions::IntegerPartition;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::render::{JsonEntry, JsonRational};
use crate::Failure;

pub const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    genus: String,
    b_coeffs: Vec<JsonRational>,
    checksum: String,
    tables: BTreeMap<String, Vec<JsonEntry>>,
}

fn checksum(b: &[JsonRational]) -> String {
    let mut h = Sha256::new();
    for r in b {
        h.update(format!("{}/{};", r.num, r.den).as_bytes());
    }
    hex::encode(h.finalize())
}

fn warn(path: &Path, msg: &str) {
    eprintln!("warning: cache {}: {msg}; recomputing", path.display());
}

fn parse_table(k: usize, entries: &[JsonEntry]) -> Option<CoefficientTable> {
    let map = entries
        .iter()
        .map(|e| Some((IntegerPartition::new(e.partition.clone()).ok()?, e.coefficient.to_rational()?)))
        .collect::<Option<BTreeMap<IntegerPartition, Rational>>>()?;
    CoefficientTable::from_entries(k, map).ok()
}

/// Reads a usable cache for `genus`, or `None` (with a warning when the file
/// exists but cannot be used).
fn read(path: &Path, genus: &GenusSpec, b: &[JsonRational]) -> Option<CacheFile> {
    let text = fs::read_to_string(path).ok()?;
    let cache: CacheFile = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            warn(path, &format!("corrupt ({e})"));
            return None;
        }
    };
    if cache.version != VERSION {
        warn(path, &format!("version {} is not {VERSION}", cache.version));
        return None;
    }
    if cache.genus != genus.name() {
        warn(path, &format!("holds genus {:?}, not {:?}", cache.genus, genus.name()));
        return None;
    }
    if cache.checksum != checksum(&cache.b_coeffs) {
        warn(path, "checksum mismatch");
        return None;
    }
    let common = cache.b_coeffs.len().min(b.len());
    if cache.b_coeffs[..common] != b[..common] {
        warn(path, "characteristic series differs");
        return None;
    }
    Some(cache)
}

/// Tables for `k = 1..=max_k`, reusing and extending the cache at `path`.
pub fn tables(path: &Path, genus: &GenusSpec, max_k: usize) -> Result<Vec<CoefficientTable>, Failure> {
    let b: Vec<JsonRational> = genus.series().coeffs().iter().map(JsonRational::from).collect();
    let cached = read(path, genus, &b);
    let (mut doc, mut dirty) = match cached {
        Some(c) => (c, false),
        None => (
            CacheFile {
                version: VERSION,
                genus: genus.name().to_string(),
                b_coeffs: Vec::new(),
                checksum: String::new(),
                tables: BTreeMap::new(),
            },
            true,
        ),
    };
    let known_order = doc.b_coeffs.len().saturating_sub(1);
    let mut out = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let hit = (k <= known_order)
            .then(|| doc.tables.get(&k.to_string()).and_then(|e| parse_table(k, e)))
            .flatten();
        let table = match hit {
            Some(t) => t,
            None => {
                if doc.tables.contains_key(&k.to_string()) && k <= known_order {
                    warn(path, &format!("degree {k} entry unreadable"));
                }
                let t = coefficient_table(genus, k)?;
                let entries = t
                    .iter_display()
                    .map(|(j, c)| JsonEntry {
                        partition: j.parts().to_vec(),
                        coefficient: c.into(),
                    })
                    .collect();
                doc.tables.insert(k.to_string(), entries);
                dirty = true;
                t
            }
        };
        out.push(table);
    }
    if b.len() > doc.b_coeffs.len() {
        doc.b_coeffs = b;
        dirty = true;
    }
    if dirty {
        doc.checksum = checksum(&doc.b_coeffs);
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write cache {}: {e}", path.display())))?;
    }
    Ok(out)
}
