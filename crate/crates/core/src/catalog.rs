//! Named small algebras shipped with the crate.
//!
//! The tables live in `data/*.json` and are embedded at compile time. Every
//! entry is parsed and verified when loaded, so a bad table fails loudly.

use std::path::Path;

use crate::algebra::VerifiedDba;
use crate::error::{DbaError, Result};
use crate::format::{load_algebra, parse_algebra, LabeledDba};

const ENTRIES: [(&str, &str, &str); 8] = [
    ("D2I", "D_2,I", include_str!("../data/D2I.json")),
    ("D2II", "D_2,II", include_str!("../data/D2II.json")),
    ("D2III", "D_2,III", include_str!("../data/D2III.json")),
    ("B2", "2", include_str!("../data/B2.json")),
    ("D3I", "D_3,I", include_str!("../data/D3I.json")),
    ("D3II", "D_3,II", include_str!("../data/D3II.json")),
    ("D4", "D_4", include_str!("../data/D4.json")),
    ("D6", "D_6", include_str!("../data/D6.json")),
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// ASCII identifier, also the data file stem.
    pub alias: &'static str,
    /// Display name.
    pub name: &'static str,
    pub labels: Vec<String>,
    pub algebra: VerifiedDba,
}

fn entry(alias: &'static str, name: &'static str, labeled: LabeledDba) -> Result<CatalogEntry> {
    let algebra = labeled.algebra.verify()?;
    let labels = labeled
        .labels
        .unwrap_or_else(|| algebra.elements().map(|x| x.to_string()).collect());
    Ok(CatalogEntry {
        alias,
        name,
        labels,
        algebra,
    })
}

/// All built-in algebras, in a fixed order.
///
/// # Panics
/// If an embedded table is malformed (a packaging bug).
pub fn catalog() -> Vec<CatalogEntry> {
    ENTRIES
        .iter()
        .map(|&(alias, name, json)| {
            parse_algebra(json)
                .and_then(|f| entry(alias, name, f))
                .unwrap_or_else(|e| panic!("embedded catalog entry {alias} is invalid: {e}"))
        })
        .collect()
}

/// Loads the same entries from `<dir>/<alias>.json` instead of the embedded
/// copies.
pub fn catalog_from_dir(dir: &Path) -> Result<Vec<CatalogEntry>> {
    ENTRIES
        .iter()
        .map(|&(alias, name, _)| {
            entry(
                alias,
                name,
                load_algebra(dir.join(format!("{alias}.json")))?,
            )
        })
        .collect()
}

/// Looks up an entry by alias or display name, ignoring ASCII case.
pub fn find<'a>(entries: &'a [CatalogEntry], key: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.alias.eq_ignore_ascii_case(key) || e.name.eq_ignore_ascii_case(key))
        .ok_or_else(|| DbaError::UnknownCatalogName(key.to_string()))
}

/// Looks up a built-in algebra.
pub fn get(key: &str) -> Result<VerifiedDba> {
    find(&catalog(), key).map(|e| e.algebra.clone())
}
