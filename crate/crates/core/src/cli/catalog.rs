//! Bundled list of named Montesinos knots with external status annotations.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montesinos::MontesinosPresentation;

use super::grammar::parse_presentation;

/// Environment variable naming a replacement catalog file.
pub const CATALOG_ENV: &str = "QALINK_CATALOG";

const BUNDLED: &str = include_str!("../../data/catalog.json");

/// Status known from outside the classifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KnownStatus {
    /// Shown not quasi-alternating by Greene's pretzel and Montesinos work.
    NotQaGreene,
    /// Homologically thin, believed not quasi-alternating.
    CandidateThinNotQa,
    QaKnown,
}

impl KnownStatus {
    pub fn expects_not_qa(self) -> bool {
        matches!(self, KnownStatus::NotQaGreene | KnownStatus::CandidateThinNotQa)
    }
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    presentation: String,
    #[serde(default)]
    known_status: Option<KnownStatus>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    /// Text as written in the catalog file.
    pub text: String,
    pub presentation: MontesinosPresentation,
    pub known_status: Option<KnownStatus>,
}

/// Parses a catalog document; names must be unique.
pub fn parse_catalog(json: &str) -> Result<Vec<CatalogEntry>> {
    let raw: Vec<RawEntry> = serde_json::from_str(json).map_err(|e| Error::Catalog(e.to_string()))?;
    let mut seen = HashSet::new();
    raw.into_iter()
        .map(|r| {
            if !seen.insert(r.name.clone()) {
                return Err(Error::Catalog(format!("duplicate name {}", r.name)));
            }
            let presentation = parse_presentation(&r.presentation)?;
            Ok(CatalogEntry {
                name: r.name,
                text: r.presentation,
                presentation,
                known_status: r.known_status,
            })
        })
        .collect()
}

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED).expect("bundled catalog is well formed")
}

/// The file named by `QALINK_CATALOG` if set, else the bundled catalog.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) => load_catalog_file(Path::new(&path)),
        None => Ok(bundled_catalog()),
    }
}

pub fn load_catalog_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}
