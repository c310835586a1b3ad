//! The small-group catalog: one JSON record of permutation generators per
//! group. The bundled file lists every group of order at most 20.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

/// Catalog shipped with the crate.
pub const BUNDLED_CATALOG: &str = include_str!("../data/catalog.json");

/// Environment variable that overrides the catalog path in the CLI.
pub const CATALOG_ENV: &str = "NSBPG_CATALOG";

/// Number of groups of each order 1..=20.
pub const GROUP_COUNTS: [usize; 20] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed catalog: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("catalog is empty")]
    Empty,
    #[error("duplicate group name {0:?}")]
    DuplicateName(String),
    #[error("group {name:?}: {source}")]
    Group { name: String, source: GroupError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    record: CatalogRecord,
    group: FiniteGroup,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.record.name
    }

    pub fn record(&self) -> &CatalogRecord {
        &self.record
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn bundled() -> Result<Self, CatalogError> {
        Self::from_json(BUNDLED_CATALOG)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let records: Vec<CatalogRecord> = serde_json::from_str(text)?;
        Self::from_records(records)
    }

    pub fn from_records(records: Vec<CatalogRecord>) -> Result<Self, CatalogError> {
        if records.is_empty() {
            return Err(CatalogError::Empty);
        }
        let mut names = HashSet::new();
        let mut entries = Vec::with_capacity(records.len());
        for record in records {
            if !names.insert(record.name.clone()) {
                return Err(CatalogError::DuplicateName(record.name));
            }
            let group = FiniteGroup::from_generators(record.degree, &record.generators, record.name.clone())
                .map_err(|source| CatalogError::Group { name: record.name.clone(), source })?;
            entries.push(CatalogEntry { record, group });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    /// Entries with order at most `max_order`, sorted by order and then by
    /// position in the file.
    pub fn up_to_order(&self, max_order: usize) -> Vec<(usize, &CatalogEntry)> {
        let mut out: Vec<(usize, &CatalogEntry)> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.group.order() <= max_order)
            .collect();
        out.sort_by_key(|(i, e)| (e.group.order(), *i));
        out
    }

    pub fn max_order(&self) -> usize {
        self.entries.iter().map(|e| e.group.order()).max().unwrap_or(0)
    }
}
