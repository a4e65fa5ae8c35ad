//! The order-16 catalog, stored as presentation data and validated on load.

use thiserror::Error;

use crate::group::{GroupError, GroupTable};
use crate::morphism::isomorphic;
use crate::presentation::{parse_catalog, realize, PresentationError, DEFAULT_MAX_COSETS};

pub const ORDER16_SOURCE: &str = include_str!("../data/order16.txt");

/// Number of isomorphism types of groups of order 16.
pub const ORDER16_TYPES: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog line {line}: {source}")]
    Parse {
        line: usize,
        source: PresentationError,
    },
    #[error("catalog entry {name}: {source}")]
    Realize {
        name: String,
        source: PresentationError,
    },
    #[error("catalog entry {name} has order {order}, expected {expected}")]
    WrongOrder {
        name: String,
        order: usize,
        expected: usize,
    },
    #[error("catalog entries {first} and {second} are isomorphic")]
    Duplicate { first: String, second: String },
    #[error("catalog has {found} entries, expected {expected}")]
    WrongCount { found: usize, expected: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One validated catalog group.
#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: String,
    pub presentation: String,
    pub table: GroupTable,
}

/// Realizes every entry of a catalog source and checks that each has the
/// expected order and that no two are isomorphic.
pub fn load_catalog(
    source: &str,
    expected_order: usize,
    expected_count: usize,
) -> Result<Vec<CatalogGroup>, CatalogError> {
    let entries = parse_catalog(source).map_err(|(line, source)| CatalogError::Parse { line, source })?;
    let mut groups = Vec::with_capacity(entries.len());
    for e in entries {
        let table = realize(&e.presentation, DEFAULT_MAX_COSETS)
            .map_err(|source| CatalogError::Realize {
                name: e.name.clone(),
                source,
            })?
            .with_label(e.name.clone());
        if table.order() != expected_order {
            return Err(CatalogError::WrongOrder {
                name: e.name,
                order: table.order(),
                expected: expected_order,
            });
        }
        groups.push(CatalogGroup {
            name: e.name,
            presentation: e.text,
            table,
        });
    }
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            if isomorphic(&a.table, &b.table)? {
                return Err(CatalogError::Duplicate {
                    first: a.name.clone(),
                    second: b.name.clone(),
                });
            }
        }
    }
    if groups.len() != expected_count {
        return Err(CatalogError::WrongCount {
            found: groups.len(),
            expected: expected_count,
        });
    }
    Ok(groups)
}

pub fn catalog_order16() -> Result<Vec<CatalogGroup>, CatalogError> {
    load_catalog(ORDER16_SOURCE, 16, ORDER16_TYPES)
}
