use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that would collide with the canonical text rendering of
/// polynomials, so they may not appear in variable names.
const RESERVED: &[char] = &['+', '*', '^', ' ', '\t', '\n'];

/// An ordered list of graded variables. Every polynomial of the engine keeps
/// a handle to the table it was built over; the ordering is fixed for the
/// table's lifetime and doubles as the display order of factors in a term.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableTable {
    entries: Vec<(String, usize)>,
}

impl VariableTable {
    /// Builds a table from `(name, degree)` pairs. Names must be unique,
    /// non-empty, free of rendering operators, and not `0` or `1`;
    /// degrees must be at least 1.
    pub fn new<I, S>(entries: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let entries: Vec<(String, usize)> =
            entries.into_iter().map(|(n, d)| (n.into(), d)).collect();
        for (name, degree) in &entries {
            if name.is_empty() || name == "0" || name == "1" {
                return Err(Error::InvalidTable(format!("bad variable name {name:?}")));
            }
            if name.contains(RESERVED) {
                return Err(Error::InvalidTable(format!(
                    "variable name {name:?} contains a reserved character"
                )));
            }
            if *degree == 0 {
                return Err(Error::InvalidTable(format!(
                    "variable {name} must have degree >= 1"
                )));
            }
        }
        for (i, (name, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::InvalidTable(format!("duplicate variable {name}")));
            }
        }
        Ok(Arc::new(Self { entries }))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.entries[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, usize)> {
        self.entries.iter().map(|(n, d)| (n.as_str(), *d))
    }

    /// Structural sameness; `Arc` identity short-circuits the common case.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self == other
    }
}
