use std::cmp::Ordering;
use std::sync::Arc;

use crate::gf2::{Monomial, VariableTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Graded reverse lexicographic (the default).
    GrevLex,
    /// Graded lexicographic.
    GrLex,
}

/// A degree-compatible monomial order, weighted by the table degrees.
/// `significance` is a permutation of the variable positions, most
/// significant first; moving the base variable `y` to the end keeps
/// y-power normal forms stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    significance: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(table: &Arc<VariableTable>) -> Self {
        Self {
            kind: OrderKind::GrevLex,
            significance: (0..table.len()).collect(),
        }
    }

    pub fn grlex(table: &Arc<VariableTable>) -> Self {
        Self {
            kind: OrderKind::GrLex,
            significance: (0..table.len()).collect(),
        }
    }

    /// Demotes one variable to least significant.
    pub fn with_variable_last(mut self, index: usize) -> Self {
        self.significance.retain(|&i| i != index);
        self.significance.push(index);
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn compare(&self, table: &VariableTable, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.weighted_degree(table).cmp(&b.weighted_degree(table));
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self.kind {
            OrderKind::GrevLex => {
                for &i in self.significance.iter().rev() {
                    if a.exp(i) != b.exp(i) {
                        return b.exp(i).cmp(&a.exp(i));
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrLex => {
                for &i in &self.significance {
                    if a.exp(i) != b.exp(i) {
                        return a.exp(i).cmp(&b.exp(i));
                    }
                }
                Ordering::Equal
            }
        }
    }
}
