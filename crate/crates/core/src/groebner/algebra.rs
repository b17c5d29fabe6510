use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{text, GradedPoly, VariableTable};

use super::order::MonomialOrder;

/// Base dimension of the real projective base: `RP^m`, or `RP^infinity`
/// for the untruncated (equivariant) mode. Serializes as the number `m`
/// or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseDim {
    Finite(usize),
    Infinite,
}

impl Serialize for BaseDim {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BaseDim::Finite(m) => serializer.serialize_u64(*m as u64),
            BaseDim::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BaseDim {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(usize),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(m) => Ok(BaseDim::Finite(m)),
            Repr::Text(s) if s == "inf" => Ok(BaseDim::Infinite),
            Repr::Text(s) => Err(serde::de::Error::custom(format!(
                "base dimension must be a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

impl BaseDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, BaseDim::Finite(_))
    }

    /// Dimension vector of the base through degree `bound`: all-ones of
    /// length m+1, or all-ones throughout for the infinite base.
    pub fn dims(&self, bound: usize) -> Vec<i64> {
        match *self {
            BaseDim::Finite(m) => (0..=bound).map(|d| i64::from(d <= m)).collect(),
            BaseDim::Infinite => vec![1; bound + 1],
        }
    }
}

/// `var^power = 0` adjoined to the relation set; `power` is `m+1` for a
/// base `RP^m`. Absent means the untruncated base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub var: usize,
    pub power: u32,
}

/// A graded quotient presentation: variable table, homogeneous relations,
/// and an optional base truncation. This is the engine's notion of
/// "cohomology ring given by generators and relations".
#[derive(Debug, Clone)]
pub struct PresentedAlgebra {
    table: Arc<VariableTable>,
    relations: Vec<GradedPoly>,
    base_truncation: Option<Truncation>,
    metadata: String,
}

impl PresentedAlgebra {
    pub fn new(
        table: Arc<VariableTable>,
        relations: Vec<GradedPoly>,
        base_truncation: Option<Truncation>,
        metadata: impl Into<String>,
    ) -> Result<Self> {
        for r in &relations {
            if !r.table().same_as(&table) {
                return Err(Error::TableMismatch);
            }
            if r.is_zero() {
                return Err(Error::Input("zero relation".into()));
            }
            if r.homogeneous_degree().is_none() {
                return Err(Error::Input(format!(
                    "relation {} is not homogeneous; enter it split by degree",
                    text::render(r)
                )));
            }
        }
        if let Some(t) = base_truncation {
            if t.var >= table.len() {
                return Err(Error::Input("truncation variable out of range".into()));
            }
            if t.power == 0 {
                return Err(Error::Input("truncation power must be positive".into()));
            }
        }
        Ok(Self {
            table,
            relations,
            base_truncation,
            metadata: metadata.into(),
        })
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn base_truncation(&self) -> Option<Truncation> {
        self.base_truncation
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    /// Relations plus the truncation relation, when present.
    pub fn all_relations(&self) -> Vec<GradedPoly> {
        let mut out = self.relations.clone();
        if let Some(t) = self.base_truncation {
            out.push(GradedPoly::variable_power(self.table.clone(), t.var, t.power));
        }
        out
    }

    /// Graded reverse lexicographic with the base variable last: the
    /// truncation variable if set, else any variable named `y`.
    pub fn default_order(&self) -> MonomialOrder {
        let order = MonomialOrder::grevlex(&self.table);
        let last = self
            .base_truncation
            .map(|t| t.var)
            .or_else(|| self.table.index_of("y"));
        match last {
            Some(i) => order.with_variable_last(i),
            None => order,
        }
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            variables: self
                .table
                .entries()
                .map(|(name, degree)| VariableJson {
                    name: name.to_string(),
                    degree,
                })
                .collect(),
            relations: self.relations.iter().map(text::render).collect(),
            truncation: self.base_truncation.map(|t| TruncationJson {
                var: self.table.name(t.var).to_string(),
                power: t.power,
            }),
        }
    }
}

/// Wire form of a presentation:
/// `{variables:[{name,degree}], relations:[canonical strings], truncation:{var,power}|null}`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub variables: Vec<VariableJson>,
    pub relations: Vec<String>,
    pub truncation: Option<TruncationJson>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VariableJson {
    pub name: String,
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TruncationJson {
    pub var: String,
    pub power: u32,
}
