use std::sync::Arc;

use crate::error::{Error, Result};

use super::poly::GradedPoly;
use super::table::VariableTable;

/// Power series in a formal variable `t`, truncated at `t^bound`, whose
/// coefficients are polynomials of the ring. Total characteristic-class
/// polynomials live here; their `t^i` coefficient is homogeneous of ring
/// degree `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    table: Arc<VariableTable>,
    coeffs: Vec<GradedPoly>, // index = power of t, length bound+1
}

impl TruncatedSeries {
    pub fn zero(table: Arc<VariableTable>, bound: usize) -> Self {
        let coeffs = (0..=bound).map(|_| GradedPoly::zero(table.clone())).collect();
        Self { table, coeffs }
    }

    pub fn one(table: Arc<VariableTable>, bound: usize) -> Self {
        let mut s = Self::zero(table.clone(), bound);
        s.coeffs[0] = GradedPoly::one(table);
        s
    }

    pub fn from_coeffs(table: Arc<VariableTable>, coeffs: Vec<GradedPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Input("series needs at least the t^0 coefficient".into()));
        }
        for c in &coeffs {
            if !c.table().same_as(&table) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(Self { table, coeffs })
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`; zero beyond the bound.
    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(self.table.clone()))
    }

    pub fn set_coeff(&mut self, i: usize, value: GradedPoly) -> Result<()> {
        if !value.table().same_as(&self.table) {
            return Err(Error::TableMismatch);
        }
        if i >= self.coeffs.len() {
            return Err(Error::Input(format!(
                "coefficient degree {i} beyond series bound {}",
                self.bound()
            )));
        }
        self.coeffs[i] = value;
        Ok(())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(GradedPoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let bound = self.bound().min(other.bound());
        let mut coeffs = Vec::with_capacity(bound + 1);
        for i in 0..=bound {
            coeffs.push(self.coeffs[i].add(&other.coeffs[i])?);
        }
        Self::from_coeffs(self.table.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let bound = self.bound().min(other.bound());
        let mut coeffs = Vec::with_capacity(bound + 1);
        for k in 0..=bound {
            let mut acc = GradedPoly::zero(self.table.clone());
            for i in 0..=k {
                let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b)?)?;
                }
            }
            coeffs.push(acc);
        }
        Self::from_coeffs(self.table.clone(), coeffs)
    }

    /// Multiplicative inverse up to the bound. Needs constant term 1; in
    /// characteristic 2 the recursion is b_k = sum a_i b_{k-i}, i >= 1.
    /// The product identity s * s^{-1} = 1 is re-checked on every call.
    pub fn invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let bound = self.bound();
        let mut inv = Vec::with_capacity(bound + 1);
        inv.push(GradedPoly::one(self.table.clone()));
        for k in 1..=bound {
            let mut acc = GradedPoly::zero(self.table.clone());
            for i in 1..=k {
                let a = &self.coeffs[i];
                let b: &GradedPoly = &inv[k - i];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b)?)?;
                }
            }
            inv.push(acc);
        }
        let result = Self::from_coeffs(self.table.clone(), inv)?;
        assert!(
            self.mul(&result)?.is_one(),
            "series inversion failed its re-multiplication check"
        );
        Ok(result)
    }
}
