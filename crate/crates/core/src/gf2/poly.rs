use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::table::VariableTable;

/// Exponent vector aligned with a [`VariableTable`]. The weighted degree is
/// computed against the table, never cached, so a monomial is just data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: vec![0; nvars],
        }
    }

    pub fn variable(nvars: usize, index: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = exp;
        Self { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, table: &VariableTable) -> usize {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * table.degree(i))
            .sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_into(&self, other: &Self) -> Self {
        Self {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime_with(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the last variable with a positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }
}

/// Fixed storage order: graded reverse lexicographic, weighted by the table
/// degrees, with earlier table positions more significant. Supports are kept
/// sorted descending under this order so equality is canonical.
pub(crate) fn storage_cmp(table: &VariableTable, a: &Monomial, b: &Monomial) -> Ordering {
    let by_degree = a.weighted_degree(table).cmp(&b.weighted_degree(table));
    if by_degree != Ordering::Equal {
        return by_degree;
    }
    for i in (0..table.len()).rev() {
        if a.exp(i) != b.exp(i) {
            // larger exponent in the least significant spot loses
            return b.exp(i).cmp(&a.exp(i));
        }
    }
    Ordering::Equal
}

/// A polynomial over the two-element field with weighted grading: the
/// support set is the whole datum since every present monomial has
/// coefficient 1. Addition is symmetric difference of supports.
#[derive(Debug, Clone)]
pub struct GradedPoly {
    table: Arc<VariableTable>,
    support: Vec<Monomial>, // sorted descending under storage_cmp, no duplicates
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.table.same_as(&other.table) && self.support == other.support
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(table: Arc<VariableTable>) -> Self {
        Self {
            table,
            support: Vec::new(),
        }
    }

    pub fn one(table: Arc<VariableTable>) -> Self {
        let m = Monomial::one(table.len());
        Self {
            table,
            support: vec![m],
        }
    }

    pub fn variable(table: Arc<VariableTable>, index: usize) -> Self {
        let m = Monomial::variable(table.len(), index, 1);
        Self {
            table,
            support: vec![m],
        }
    }

    pub fn variable_power(table: Arc<VariableTable>, index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one(table);
        }
        let m = Monomial::variable(table.len(), index, exp);
        Self {
            table,
            support: vec![m],
        }
    }

    /// Canonicalizes an arbitrary monomial list: duplicates cancel in pairs.
    pub fn from_monomials(table: Arc<VariableTable>, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(|a, b| storage_cmp(&table, b, a));
        let mut support = Vec::with_capacity(monomials.len());
        let mut i = 0;
        while i < monomials.len() {
            let mut run = 1;
            while i + run < monomials.len() && monomials[i + run] == monomials[i] {
                run += 1;
            }
            if run % 2 == 1 {
                support.push(monomials[i].clone());
            }
            i += run;
        }
        Self { table, support }
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn support(&self) -> &[Monomial] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.support.len() == 1 && self.support[0].is_one()
    }

    pub fn term_count(&self) -> usize {
        self.support.len()
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if self.table.same_as(&other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Symmetric difference of supports (mod-2 addition). Merge of the two
    /// sorted lists, cancelling equal monomials.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut support = Vec::with_capacity(self.support.len() + other.support.len());
        let (mut i, mut j) = (0, 0);
        while i < self.support.len() && j < other.support.len() {
            match storage_cmp(&self.table, &self.support[i], &other.support[j]) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Greater => {
                    support.push(self.support[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    support.push(other.support[j].clone());
                    j += 1;
                }
            }
        }
        support.extend_from_slice(&self.support[i..]);
        support.extend_from_slice(&other.support[j..]);
        Ok(Self {
            table: self.table.clone(),
            support,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut products = Vec::with_capacity(self.support.len() * other.support.len());
        for a in &self.support {
            for b in &other.support {
                products.push(a.mul(b));
            }
        }
        Ok(Self::from_monomials(self.table.clone(), products))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial is order-preserving
        Self {
            table: self.table.clone(),
            support: self.support.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Squaring is the Frobenius in characteristic 2: square each monomial.
    pub fn frobenius(&self) -> Self {
        let squared = self.support.iter().map(|m| m.mul(m)).collect();
        Self {
            table: self.table.clone(),
            support: squared,
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one(self.table.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.frobenius();
            e >>= 1;
        }
        Ok(result)
    }

    /// Largest weighted degree among terms, `None` for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<usize> {
        self.support
            .first()
            .map(|m| m.weighted_degree(&self.table))
    }

    /// `Some(d)` if every term has weighted degree `d`.
    /// Zero has no homogeneous degree here.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let first = self.support.first()?.weighted_degree(&self.table);
        self.support
            .iter()
            .all(|m| m.weighted_degree(&self.table) == first)
            .then_some(first)
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.support.iter().any(|m| m.exp(index) > 0)
    }

    /// Every term divisible by the variable? Then divide it out.
    pub fn divide_by_var(&self, index: usize) -> Option<Self> {
        if self.support.iter().any(|m| m.exp(index) == 0) {
            return None;
        }
        let divisor = Monomial::variable(self.table.len(), index, 1);
        let support = self
            .support
            .iter()
            .map(|m| divisor.quotient_into(m))
            .collect();
        Some(Self {
            table: self.table.clone(),
            support,
        })
    }

    /// Image under `variable -> 0`: drops every term containing it.
    pub fn set_var_to_zero(&self, index: usize) -> Self {
        Self {
            table: self.table.clone(),
            support: self
                .support
                .iter()
                .filter(|m| m.exp(index) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Substitutes `images[i]` (over `target`) for variable `i`.
    pub fn substitute(
        &self,
        target: &Arc<VariableTable>,
        images: &[GradedPoly],
    ) -> Result<GradedPoly> {
        if images.len() != self.table.len() {
            return Err(Error::Input(
                "substitution needs one image per variable".into(),
            ));
        }
        for image in images {
            if !image.table().same_as(target) {
                return Err(Error::TableMismatch);
            }
        }
        let mut acc = GradedPoly::zero(target.clone());
        for m in &self.support {
            let mut term = GradedPoly::one(target.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Restricts the support to terms of one weighted degree.
    pub fn homogeneous_component(&self, degree: usize) -> Self {
        Self {
            table: self.table.clone(),
            support: self
                .support
                .iter()
                .filter(|m| m.weighted_degree(&self.table) == degree)
                .cloned()
                .collect(),
        }
    }
}
