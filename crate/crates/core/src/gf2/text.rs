//! Canonical text form of polynomials: terms descending in the storage
//! order, factors in table order, `y^3*c̃1 + c̃2` style. Reports only ever
//! emit this rendering, and `parse` must round-trip it exactly.

use std::sync::Arc;

use crate::error::{Error, Result};

use super::poly::{GradedPoly, Monomial};
use super::table::VariableTable;

pub fn render(poly: &GradedPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let table = poly.table();
    let terms: Vec<String> = poly
        .support()
        .iter()
        .map(|m| render_monomial(table, m))
        .collect();
    terms.join(" + ")
}

fn render_monomial(table: &VariableTable, m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut factors = Vec::new();
    for i in 0..table.len() {
        match m.exp(i) {
            0 => {}
            1 => factors.push(table.name(i).to_string()),
            e => factors.push(format!("{}^{}", table.name(i), e)),
        }
    }
    factors.join("*")
}

pub fn parse(table: &Arc<VariableTable>, input: &str) -> Result<GradedPoly> {
    let trimmed = input.trim();
    if trimmed == "0" {
        return Ok(GradedPoly::zero(table.clone()));
    }
    let mut monomials = Vec::new();
    for term in trimmed.split('+') {
        monomials.push(parse_monomial(table, term.trim())?);
    }
    Ok(GradedPoly::from_monomials(table.clone(), monomials))
}

fn parse_monomial(table: &VariableTable, term: &str) -> Result<Monomial> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if term == "1" {
        return Ok(Monomial::one(table.len()));
    }
    let mut exps = vec![0u32; table.len()];
    for factor in term.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let exp: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (name.trim(), exp)
            }
            None => (factor, 1),
        };
        let idx = table
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        if exp == 0 {
            return Err(Error::Parse(format!("zero exponent in {factor:?}")));
        }
        exps[idx] += exp;
    }
    Ok(Monomial::from_exps(exps))
}
