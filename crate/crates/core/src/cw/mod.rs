//! CW chain-complex engine over GF(2) and its JSON input format.

mod complex;
mod matrix;

pub use complex::{
    involution_quotient, product_complex, projective_space_cells, sphere_antipodal,
    sphere_reflection, EquivariantCW, InvolutionMode, PerfectnessReport, Z2ChainComplex,
};
pub use matrix::Gf2Matrix;

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};

/// On-disk form of an equivariant complex:
/// `{"cells":{"0":["a","b"],...}, "boundary":{"1":[[...]]}, "involution":{"0":[...]},
///   "mode":"free"|"cellwise-fixed"}`.
/// Dimension keys are decimal strings; omitted boundary matrices are zero;
/// an omitted involution entry is the identity.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CwFile {
    pub cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub boundary: BTreeMap<String, Vec<Vec<u8>>>,
    #[serde(default)]
    pub involution: BTreeMap<String, Vec<usize>>,
    pub mode: String,
}

fn parse_dim(key: &str) -> Result<usize> {
    key.parse()
        .map_err(|_| Error::Parse(format!("bad dimension key {key:?}")))
}

pub fn parse_equivariant_cw(file: &CwFile) -> Result<EquivariantCW> {
    let mode = match file.mode.as_str() {
        "free" => InvolutionMode::Free,
        "cellwise-fixed" => InvolutionMode::CellwiseFixed,
        other => {
            return Err(Error::Parse(format!(
                "mode must be \"free\" or \"cellwise-fixed\", got {other:?}"
            )))
        }
    };
    let mut top = 0;
    for key in file.cells.keys() {
        top = top.max(parse_dim(key)?);
    }
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    for (key, names) in &file.cells {
        cells[parse_dim(key)?] = names.clone();
    }
    let mut boundary = Vec::with_capacity(top + 1);
    for (d, names) in cells.iter().enumerate() {
        let rows = if d == 0 { 0 } else { cells[d - 1].len() };
        boundary.push(Gf2Matrix::zero(rows, names.len()));
    }
    for (key, rows) in &file.boundary {
        let d = parse_dim(key)?;
        if d == 0 || d > top {
            return Err(Error::Parse(format!("boundary key {d} out of range")));
        }
        if rows.len() != cells[d - 1].len() || rows.iter().any(|r| r.len() != cells[d].len()) {
            return Err(Error::Parse(format!(
                "boundary matrix in dimension {d} has the wrong shape"
            )));
        }
        boundary[d] = Gf2Matrix::from_rows(rows);
    }
    let mut involution: Vec<Vec<usize>> = cells.iter().map(|cs| (0..cs.len()).collect()).collect();
    for (key, perm) in &file.involution {
        let d = parse_dim(key)?;
        if d > top {
            return Err(Error::Parse(format!("involution key {d} out of range")));
        }
        involution[d] = perm.clone();
    }
    let complex = Z2ChainComplex::new(cells, boundary)?;
    EquivariantCW::new(complex, involution, mode)
}

pub fn load_equivariant_cw(path: &std::path::Path) -> Result<EquivariantCW> {
    let text = std::fs::read_to_string(path)?;
    let file: CwFile = serde_json::from_str(&text)?;
    parse_equivariant_cw(&file)
}
