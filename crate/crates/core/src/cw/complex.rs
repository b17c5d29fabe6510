//! Mod-2 cellular chain complexes with involutions: equivariant products,
//! free-involution quotients, perfectness, and GF(2) Betti numbers. This is
//! the dimension oracle that never touches the ring engine.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::par;

use super::matrix::Gf2Matrix;

/// Cells per dimension with GF(2) boundary matrices. `boundary[d]` maps
/// d-chains to (d-1)-chains: rows are (d-1)-cells, columns are d-cells;
/// `boundary[0]` is the empty matrix. The chain condition `∂∂ = 0` is
/// checked at construction.
#[derive(Debug, Clone)]
pub struct Z2ChainComplex {
    cells: Vec<Vec<String>>,
    boundary: Vec<Gf2Matrix>,
}

impl Z2ChainComplex {
    pub fn new(cells: Vec<Vec<String>>, boundary: Vec<Gf2Matrix>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Input("complex needs at least dimension 0".into()));
        }
        if boundary.len() != cells.len() {
            return Err(Error::Input(
                "need one boundary matrix per dimension (the 0th is empty)".into(),
            ));
        }
        for (d, names) in cells.iter().enumerate() {
            for (i, name) in names.iter().enumerate() {
                if names[..i].contains(name) {
                    return Err(Error::Input(format!(
                        "duplicate cell name {name:?} in dimension {d}"
                    )));
                }
            }
        }
        for d in 0..cells.len() {
            let expect_rows = if d == 0 { 0 } else { cells[d - 1].len() };
            if boundary[d].rows() != expect_rows || boundary[d].cols() != cells[d].len() {
                return Err(Error::Input(format!(
                    "boundary matrix in dimension {d} has shape {}x{}, expected {}x{}",
                    boundary[d].rows(),
                    boundary[d].cols(),
                    expect_rows,
                    cells[d].len()
                )));
            }
        }
        for d in 2..cells.len() {
            if !boundary[d - 1].mul(&boundary[d]).is_zero() {
                return Err(Error::Input(format!(
                    "boundary squared is nonzero from dimension {d}"
                )));
            }
        }
        Ok(Self { cells, boundary })
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, d: usize) -> &[String] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn boundary(&self, d: usize) -> &Gf2Matrix {
        &self.boundary[d]
    }

    /// PASS when every boundary matrix vanishes; otherwise the first cell
    /// with a nonzero boundary column.
    pub fn perfectness_check(&self) -> PerfectnessReport {
        for d in 1..self.cells.len() {
            for c in 0..self.cells[d].len() {
                if !self.boundary[d].column_is_zero(c) {
                    return PerfectnessReport {
                        perfect: false,
                        offender: Some((d, self.cells[d][c].clone())),
                    };
                }
            }
        }
        PerfectnessReport {
            perfect: true,
            offender: None,
        }
    }

    /// GF(2) Betti numbers: `dim ker ∂_d - rank ∂_{d+1}` per degree, by row
    /// reduction. The per-degree ranks are independent, so they fan out.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let top = self.top_dim();
        let ranks = par::map_indices(top + 2, |d| {
            if d <= top {
                self.boundary[d].rank()
            } else {
                0
            }
        });
        (0..=top)
            .map(|d| self.cells[d].len() - ranks[d] - ranks[d + 1])
            .collect()
    }

    /// Sequential twin of [`Self::betti_numbers`] for the benchmark suite.
    pub fn betti_numbers_sequential(&self) -> Vec<usize> {
        let top = self.top_dim();
        let ranks: Vec<usize> = (0..=top).map(|d| self.boundary[d].rank()).collect();
        (0..=top)
            .map(|d| {
                let above = if d < top { ranks[d + 1] } else { 0 };
                self.cells[d].len() - ranks[d] - above
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                sign * cs.len() as i64
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub perfect: bool,
    pub offender: Option<(usize, String)>,
}

/// How an involution is allowed to act on cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionMode {
    /// No fixed cells in any dimension (the covering side).
    Free,
    /// The identity permutation everywhere (the fibre side: the involution
    /// stabilizes each cell, so the induced chain map is the identity).
    CellwiseFixed,
}

/// A chain complex with a cellwise involution given as one permutation per
/// dimension. The permutation must square to the identity, commute with the
/// boundary, and satisfy its declared mode.
#[derive(Debug, Clone)]
pub struct EquivariantCW {
    complex: Z2ChainComplex,
    involution: Vec<Vec<usize>>,
    mode: InvolutionMode,
}

impl EquivariantCW {
    pub fn new(
        complex: Z2ChainComplex,
        involution: Vec<Vec<usize>>,
        mode: InvolutionMode,
    ) -> Result<Self> {
        if involution.len() != complex.cells.len() {
            return Err(Error::Input(
                "need one involution permutation per dimension".into(),
            ));
        }
        for (d, perm) in involution.iter().enumerate() {
            let n = complex.cells[d].len();
            if perm.len() != n {
                return Err(Error::Input(format!(
                    "involution in dimension {d} has wrong length"
                )));
            }
            let mut seen = vec![false; n];
            for &img in perm {
                if img >= n || seen[img] {
                    return Err(Error::Input(format!(
                        "involution in dimension {d} is not a permutation"
                    )));
                }
                seen[img] = true;
            }
            for (i, &img) in perm.iter().enumerate() {
                if perm[img] != i {
                    return Err(Error::Input(format!(
                        "involution in dimension {d} does not square to the identity"
                    )));
                }
            }
            match mode {
                InvolutionMode::Free => {
                    if let Some((i, _)) = perm.iter().enumerate().find(|&(i, &img)| i == img) {
                        return Err(Error::Contract(format!(
                            "free involution fixes cell {:?} in dimension {d}",
                            complex.cells[d][i]
                        )));
                    }
                }
                InvolutionMode::CellwiseFixed => {
                    if perm.iter().enumerate().any(|(i, &img)| i != img) {
                        return Err(Error::Contract(format!(
                            "cellwise-fixed involution must be the identity in dimension {d}"
                        )));
                    }
                }
            }
        }
        // the involution must be a chain map: ∂(σc) = σ(∂c)
        for d in 1..complex.cells.len() {
            let b = &complex.boundary[d];
            for c in 0..complex.cells[d].len() {
                for r in 0..complex.cells[d - 1].len() {
                    if b.get(r, c) != b.get(involution[d - 1][r], involution[d][c]) {
                        return Err(Error::Input(format!(
                            "involution does not commute with the boundary at dimension {d}"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            complex,
            involution,
            mode,
        })
    }

    pub fn complex(&self) -> &Z2ChainComplex {
        &self.complex
    }

    pub fn mode(&self) -> InvolutionMode {
        self.mode
    }

    pub fn involution(&self) -> &[Vec<usize>] {
        &self.involution
    }
}

/// Product CW structure on `S x X` where the involution acts freely on the
/// `S` side and stabilizes each cell of `X`. Cells are pairs `(e,d)`;
/// the boundary is the GF(2) Leibniz sum, and the product involution sends
/// `(e,d)` to `(α(e),d)`. The result is again free.
pub fn product_complex(s: &EquivariantCW, x: &EquivariantCW) -> Result<EquivariantCW> {
    if s.mode != InvolutionMode::Free {
        return Err(Error::Contract("first factor must carry a free involution".into()));
    }
    if x.mode != InvolutionMode::CellwiseFixed {
        return Err(Error::Contract(
            "second factor must carry a cellwise-fixed involution".into(),
        ));
    }
    let (sc, xc) = (&s.complex, &x.complex);
    let top = sc.top_dim() + xc.top_dim();

    // position of (p, i, q, j) within dimension p+q, built in (p, i, j) order
    let mut index: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    for r in 0..=top {
        for p in 0..=r.min(sc.top_dim()) {
            let q = r - p;
            if q > xc.top_dim() {
                continue;
            }
            for (i, e) in sc.cells(p).iter().enumerate() {
                for (j, d) in xc.cells(q).iter().enumerate() {
                    index.insert((p, i, q, j), cells[r].len());
                    cells[r].push(format!("({e},{d})"));
                }
            }
        }
    }

    let mut boundary: Vec<Gf2Matrix> = Vec::with_capacity(top + 1);
    boundary.push(Gf2Matrix::zero(0, cells[0].len()));
    for r in 1..=top {
        let mut b = Gf2Matrix::zero(cells[r - 1].len(), cells[r].len());
        for p in 0..=r.min(sc.top_dim()) {
            let q = r - p;
            if q > xc.top_dim() {
                continue;
            }
            for i in 0..sc.cells(p).len() {
                for j in 0..xc.cells(q).len() {
                    let col = index[&(p, i, q, j)];
                    if p >= 1 {
                        let bs = sc.boundary(p);
                        for i2 in 0..sc.cells(p - 1).len() {
                            if bs.get(i2, i) {
                                b.flip(index[&(p - 1, i2, q, j)], col);
                            }
                        }
                    }
                    if q >= 1 {
                        let bx = xc.boundary(q);
                        for j2 in 0..xc.cells(q - 1).len() {
                            if bx.get(j2, j) {
                                b.flip(index[&(p, i, q - 1, j2)], col);
                            }
                        }
                    }
                }
            }
        }
        boundary.push(b);
    }

    let mut involution: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for r in 0..=top {
        let mut perm = vec![0usize; cells[r].len()];
        for p in 0..=r.min(sc.top_dim()) {
            let q = r - p;
            if q > xc.top_dim() {
                continue;
            }
            for i in 0..sc.cells(p).len() {
                for j in 0..xc.cells(q).len() {
                    perm[index[&(p, i, q, j)]] = index[&(p, s.involution[p][i], q, j)];
                }
            }
        }
        involution.push(perm);
    }

    let complex = Z2ChainComplex::new(cells, boundary)?;
    EquivariantCW::new(complex, involution, InvolutionMode::Free)
}

/// Quotient by a free involution: one cell per orbit pair, named after the
/// lexicographically smaller member; the boundary of an orbit is the orbit
/// projection of the boundary of either representative, terms cancelling
/// mod 2 when both members of a pair occur.
pub fn involution_quotient(c: &EquivariantCW) -> Result<Z2ChainComplex> {
    if c.mode != InvolutionMode::Free {
        return Err(Error::Contract("quotient requires a free involution".into()));
    }
    let complex = &c.complex;
    let top = complex.top_dim();

    // orbit representatives per dimension, in original cell order
    let mut rep_of: Vec<Vec<usize>> = Vec::with_capacity(top + 1); // cell -> orbit index
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(top + 1); // orbit -> representative cell
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let names = complex.cells(d);
        let perm = &c.involution[d];
        let mut orbit_of = vec![usize::MAX; names.len()];
        let mut dim_reps = Vec::new();
        let mut dim_names = Vec::new();
        for (i, name) in names.iter().enumerate() {
            let partner = perm[i];
            let is_rep = name < &names[partner];
            if is_rep {
                orbit_of[i] = dim_reps.len();
                orbit_of[partner] = dim_reps.len();
                dim_reps.push(i);
                dim_names.push(name.clone());
            }
        }
        rep_of.push(orbit_of);
        reps.push(dim_reps);
        cells.push(dim_names);
    }

    let mut boundary: Vec<Gf2Matrix> = Vec::with_capacity(top + 1);
    boundary.push(Gf2Matrix::zero(0, cells[0].len()));
    for d in 1..=top {
        let src = complex.boundary(d);
        let mut b = Gf2Matrix::zero(cells[d - 1].len(), cells[d].len());
        for (orbit, &rep) in reps[d].iter().enumerate() {
            for r in 0..complex.cells(d - 1).len() {
                if src.get(r, rep) {
                    b.flip(rep_of[d - 1][r], orbit);
                }
            }
        }
        boundary.push(b);
    }
    Z2ChainComplex::new(cells, boundary)
}

/// Equivariant sphere `S^m` with the antipodal action: two cells per
/// dimension, each bounding the sum of the two below.
pub fn sphere_antipodal(m: usize) -> EquivariantCW {
    let cells: Vec<Vec<String>> = (0..=m)
        .map(|d| vec![format!("e{d}+"), format!("e{d}-")])
        .collect();
    let mut boundary = vec![Gf2Matrix::zero(0, 2)];
    for _ in 1..=m {
        boundary.push(Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]));
    }
    let involution = vec![vec![1, 0]; m + 1];
    let complex = Z2ChainComplex::new(cells, boundary).expect("antipodal sphere is a complex");
    EquivariantCW::new(complex, involution, InvolutionMode::Free)
        .expect("antipodal involution is free")
}

/// `S^n` with the reflection that stabilizes both cells of the two-cell
/// structure (one 0-cell, one n-cell).
pub fn sphere_reflection(n: usize) -> EquivariantCW {
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    cells[0] = vec!["d0".to_string()];
    cells[n] = vec![format!("d{n}")];
    let mut boundary = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let rows = if d == 0 { 0 } else { cells[d - 1].len() };
        boundary.push(Gf2Matrix::zero(rows, cells[d].len()));
    }
    let involution: Vec<Vec<usize>> = cells.iter().map(|cs| (0..cs.len()).collect()).collect();
    let complex = Z2ChainComplex::new(cells, boundary).expect("two-cell sphere is a complex");
    EquivariantCW::new(complex, involution, InvolutionMode::CellwiseFixed)
        .expect("identity involution is cellwise fixed")
}

/// Complex projective space `CP^n` with its even-cell structure, all
/// boundaries zero, conjugation stabilizing each cell.
pub fn projective_space_cells(n: usize) -> EquivariantCW {
    let top = 2 * n;
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    for i in 0..=n {
        cells[2 * i] = vec![format!("c{}", 2 * i)];
    }
    let mut boundary = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let rows = if d == 0 { 0 } else { cells[d - 1].len() };
        boundary.push(Gf2Matrix::zero(rows, cells[d].len()));
    }
    let involution: Vec<Vec<usize>> = cells.iter().map(|cs| (0..cs.len()).collect()).collect();
    let complex = Z2ChainComplex::new(cells, boundary).expect("even cells form a complex");
    EquivariantCW::new(complex, involution, InvolutionMode::CellwiseFixed)
        .expect("identity involution is cellwise fixed")
}
