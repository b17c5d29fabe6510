//! Presentations of torus-manifold fibres from combinatorial characteristic
//! pairs: a simple homology polytope given by vertex-facet incidence plus an
//! integer matrix assigning a primitive vector to each facet. Validation is
//! the unimodularity of every vertex's column block; the relations are the
//! mod-2 linear relations from the matrix rows and the Stanley-Reisner
//! monomials over minimal non-faces.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{GradedPoly, Monomial, VariableTable};
use crate::groebner::{BaseDim, PresentedAlgebra, Truncation};

/// Combinatorial characteristic pair. `vertices` lists, per vertex, the
/// `n` facets meeting there (0-based indices); `lambda` is an `n x m`
/// integer matrix whose column `j` is the primitive vector of facet `j`.
#[derive(Debug, Clone)]
pub struct CharacteristicPair {
    n: usize,
    facet_names: Vec<String>,
    vertices: Vec<Vec<usize>>,
    lambda: Vec<Vec<i64>>,
}

/// On-disk form; `m` is an optional default base dimension for requests
/// that do not override it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub n: usize,
    pub facets: Vec<String>,
    pub vertices: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<serde_json::Value>,
}

impl CharacteristicPair {
    pub fn new(
        n: usize,
        facet_names: Vec<String>,
        vertices: Vec<Vec<usize>>,
        lambda: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let m = facet_names.len();
        if n == 0 || m == 0 {
            return Err(Error::Input("empty characteristic pair".into()));
        }
        if lambda.len() != n || lambda.iter().any(|row| row.len() != m) {
            return Err(Error::Input(format!(
                "lambda must be a {n} x {m} integer matrix"
            )));
        }
        for (vi, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(Error::Input(format!(
                    "vertex {vi} must meet exactly {n} facets"
                )));
            }
            if v.iter().any(|&f| f >= m) {
                return Err(Error::Input(format!("vertex {vi} has a facet index out of range")));
            }
            if v.iter().duplicates().next().is_some() {
                return Err(Error::Input(format!("vertex {vi} repeats a facet")));
            }
        }
        for (j, name) in facet_names.iter().enumerate() {
            let column: Vec<i64> = (0..n).map(|r| lambda[r][j]).collect();
            if !is_primitive(&column) {
                return Err(Error::Input(format!(
                    "lambda column for facet {name} is not primitive"
                )));
            }
            if !vertices.iter().any(|v| v.contains(&j)) {
                return Err(Error::Input(format!("facet {name} appears in no vertex")));
            }
        }
        Ok(Self {
            n,
            facet_names,
            vertices,
            lambda,
        })
    }

    pub fn from_file(file: &PairFile) -> Result<Self> {
        Self::new(
            file.n,
            file.facets.clone(),
            file.vertices.clone(),
            file.lambda.clone(),
        )
    }

    pub fn torus_dim(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.facet_names.len()
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    /// A subset of facets is a face exactly when some vertex contains it.
    pub fn is_face(&self, subset: &[usize]) -> bool {
        self.vertices
            .iter()
            .any(|v| subset.iter().all(|f| v.contains(f)))
    }
}

fn is_primitive(column: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &x in column {
        g = gcd(g, x.abs());
    }
    g == 1
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Fraction-free integer determinant (Bareiss), exact for the small vertex
/// blocks that occur here.
fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// One vertex whose facet columns fail to form a basis.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VertexViolation {
    pub vertex: usize,
    pub facets: Vec<String>,
    pub determinant: i64,
}

#[derive(Debug, Clone)]
pub struct PairValidation {
    pub violations: Vec<VertexViolation>,
}

impl PairValidation {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks local standardness: at every vertex the column block of `lambda`
/// must have determinant +-1 over the integers.
pub fn validate_pair(pair: &CharacteristicPair) -> PairValidation {
    let mut violations = Vec::new();
    for (vi, v) in pair.vertices.iter().enumerate() {
        let block: Vec<Vec<i128>> = (0..pair.n)
            .map(|r| v.iter().map(|&j| pair.lambda[r][j] as i128).collect())
            .collect();
        let det = determinant(block);
        if det.abs() != 1 {
            violations.push(VertexViolation {
                vertex: vi,
                facets: v.iter().map(|&j| pair.facet_names[j].clone()).collect(),
                determinant: det as i64,
            });
        }
    }
    PairValidation { violations }
}

/// Inclusion-minimal facet subsets contained in no vertex set. Since every
/// vertex has exactly `n` facets, minimal non-faces have at most `n+1`
/// elements, and singletons are excluded by the coverage invariant.
pub fn minimal_nonfaces(pair: &CharacteristicPair) -> Vec<Vec<usize>> {
    let m = pair.facet_count();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 2..=(pair.n + 1).min(m) {
        for subset in (0..m).combinations(size) {
            if pair.is_face(&subset) {
                continue;
            }
            let all_proper_faces = subset
                .iter()
                .combinations(size - 1)
                .all(|s| pair.is_face(&s.into_iter().copied().collect::<Vec<_>>()));
            if all_proper_faces {
                out.push(subset);
            }
        }
    }
    out
}

/// The presented algebra of the fibre and base together: variables `y` of
/// degree 1 and one degree-2 variable per facet, linear relations from the
/// mod-2 rows of `lambda`, monomial relations over minimal non-faces, and
/// the base truncation `y^{m+1}` for a finite base.
pub fn build_torus_presentation(
    pair: &CharacteristicPair,
    m_base: BaseDim,
) -> Result<PresentedAlgebra> {
    let validation = validate_pair(pair);
    if !validation.passed() {
        let first = &validation.violations[0];
        return Err(Error::PairRejected(format!(
            "vertex {} {{{}}} has determinant {}",
            first.vertex,
            first.facets.join(", "),
            first.determinant
        )));
    }

    let mut entries = vec![("y".to_string(), 1)];
    for j in 1..=pair.facet_count() {
        entries.push((format!("x̃{j}"), 2));
    }
    let table = VariableTable::new(entries)?;
    let relations = torus_relations(pair, &table, 1)?;

    let truncation = match m_base {
        BaseDim::Finite(m) => Some(Truncation {
            var: 0,
            power: (m + 1) as u32,
        }),
        BaseDim::Infinite => None,
    };
    let base_label = match m_base {
        BaseDim::Finite(m) => format!("RP^{m}"),
        BaseDim::Infinite => "RP^inf".to_string(),
    };
    PresentedAlgebra::new(
        table,
        relations,
        truncation,
        format!(
            "torus pair: n={}, facets=[{}], base {base_label}; assumes H^2(Q;Z)=0",
            pair.n,
            pair.facet_names.join(", ")
        ),
    )
}

/// The fibre ring alone: the facet variables with relations (linear rows
/// plus non-face monomials), no `y`.
pub fn torus_fiber_presentation(pair: &CharacteristicPair) -> Result<PresentedAlgebra> {
    let validation = validate_pair(pair);
    if !validation.passed() {
        return Err(Error::PairRejected("unimodularity failed".into()));
    }
    let entries: Vec<(String, usize)> = (1..=pair.facet_count())
        .map(|j| (format!("x̃{j}"), 2))
        .collect();
    let table = VariableTable::new(entries)?;
    let relations = torus_relations(pair, &table, 0)?;
    PresentedAlgebra::new(
        table,
        relations,
        None,
        format!("torus fibre: n={}", pair.n),
    )
}

/// Relations (i) and (ii) with facet variables starting at `offset` in the
/// table. The ideal never involves `y`.
fn torus_relations(
    pair: &CharacteristicPair,
    table: &Arc<VariableTable>,
    offset: usize,
) -> Result<Vec<GradedPoly>> {
    let mut relations = Vec::new();
    for (r, row) in pair.lambda.iter().enumerate() {
        let monomials: Vec<Monomial> = row
            .iter()
            .enumerate()
            .filter(|(_, &a)| a.rem_euclid(2) == 1)
            .map(|(j, _)| Monomial::variable(table.len(), offset + j, 1))
            .collect();
        if monomials.is_empty() {
            return Err(Error::Input(format!(
                "lambda row {r} vanishes mod 2 despite unimodularity"
            )));
        }
        relations.push(GradedPoly::from_monomials(table.clone(), monomials));
    }
    for nonface in minimal_nonfaces(pair) {
        let mut exps = vec![0u32; table.len()];
        for j in nonface {
            exps[offset + j] = 1;
        }
        relations.push(GradedPoly::from_monomials(
            table.clone(),
            vec![Monomial::from_exps(exps)],
        ));
    }
    Ok(relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::text;
    use crate::groebner::hilbert_function;

    pub(crate) fn triangle() -> CharacteristicPair {
        CharacteristicPair::new(
            2,
            vec!["F1".into(), "F2".into(), "F3".into()],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![vec![1, 0, -1], vec![0, 1, -1]],
        )
        .unwrap()
    }

    pub(crate) fn square() -> CharacteristicPair {
        CharacteristicPair::new(
            2,
            vec!["F1".into(), "F2".into(), "F3".into(), "F4".into()],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            vec![vec![1, 0, -1, 0], vec![0, 1, 0, -1]],
        )
        .unwrap()
    }

    fn bad_triangle() -> CharacteristicPair {
        CharacteristicPair::new(
            2,
            vec!["F1".into(), "F2".into(), "F3".into()],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![vec![1, 0, 2], vec![0, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn unimodularity_validation() {
        assert!(validate_pair(&triangle()).passed());
        assert!(validate_pair(&square()).passed());

        let v = validate_pair(&bad_triangle());
        assert!(!v.passed());
        assert_eq!(v.violations.len(), 1);
        // vertex {F2, F3}: det [[0,2],[1,1]] = -2
        assert_eq!(v.violations[0].vertex, 1);
        assert_eq!(v.violations[0].determinant, -2);
        assert_eq!(v.violations[0].facets, vec!["F2", "F3"]);
    }

    #[test]
    fn nonfaces() {
        assert_eq!(minimal_nonfaces(&triangle()), vec![vec![0, 1, 2]]);
        assert_eq!(minimal_nonfaces(&square()), vec![vec![0, 2], vec![1, 3]]);
        // boundary of the 2-simplex (as a 1-dimensional pair): full set only
        let simplex = CharacteristicPair::new(
            1,
            vec!["F1".into(), "F2".into()],
            vec![vec![0], vec![1]],
            vec![vec![1, -1]],
        )
        .unwrap();
        assert_eq!(minimal_nonfaces(&simplex), vec![vec![0, 1]]);
    }

    #[test]
    fn square_presentation() {
        let alg = build_torus_presentation(&square(), BaseDim::Finite(2)).unwrap();
        let rels: Vec<String> = alg.relations().iter().map(text::render).collect();
        assert_eq!(
            rels,
            vec!["x̃1 + x̃3", "x̃2 + x̃4", "x̃1*x̃3", "x̃2*x̃4"]
        );
        assert_eq!(alg.base_truncation(), Some(Truncation { var: 0, power: 3 }));
        // the ideal never mentions y
        assert!(alg.relations().iter().all(|r| !r.contains_var(0)));

        // dimensions: (1+t+t^2) * (1+t^2)^2
        let hf = hilbert_function(&alg, 8);
        assert_eq!(hf.dims(), &[1, 1, 3, 2, 3, 1, 1, 0, 0]);

        // fibre alone: (1+t^2)^2, total = vertex count
        let fiber = torus_fiber_presentation(&square()).unwrap();
        let fhf = hilbert_function(&fiber, 4);
        assert_eq!(fhf.dims(), &[1, 0, 2, 0, 1]);
        assert_eq!(fhf.total(), square().vertices().len());
    }

    #[test]
    fn triangle_presentation() {
        // base RP^1: (1+t)(1+t^2+t^4)
        let alg = build_torus_presentation(&triangle(), BaseDim::Finite(1)).unwrap();
        let hf = hilbert_function(&alg, 6);
        assert_eq!(hf.dims(), &[1, 1, 1, 1, 1, 1, 0]);

        let fiber = torus_fiber_presentation(&triangle()).unwrap();
        assert_eq!(hilbert_function(&fiber, 4).dims(), &[1, 0, 1, 0, 1]);
    }

    #[test]
    fn infinite_base_has_no_truncation() {
        let alg = build_torus_presentation(&square(), BaseDim::Infinite).unwrap();
        assert_eq!(alg.base_truncation(), None);
        let hf = hilbert_function(&alg, 5);
        // (1 + 2t^2 + t^4) * (1 + t + t^2 + ...)
        assert_eq!(hf.dims(), &[1, 1, 3, 3, 4, 4]);
    }

    #[test]
    fn rejects_bad_pair() {
        let err = build_torus_presentation(&bad_triangle(), BaseDim::Finite(2));
        assert!(matches!(err, Err(Error::PairRejected(_))));
    }

    #[test]
    fn rejects_structural_garbage() {
        // non-primitive column
        assert!(CharacteristicPair::new(
            2,
            vec!["F1".into(), "F2".into()],
            vec![vec![0, 1]],
            vec![vec![2, 0], vec![0, 1]],
        )
        .is_err());
        // wrong vertex size
        assert!(CharacteristicPair::new(
            2,
            vec!["F1".into(), "F2".into()],
            vec![vec![0]],
            vec![vec![1, 0], vec![0, 1]],
        )
        .is_err());
        // uncovered facet
        assert!(CharacteristicPair::new(
            1,
            vec!["F1".into(), "F2".into()],
            vec![vec![0]],
            vec![vec![1, 1]],
        )
        .is_err());
    }

    #[test]
    fn lambda_rows_have_full_mod2_rank() {
        // unimodularity forces n independent linear relations mod 2
        for pair in [triangle(), square()] {
            let m = pair.facet_count();
            let mut rows: Vec<Vec<u8>> = pair
                .lambda
                .iter()
                .map(|row| row.iter().map(|a| (a.rem_euclid(2)) as u8).collect())
                .collect();
            let mut rank = 0;
            for c in 0..m {
                if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                    rows.swap(rank, p);
                    for r in 0..rows.len() {
                        if r != rank && rows[r][c] == 1 {
                            for cc in 0..m {
                                rows[r][cc] ^= rows[rank][cc];
                            }
                        }
                    }
                    rank += 1;
                }
            }
            assert_eq!(rank, pair.torus_dim());
        }
    }
}
