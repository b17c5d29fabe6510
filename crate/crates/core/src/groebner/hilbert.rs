//! Graded dimension counting. The Hilbert function of a presented algebra is
//! the number of standard monomials per weighted degree: monomials divisible
//! by no leading monomial of the reduced basis. Counting enumerates exponent
//! vectors degree-first; the outermost variable fans out in parallel.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{GradedPoly, Monomial, VariableTable};
use crate::intpoly;
use crate::par;

use super::algebra::PresentedAlgebra;
use super::buchberger::{buchberger, GroebnerBasis};

/// Degree-indexed GF(2) dimensions of a graded algebra, degrees `0..=bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    dims: Vec<usize>,
}

impl HilbertFunction {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn bound(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

struct LeadInfo {
    lead: Monomial,
    max_var: usize,
}

fn lead_infos(gb: &GroebnerBasis) -> Option<Vec<LeadInfo>> {
    if gb.is_unit_ideal() {
        return None; // everything dies
    }
    Some(
        gb.leading_monomials()
            .iter()
            .map(|m| LeadInfo {
                lead: m.clone(),
                // constant leads are covered by the unit-ideal case
                max_var: m.max_var().unwrap_or(0),
            })
            .collect(),
    )
}

/// Prefix prune: once every variable a lead touches has been assigned, the
/// lead either already divides the prefix (kill the whole subtree) or never
/// will along this branch. Each lead is examined exactly once per branch, at
/// the level where its last variable gets fixed.
fn dfs_count(
    table: &VariableTable,
    leads: &[LeadInfo],
    var: usize,
    exps: &mut Vec<u32>,
    used: usize,
    bound: usize,
    hist: &mut [usize],
) {
    if prefix_dominated(leads, exps, |mv| mv + 1 == var) {
        return;
    }
    if var == table.len() {
        hist[used] += 1;
        return;
    }
    let step = table.degree(var);
    let max_exp = (bound - used) / step;
    for e in 0..=max_exp as u32 {
        exps.push(e);
        dfs_count(
            table,
            leads,
            var + 1,
            exps,
            used + e as usize * step,
            bound,
            hist,
        );
        exps.pop();
    }
}

fn prefix_dominated(
    leads: &[LeadInfo],
    prefix: &[u32],
    relevant: impl Fn(usize) -> bool,
) -> bool {
    leads.iter().any(|info| {
        relevant(info.max_var)
            && info
                .lead
                .exps()
                .iter()
                .zip(prefix.iter())
                .all(|(l, e)| l <= e)
    })
}

fn count_from_prefix(
    table: &VariableTable,
    leads: &[LeadInfo],
    prefix: &[u32],
    bound: usize,
    hist: &mut [usize],
) {
    // leads living strictly inside the prefix were never checked by the
    // seeded walk below
    if prefix_dominated(leads, prefix, |mv| mv + 1 < prefix.len()) {
        return;
    }
    let used: usize = prefix
        .iter()
        .enumerate()
        .map(|(i, &e)| e as usize * table.degree(i))
        .sum();
    let mut exps = prefix.to_vec();
    dfs_count(table, leads, prefix.len(), &mut exps, used, bound, hist);
}

/// Hilbert function from an already computed basis.
pub fn hilbert_function_of_basis(gb: &GroebnerBasis, bound: usize) -> HilbertFunction {
    let table = gb.table();
    let Some(leads) = lead_infos(gb) else {
        return HilbertFunction {
            dims: vec![0; bound + 1],
        };
    };
    if table.is_empty() {
        let mut dims = vec![0; bound + 1];
        dims[0] = 1;
        return HilbertFunction { dims };
    }

    // thread dispatch costs more than the whole walk on small inputs
    if bound < 64 || table.len() < 2 {
        return hilbert_function_of_basis_sequential(gb, bound);
    }

    // fan out over the first two exponents (a single top-level split puts
    // almost all the work into the low-exponent branch), then chunk the
    // prefixes so each task amortizes its dispatch
    let deg0 = table.degree(0);
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    for e0 in 0..=(bound / deg0) as u32 {
        if table.len() == 1 {
            prefixes.push(vec![e0]);
            continue;
        }
        let left = bound - e0 as usize * deg0;
        for e1 in 0..=(left / table.degree(1)) as u32 {
            prefixes.push(vec![e0, e1]);
        }
    }
    let chunk = prefixes.len().div_ceil(64).max(1);
    let chunks: Vec<&[Vec<u32>]> = prefixes.chunks(chunk).collect();
    let partials = par::map_indices(chunks.len(), |i| {
        let mut hist = vec![0usize; bound + 1];
        for prefix in chunks[i] {
            count_from_prefix(table, &leads, prefix, bound, &mut hist);
        }
        hist
    });
    let mut dims = vec![0usize; bound + 1];
    for partial in partials {
        for (d, c) in partial.into_iter().enumerate() {
            dims[d] += c;
        }
    }
    HilbertFunction { dims }
}

/// Sequential twin of [`hilbert_function_of_basis`], kept unconditionally so
/// the benchmark suite can compare both code paths in one build.
pub fn hilbert_function_of_basis_sequential(gb: &GroebnerBasis, bound: usize) -> HilbertFunction {
    let table = gb.table();
    let Some(leads) = lead_infos(gb) else {
        return HilbertFunction {
            dims: vec![0; bound + 1],
        };
    };
    if table.is_empty() {
        let mut dims = vec![0; bound + 1];
        dims[0] = 1;
        return HilbertFunction { dims };
    }
    let mut dims = vec![0usize; bound + 1];
    let mut exps = Vec::new();
    dfs_count(table, &leads, 0, &mut exps, 0, bound, &mut dims);
    HilbertFunction { dims }
}

/// Hilbert function of the presented algebra through `bound`, using the
/// algebra's default monomial order.
pub fn hilbert_function(algebra: &PresentedAlgebra, bound: usize) -> HilbertFunction {
    let gb = buchberger(algebra, algebra.default_order());
    hilbert_function_of_basis(&gb, bound)
}

/// Outcome of the Hilbert-series regular-sequence certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSequenceCertificate {
    pub pass: bool,
    /// First degree where quotient and product series disagree.
    pub witness: Option<usize>,
    pub quotient: HilbertFunction,
    pub expected: Vec<i64>,
}

/// Expected Hilbert series of a complete intersection cut out by
/// homogeneous generators of the given degrees.
pub fn complete_intersection_series(
    var_degrees: &[usize],
    gen_degrees: &[usize],
    bound: usize,
) -> Vec<i64> {
    let mut series = vec![0i64; bound + 1];
    series[0] = 1;
    for &g in gen_degrees {
        intpoly::mul_one_minus(&mut series, g);
    }
    for &e in var_degrees {
        intpoly::div_one_minus(&mut series, e);
    }
    series
}

/// Certifies that homogeneous `gens` form a regular sequence through degree
/// `bound`: the quotient's Hilbert function must match the factored series
/// `prod (1-t^{deg g}) / prod (1-t^{deg var})` exactly.
pub fn regular_sequence_certificate(
    gens: &[GradedPoly],
    bound: usize,
) -> Result<RegularSequenceCertificate> {
    let table = gens
        .first()
        .map(|g| g.table().clone())
        .ok_or_else(|| Error::Input("empty generator list".into()))?;
    let mut gen_degrees = Vec::with_capacity(gens.len());
    for g in gens {
        let d = g
            .homogeneous_degree()
            .ok_or_else(|| Error::Input("non-homogeneous generator".into()))?;
        gen_degrees.push(d);
    }
    let var_degrees: Vec<usize> = (0..table.len()).map(|i| table.degree(i)).collect();
    let expected = complete_intersection_series(&var_degrees, &gen_degrees, bound);

    let algebra = PresentedAlgebra::new(table, gens.to_vec(), None, "certificate")?;
    let quotient = hilbert_function(&algebra, bound);
    let outcome = compare_dims_to_series(quotient.dims(), &expected);
    Ok(RegularSequenceCertificate {
        pass: outcome.is_none(),
        witness: outcome,
        quotient,
        expected,
    })
}

/// First degree where the dimension vector departs from the series.
pub fn compare_dims_to_series(dims: &[usize], expected: &[i64]) -> Option<usize> {
    let len = dims.len().min(expected.len());
    (0..len).find(|&d| dims[d] as i64 != expected[d])
}

/// Dimension vector of a graded tensor product: convolution of the factors.
pub fn convolve_dims(a: &[i64], b: &[i64], bound: usize) -> Vec<i64> {
    intpoly::mul_trunc(a, b, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::VariableTable;
    use crate::groebner::algebra::Truncation;
    use crate::groebner::MonomialOrder;

    #[test]
    fn truncated_polynomial_ring() {
        // Z2[y]/<y^3> through degree 4: [1,1,1,0,0]
        let t = VariableTable::new([("y", 1)]).unwrap();
        let alg = PresentedAlgebra::new(
            t,
            vec![],
            Some(Truncation { var: 0, power: 3 }),
            "",
        )
        .unwrap();
        assert_eq!(hilbert_function(&alg, 4).dims(), &[1, 1, 1, 0, 0]);
    }

    #[test]
    fn sphere_bundle_rings() {
        // Z2[y,u]/<y^3, u^2>, deg u = 2: [1,1,2,1,1,0]
        let t = VariableTable::new([("y", 1), ("u", 2)]).unwrap();
        let u2 = GradedPoly::variable(t.clone(), 1).frobenius();
        let alg = PresentedAlgebra::new(
            t,
            vec![u2],
            Some(Truncation { var: 0, power: 3 }),
            "",
        )
        .unwrap();
        assert_eq!(hilbert_function(&alg, 5).dims(), &[1, 1, 2, 1, 1, 0]);

        // A[a]/<a^2+ay> with A = Z2[y]/<y^3>: [1,2,2,1] in degrees 0..3
        let t = VariableTable::new([("y", 1), ("a", 1)]).unwrap();
        let y = GradedPoly::variable(t.clone(), 0);
        let a = GradedPoly::variable(t.clone(), 1);
        let rel = a.frobenius().add(&a.mul(&y).unwrap()).unwrap();
        let alg = PresentedAlgebra::new(
            t,
            vec![rel],
            Some(Truncation { var: 0, power: 3 }),
            "",
        )
        .unwrap();
        assert_eq!(hilbert_function(&alg, 3).dims(), &[1, 2, 2, 1]);
    }

    #[test]
    fn dims_independent_of_order_and_parallelism() {
        let t = VariableTable::new([("y", 1), ("c̃1", 2), ("c̃2", 4)]).unwrap();
        let c1 = GradedPoly::variable(t.clone(), 1);
        let c2 = GradedPoly::variable(t.clone(), 2);
        let rel = c1.frobenius().add(&c2).unwrap(); // c̃1^2 + c̃2
        let alg = PresentedAlgebra::new(
            t.clone(),
            vec![rel, c2.frobenius()],
            Some(Truncation { var: 0, power: 3 }),
            "",
        )
        .unwrap();
        let grevlex = buchberger(&alg, alg.default_order());
        let grlex = buchberger(&alg, MonomialOrder::grlex(&t).with_variable_last(0));
        let a = hilbert_function_of_basis(&grevlex, 12);
        let b = hilbert_function_of_basis(&grlex, 12);
        assert_eq!(a, b);
        let c = hilbert_function_of_basis_sequential(&grevlex, 12);
        assert_eq!(a, c);
    }

    #[test]
    fn regular_sequence_examples() {
        // {y, c̃1^2} in Z2[y, c̃1]: PASS, quotient is 1 + t^2
        let t = VariableTable::new([("y", 1), ("c̃1", 2)]).unwrap();
        let y = GradedPoly::variable(t.clone(), 0);
        let c1sq = GradedPoly::variable(t.clone(), 1).frobenius();
        let cert = regular_sequence_certificate(&[y, c1sq], 8).unwrap();
        assert!(cert.pass);
        assert_eq!(&cert.quotient.dims()[..5], &[1, 0, 1, 0, 0]);

        // {y^2} in Z2[y]: a single homogeneous nonzerodivisor passes
        let t = VariableTable::new([("y", 1)]).unwrap();
        let y2 = GradedPoly::variable_power(t, 0, 2);
        assert!(regular_sequence_certificate(&[y2], 8).unwrap().pass);

        // {x̃1, x̃1*x̃2} in Z2[x̃1, x̃2]: x̃1*x̃2 is a zerodivisor mod x̃1;
        // first disagreement at degree 4
        let t = VariableTable::new([("x̃1", 2), ("x̃2", 2)]).unwrap();
        let x1 = GradedPoly::variable(t.clone(), 0);
        let x2 = GradedPoly::variable(t.clone(), 1);
        let cert = regular_sequence_certificate(&[x1.clone(), x1.mul(&x2).unwrap()], 8).unwrap();
        assert!(!cert.pass);
        assert_eq!(cert.witness, Some(4));
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let t = VariableTable::new([("y", 1), ("c̃1", 2)]).unwrap();
        let y = GradedPoly::variable(t.clone(), 0);
        let c = GradedPoly::variable(t, 1);
        let bad = y.add(&c).unwrap();
        assert!(regular_sequence_certificate(&[bad], 4).is_err());
    }

    /// Independent oracle on tiny instances: dim (R/I)_d from explicit GF(2)
    /// row reduction of the degree-d multiplication-by-generators matrix,
    /// with its own little rank routine.
    #[test]
    fn standard_monomial_count_matches_rank_nullity() {
        fn monomials_of_degree(t: &VariableTable, d: usize) -> Vec<Monomial> {
            fn rec(t: &VariableTable, var: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
                if var == t.len() {
                    if left == 0 {
                        out.push(Monomial::from_exps(cur.clone()));
                    }
                    return;
                }
                for e in 0..=(left / t.degree(var)) as u32 {
                    cur.push(e);
                    rec(t, var + 1, left - e as usize * t.degree(var), cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(t, 0, d, &mut Vec::new(), &mut out);
            out
        }

        fn rank_gf2(mut rows: Vec<Vec<u8>>) -> usize {
            let cols = rows.first().map_or(0, Vec::len);
            let mut rank = 0;
            for c in 0..cols {
                if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                    rows.swap(rank, p);
                    for r in 0..rows.len() {
                        if r != rank && rows[r][c] == 1 {
                            for cc in 0..cols {
                                rows[r][cc] ^= rows[rank][cc];
                            }
                        }
                    }
                    rank += 1;
                }
            }
            rank
        }

        let t = VariableTable::new([("y", 1), ("u", 2), ("v", 2)]).unwrap();
        let y = GradedPoly::variable(t.clone(), 0);
        let u = GradedPoly::variable(t.clone(), 1);
        let v = GradedPoly::variable(t.clone(), 2);
        let gens = vec![
            u.frobenius().add(&u.mul(&v).unwrap()).unwrap(),
            y.pow(3).unwrap(),
            v.mul(&y).unwrap().mul(&y).unwrap(),
        ];
        let alg = PresentedAlgebra::new(t.clone(), gens.clone(), None, "").unwrap();
        let hf = hilbert_function(&alg, 6);

        for d in 0..=6usize {
            let basis_d = monomials_of_degree(&t, d);
            let index = |m: &Monomial| basis_d.iter().position(|b| b == m).unwrap();
            // rows: m * g for each generator g and monomial m with matching degree
            let mut rows = Vec::new();
            for g in &gens {
                let gd = g.homogeneous_degree().unwrap();
                if gd > d {
                    continue;
                }
                for m in monomials_of_degree(&t, d - gd) {
                    let prod = g.mul_monomial(&m);
                    let mut row = vec![0u8; basis_d.len()];
                    for term in prod.support() {
                        row[index(term)] ^= 1;
                    }
                    rows.push(row);
                }
            }
            let ideal_dim = rank_gf2(rows);
            assert_eq!(
                hf.dim(d),
                basis_d.len() - ideal_dim,
                "degree {d}: standard monomials vs rank-nullity"
            );
        }
    }
}
