//! Buchberger's algorithm over the two-element field. Coefficients are all 1,
//! so S-polynomials are plain XOR combinations and the reduced basis is the
//! unique one for the ideal and order — identical input gives a bit-identical
//! basis.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{GradedPoly, Monomial, VariableTable};

use super::algebra::PresentedAlgebra;
use super::order::MonomialOrder;

/// A reduced Groebner basis: leading monomials pairwise non-divisible, every
/// tail fully reduced, generators sorted ascending by leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    table: Arc<VariableTable>,
    order: MonomialOrder,
    generators: Vec<GradedPoly>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[GradedPoly] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// The whole ring collapsed: ideal contains 1.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }
}

/// Polynomial as a term list sorted descending under the active order.
#[derive(Debug, Clone)]
struct OrdPoly {
    terms: Vec<Monomial>,
}

impl OrdPoly {
    fn from_poly(p: &GradedPoly, table: &VariableTable, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Monomial> = p.support().to_vec();
        terms.sort_by(|a, b| order.compare(table, b, a));
        Self { terms }
    }

    fn into_poly(self, table: Arc<VariableTable>) -> GradedPoly {
        GradedPoly::from_monomials(table, self.terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0]
    }

    fn add(&self, other: &Self, table: &VariableTable, order: &MonomialOrder) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.compare(table, &self.terms[i], &other.terms[j]) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Self { terms }
    }

    fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }
}

/// Full normal form: no remaining term divisible by any leading monomial.
/// Always cancels the currently largest reducible term, so the remainder is
/// produced already sorted.
fn reduce_full(
    mut work: OrdPoly,
    reducers: &[OrdPoly],
    table: &VariableTable,
    order: &MonomialOrder,
) -> OrdPoly {
    let mut out: Vec<Monomial> = Vec::new();
    'outer: while !work.is_zero() {
        let lead = work.lm().clone();
        for g in reducers {
            if !g.is_zero() && g.lm().divides(&lead) {
                let q = g.lm().quotient_into(&lead);
                work = work.add(&g.mul_monomial(&q), table, order);
                continue 'outer;
            }
        }
        out.push(lead);
        work.terms.remove(0);
    }
    OrdPoly { terms: out }
}

fn spoly(f: &OrdPoly, g: &OrdPoly, table: &VariableTable, order: &MonomialOrder) -> OrdPoly {
    let lcm = f.lm().lcm(g.lm());
    let fq = f.lm().quotient_into(&lcm);
    let gq = g.lm().quotient_into(&lcm);
    f.mul_monomial(&fq).add(&g.mul_monomial(&gq), table, order)
}

type PairKey = (usize, Vec<u32>, usize, usize);

fn pair_key(table: &VariableTable, basis: &[OrdPoly], i: usize, j: usize) -> PairKey {
    let lcm = basis[i].lm().lcm(basis[j].lm());
    (lcm.weighted_degree(table), lcm.exps().to_vec(), i, j)
}

/// Computes the reduced Groebner basis of the algebra's relation ideal
/// (including the base-truncation relation). A degenerate input generating
/// the unit ideal yields the basis `{1}`.
pub fn buchberger(algebra: &PresentedAlgebra, order: MonomialOrder) -> GroebnerBasis {
    let table = algebra.table().clone();
    let mut basis: Vec<OrdPoly> = algebra
        .all_relations()
        .iter()
        .map(|p| OrdPoly::from_poly(p, &table, &order))
        .filter(|p| !p.is_zero())
        .collect();

    // inter-reduce the input set once; repeat until stable
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let taken = std::mem::replace(&mut basis[i], OrdPoly { terms: vec![] });
            let others: Vec<OrdPoly> = basis
                .iter()
                .filter(|p| !p.is_zero())
                .cloned()
                .collect();
            let reduced = reduce_full(taken.clone(), &others, &table, &order);
            if reduced.terms != taken.terms {
                changed = true;
            }
            basis[i] = reduced;
        }
        basis.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }

    // pair queue in normal selection order: lcm degree, then lcm, then indices
    let mut pending: BTreeMap<PairKey, ()> = BTreeMap::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.insert(pair_key(&table, &basis, i, j), ());
            pending_set.insert((i, j));
        }
    }

    while let Some((key, ())) = pending.pop_first() {
        let (_, _, i, j) = key;
        pending_set.remove(&(i, j));

        // product criterion: coprime leading monomials reduce to zero
        if basis[i].lm().coprime_with(basis[j].lm()) {
            continue;
        }
        // chain criterion: a third generator dividing the pair lcm whose own
        // pairs with i and j are both settled makes this pair redundant
        let lcm = basis[i].lm().lcm(basis[j].lm());
        let mut redundant = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].lm().divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if !pending_set.contains(&a) && !pending_set.contains(&b) {
                    redundant = true;
                    break;
                }
            }
        }
        if redundant {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], &table, &order);
        let r = reduce_full(s, &basis, &table, &order);
        if !r.is_zero() {
            let t = basis.len();
            basis.push(r);
            for s_idx in 0..t {
                pending.insert(pair_key(&table, &basis, s_idx, t), ());
                pending_set.insert((s_idx, t));
            }
        }
    }

    // minimalize: keep only generators whose leading monomial is not
    // divisible by another kept one
    basis.sort_by(|a, b| order.compare(&table, a.lm(), b.lm()));
    let mut minimal: Vec<OrdPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }

    // tail-reduce to the unique reduced basis
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<OrdPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let reduced = reduce_full(minimal[i].clone(), &others, &table, &order);
            if reduced.terms != minimal[i].terms {
                minimal[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| order.compare(&table, a.lm(), b.lm()));

    let leading = minimal.iter().map(|p| p.lm().clone()).collect();
    let generators = minimal
        .into_iter()
        .map(|p| p.into_poly(table.clone()))
        .collect();
    GroebnerBasis {
        table,
        order,
        generators,
        leading,
    }
}

/// Normal form of `p` against a reduced basis: the unique representative of
/// `p` mod the ideal with no term divisible by a basis leading monomial.
pub fn normal_form(p: &GradedPoly, gb: &GroebnerBasis) -> Result<GradedPoly> {
    if !p.table().same_as(&gb.table) {
        return Err(Error::TableMismatch);
    }
    let reducers: Vec<OrdPoly> = gb
        .generators
        .iter()
        .map(|g| OrdPoly::from_poly(g, &gb.table, &gb.order))
        .collect();
    let work = OrdPoly::from_poly(p, &gb.table, &gb.order);
    Ok(reduce_full(work, &reducers, &gb.table, &gb.order).into_poly(gb.table.clone()))
}
