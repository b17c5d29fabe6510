//! Characteristic-class calculus for conjugate complex bundle symbols: the
//! closed-form total class, the triangular inversion back to Chern symbols,
//! odd-class factorization, and Whitney sums. Everything is symbolic in the
//! Chern generators; two independent routes (coefficient sum vs. series
//! closed form) compute the same classes and are kept separate on purpose.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{binom_mod2, GradedPoly, TruncatedSeries, VariableTable};

/// Symbol for a rank-`r` conjugate complex bundle: handles to the degree-1
/// base class `y` and to Chern variables of degrees `2, 4, ..., 2r` in a
/// shared table. The associated real bundle has rank `2r`.
#[derive(Debug, Clone)]
pub struct ConjugateBundleSymbol {
    table: Arc<VariableTable>,
    name: String,
    rank: usize,
    y: usize,
    chern: Vec<usize>,
}

impl ConjugateBundleSymbol {
    pub fn new(
        table: Arc<VariableTable>,
        name: impl Into<String>,
        y: usize,
        chern: Vec<usize>,
    ) -> Result<Self> {
        if table.degree(y) != 1 {
            return Err(Error::Input("base class must have degree 1".into()));
        }
        for (j, &idx) in chern.iter().enumerate() {
            let want = 2 * (j + 1);
            if table.degree(idx) != want {
                return Err(Error::Input(format!(
                    "chern variable {} must have degree {want}",
                    table.name(idx)
                )));
            }
        }
        Ok(Self {
            table,
            name: name.into(),
            rank: chern.len(),
            y,
            chern,
        })
    }

    pub fn table(&self) -> &Arc<VariableTable> {
        &self.table
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn y_index(&self) -> usize {
        self.y
    }

    pub fn chern_indices(&self) -> &[usize] {
        &self.chern
    }

    /// Chern symbols as polynomials, `c̃_0 = 1` first.
    pub fn chern_polys(&self) -> Vec<GradedPoly> {
        let mut out = vec![GradedPoly::one(self.table.clone())];
        out.extend(
            self.chern
                .iter()
                .map(|&i| GradedPoly::variable(self.table.clone(), i)),
        );
        out
    }

    /// `w_i` of the associated real bundle, by the coefficient formula
    /// `sum_j C(r-j, i-2j) y^{i-2j} c̃_j`. Classes above `2r` are zero by
    /// convention; `truncated` flags that case.
    pub fn sw_class(&self, i: usize) -> SwClass {
        let truncated = i > 2 * self.rank;
        let mut acc = GradedPoly::zero(self.table.clone());
        if !truncated {
            let chern = self.chern_polys();
            for (j, cj) in chern.iter().enumerate() {
                let y_exp = i as i64 - 2 * j as i64;
                if binom_mod2(self.rank as i64 - j as i64, y_exp) {
                    let y_pow =
                        GradedPoly::variable_power(self.table.clone(), self.y, y_exp as u32);
                    acc = acc
                        .add(&y_pow.mul(cj).expect("same table"))
                        .expect("same table");
                }
            }
        }
        SwClass {
            poly: acc,
            truncated,
        }
    }

    /// Total class as a series, from the closed form
    /// `W(t) = sum_j c̃_j t^{2j} (1+yt)^{r-j}`. Independent of [`Self::sw_class`].
    pub fn total_sw(&self, bound: usize) -> TruncatedSeries {
        total_sw_from_chern(&self.table, self.y, &self.chern_polys(), self.rank, bound)
    }

    /// The factor `P_j` with `y * P_j = w_{2j+1}`: odd classes are always
    /// divisible by `y`. The result is re-expressed in `y` and formal even
    /// classes `ŵ_2 .. ŵ_{2j}` over a derived table.
    pub fn odd_class_factor(&self, j: usize) -> Result<GradedPoly> {
        if j >= self.rank {
            return Err(Error::Input(format!(
                "odd class index {j} out of range for rank {}",
                self.rank
            )));
        }
        let odd = self.sw_class(2 * j + 1).poly;

        let mut entries = vec![("y".to_string(), 1)];
        for i in 1..=self.rank {
            entries.push((format!("ŵ{}", 2 * i), 2 * i));
        }
        let w_table = VariableTable::new(entries)?;
        let w_y = 0;
        let w_vars: Vec<usize> = (1..=self.rank).collect();
        let chern_images = chern_in_w_variables(&w_table, w_y, &w_vars, self.rank)?;

        if odd.is_zero() {
            return Ok(GradedPoly::zero(w_table));
        }
        let factor = odd.divide_by_var(self.y).ok_or_else(|| {
            Error::Contract("odd class not divisible by the base class".into())
        })?;
        // substitute y -> y, c̃_i -> Q_i(y^2, ŵ_2, ..., ŵ_{2i})
        let mut images = Vec::with_capacity(self.table.len());
        for idx in 0..self.table.len() {
            if idx == self.y {
                images.push(GradedPoly::variable(w_table.clone(), w_y));
            } else if let Some(pos) = self.chern.iter().position(|&c| c == idx) {
                images.push(chern_images[pos].clone());
            } else {
                // unrelated variables have no meaning in the factor
                images.push(GradedPoly::zero(w_table.clone()));
            }
        }
        factor.substitute(&w_table, &images)
    }
}

/// An `sw_class` value together with the above-top-degree flag.
#[derive(Debug, Clone)]
pub struct SwClass {
    pub poly: GradedPoly,
    pub truncated: bool,
}

/// Vector of Stiefel-Whitney classes `w_0 .. w_{2r}` as homogeneous
/// polynomials, with a handle to the degree-1 base class.
#[derive(Debug, Clone)]
pub struct SwVector {
    table: Arc<VariableTable>,
    y: usize,
    classes: Vec<GradedPoly>,
}

impl SwVector {
    pub fn new(table: Arc<VariableTable>, y: usize, classes: Vec<GradedPoly>) -> Result<Self> {
        if classes.is_empty() || !classes[0].is_one() {
            return Err(Error::Input("w_0 must be 1".into()));
        }
        for (i, w) in classes.iter().enumerate() {
            if !w.table().same_as(&table) {
                return Err(Error::TableMismatch);
            }
            if !w.is_zero() && w.homogeneous_degree() != Some(i) {
                return Err(Error::Input(format!("w_{i} is not homogeneous of degree {i}")));
            }
        }
        Ok(Self { table, y, classes })
    }

    pub fn class(&self, i: usize) -> GradedPoly {
        self.classes
            .get(i)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(self.table.clone()))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Triangular inversion of the class formula: recovers `c̃_1 .. c̃_r` from the
/// even classes by `c̃_j = w_{2j} + sum_{i<j} C(r-i, 2j-2i) y^{2j-2i} c̃_i`.
pub fn chern_from_sw(sw: &SwVector, rank: usize) -> Result<Vec<GradedPoly>> {
    let table = sw.table.clone();
    let mut chern: Vec<GradedPoly> = vec![GradedPoly::one(table.clone())];
    for j in 1..=rank {
        let mut acc = sw.class(2 * j);
        for (i, ci) in chern.iter().enumerate().take(j) {
            if binom_mod2(rank as i64 - i as i64, 2 * (j - i) as i64) {
                let y_pow =
                    GradedPoly::variable_power(table.clone(), sw.y, 2 * (j - i) as u32);
                acc = acc.add(&y_pow.mul(ci)?)?;
            }
        }
        chern.push(acc);
    }
    chern.remove(0);
    Ok(chern)
}

/// Chern symbols of a rank-`rank` bundle written in formal even-class
/// variables: `w_vars[i]` is the table index of `ŵ_{2(i+1)}`.
pub fn chern_in_w_variables(
    w_table: &Arc<VariableTable>,
    y: usize,
    w_vars: &[usize],
    rank: usize,
) -> Result<Vec<GradedPoly>> {
    let mut classes = vec![GradedPoly::one(w_table.clone())];
    for i in 1..=2 * rank {
        if i % 2 == 0 {
            classes.push(GradedPoly::variable(w_table.clone(), w_vars[i / 2 - 1]));
        } else {
            classes.push(GradedPoly::zero(w_table.clone()));
        }
    }
    let sw = SwVector::new(w_table.clone(), y, classes)?;
    chern_from_sw(&sw, rank)
}

/// `(1 + y t)^n` as a series, coefficientwise by the Lucas rule.
pub fn line_power(
    table: &Arc<VariableTable>,
    y: usize,
    n: usize,
    bound: usize,
) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(table.clone(), bound);
    for i in 0..=bound.min(n) {
        if binom_mod2(n as i64, i as i64) {
            s.set_coeff(i, GradedPoly::variable_power(table.clone(), y, i as u32))
                .expect("same table");
        }
    }
    s
}

/// Closed-form total class for explicit Chern-class polynomials
/// (`chern[0]` must be 1): `sum_j chern[j] t^{2j} (1+yt)^{rank-j}`.
pub fn total_sw_from_chern(
    table: &Arc<VariableTable>,
    y: usize,
    chern: &[GradedPoly],
    rank: usize,
    bound: usize,
) -> TruncatedSeries {
    assert!(chern[0].is_one(), "c̃_0 must be 1");
    let mut total = TruncatedSeries::zero(table.clone(), bound);
    for (j, cj) in chern.iter().enumerate().take(rank + 1) {
        if cj.is_zero() {
            continue;
        }
        let line = line_power(table, y, rank - j, bound);
        let mut shifted = TruncatedSeries::zero(table.clone(), bound);
        for i in 0..=bound {
            let src = line.coeff(i);
            if src.is_zero() || i + 2 * j > bound {
                continue;
            }
            shifted
                .set_coeff(i + 2 * j, src.mul(cj).expect("same table"))
                .expect("same table");
        }
        total = total.add(&shifted).expect("same table");
    }
    // total classes have homogeneous t^i coefficients of ring degree i
    for i in 0..=bound {
        let c = total.coeff(i);
        debug_assert!(c.is_zero() || c.homogeneous_degree() == Some(i));
    }
    total
}

/// Total class of the Whitney sum of two bundle symbols over one table,
/// as the product of the two total-class series.
pub fn whitney_sum(
    b1: &ConjugateBundleSymbol,
    b2: &ConjugateBundleSymbol,
    bound: usize,
) -> Result<TruncatedSeries> {
    if !b1.table().same_as(b2.table()) {
        return Err(Error::TableMismatch);
    }
    b1.total_sw(bound).mul(&b2.total_sw(bound))
}

/// Chern polynomials of a formal Whitney sum: the convolution
/// `c̃_j(sum) = sum_{a+b=j} c̃_a(b1) c̃_b(b2)`.
pub fn whitney_sum_chern(
    b1: &ConjugateBundleSymbol,
    b2: &ConjugateBundleSymbol,
) -> Result<Vec<GradedPoly>> {
    if !b1.table().same_as(b2.table()) {
        return Err(Error::TableMismatch);
    }
    let (c1, c2) = (b1.chern_polys(), b2.chern_polys());
    let rank = b1.rank() + b2.rank();
    let mut out = Vec::with_capacity(rank + 1);
    for j in 0..=rank {
        let mut acc = GradedPoly::zero(b1.table().clone());
        for a in 0..=j {
            let b = j - a;
            if a < c1.len() && b < c2.len() {
                acc = acc.add(&c1[a].mul(&c2[b])?)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bundle(rank: usize) -> ConjugateBundleSymbol {
        let mut entries = vec![("y".to_string(), 1)];
        for j in 1..=rank {
            entries.push((format!("c̃{j}"), 2 * j));
        }
        let table = VariableTable::new(entries).unwrap();
        let chern = (1..=rank).collect();
        ConjugateBundleSymbol::new(table, format!("γ{rank}"), 0, chern).unwrap()
    }

    #[test]
    fn first_class_is_rank_times_y() {
        for rank in 1..=6 {
            let b = bundle(rank);
            let w1 = b.sw_class(1).poly;
            if rank % 2 == 1 {
                assert_eq!(w1, GradedPoly::variable(b.table().clone(), 0));
            } else {
                assert!(w1.is_zero());
            }
            // orientability parity: w_1 = 0 iff the rank is even
            assert_eq!(w1.is_zero(), rank % 2 == 0);
        }
    }

    #[test]
    fn second_class_and_w0() {
        let b = bundle(3);
        let t = b.table().clone();
        let y2 = GradedPoly::variable_power(t.clone(), 0, 2);
        let c1 = GradedPoly::variable(t.clone(), 1);
        // w_2 = c̃1 + C(3,2) y^2 = c̃1 + y^2
        assert_eq!(b.sw_class(2).poly, c1.add(&y2).unwrap());
        assert!(b.sw_class(0).poly.is_one());
        assert!(b.sw_class(7).truncated);
        assert!(b.sw_class(7).poly.is_zero());
    }

    #[test]
    fn closed_form_matches_coefficient_sum() {
        for rank in 1..=8 {
            let b = bundle(rank);
            let total = b.total_sw(2 * rank + 3);
            for i in 0..=2 * rank + 3 {
                assert_eq!(total.coeff(i), b.sw_class(i).poly, "rank {rank}, w_{i}");
            }
        }
    }

    #[test]
    fn rank_one_total() {
        let b = bundle(1);
        let t = b.table().clone();
        let total = b.total_sw(2);
        assert!(total.coeff(0).is_one());
        assert_eq!(total.coeff(1), GradedPoly::variable(t.clone(), 0));
        assert_eq!(total.coeff(2), GradedPoly::variable(t, 1));
        // rank 2: w_1 = 2y = 0
        assert!(bundle(2).total_sw(1).coeff(1).is_zero());
    }

    #[test]
    fn chern_roundtrip() {
        for rank in 1..=6 {
            let b = bundle(rank);
            let classes: Vec<GradedPoly> = (0..=2 * rank).map(|i| b.sw_class(i).poly).collect();
            let sw = SwVector::new(b.table().clone(), 0, classes).unwrap();
            let recovered = chern_from_sw(&sw, rank).unwrap();
            assert_eq!(recovered, b.chern_polys()[1..].to_vec(), "rank {rank}");
        }
        // rank 1: c̃1 = w_2
        let b = bundle(1);
        let w2 = b.sw_class(2).poly;
        let sw = SwVector::new(
            b.table().clone(),
            0,
            vec![GradedPoly::one(b.table().clone()), b.sw_class(1).poly, w2.clone()],
        )
        .unwrap();
        assert_eq!(chern_from_sw(&sw, 1).unwrap(), vec![w2]);
    }

    #[test]
    fn odd_classes_factor_through_y() {
        for rank in 1..=6 {
            let b = bundle(rank);
            for i in (1..=2 * rank).step_by(2) {
                let odd = b.sw_class(i).poly;
                assert!(
                    odd.is_zero() || odd.divide_by_var(0).is_some(),
                    "rank {rank}, w_{i} should be divisible by y"
                );
            }
        }
        // P_0 = rank mod 2
        let p0 = bundle(3).odd_class_factor(0).unwrap();
        assert!(p0.is_one());
        let p0 = bundle(4).odd_class_factor(0).unwrap();
        assert!(p0.is_zero());
        // rank 3, j = 1: w_3 = y^3, so P_1 = y^2
        let p1 = bundle(3).odd_class_factor(1).unwrap();
        let y2 = GradedPoly::variable_power(p1.table().clone(), 0, 2);
        assert_eq!(p1, y2);
    }

    #[test]
    fn whitney_sum_agrees_with_formal_sum() {
        // two bundles of ranks 1 and 2 over one table
        let table = VariableTable::new([
            ("y", 1),
            ("c̃1", 2),
            ("d̃1", 2),
            ("d̃2", 4),
        ])
        .unwrap();
        let b1 = ConjugateBundleSymbol::new(table.clone(), "α", 0, vec![1]).unwrap();
        let b2 = ConjugateBundleSymbol::new(table.clone(), "β", 0, vec![2, 3]).unwrap();
        let bound = 8;
        let product = whitney_sum(&b1, &b2, bound).unwrap();
        let convolved = whitney_sum_chern(&b1, &b2).unwrap();
        let closed = total_sw_from_chern(&table, 0, &convolved, 3, bound);
        assert_eq!(product, closed);
        // rank additivity on w_1: (1+2) y = y
        assert_eq!(product.coeff(1), GradedPoly::variable(table.clone(), 0));

        // adding a trivial line multiplies by (1+yt)
        let trivial_table = VariableTable::new([("y", 1), ("c̃1", 2), ("z̃1", 2)]).unwrap();
        let b = ConjugateBundleSymbol::new(trivial_table.clone(), "γ", 0, vec![1]).unwrap();
        let chern_with_trivial = vec![
            GradedPoly::one(trivial_table.clone()),
            GradedPoly::variable(trivial_table.clone(), 1),
            GradedPoly::zero(trivial_table.clone()),
        ];
        let sum = total_sw_from_chern(&trivial_table, 0, &chern_with_trivial, 2, 6);
        let line = line_power(&trivial_table, 0, 1, 6);
        let expect = b.total_sw(6).mul(&line).unwrap();
        assert_eq!(sum, expect);
    }
}
