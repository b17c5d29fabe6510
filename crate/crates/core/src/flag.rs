//! Grassmann, flag-manifold and sphere-bundle ring presentations built from
//! power-series relations, plus the exact integer Poincare-polynomial
//! oracles they are measured against. Internally the relations are generated
//! in Chern variables (the computational normal form); the even-class
//! variable form is produced at emission through the triangular change of
//! variables, and the two presentations are isomorphic as graded algebras.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{GradedPoly, TruncatedSeries, VariableTable};
use crate::groebner::{BaseDim, PresentedAlgebra, Truncation};
use crate::intpoly;
use crate::sw::{self, ConjugateBundleSymbol};

/// Type of a flag manifold: subspace dimensions `n_1 <= ... <= n_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagType {
    nu: Vec<usize>,
}

impl FlagType {
    pub fn new(nu: Vec<usize>) -> Result<Self> {
        if nu.len() < 2 {
            return Err(Error::Input("flag type needs at least two parts".into()));
        }
        if nu.contains(&0) {
            return Err(Error::Input("flag type parts must be positive".into()));
        }
        if nu.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Input(
                "flag type must be an increasing sequence".into(),
            ));
        }
        Ok(Self { nu })
    }

    pub fn parts(&self) -> &[usize] {
        &self.nu
    }

    pub fn total(&self) -> usize {
        self.nu.iter().sum()
    }

    /// Complex dimension of the flag manifold, doubled for the real one.
    pub fn real_dim(&self) -> usize {
        let n = self.total();
        let sum_sq: usize = self.nu.iter().map(|k| k * k).sum();
        n * n - sum_sq
    }
}

/// Which series identity produced a relation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesSource {
    Grassmann { n: usize, k: usize },
    Flag { nu: Vec<usize> },
}

/// The coefficients `a_i` of the complement-bundle series, with the indices
/// that enter the ideal. Odd coefficients are divisible by `y`; that is
/// rechecked on construction.
#[derive(Debug, Clone)]
pub struct SeriesRelationSet {
    source: SeriesSource,
    coeffs: Vec<GradedPoly>, // a_0 .. a_bound
    generator_degrees: Vec<usize>,
    y: usize,
}

impl SeriesRelationSet {
    fn new(
        source: SeriesSource,
        series: &TruncatedSeries,
        generator_degrees: Vec<usize>,
        y: usize,
    ) -> Result<Self> {
        let coeffs: Vec<GradedPoly> = (0..=series.bound()).map(|i| series.coeff(i)).collect();
        if !coeffs[0].is_one() {
            return Err(Error::Contract("series must start at 1".into()));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if i % 2 == 1 && !a.is_zero() && a.divide_by_var(y).is_none() {
                return Err(Error::Contract(format!(
                    "odd coefficient a_{i} is not divisible by y"
                )));
            }
        }
        Ok(Self {
            source,
            coeffs,
            generator_degrees,
            y,
        })
    }

    pub fn source(&self) -> &SeriesSource {
        &self.source
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &GradedPoly {
        &self.coeffs[i]
    }

    /// Degrees (= indices) of the coefficients entering the ideal.
    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    /// True when every even coefficient uses only even powers of `y`.
    /// Reported, not enforced.
    pub fn even_coeffs_use_even_y_powers(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|a| {
            a.support()
                .iter()
                .all(|m| m.exp(self.y) % 2 == 0)
        })
    }
}

/// A presentation in both variable systems plus its series provenance.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    /// Chern-variable form: the computational normal form.
    pub chern: PresentedAlgebra,
    /// Even-class-variable form: the official statement.
    pub sw: PresentedAlgebra,
    pub series: SeriesRelationSet,
}

fn truncation_for(m_base: BaseDim) -> Option<Truncation> {
    match m_base {
        BaseDim::Finite(m) => Some(Truncation {
            var: 0,
            power: (m + 1) as u32,
        }),
        BaseDim::Infinite => None,
    }
}

fn base_label(m_base: BaseDim) -> String {
    match m_base {
        BaseDim::Finite(m) => format!("RP^{m}"),
        BaseDim::Infinite => "RP^inf".to_string(),
    }
}

/// Series bound: generators live in degrees up to `2n`, and the alternate
/// generating set for a finite base reaches degree `2n + m`.
fn series_bound(n: usize, m_base: BaseDim) -> usize {
    match m_base {
        BaseDim::Finite(m) => 2 * n + m + 1,
        BaseDim::Infinite => 2 * n,
    }
}

/// The ring of a Grassmann fibre `G(n,k)` over `RP^m` (or the untruncated
/// base): variables `y, c̃_1..c̃_k`; relations are the even series
/// coefficients `a_{2j}, n-k < j <= n` of `(1+yt)^n w(γ,t)^{-1}`, plus the
/// base truncation.
pub fn grassmann_presentation(n: usize, k: usize, m_base: BaseDim) -> Result<RingPresentation> {
    if k == 0 || k >= n {
        return Err(Error::Input(format!(
            "grassmann parameters need 1 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    let mut entries = vec![("y".to_string(), 1)];
    for j in 1..=k {
        entries.push((format!("c̃{j}"), 2 * j));
    }
    let table = VariableTable::new(entries)?;
    let chern_vars: Vec<usize> = (1..=k).collect();
    let bundle = ConjugateBundleSymbol::new(table.clone(), "γ", 0, chern_vars)?;

    let bound = series_bound(n, m_base);
    let series = complement_series(&table, &[&bundle], n, bound)?;
    let generator_degrees: Vec<usize> = ((n - k + 1)..=n).map(|j| 2 * j).collect();
    let relation_set = SeriesRelationSet::new(
        SeriesSource::Grassmann { n, k },
        &series,
        generator_degrees.clone(),
        0,
    )?;

    let relations: Vec<GradedPoly> = generator_degrees
        .iter()
        .map(|&d| relation_set.coeff(d).clone())
        .collect();
    let metadata = format!("grassmann fibre G({n},{k}) over {}", base_label(m_base));
    let chern_alg = PresentedAlgebra::new(
        table.clone(),
        relations.clone(),
        truncation_for(m_base),
        metadata.clone(),
    )?;

    // even-class form via the triangular change of variables
    let mut w_entries = vec![("y".to_string(), 1)];
    for j in 1..=k {
        w_entries.push((format!("ŵ{}", 2 * j), 2 * j));
    }
    let w_table = VariableTable::new(w_entries)?;
    let w_vars: Vec<usize> = (1..=k).collect();
    let images = build_substitution(&table, &w_table, 0, &[(1..=k).collect()], &[w_vars], &[k])?;
    let w_relations: Vec<GradedPoly> = relations
        .iter()
        .map(|r| r.substitute(&w_table, &images))
        .collect::<Result<_>>()?;
    let sw_alg = PresentedAlgebra::new(
        w_table,
        w_relations,
        truncation_for(m_base),
        metadata + " (even-class variables)",
    )?;

    Ok(RingPresentation {
        chern: chern_alg,
        sw: sw_alg,
        series: relation_set,
    })
}

/// The ring of a flag fibre of type `nu` over the base: variables `y` and
/// `c̃_{i,j}` for the first `r-1` tautological bundles; relations are the
/// even coefficients `a_{2s}, n_r < s <= n` of
/// `(1+yt)^n prod_{j<r} w(γ_j,t)^{-1}`.
pub fn flag_presentation(flag: &FlagType, m_base: BaseDim) -> Result<RingPresentation> {
    let nu = flag.parts();
    let r = nu.len();
    let n = flag.total();
    let n_last = nu[r - 1];

    let mut entries = vec![("y".to_string(), 1)];
    let mut chern_groups: Vec<Vec<usize>> = Vec::with_capacity(r - 1);
    for (j, &nj) in nu.iter().take(r - 1).enumerate() {
        let mut group = Vec::with_capacity(nj);
        for i in 1..=nj {
            group.push(entries.len());
            entries.push((format!("c̃{i},{}", j + 1), 2 * i));
        }
        chern_groups.push(group);
    }
    let table = VariableTable::new(entries)?;
    let bundles: Vec<ConjugateBundleSymbol> = chern_groups
        .iter()
        .enumerate()
        .map(|(j, group)| {
            ConjugateBundleSymbol::new(table.clone(), format!("γ{}", j + 1), 0, group.clone())
        })
        .collect::<Result<_>>()?;
    let bundle_refs: Vec<&ConjugateBundleSymbol> = bundles.iter().collect();

    let bound = series_bound(n, m_base);
    let series = complement_series(&table, &bundle_refs, n, bound)?;
    let generator_degrees: Vec<usize> = ((n_last + 1)..=n).map(|s| 2 * s).collect();
    let relation_set = SeriesRelationSet::new(
        SeriesSource::Flag { nu: nu.to_vec() },
        &series,
        generator_degrees.clone(),
        0,
    )?;

    let relations: Vec<GradedPoly> = generator_degrees
        .iter()
        .map(|&d| relation_set.coeff(d).clone())
        .collect();
    let nu_label: Vec<String> = nu.iter().map(usize::to_string).collect();
    let metadata = format!(
        "flag fibre of type ({}) over {}",
        nu_label.join(","),
        base_label(m_base)
    );
    let chern_alg = PresentedAlgebra::new(
        table.clone(),
        relations.clone(),
        truncation_for(m_base),
        metadata.clone(),
    )?;

    let mut w_entries = vec![("y".to_string(), 1)];
    let mut w_groups: Vec<Vec<usize>> = Vec::with_capacity(r - 1);
    for (j, &nj) in nu.iter().take(r - 1).enumerate() {
        let mut group = Vec::with_capacity(nj);
        for i in 1..=nj {
            group.push(w_entries.len());
            w_entries.push((format!("ŵ{},{}", 2 * i, j + 1), 2 * i));
        }
        w_groups.push(group);
    }
    let w_table = VariableTable::new(w_entries)?;
    let ranks: Vec<usize> = nu[..r - 1].to_vec();
    let images = build_substitution(&table, &w_table, 0, &chern_groups, &w_groups, &ranks)?;
    let w_relations: Vec<GradedPoly> = relations
        .iter()
        .map(|rel| rel.substitute(&w_table, &images))
        .collect::<Result<_>>()?;
    let sw_alg = PresentedAlgebra::new(
        w_table,
        w_relations,
        truncation_for(m_base),
        metadata + " (even-class variables)",
    )?;

    Ok(RingPresentation {
        chern: chern_alg,
        sw: sw_alg,
        series: relation_set,
    })
}

/// `(1+yt)^n` times the inverted total classes of the given bundles.
fn complement_series(
    table: &Arc<VariableTable>,
    bundles: &[&ConjugateBundleSymbol],
    n: usize,
    bound: usize,
) -> Result<TruncatedSeries> {
    let mut series = sw::line_power(table, 0, n, bound);
    for b in bundles {
        series = series.mul(&b.total_sw(bound).invert()?)?;
    }
    Ok(series)
}

/// Variable images for the Chern-to-even-class substitution: `y -> y` and
/// `c̃_{i,j} -> Q_i` of bundle `j` written in that bundle's `ŵ` variables.
fn build_substitution(
    chern_table: &Arc<VariableTable>,
    w_table: &Arc<VariableTable>,
    y: usize,
    chern_groups: &[Vec<usize>],
    w_groups: &[Vec<usize>],
    ranks: &[usize],
) -> Result<Vec<GradedPoly>> {
    let mut images = vec![GradedPoly::zero(w_table.clone()); chern_table.len()];
    images[y] = GradedPoly::variable(w_table.clone(), y);
    for ((chern_group, w_group), &rank) in chern_groups.iter().zip(w_groups).zip(ranks) {
        let qs = sw::chern_in_w_variables(w_table, y, w_group, rank)?;
        for (i, &var) in chern_group.iter().enumerate() {
            images[var] = qs[i].clone();
        }
    }
    Ok(images)
}

/// Sphere-bundle rings: for fibre dimension `n >= 2` the ring
/// `A[u]/<u^2>` with `deg u = n`; for `n = 1` the ring `A[a]/<a^2 + ay>`
/// with `deg a = 1`. `A` is the truncated or full polynomial base ring.
pub fn sphere_bundle_presentation(n: usize, m_base: BaseDim) -> Result<PresentedAlgebra> {
    if n == 0 {
        return Err(Error::Input("sphere fibre dimension must be >= 1".into()));
    }
    let metadata = format!("sphere fibre S^{n} over {}", base_label(m_base));
    if n >= 2 {
        let table = VariableTable::new([("y".to_string(), 1), ("u".to_string(), n)])?;
        let u = GradedPoly::variable(table.clone(), 1);
        PresentedAlgebra::new(table, vec![u.frobenius()], truncation_for(m_base), metadata)
    } else {
        let table = VariableTable::new([("y", 1), ("a", 1)])?;
        let y = GradedPoly::variable(table.clone(), 0);
        let a = GradedPoly::variable(table.clone(), 1);
        let relation = a.frobenius().add(&a.mul(&y)?)?;
        PresentedAlgebra::new(table, vec![relation], truncation_for(m_base), metadata)
    }
}

/// Exact integer Poincare polynomials, computed by q-Pascal recurrences and
/// never through the ring engine.
pub mod poincare {
    use super::*;

    /// Mod-2 Poincare polynomial of the complex Grassmannian `G(n,k)`:
    /// the Gaussian binomial `[n choose k]_q` at `q = t^2`.
    pub fn grassmann(n: usize, k: usize) -> Vec<i64> {
        intpoly::stretch_double(&intpoly::gaussian_binomial_q(n, k))
    }

    /// Flag manifold of type `nu`: the q-multinomial at `q = t^2`.
    pub fn flag(nu: &[usize]) -> Vec<i64> {
        let mut acc_q = vec![1i64];
        let mut seen = 0;
        for &nj in nu {
            seen += nj;
            let factor = intpoly::gaussian_binomial_q(seen, nj);
            acc_q = intpoly::mul_trunc(
                &acc_q,
                &factor,
                acc_q.len() + factor.len(),
            );
        }
        while acc_q.last() == Some(&0) {
            acc_q.pop();
        }
        intpoly::stretch_double(&acc_q)
    }

    /// `RP^m`: all ones through degree m.
    pub fn projective(m: usize) -> Vec<i64> {
        vec![1; m + 1]
    }

    /// `S^n`: `1 + t^n`.
    pub fn sphere(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        p[n] = 1;
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::text;
    use crate::groebner::{
        buchberger, convolve_dims, hilbert_function, normal_form, regular_sequence_certificate,
    };

    #[test]
    fn classical_dold_relation() {
        // G(2,1): the one series relation is a_4 = c̃1^2
        let p = grassmann_presentation(2, 1, BaseDim::Finite(2)).unwrap();
        assert_eq!(p.chern.relations().len(), 1);
        assert_eq!(text::render(&p.chern.relations()[0]), "c̃1^2");
        // w-form also c-free: ŵ2^2 expected? c̃1 = ŵ2 for rank 1
        assert_eq!(text::render(&p.sw.relations()[0]), "ŵ2^2");

        let hf = hilbert_function(&p.chern, 5);
        assert_eq!(hf.dims(), &[1, 1, 2, 1, 1, 0]);
        // Hilbert functions of the two variable systems agree
        assert_eq!(hilbert_function(&p.sw, 5), hf);
    }

    #[test]
    fn grassmann_dimensions_match_gaussian_oracle() {
        for (n, k, m) in [(3usize, 1usize, 2usize), (4, 2, 3), (5, 2, 2)] {
            let p = grassmann_presentation(n, k, BaseDim::Finite(m)).unwrap();
            let bound = 2 * n + m;
            let hf = hilbert_function(&p.chern, bound);
            let expected = convolve_dims(
                &poincare::projective(m),
                &poincare::grassmann(n, k),
                bound,
            );
            let dims: Vec<i64> = hf.dims().iter().map(|&d| d as i64).collect();
            assert_eq!(dims, expected, "G({n},{k}) over RP^{m}");
        }
    }

    #[test]
    fn gaussian_oracle_values() {
        assert_eq!(poincare::grassmann(4, 2), vec![1, 0, 1, 0, 2, 0, 1, 0, 1]);
        assert_eq!(poincare::grassmann(3, 0), vec![1]);
        assert_eq!(
            poincare::flag(&[1, 1, 1]),
            vec![1, 0, 2, 0, 2, 0, 1] // (1+t^2)(1+t^2+t^4)
        );
        assert_eq!(poincare::projective(3), vec![1, 1, 1, 1]);
        assert_eq!(poincare::sphere(2), vec![1, 0, 1]);
    }

    #[test]
    fn flag_presentations() {
        // (1,1): reduces to the projective-line case after renaming
        let p = flag_presentation(&FlagType::new(vec![1, 1]).unwrap(), BaseDim::Finite(2)).unwrap();
        assert_eq!(p.chern.relations().len(), 1);
        assert_eq!(text::render(&p.chern.relations()[0]), "c̃1,1^2");
        let g = grassmann_presentation(2, 1, BaseDim::Finite(2)).unwrap();
        assert_eq!(
            hilbert_function(&p.chern, 5).dims(),
            hilbert_function(&g.chern, 5).dims()
        );

        // (1,1,1) over RP^2: (1+t+t^2)(1+t^2)(1+t^2+t^4)
        let p =
            flag_presentation(&FlagType::new(vec![1, 1, 1]).unwrap(), BaseDim::Finite(2)).unwrap();
        let hf = hilbert_function(&p.chern, 8);
        let expected = convolve_dims(&poincare::projective(2), &poincare::flag(&[1, 1, 1]), 8);
        let dims: Vec<i64> = hf.dims().iter().map(|&d| d as i64).collect();
        assert_eq!(dims, expected);
        assert_eq!(hilbert_function(&p.sw, 8), hf);

        // (1,2) over RP^1: (1+t)(1+t^2+t^4), the projective-plane fibre
        let p =
            flag_presentation(&FlagType::new(vec![1, 2]).unwrap(), BaseDim::Finite(1)).unwrap();
        let hf = hilbert_function(&p.chern, 6);
        assert_eq!(hf.dims(), &[1, 1, 1, 1, 1, 1, 0]);

        // rejects a decreasing sequence
        assert!(FlagType::new(vec![2, 1]).is_err());
    }

    #[test]
    fn sphere_bundles() {
        let alg = sphere_bundle_presentation(2, BaseDim::Finite(2)).unwrap();
        assert_eq!(hilbert_function(&alg, 4).dims(), &[1, 1, 2, 1, 1]);

        let alg = sphere_bundle_presentation(1, BaseDim::Finite(2)).unwrap();
        assert_eq!(hilbert_function(&alg, 3).dims(), &[1, 2, 2, 1]);

        // Klein bottle: m = 1, n = 1
        let alg = sphere_bundle_presentation(1, BaseDim::Finite(1)).unwrap();
        assert_eq!(hilbert_function(&alg, 2).dims(), &[1, 2, 1]);
    }

    #[test]
    fn equivariant_mode_dimensions() {
        // projective-line fibre: (1/(1-t)) (1+t^2) through degree 6
        let p = grassmann_presentation(2, 1, BaseDim::Infinite).unwrap();
        assert_eq!(
            hilbert_function(&p.chern, 6).dims(),
            &[1, 1, 2, 2, 2, 2, 2]
        );
        // projective-plane fibre through degree 5
        let p = grassmann_presentation(3, 1, BaseDim::Infinite).unwrap();
        assert_eq!(hilbert_function(&p.chern, 5).dims(), &[1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn odd_coefficients_divisible_by_y_and_even_parity_reported() {
        for (n, k) in [(3, 1), (4, 2), (5, 2)] {
            let p = grassmann_presentation(n, k, BaseDim::Finite(3)).unwrap();
            // constructor enforces the odd-coefficient property; the even
            // y-power pattern is only reported
            assert!(p.series.even_coeffs_use_even_y_powers(), "G({n},{k})");
        }
        let p =
            flag_presentation(&FlagType::new(vec![1, 1, 1]).unwrap(), BaseDim::Finite(2)).unwrap();
        assert!(p.series.even_coeffs_use_even_y_powers());
    }

    #[test]
    fn setting_y_to_zero_gives_complete_symmetric_reduction() {
        // a_{2j} at y = 0 must be the t^{2j} coefficient of the inverted
        // Chern series alone
        for (n, k) in [(3usize, 1usize), (4, 2), (5, 2), (5, 3)] {
            let p = grassmann_presentation(n, k, BaseDim::Finite(2)).unwrap();
            let table = p.chern.table().clone();
            // w(γ,t) with y set to zero, inverted
            let bound = p.series.bound();
            let mut chern_series = TruncatedSeries::one(table.clone(), bound);
            for j in 1..=k {
                chern_series
                    .set_coeff(2 * j, GradedPoly::variable(table.clone(), j))
                    .unwrap();
            }
            let inv = chern_series.invert().unwrap();
            for j in 1..=n {
                let reduced = p.series.coeff(2 * j).set_var_to_zero(0);
                assert_eq!(reduced, inv.coeff(2 * j), "h_{} for G({n},{k})", 2 * j);
            }
        }
    }

    #[test]
    fn regular_sequence_for_corpus_presentations() {
        for (n, k, m) in [(3usize, 1usize, 2usize), (4, 2, 3), (5, 2, 2)] {
            let p = grassmann_presentation(n, k, BaseDim::Finite(m)).unwrap();
            let gens = p.chern.all_relations();
            let cert = regular_sequence_certificate(&gens, 2 * n + m + 1).unwrap();
            assert!(cert.pass, "G({n},{k}) over RP^{m}");
        }
        for nu in [vec![1usize, 1], vec![1, 2], vec![1, 1, 1]] {
            let flag_type = FlagType::new(nu.clone()).unwrap();
            let p = flag_presentation(&flag_type, BaseDim::Finite(2)).unwrap();
            let gens = p.chern.all_relations();
            let cert =
                regular_sequence_certificate(&gens, 2 * flag_type.total() + 3).unwrap();
            assert!(cert.pass, "flag {nu:?}");
        }
    }

    #[test]
    fn flag_maps_onto_grassmann() {
        // the convolution substitution carries Grassmann relations into the
        // flag ideal
        for nu in [vec![1usize, 2], vec![1, 1, 1], vec![2, 2]] {
            let flag_type = FlagType::new(nu.clone()).unwrap();
            let n = flag_type.total();
            let k = n - nu[nu.len() - 1];
            let fp = flag_presentation(&flag_type, BaseDim::Finite(2)).unwrap();
            let gp = grassmann_presentation(n, k, BaseDim::Finite(2)).unwrap();

            let flag_table = fp.chern.table().clone();
            // c̃_q of the pulled-back bundle = sum of products over the parts
            let r = nu.len();
            let mut groups: Vec<Vec<GradedPoly>> = Vec::new();
            let mut pos = 1;
            for &nj in &nu[..r - 1] {
                let mut g = vec![GradedPoly::one(flag_table.clone())];
                for _ in 0..nj {
                    g.push(GradedPoly::variable(flag_table.clone(), pos));
                    pos += 1;
                }
                groups.push(g);
            }
            let mut conv = vec![GradedPoly::one(flag_table.clone())];
            for q in 1..=k {
                let mut acc = GradedPoly::zero(flag_table.clone());
                fn convolve_groups(
                    groups: &[Vec<GradedPoly>],
                    q: usize,
                    acc: &mut GradedPoly,
                    partial: GradedPoly,
                ) {
                    if groups.is_empty() {
                        if q == 0 {
                            *acc = acc.add(&partial).unwrap();
                        }
                        return;
                    }
                    for take in 0..groups[0].len().min(q + 1) {
                        convolve_groups(
                            &groups[1..],
                            q - take,
                            acc,
                            partial.mul(&groups[0][take]).unwrap(),
                        );
                    }
                }
                convolve_groups(&groups, q, &mut acc, GradedPoly::one(flag_table.clone()));
                conv.push(acc);
            }

            let mut images = vec![GradedPoly::zero(flag_table.clone()); gp.chern.table().len()];
            images[0] = GradedPoly::variable(flag_table.clone(), 0);
            for q in 1..=k {
                images[q] = conv[q].clone();
            }

            let gb = buchberger(&fp.chern, fp.chern.default_order());
            for rel in gp.chern.all_relations() {
                let mapped = rel.substitute(&flag_table, &images).unwrap();
                assert!(
                    normal_form(&mapped, &gb).unwrap().is_zero(),
                    "nu {nu:?}: image of a Grassmann relation not in the flag ideal"
                );
            }
        }
    }
}
