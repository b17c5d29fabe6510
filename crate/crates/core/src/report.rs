//! The batch front door as a library: typed computation requests, the
//! checks they can carry, and deterministic reports. The CLI binary is a
//! thin wrapper over [`run`] and [`run_batch`].

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cw;
use crate::error::{Error, Result};
use crate::flag::{self, poincare, FlagType, RingPresentation};
use crate::gf2::{text, GradedPoly};
use crate::groebner::{
    buchberger, compare_dims_to_series, convolve_dims, hilbert_function, normal_form,
    regular_sequence_certificate, AlgebraJson, BaseDim, PresentedAlgebra,
};
use crate::torus::{self, CharacteristicPair, PairFile};

/// Checks a request may ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Hilbert,
    RegularSequence,
    CwCrosscheck,
    IdealEquality,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Hilbert => "hilbert",
            CheckKind::RegularSequence => "regular-sequence",
            CheckKind::CwCrosscheck => "cw-crosscheck",
            CheckKind::IdealEquality => "ideal-equality",
        }
    }
}

/// One batch entry. `m` accepts a number or `"inf"`; the `equivariant`
/// kind wraps a presentation request and forces the untruncated base.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ComputationRequest {
    Grassmann {
        n: usize,
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<BaseDim>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        checks: Vec<CheckKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Flag {
        nu: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<BaseDim>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        checks: Vec<CheckKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Sphere {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<BaseDim>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        checks: Vec<CheckKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Torus {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair_file: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair: Option<PairFile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<BaseDim>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        checks: Vec<CheckKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    Cw {
        s_file: String,
        x_file: String,
    },
    Equivariant {
        source: Box<ComputationRequest>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        checks: Vec<CheckKind>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Every FAIL carries a witness locating the first disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Degree { degree: usize },
    Vertex { vertex: usize, facets: Vec<String>, determinant: i64 },
    Cell { dim: usize, cell: String },
    Generator { generator: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        Self {
            name: name.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            reason: None,
        }
    }

    fn fail(name: &str, witness: Witness, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            reason: Some(reason.into()),
        }
    }

    fn skipped(name: &str, reason: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            verdict: Verdict::Skipped,
            witness: None,
            reason: Some(reason.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CwSummary {
    pub product_cells: Vec<usize>,
    pub quotient_cells: Vec<usize>,
    pub perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offender: Option<Witness>,
    pub betti: Vec<usize>,
}

/// Deterministic outcome of one request. Identical requests produce
/// byte-identical serialized reports; nothing time- or host-dependent is
/// recorded.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub request: ComputationRequest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<AlgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern_presentation: Option<AlgebraJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cw: Option<CwSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }
}

/// Where fixture files live and the fallback degree bound for untruncated
/// bases.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub fixtures_dir: PathBuf,
    pub max_degree: Option<usize>,
}

impl Default for RunContext {
    fn default() -> Self {
        Self {
            fixtures_dir: PathBuf::from("fixtures"),
            max_degree: None,
        }
    }
}

const DEFAULT_INFINITE_BOUND: usize = 20;

impl RunContext {
    fn resolve(&self, name: &str) -> PathBuf {
        let direct = Path::new(name);
        if direct.is_file() {
            direct.to_path_buf()
        } else {
            self.fixtures_dir.join(name)
        }
    }

    fn degree_bound(
        &self,
        request_bound: Option<usize>,
        fiber_dim: usize,
        m: BaseDim,
    ) -> usize {
        if let Some(d) = request_bound {
            return d;
        }
        if let Some(d) = self.max_degree {
            return d;
        }
        match m {
            BaseDim::Finite(m) => fiber_dim + m + 2,
            BaseDim::Infinite => DEFAULT_INFINITE_BOUND,
        }
    }
}

fn require_m(m: Option<BaseDim>) -> Result<BaseDim> {
    m.ok_or_else(|| Error::Input("request needs \"m\" (a number or \"inf\")".into()))
}

fn dedup_checks(checks: &[CheckKind]) -> Vec<CheckKind> {
    let mut out = Vec::new();
    for &c in checks {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Runs one request to a deterministic report. Structural errors (bad
/// files, invalid parameters, checks that make no sense for the kind) are
/// `Err`; mathematical failures are FAIL rows inside the report.
pub fn run(request: &ComputationRequest, ctx: &RunContext) -> Result<Report> {
    match request {
        ComputationRequest::Grassmann {
            n,
            k,
            m,
            checks,
            max_degree,
        } => {
            let m = require_m(*m)?;
            let p = flag::grassmann_presentation(*n, *k, m)?;
            let fiber_dim = 2 * k * (n - k);
            let bound = ctx.degree_bound(*max_degree, fiber_dim, m);
            let oracle = convolve_dims(&m.dims(bound), &poincare::grassmann(*n, *k), bound);
            // only projective-space fibres have shipped CW fixtures
            let cw_fiber = if *k == 1 || *k == *n - 1 {
                CwFiber::Projective(*n - 1)
            } else {
                CwFiber::None("no CW fixture for this Grassmann fibre")
            };
            run_presentation_request(
                request.clone(),
                PresentationJob {
                    presentation: p.sw.to_json(),
                    chern_presentation: Some(p.chern.to_json()),
                    algebra: &p.chern,
                    oracle,
                    bound,
                    fiber_total: None,
                    cw_fiber,
                    ideal_equality: Some(IdealEqualityJob {
                        presentation: &p,
                        n: *n,
                        k: *k,
                        m,
                    }),
                    notes: series_notes(&p),
                    m,
                },
                checks,
                ctx,
            )
        }
        ComputationRequest::Flag {
            nu,
            m,
            checks,
            max_degree,
        } => {
            let m = require_m(*m)?;
            let flag_type = FlagType::new(nu.clone())?;
            let p = flag::flag_presentation(&flag_type, m)?;
            let bound = ctx.degree_bound(*max_degree, flag_type.real_dim(), m);
            let oracle = convolve_dims(&m.dims(bound), &poincare::flag(nu), bound);
            run_presentation_request(
                request.clone(),
                PresentationJob {
                    presentation: p.sw.to_json(),
                    chern_presentation: Some(p.chern.to_json()),
                    algebra: &p.chern,
                    oracle,
                    bound,
                    fiber_total: None,
                    cw_fiber: CwFiber::None("no CW fixture for flag fibres"),
                    ideal_equality: None,
                    notes: series_notes(&p),
                    m,
                },
                checks,
                ctx,
            )
        }
        ComputationRequest::Sphere {
            n,
            m,
            checks,
            max_degree,
        } => {
            let m = require_m(*m)?;
            let alg = flag::sphere_bundle_presentation(*n, m)?;
            let bound = ctx.degree_bound(*max_degree, *n, m);
            let oracle = convolve_dims(&m.dims(bound), &poincare::sphere(*n), bound);
            run_presentation_request(
                request.clone(),
                PresentationJob {
                    presentation: alg.to_json(),
                    chern_presentation: None,
                    algebra: &alg,
                    oracle,
                    bound,
                    fiber_total: None,
                    cw_fiber: CwFiber::Sphere(*n),
                    ideal_equality: None,
                    notes: Vec::new(),
                    m,
                },
                checks,
                ctx,
            )
        }
        ComputationRequest::Torus {
            pair_file,
            pair,
            m,
            checks,
            max_degree,
        } => run_torus(request, pair_file, pair, *m, checks, *max_degree, ctx),
        ComputationRequest::Cw { s_file, x_file } => run_cw(request, s_file, x_file, ctx),
        ComputationRequest::Equivariant {
            source,
            checks,
            max_degree,
        } => {
            let inner = force_infinite(source, checks, *max_degree)?;
            let mut report = run(&inner, ctx)?;
            report.request = request.clone();
            Ok(report)
        }
    }
}

/// Rewrites a wrapped request to the untruncated base, inheriting the
/// wrapper's checks and bound where the source leaves them unset.
fn force_infinite(
    source: &ComputationRequest,
    outer_checks: &[CheckKind],
    outer_bound: Option<usize>,
) -> Result<ComputationRequest> {
    let mut inner = source.clone();
    match &mut inner {
        ComputationRequest::Grassmann { m, checks, max_degree, .. }
        | ComputationRequest::Flag { m, checks, max_degree, .. }
        | ComputationRequest::Sphere { m, checks, max_degree, .. }
        | ComputationRequest::Torus { m, checks, max_degree, .. } => {
            *m = Some(BaseDim::Infinite);
            if checks.is_empty() {
                *checks = outer_checks.to_vec();
            }
            if max_degree.is_none() {
                *max_degree = outer_bound;
            }
            Ok(inner)
        }
        _ => Err(Error::Input(
            "equivariant source must be a presentation request".into(),
        )),
    }
}

fn series_notes(p: &RingPresentation) -> Vec<String> {
    // reported, not enforced: whether even coefficients use only even
    // powers of y
    let parity = if p.series.even_coeffs_use_even_y_powers() {
        "even"
    } else {
        "mixed"
    };
    vec![format!("even series coefficients have {parity} y-power parity")]
}

enum CwFiber {
    Sphere(usize),
    Projective(usize),
    None(&'static str),
}

struct IdealEqualityJob<'a> {
    presentation: &'a RingPresentation,
    n: usize,
    k: usize,
    m: BaseDim,
}

struct PresentationJob<'a> {
    presentation: AlgebraJson,
    chern_presentation: Option<AlgebraJson>,
    algebra: &'a PresentedAlgebra,
    oracle: Vec<i64>,
    bound: usize,
    /// Expected total fibre dimension (torus: vertex count).
    fiber_total: Option<(usize, Vec<i64>)>,
    cw_fiber: CwFiber,
    ideal_equality: Option<IdealEqualityJob<'a>>,
    notes: Vec<String>,
    m: BaseDim,
}

fn run_presentation_request(
    request: ComputationRequest,
    job: PresentationJob<'_>,
    checks: &[CheckKind],
    ctx: &RunContext,
) -> Result<Report> {
    let hilbert = hilbert_function(job.algebra, job.bound);
    let mut results = Vec::new();
    for check in dedup_checks(checks) {
        match check {
            CheckKind::Hilbert => {
                results.push(hilbert_check(&hilbert, &job));
            }
            CheckKind::RegularSequence => {
                let gens = job.algebra.all_relations();
                let cert = regular_sequence_certificate(&gens, job.bound)?;
                if cert.pass {
                    results.push(CheckResult::pass(check.name()));
                } else {
                    let degree = cert.witness.unwrap_or(0);
                    results.push(CheckResult::fail(
                        check.name(),
                        Witness::Degree { degree },
                        format!(
                            "quotient dimension {} differs from the product series {} at degree {degree}",
                            cert.quotient.dim(degree),
                            cert.expected.get(degree).copied().unwrap_or(0),
                        ),
                    ));
                }
            }
            CheckKind::CwCrosscheck => {
                results.push(cw_crosscheck(&hilbert, &job, ctx)?);
            }
            CheckKind::IdealEquality => match &job.ideal_equality {
                Some(ideal_job) => results.push(ideal_equality_check(ideal_job)?),
                None => results.push(CheckResult::skipped(
                    check.name(),
                    "alternate generating sets are defined for the grassmann kind only",
                )),
            },
        }
    }
    Ok(Report {
        request,
        presentation: Some(job.presentation),
        chern_presentation: job.chern_presentation,
        hilbert: Some(hilbert.dims().to_vec()),
        oracle: Some(job.oracle),
        cw: None,
        notes: job.notes,
        checks: results,
    })
}

fn hilbert_check(hilbert: &crate::groebner::HilbertFunction, job: &PresentationJob<'_>) -> CheckResult {
    let name = CheckKind::Hilbert.name();
    if let Some((expected_total, fiber_dims)) = &job.fiber_total {
        let total: i64 = fiber_dims.iter().sum();
        if total != *expected_total as i64 {
            return CheckResult::fail(
                name,
                Witness::Degree { degree: 0 },
                format!("fibre total dimension {total} differs from the vertex count {expected_total}"),
            );
        }
    }
    match compare_dims_to_series(hilbert.dims(), &job.oracle) {
        None => CheckResult::pass(name),
        Some(degree) => CheckResult::fail(
            name,
            Witness::Degree { degree },
            format!(
                "dimension {} differs from the oracle {} at degree {degree}",
                hilbert.dim(degree),
                job.oracle.get(degree).copied().unwrap_or(0),
            ),
        ),
    }
}

fn cw_crosscheck(
    hilbert: &crate::groebner::HilbertFunction,
    job: &PresentationJob<'_>,
    ctx: &RunContext,
) -> Result<CheckResult> {
    let name = CheckKind::CwCrosscheck.name();
    let BaseDim::Finite(m) = job.m else {
        return Ok(CheckResult::skipped(
            name,
            "the CW cross-check needs a finite base sphere",
        ));
    };
    let fiber_file = match &job.cw_fiber {
        CwFiber::Sphere(n) => format!("cw/s{n}_reflection.json"),
        CwFiber::Projective(n) => format!("cw/cp{n}.json"),
        CwFiber::None(reason) => return Ok(CheckResult::skipped(name, *reason)),
    };
    let s_path = ctx.resolve(&format!("cw/s{m}_antipodal.json"));
    let x_path = ctx.resolve(&fiber_file);
    if !s_path.is_file() {
        return Ok(CheckResult::skipped(
            name,
            format!("no antipodal sphere fixture for m={m} ({})", s_path.display()),
        ));
    }
    if !x_path.is_file() {
        return Ok(CheckResult::skipped(
            name,
            format!("no fibre fixture {}", x_path.display()),
        ));
    }
    let s = cw::load_equivariant_cw(&s_path)?;
    let x = cw::load_equivariant_cw(&x_path)?;
    let product = cw::product_complex(&s, &x)?;
    let quotient = cw::involution_quotient(&product)?;
    let perfect = quotient.perfectness_check();
    if !perfect.perfect {
        let (dim, cell) = perfect.offender.expect("imperfect complex names an offender");
        return Ok(CheckResult::fail(
            name,
            Witness::Cell { dim, cell },
            "quotient complex is not perfect",
        ));
    }
    let betti = quotient.betti_numbers();
    for d in 0..=quotient.top_dim() {
        if betti[d] != hilbert.dim(d) {
            return Ok(CheckResult::fail(
                name,
                Witness::Degree { degree: d },
                format!(
                    "Betti number {} differs from ring dimension {} at degree {d}",
                    betti[d],
                    hilbert.dim(d)
                ),
            ));
        }
    }
    // beyond the top cell the ring must vanish too
    for d in quotient.top_dim() + 1..=hilbert.bound() {
        if hilbert.dim(d) != 0 {
            return Ok(CheckResult::fail(
                name,
                Witness::Degree { degree: d },
                "ring dimension persists above the top cell",
            ));
        }
    }
    Ok(CheckResult::pass(name))
}

/// The two generating sets of the Grassmann ideal must generate the same
/// ideal: the presentation's `{y^{m+1}, a_{2j} : n-k < j <= n}` and the
/// all-index family `{y^{m+1}, a_i : 2n-2k < i <= 2n+m}`. Each generator
/// must reduce to zero against the other side's basis; additionally every
/// `a_{2n+i}` must lie in `<y> + <a_j : 2n-2k < j <= 2n>`.
fn ideal_equality_check(job: &IdealEqualityJob<'_>) -> Result<CheckResult> {
    let name = CheckKind::IdealEquality.name();
    let BaseDim::Finite(m) = job.m else {
        return Ok(CheckResult::skipped(
            name,
            "the alternate generating set is defined for a finite base",
        ));
    };
    let p = job.presentation;
    let (n, k) = (job.n, job.k);
    let table = p.chern.table().clone();

    let mut alternate: Vec<GradedPoly> = Vec::new();
    for i in (2 * n - 2 * k + 1)..=(2 * n + m) {
        let a = p.series.coeff(i).clone();
        if !a.is_zero() {
            alternate.push(a);
        }
    }
    let alternate_alg = PresentedAlgebra::new(
        table.clone(),
        alternate.clone(),
        p.chern.base_truncation(),
        "alternate generating set",
    )?;

    let gb_main = buchberger(&p.chern, p.chern.default_order());
    let gb_alt = buchberger(&alternate_alg, alternate_alg.default_order());

    for g in alternate_alg.all_relations() {
        if !normal_form(&g, &gb_main)?.is_zero() {
            return Ok(CheckResult::fail(
                name,
                Witness::Generator {
                    generator: text::render(&g),
                },
                "alternate generator escapes the presentation ideal",
            ));
        }
    }
    for g in p.chern.all_relations() {
        if !normal_form(&g, &gb_alt)?.is_zero() {
            return Ok(CheckResult::fail(
                name,
                Witness::Generator {
                    generator: text::render(&g),
                },
                "presentation generator escapes the alternate ideal",
            ));
        }
    }

    // tail membership: a_{2n+i} in <y, a_j : 2n-2k < j <= 2n> for i >= 1.
    // Checked by reduction, not assumed; a failure here is reported.
    let y = GradedPoly::variable(table.clone(), 0);
    let mut tail_gens = vec![y];
    for j in (2 * n - 2 * k + 1)..=(2 * n) {
        let a = p.series.coeff(j).clone();
        if !a.is_zero() {
            tail_gens.push(a);
        }
    }
    let tail_alg = PresentedAlgebra::new(table, tail_gens, None, "tail ideal")?;
    let gb_tail = buchberger(&tail_alg, tail_alg.default_order());
    for i in 1..=(p.series.bound().saturating_sub(2 * n)) {
        let a = p.series.coeff(2 * n + i);
        if !normal_form(a, &gb_tail)?.is_zero() {
            return Ok(CheckResult::fail(
                name,
                Witness::Generator {
                    generator: format!("a_{}", 2 * n + i),
                },
                "tail coefficient escapes <y, a_j : 2n-2k < j <= 2n>",
            ));
        }
    }
    Ok(CheckResult::pass(name))
}

fn parse_base_dim(v: &serde_json::Value) -> Result<BaseDim> {
    serde_json::from_value(v.clone()).map_err(Error::from)
}

fn run_torus(
    request: &ComputationRequest,
    pair_file: &Option<String>,
    pair_inline: &Option<PairFile>,
    m: Option<BaseDim>,
    checks: &[CheckKind],
    max_degree: Option<usize>,
    ctx: &RunContext,
) -> Result<Report> {
    let file: PairFile = match (pair_file, pair_inline) {
        (Some(name), None) => {
            let path = ctx.resolve(name);
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::Input(format!("cannot read pair file {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text)?
        }
        (None, Some(inline)) => inline.clone(),
        _ => {
            return Err(Error::Input(
                "torus request needs exactly one of \"pair_file\" or \"pair\"".into(),
            ))
        }
    };
    let pair = CharacteristicPair::from_file(&file)?;
    let m = match m {
        Some(m) => m,
        None => match &file.m {
            Some(v) => parse_base_dim(v)?,
            None => return Err(Error::Input("torus request needs \"m\"".into())),
        },
    };

    // unimodularity is always checked first; a rejection reports the
    // offending vertex and skips everything downstream
    let validation = torus::validate_pair(&pair);
    let mut results = Vec::new();
    if let Some(v) = validation.violations.first() {
        results.push(CheckResult::fail(
            "unimodularity",
            Witness::Vertex {
                vertex: v.vertex,
                facets: v.facets.clone(),
                determinant: v.determinant,
            },
            format!("vertex {} has determinant {}", v.vertex, v.determinant),
        ));
        for check in dedup_checks(checks) {
            results.push(CheckResult::skipped(
                check.name(),
                "characteristic pair failed validation",
            ));
        }
        return Ok(Report {
            request: request.clone(),
            presentation: None,
            chern_presentation: None,
            hilbert: None,
            oracle: None,
            cw: None,
            notes: Vec::new(),
            checks: results,
        });
    }
    results.push(CheckResult::pass("unimodularity"));

    let alg = torus::build_torus_presentation(&pair, m)?;
    let fiber = torus::torus_fiber_presentation(&pair)?;
    let fiber_bound = 2 * pair.torus_dim();
    let fiber_dims: Vec<i64> = hilbert_function(&fiber, fiber_bound)
        .dims()
        .iter()
        .map(|&d| d as i64)
        .collect();
    let bound = ctx.degree_bound(max_degree, fiber_bound, m);
    let oracle = convolve_dims(&m.dims(bound), &fiber_dims, bound);

    let job = PresentationJob {
        presentation: alg.to_json(),
        chern_presentation: None,
        algebra: &alg,
        oracle,
        bound,
        fiber_total: Some((pair.vertices().len(), fiber_dims)),
        cw_fiber: CwFiber::None("no CW fixture for torus fibres"),
        ideal_equality: None,
        notes: Vec::new(),
        m,
    };
    let mut report = run_presentation_request(request.clone(), job, checks, ctx)?;
    let mut all_checks = results;
    all_checks.extend(report.checks);
    report.checks = all_checks;
    Ok(report)
}

fn run_cw(
    request: &ComputationRequest,
    s_file: &str,
    x_file: &str,
    ctx: &RunContext,
) -> Result<Report> {
    let s = cw::load_equivariant_cw(&ctx.resolve(s_file))?;
    let x = cw::load_equivariant_cw(&ctx.resolve(x_file))?;
    let product = cw::product_complex(&s, &x)?;
    let quotient = cw::involution_quotient(&product)?;
    let perfect = quotient.perfectness_check();
    let betti = quotient.betti_numbers();
    let check = if perfect.perfect {
        CheckResult::pass("perfectness")
    } else {
        let (dim, cell) = perfect.offender.clone().expect("offender present");
        CheckResult::fail(
            "perfectness",
            Witness::Cell { dim, cell },
            "a quotient boundary map is nonzero",
        )
    };
    Ok(Report {
        request: request.clone(),
        presentation: None,
        chern_presentation: None,
        hilbert: None,
        oracle: None,
        cw: Some(CwSummary {
            product_cells: product.complex().cell_counts(),
            quotient_cells: quotient.cell_counts(),
            perfect: perfect.perfect,
            offender: perfect.offender.map(|(dim, cell)| Witness::Cell { dim, cell }),
            betti,
        }),
        notes: Vec::new(),
        checks: vec![check],
    })
}

/// One row of a batch outcome: a report, or the error that produced none.
#[derive(Debug, Serialize)]
pub struct BatchEntry {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BatchEntry {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_some_and(Report::passed)
    }

    pub fn status(&self) -> &'static str {
        match &self.report {
            Some(r) if r.passed() => "PASS",
            Some(_) => "FAIL",
            None => "ERROR",
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(transparent)]
pub struct BatchOutcome {
    pub entries: Vec<BatchEntry>,
}

impl BatchOutcome {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(BatchEntry::passed)
    }
}

fn run_entry(index: usize, value: &serde_json::Value, ctx: &RunContext) -> BatchEntry {
    let parsed: std::result::Result<ComputationRequest, _> =
        serde_json::from_value(value.clone());
    match parsed {
        Err(e) => BatchEntry {
            index,
            report: None,
            error: Some(format!("malformed request: {e}")),
        },
        Ok(request) => match run(&request, ctx) {
            Ok(report) => BatchEntry {
                index,
                report: Some(report),
                error: None,
            },
            Err(e) => BatchEntry {
                index,
                report: None,
                error: Some(e.to_string()),
            },
        },
    }
}

/// Executes every entry independently — one malformed or failing entry
/// never aborts the batch — and collects results in input order.
/// `jobs = 1` forces sequential execution; `jobs = 0` uses the default
/// thread pool.
pub fn run_batch(entries: &[serde_json::Value], ctx: &RunContext, jobs: usize) -> BatchOutcome {
    let results = run_batch_inner(entries, ctx, jobs);
    BatchOutcome { entries: results }
}

#[cfg(feature = "parallel")]
fn run_batch_inner(
    entries: &[serde_json::Value],
    ctx: &RunContext,
    jobs: usize,
) -> Vec<BatchEntry> {
    use rayon::prelude::*;
    if jobs == 1 {
        return entries
            .iter()
            .enumerate()
            .map(|(i, v)| run_entry(i, v, ctx))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        entries
            .par_iter()
            .enumerate()
            .map(|(i, v)| run_entry(i, v, ctx))
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_batch_inner(
    entries: &[serde_json::Value],
    ctx: &RunContext,
    _jobs: usize,
) -> Vec<BatchEntry> {
    entries
        .iter()
        .enumerate()
        .map(|(i, v)| run_entry(i, v, ctx))
        .collect()
}

/// Human-readable rendering of one report, stable across runs.
pub fn render_report_text(report: &Report) -> String {
    let mut out = String::new();
    let kind = match &report.request {
        ComputationRequest::Grassmann { n, k, .. } => format!("grassmann n={n} k={k}"),
        ComputationRequest::Flag { nu, .. } => {
            let parts: Vec<String> = nu.iter().map(usize::to_string).collect();
            format!("flag nu=({})", parts.join(","))
        }
        ComputationRequest::Sphere { n, .. } => format!("sphere n={n}"),
        ComputationRequest::Torus { pair_file, .. } => format!(
            "torus pair={}",
            pair_file.clone().unwrap_or_else(|| "<inline>".into())
        ),
        ComputationRequest::Cw { s_file, x_file } => format!("cw s={s_file} x={x_file}"),
        ComputationRequest::Equivariant { .. } => "equivariant".to_string(),
    };
    out.push_str(&format!("{kind}\n"));
    if let Some(p) = &report.presentation {
        let vars: Vec<String> = p
            .variables
            .iter()
            .map(|v| format!("{} (deg {})", v.name, v.degree))
            .collect();
        out.push_str(&format!("  variables: {}\n", vars.join(", ")));
        for r in &p.relations {
            out.push_str(&format!("  relation: {r} = 0\n"));
        }
        if let Some(t) = &p.truncation {
            out.push_str(&format!("  truncation: {}^{} = 0\n", t.var, t.power));
        }
    }
    if let Some(h) = &report.hilbert {
        out.push_str(&format!("  hilbert: {h:?}\n"));
    }
    if let Some(o) = &report.oracle {
        out.push_str(&format!("  oracle:  {o:?}\n"));
    }
    if let Some(cw) = &report.cw {
        out.push_str(&format!(
            "  quotient cells: {:?}, betti: {:?}\n",
            cw.quotient_cells, cw.betti
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("  note: {note}\n"));
    }
    for c in &report.checks {
        let verdict = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        };
        out.push_str(&format!("  {}: {verdict}", c.name));
        if let Some(w) = &c.witness {
            out.push_str(&format!(" [witness: {}]", render_witness(w)));
        }
        if let Some(r) = &c.reason {
            out.push_str(&format!(" ({r})"));
        }
        out.push('\n');
    }
    out
}

fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Degree { degree } => format!("degree {degree}"),
        Witness::Vertex {
            vertex,
            facets,
            determinant,
        } => format!("vertex {vertex} {{{}}} det {determinant}", facets.join(", ")),
        Witness::Cell { dim, cell } => format!("cell {cell} in dimension {dim}"),
        Witness::Generator { generator } => format!("generator {generator}"),
    }
}

pub fn render_batch_summary(outcome: &BatchOutcome) -> String {
    let mut out = String::new();
    for entry in &outcome.entries {
        let label = entry
            .report
            .as_ref()
            .map(|r| match &r.request {
                ComputationRequest::Grassmann { n, k, .. } => format!("grassmann({n},{k})"),
                ComputationRequest::Flag { nu, .. } => format!("flag{nu:?}"),
                ComputationRequest::Sphere { n, .. } => format!("sphere({n})"),
                ComputationRequest::Torus { pair_file, .. } => format!(
                    "torus({})",
                    pair_file.clone().unwrap_or_else(|| "inline".into())
                ),
                ComputationRequest::Cw { .. } => "cw".into(),
                ComputationRequest::Equivariant { .. } => "equivariant".into(),
            })
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:>4}  {:<7}  {}\n",
            entry.index,
            entry.status(),
            label
        ));
        if let Some(e) = &entry.error {
            out.push_str(&format!("      error: {e}\n"));
        }
    }
    let passed = outcome.entries.iter().filter(|e| e.passed()).count();
    out.push_str(&format!("{passed}/{} passed\n", outcome.entries.len()));
    out
}
