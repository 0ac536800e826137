//! Decision procedures: polyhedrality of `conv W_C(A)`, commutativity and
//! normality of matrix families, and the conical-point route.

use serde::Serialize;

use crate::crange::{
    range_scale, sample_directions, support_value, top_k_support, WeightSpec,
};
use crate::error::{Error, Result};
use crate::family::{classify_flat, span_basis, FlatClass, MatrixTuple, FLAT_TOL};
use crate::linalg::{commutator_norm, is_normal, ComplexMatrix};
use crate::structure::{
    extract_blocks, find_conical_with, simultaneous_diagonalize, verify_conical_blocks, worst_pair,
    BlockCheck, ConicalOptions, BLOCK_TOL, CONE_THRESHOLD,
};

/// Stated in every report: all geometry is about the convex hull.
pub const SCOPE_NOTE: &str =
    "geometric claims concern the convex hull conv W_C(A), which is what support functions determine";

/// Hermitian parts below this fraction of the largest part are rounding
/// residue and are dropped before pairwise tests.
const PART_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Polyhedral,
    NotPolyhedral,
    CommutingNormal,
    NotCommutingNormal,
    Singleton,
    Segment,
    Inconclusive,
}

impl Verdict {
    /// Singletons and segments are polyhedral too.
    pub fn is_polyhedral(self) -> bool {
        matches!(self, Verdict::Polyhedral | Verdict::Singleton | Verdict::Segment)
    }

    pub fn is_definitive(self) -> bool {
        self != Verdict::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Structural,
    Geometric,
    Algebraic,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommuteMode {
    Algebraic,
    Geometric,
    Both,
}

/// Point of a conical certificate, as reported.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicalSummary {
    pub point: Vec<f64>,
    pub cone_rank: usize,
    pub min_singular: f64,
    pub n_directions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    None,
    /// `W_C(A)` is flat; `witness` spans the segment direction.
    Flat { witness: Option<ComplexMatrix> },
    /// Fewer than `2k` common eigenvectors.
    TooFewCommonEigenvectors { ell: usize, k: usize },
    /// `h_{W_k(A)}(v) − h_{W_k(D)}(v) = gap > 0`.
    SupportGap {
        ell: usize,
        k: usize,
        direction: Vec<f64>,
        support_a: f64,
        support_d: f64,
        gap: f64,
    },
    /// `U*A_jU = D_j ⊕ Q_j` reproduces the range; `reduced_weight` is the
    /// weight on the `D` block and `reduced_discrepancy` the largest
    /// difference between `h_{W_C(A)}(v)` and
    /// `c_{k+1}·Σ v_j tr A_j + h_{W_reduced(D)}(v)` over the sampled directions.
    Blocks {
        ell: usize,
        k: usize,
        unitary: ComplexMatrix,
        diagonals: Vec<Vec<f64>>,
        reduced_weight: Vec<f64>,
        reduced_discrepancy: f64,
    },
    Diagonalizer { unitary: ComplexMatrix },
    /// 1-based member indices; `first == second` marks a non-normal member.
    CommutatorPair {
        first: usize,
        second: usize,
        residual: f64,
    },
    /// 1-based indices into the Hermitian parts; `inner` explains why the
    /// pair range is not polyhedral.
    PairNotPolyhedral {
        first: usize,
        second: usize,
        inner: Box<Certificate>,
    },
    Conical {
        points: Vec<ConicalSummary>,
        blocks: Option<BlockCheck>,
        fallback: Option<Box<Certificate>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    pub version: &'static str,
    pub tol: f64,
    pub n_dirs: usize,
    pub seed: u64,
    pub gamma: Option<usize>,
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub scale: Option<f64>,
    pub cone_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub route: Route,
    pub certificate: Certificate,
    pub params: Params,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecideOptions {
    pub n_dirs: usize,
    pub seed: u64,
    pub tol: f64,
    /// `k` for the geometric commutativity route; `⌊n/2⌋` when absent.
    pub k: Option<usize>,
    pub cone_threshold: f64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            n_dirs: 720,
            seed: 0,
            tol: BLOCK_TOL,
            k: None,
            cone_threshold: CONE_THRESHOLD,
        }
    }
}

impl DecideOptions {
    fn params(&self) -> Params {
        Params {
            version: env!("CARGO_PKG_VERSION"),
            tol: self.tol,
            n_dirs: self.n_dirs,
            seed: self.seed,
            gamma: None,
            k: None,
            ell: None,
            scale: None,
            cone_threshold: None,
        }
    }
}

fn report(verdict: Verdict, route: Route, certificate: Certificate, params: Params) -> AnalysisReport {
    AnalysisReport {
        verdict,
        route,
        certificate,
        params,
        notes: vec![SCOPE_NOTE.to_string()],
    }
}

fn top_k_diagonal(d: &[Vec<f64>], k: usize, v: &[f64]) -> f64 {
    let ell = d.first().map_or(0, Vec::len);
    let mut vals: Vec<f64> = (0..ell)
        .map(|i| v.iter().zip(d).map(|(vj, dj)| vj * dj[i]).sum())
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals.iter().take(k).sum()
}

/// Decides whether `conv W_C(A)` is polyhedral.
///
/// With `k = γ(C)`: extract the common-eigenvector block `D`; fewer than
/// `2k` common eigenvectors means not polyhedral. Otherwise compare the
/// supports of `W_k(A)` and `W_k(D)` over the sampled directions; a gap above
/// `tol·scale` is a witness, and no gap certifies `(U, ℓ, D)`.
pub fn decide_polyhedral(
    a: &MatrixTuple,
    weight: &WeightSpec,
    opts: &DecideOptions,
) -> Result<AnalysisReport> {
    polyhedral(a, weight, opts, true)
}

/// With `audit` off, a polyhedral verdict skips the reduced-weight
/// discrepancy sweep and reports it as `0`.
fn polyhedral(
    a: &MatrixTuple,
    weight: &WeightSpec,
    opts: &DecideOptions,
    audit: bool,
) -> Result<AnalysisReport> {
    let h = a.geometric_view();
    if weight.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: weight.dim(),
        });
    }
    let n = h.dim();
    let k = weight.gamma();
    let scale = range_scale(&h, weight);
    let mut params = opts.params();
    params.gamma = Some(k);
    params.k = Some(k);
    params.scale = Some(scale);

    match classify_flat(&h, weight)? {
        FlatClass::Singleton => {
            return Ok(report(
                Verdict::Singleton,
                Route::Structural,
                Certificate::Flat { witness: None },
                params,
            ))
        }
        FlatClass::Segment(w) => {
            return Ok(report(
                Verdict::Segment,
                Route::Structural,
                Certificate::Flat { witness: Some(w) },
                params,
            ))
        }
        FlatClass::Higher => {}
    }

    let blocks = extract_blocks(&h, opts.tol)?;
    let ell = blocks.ell;
    params.ell = Some(ell);
    if ell < 2 * k {
        return Ok(report(
            Verdict::NotPolyhedral,
            Route::Structural,
            Certificate::TooFewCommonEigenvectors { ell, k },
            params,
        ));
    }

    let dirs = sample_directions(h.len(), opts.n_dirs, opts.seed);
    let mut route = Route::Structural;
    if ell < n {
        route = Route::Both;
        let mut worst: Option<(f64, &Vec<f64>, f64, f64)> = None;
        for v in &dirs {
            let sa = top_k_support(&h, k, v)?;
            let sd = top_k_diagonal(&blocks.d, k, v);
            let gap = sa - sd;
            if worst.is_none_or(|w| gap > w.0) {
                worst = Some((gap, v, sa, sd));
            }
        }
        if let Some((gap, v, sa, sd)) = worst {
            if gap > opts.tol * scale {
                return Ok(report(
                    Verdict::NotPolyhedral,
                    Route::Geometric,
                    Certificate::SupportGap {
                        ell,
                        k,
                        direction: v.clone(),
                        support_a: sa,
                        support_d: sd,
                        gap,
                    },
                    params,
                ));
            }
        }
    }

    let reduced = weight.reduced_on_block(ell)?;
    let shift = weight.values()[k];
    let traces: Vec<f64> = h.traces().iter().map(|t| t.re).collect();
    let d = blocks.d_tuple()?;
    let mut discrepancy = 0.0f64;
    for v in dirs.iter().filter(|_| audit) {
        let full = support_value(&h, weight.values(), v)?;
        let offset: f64 = v.iter().zip(&traces).map(|(x, t)| x * t).sum::<f64>() * shift;
        let part = support_value(&d, &reduced, v)?;
        discrepancy = discrepancy.max((full - offset - part).abs());
    }
    Ok(report(
        Verdict::Polyhedral,
        route,
        Certificate::Blocks {
            ell,
            k,
            unitary: blocks.u.clone(),
            diagonals: blocks.d.clone(),
            reduced_weight: reduced,
            reduced_discrepancy: discrepancy,
        },
        params,
    ))
}

/// Hermitian parts of the span basis of `family`, without rounding residue.
fn hermitian_parts(family: &[ComplexMatrix]) -> Result<(MatrixTuple, MatrixTuple)> {
    let basis = span_basis(family, FLAT_TOL)?;
    let parts = basis.hermitian_expand();
    let top = parts.iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max);
    let kept = parts
        .into_iter()
        .filter(|p| p.frobenius_norm() > PART_FLOOR * top)
        .collect();
    Ok((basis.clone(), MatrixTuple::with_dim(basis.dim(), kept)?))
}

fn algebraic_commuting(basis: &MatrixTuple, tol: f64) -> Result<bool> {
    let ms = basis.matrices();
    for (i, x) in ms.iter().enumerate() {
        if !is_normal(x, tol) {
            return Ok(false);
        }
        for y in &ms[i + 1..] {
            if commutator_norm(x, y)? > tol * x.frobenius_norm() * y.frobenius_norm() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `k` for the geometric route: any `k` with `|n/2 − k| ≤ 1`, `1 ≤ k ≤ n−1`.
pub fn commuting_k(n: usize, k: Option<usize>) -> Result<usize> {
    let k = k.unwrap_or(n / 2);
    if k == 0 || k >= n || (n as f64 / 2.0 - k as f64).abs() > 1.0 {
        return Err(Error::InvalidK {
            k,
            n,
            reason: "need 1 <= k <= n-1 and |n/2 - k| <= 1".into(),
        });
    }
    Ok(k)
}

/// First pair of Hermitian parts whose `k`-range is not polyhedral.
fn geometric_failure(
    h: &MatrixTuple,
    k: usize,
    opts: &DecideOptions,
) -> Result<Option<Certificate>> {
    let weight = WeightSpec::k_range(k, h.dim())?;
    for u in 0..h.len() {
        for v in u + 1..h.len() {
            let pair = h.select(&[u, v]);
            let r = polyhedral(&pair, &weight, opts, false)?;
            if !r.verdict.is_polyhedral() {
                return Ok(Some(Certificate::PairNotPolyhedral {
                    first: u + 1,
                    second: v + 1,
                    inner: Box::new(r.certificate),
                }));
            }
        }
    }
    Ok(None)
}

/// Decides whether `family` consists of commuting normal matrices.
///
/// The family is reduced to a span basis and expanded into Hermitian parts.
/// The algebraic route checks commutators and normality directly; the
/// geometric route requires every pair of Hermitian parts to have a
/// polyhedral `k`-range, `k = ⌊n/2⌋` unless overridden. In `Both` mode a
/// disagreement is an error.
pub fn decide_commuting(
    family: &[ComplexMatrix],
    mode: CommuteMode,
    opts: &DecideOptions,
) -> Result<AnalysisReport> {
    let (basis, h) = hermitian_parts(family)?;
    let n = basis.dim();
    let mut params = opts.params();
    let route = match mode {
        CommuteMode::Algebraic => Route::Algebraic,
        CommuteMode::Geometric => Route::Geometric,
        CommuteMode::Both => Route::Both,
    };

    if n == 1 {
        return Ok(report(
            Verdict::CommutingNormal,
            route,
            Certificate::Diagonalizer {
                unitary: ComplexMatrix::identity(1),
            },
            params,
        ));
    }

    let algebraic = match mode {
        CommuteMode::Geometric => None,
        _ => Some(algebraic_commuting(&basis, opts.tol)?),
    };
    let geometric = match mode {
        CommuteMode::Algebraic => None,
        _ => {
            let k = commuting_k(n, opts.k)?;
            params.k = Some(k);
            Some(geometric_failure(&h, k, opts)?)
        }
    };
    if let (Some(alg), Some(geo)) = (algebraic, &geometric) {
        if alg != geo.is_none() {
            return Err(Error::RouteDisagreement {
                algebraic: alg,
                geometric: geo.is_none(),
            });
        }
    }
    let commuting = algebraic.unwrap_or_else(|| geometric.as_ref().is_some_and(Option::is_none));

    if commuting {
        return Ok(match simultaneous_diagonalize(&basis, opts.tol) {
            Ok(u) => report(
                Verdict::CommutingNormal,
                route,
                Certificate::Diagonalizer { unitary: u },
                params,
            ),
            Err(_) => {
                let mut r = report(Verdict::Inconclusive, route, Certificate::None, params);
                r.notes
                    .push("tests passed but no simultaneous diagonalizer was found".into());
                r
            }
        });
    }
    let certificate = match geometric {
        Some(Some(c)) if mode == CommuteMode::Geometric => c,
        _ => {
            let (first, second, residual) = worst_pair(&basis)?;
            Certificate::CommutatorPair {
                first,
                second,
                residual,
            }
        }
    };
    let mut r = report(Verdict::NotCommutingNormal, route, certificate, params);
    if basis.len() < family.len() {
        r.notes.push(format!(
            "family reduced to a basis of {} members",
            basis.len()
        ));
    }
    Ok(r)
}

/// Conical-point route: a conical point of `W_C(A)` for a weight with `n`
/// distinct values forces a commuting normal family. Finding none proves
/// nothing, so that outcome is `Inconclusive`.
pub fn decide_via_conical(
    a: &MatrixTuple,
    weight: &WeightSpec,
    opts: &DecideOptions,
) -> Result<AnalysisReport> {
    if !weight.has_distinct_values() {
        return Err(Error::BadWeight {
            n: weight.dim(),
            distinct: weight.distinct().len(),
        });
    }
    let h = a.geometric_view();
    let mut params = opts.params();
    params.cone_threshold = Some(opts.cone_threshold);
    params.scale = Some(range_scale(&h, weight));
    let copts = ConicalOptions {
        n_dirs: opts.n_dirs,
        seed: opts.seed,
        threshold: opts.cone_threshold,
    };
    let certs = find_conical_with(&h, weight, &copts)?;
    let points: Vec<ConicalSummary> = certs
        .iter()
        .map(|c| ConicalSummary {
            point: c.point.clone(),
            cone_rank: c.cone_rank,
            min_singular: c.min_singular,
            n_directions: c.directions.len(),
        })
        .collect();
    if certs.is_empty() {
        let mut r = report(
            Verdict::Inconclusive,
            Route::Geometric,
            Certificate::Conical {
                points,
                blocks: None,
                fallback: None,
            },
            params,
        );
        r.notes.push(format!(
            "no conical point found at resolution {} directions",
            opts.n_dirs
        ));
        return Ok(r);
    }

    let mut last_check = None;
    for c in &certs {
        let check = verify_conical_blocks(&h, weight, &c.unitary)?;
        if check.holds {
            if let Ok(u) = simultaneous_diagonalize(a, opts.tol) {
                let mut r = report(
                    Verdict::CommutingNormal,
                    Route::Both,
                    Certificate::Diagonalizer { unitary: u },
                    params,
                );
                r.notes.push(format!(
                    "conical point {:?} verified with blocks of size 1",
                    c.point
                ));
                return Ok(r);
            }
        }
        last_check = Some(check);
    }

    let (first, second, residual) = worst_pair(a)?;
    let verdict = if residual > opts.tol {
        Verdict::NotCommutingNormal
    } else {
        Verdict::Inconclusive
    };
    let mut r = report(
        verdict,
        Route::Both,
        Certificate::Conical {
            points,
            blocks: last_check,
            fallback: Some(Box::new(Certificate::CommutatorPair {
                first,
                second,
                residual,
            })),
        },
        params,
    );
    r.notes
        .push("no certificate passed block verification; fell back to commutators".into());
    Ok(r)
}
