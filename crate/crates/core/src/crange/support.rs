use num_complex::Complex64;
use serde::Serialize;

use super::WeightSpec;
use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::{herm_eig, ComplexMatrix, HermitianEig};

/// Breakpoint gaps at or below `GAP_TOL·scale` mark a non-unique maximizer.
pub const GAP_TOL: f64 = 1e-10;
/// Directions must have unit length within this tolerance.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance for the unitarity precondition of [`point_at`].
pub const UNITARY_TOL: f64 = 1e-8;

/// Eigenvalue gap `λ_j − λ_{j+1}` of `v·A` at a weight breakpoint `c_j > c_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BreakpointGap {
    /// 1-based index `j`.
    pub index: usize,
    pub gap: f64,
}

/// One evaluation of the support function of `conv W_C(A)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportProbe {
    pub direction: Vec<f64>,
    /// `h(v) = Σ c_j λ_j(v·A)`.
    pub value: f64,
    /// `(tr C V*A_1V, …, tr C V*A_mV)` for the descending eigenbasis `V` of `v·A`.
    pub point: Vec<f64>,
    pub gaps: Vec<BreakpointGap>,
    /// False when some breakpoint gap vanishes; the point is then one of
    /// several maximizers.
    pub unique: bool,
}

/// Supporting halfspace `{a : ⟨normal, a⟩ ≤ offset}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Halfspace {
    /// `⟨normal, p⟩ − offset`; positive means outside.
    pub fn violation(&self, p: &[f64]) -> f64 {
        dot(&self.normal, p) - self.offset
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.violation(p) <= tol
    }
}

impl From<&SupportProbe> for Halfspace {
    fn from(p: &SupportProbe) -> Self {
        Halfspace {
            normal: p.direction.clone(),
            offset: p.value,
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `max_j ‖A_j‖_F · ‖c‖₁`, the yardstick for every relative tolerance; `1`
/// when the tuple vanishes.
pub fn range_scale(a: &MatrixTuple, weight: &WeightSpec) -> f64 {
    let s = a.max_norm() * weight.l1_norm();
    if s > 0.0 {
        s
    } else {
        1.0
    }
}

fn check_inputs(a: &MatrixTuple, weight: &WeightSpec, v: &[f64]) -> Result<()> {
    if weight.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: weight.dim(),
        });
    }
    if v.len() != a.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: v.len(),
        });
    }
    let norm = dot(v, v).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidDirection(format!("|v| = {norm}, expected 1")));
    }
    Ok(())
}

/// Diagonal of `V* A V`, real part.
pub(crate) fn compressed_diagonal(a: &ComplexMatrix, v: &ComplexMatrix) -> Vec<f64> {
    let av = a * v;
    (0..v.cols())
        .map(|u| {
            (0..v.rows())
                .map(|i| (v[(i, u)].conj() * av[(i, u)]).re)
                .sum()
        })
        .collect()
}

/// Support probe together with the eigendecomposition of `v·A`.
pub(crate) fn probe_with_eig(
    a: &MatrixTuple,
    weight: &WeightSpec,
    v: &[f64],
    scale: f64,
) -> Result<(SupportProbe, HermitianEig)> {
    let eig = herm_eig(&a.combination(v))?;
    let value = weight.weighted_sum(&eig.values);
    let c = weight.values();
    let point = a
        .matrices()
        .iter()
        .map(|m| dot(c, &compressed_diagonal(m, &eig.vectors)))
        .collect();
    let gaps: Vec<BreakpointGap> = weight
        .breakpoints()
        .into_iter()
        .map(|j| BreakpointGap {
            index: j + 1,
            gap: eig.values[j] - eig.values[j + 1],
        })
        .collect();
    let unique = gaps.iter().all(|g| g.gap > GAP_TOL * scale);
    Ok((
        SupportProbe {
            direction: v.to_vec(),
            value,
            point,
            gaps,
            unique,
        },
        eig,
    ))
}

/// Support function of `conv W_C(A)` in direction `v`, with a maximizer.
pub fn support(a: &MatrixTuple, weight: &WeightSpec, v: &[f64]) -> Result<SupportProbe> {
    check_inputs(a, weight, v)?;
    a.ensure_hermitian()?;
    let scale = range_scale(a, weight);
    Ok(probe_with_eig(a, weight, v, scale)?.0)
}

/// Probes for a whole direction set, in order.
pub fn support_sweep(
    a: &MatrixTuple,
    weight: &WeightSpec,
    dirs: &[Vec<f64>],
) -> Result<Vec<SupportProbe>> {
    a.ensure_hermitian()?;
    let scale = range_scale(a, weight);
    dirs.iter()
        .map(|v| {
            check_inputs(a, weight, v)?;
            Ok(probe_with_eig(a, weight, v, scale)?.0)
        })
        .collect()
}

/// Support value only: `Σ c_j λ_j(v·A)` for any real `v` (no unit check).
pub fn support_value(a: &MatrixTuple, c: &[f64], v: &[f64]) -> Result<f64> {
    let eig = herm_eig(&a.combination(v))?;
    Ok(c.iter().zip(&eig.values).map(|(c, l)| c * l).sum())
}

/// Sum of the `k` largest eigenvalues of `v·A`, the support of `W_k(A)`.
pub fn top_k_support(a: &MatrixTuple, k: usize, v: &[f64]) -> Result<f64> {
    Ok(herm_eig(&a.combination(v))?.top_sum(k))
}

/// The point `(tr C U*A_jU)_j` of `W_C(A)`. Complex members give complex
/// coordinates; Hermitian members give real ones (zero imaginary part).
pub fn point_at(a: &MatrixTuple, weight: &WeightSpec, u: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if weight.dim() != a.dim() || u.rows() != a.dim() || u.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: u.rows(),
        });
    }
    let residual = u.unitarity_residual();
    if residual > UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let c = weight.values();
    Ok(a.matrices()
        .iter()
        .map(|m| {
            let b = m.conjugate_by(u);
            c.iter()
                .enumerate()
                .map(|(i, &ci)| b[(i, i)] * ci)
                .sum()
        })
        .collect())
}

/// Real coordinates of [`point_at`] for a Hermitian tuple.
pub fn real_point_at(a: &MatrixTuple, weight: &WeightSpec, u: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(point_at(a, weight, u)?.into_iter().map(|z| z.re).collect())
}
