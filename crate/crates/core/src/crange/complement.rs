use super::support::dot;
use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::herm_eig;

/// Relative tolerance of [`wk_complement_check`].
pub const COMPLEMENT_TOL: f64 = 1e-9;

/// Largest `|h_{W_k}(v) − Σ v_j tr A_j − h_{W_{n−k}}(−v)|` over `dirs`, with
/// both supports evaluated from independent eigendecompositions.
pub fn wk_complement_residual(a: &MatrixTuple, k: usize, dirs: &[Vec<f64>]) -> Result<f64> {
    let n = a.dim();
    if k == 0 || k >= n {
        return Err(Error::InvalidK {
            k,
            n,
            reason: "complement identity needs 1 <= k <= n-1".into(),
        });
    }
    a.ensure_hermitian()?;
    let traces: Vec<f64> = a.traces().iter().map(|t| t.re).collect();
    let mut worst = 0.0f64;
    for v in dirs {
        if v.len() != a.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: v.len(),
            });
        }
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        let lhs = herm_eig(&a.combination(v))?.top_sum(k);
        let rhs = dot(v, &traces) + herm_eig(&a.combination(&neg))?.top_sum(n - k);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Checks `W_k(A) = (tr A_1, …, tr A_m) − W_{n−k}(A)` through support
/// functions, within `1e−9·max_j ‖A_j‖_F·max(k, n−k)`.
pub fn wk_complement_check(a: &MatrixTuple, k: usize, dirs: &[Vec<f64>]) -> Result<bool> {
    let residual = wk_complement_residual(a, k, dirs)?;
    let scale = (a.max_norm() * k.max(a.dim().saturating_sub(k)) as f64).max(1.0);
    Ok(residual <= COMPLEMENT_TOL * scale)
}
