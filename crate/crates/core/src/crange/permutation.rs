use itertools::Itertools;

use super::support::{dot, range_scale};
use super::WeightSpec;
use crate::error::{Error, Result};
use crate::family::MatrixTuple;

/// Largest dimension [`diagonal_vertices`] will enumerate (`8! = 40320`).
pub const MAX_PERMUTATION_DIM: usize = 8;
/// Permutation points closer than `DEDUP_TOL·scale` are merged.
pub const DEDUP_TOL: f64 = 1e-10;

/// All points `(Σ_u c_u d^{(j)}_{σ(u)})_j` over permutations `σ`, without
/// near-duplicates. For a diagonal tuple their convex hull is `W_C(D)`.
pub fn diagonal_vertices(d: &MatrixTuple, weight: &WeightSpec) -> Result<Vec<Vec<f64>>> {
    let n = d.dim();
    if n > MAX_PERMUTATION_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_PERMUTATION_DIM,
        });
    }
    if weight.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: weight.dim(),
        });
    }
    for (j, m) in d.matrices().iter().enumerate() {
        if m.off_diagonal_mass() > 0.0 || m.diagonal().iter().any(|z| z.im != 0.0) {
            return Err(Error::BadBlockSpec(format!(
                "member {} is not a real diagonal matrix",
                j + 1
            )));
        }
    }
    let diags: Vec<Vec<f64>> = d
        .matrices()
        .iter()
        .map(|m| m.diagonal().iter().map(|z| z.re).collect())
        .collect();
    let c = weight.values();
    let mut points: Vec<Vec<f64>> = (0..n)
        .permutations(n)
        .map(|sigma| {
            diags
                .iter()
                .map(|dj| c.iter().zip(&sigma).map(|(cu, &s)| cu * dj[s]).sum())
                .collect()
        })
        .collect();

    let tol = DEDUP_TOL * range_scale(d, weight);
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for p in points {
        let dup = kept
            .iter()
            .rev()
            .take_while(|q| p.first().zip(q.first()).is_none_or(|(a, b)| a - b <= tol))
            .any(|q| p.iter().zip(q).all(|(a, b)| (a - b).abs() <= tol));
        if !dup {
            kept.push(p);
        }
    }
    Ok(kept)
}

/// `max_p ⟨v, p⟩` over a point list.
pub fn max_over_points(points: &[Vec<f64>], v: &[f64]) -> f64 {
    points
        .iter()
        .map(|p| dot(v, p))
        .fold(f64::NEG_INFINITY, f64::max)
}
