use serde::Serialize;

use crate::crange::support::{dot, probe_with_eig, range_scale};
use crate::crange::{sample_directions, WeightSpec};
use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::{svd, ComplexMatrix};

/// Default acceptance threshold on the normalized smallest singular value
/// of a cluster's direction matrix.
pub const CONE_THRESHOLD: f64 = 0.05;
/// Maximizer points within `CLUSTER_RADIUS·scale` of a cluster's first point
/// join that cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// A direction supports a point when `v·p ≥ h(v) − SUPPORT_TOL·scale`.
pub const SUPPORT_TOL: f64 = 1e-8;
/// Probes with a breakpoint gap below `GAP_TOL·scale` are not clustered.
pub const GAP_TOL: f64 = 1e-10;
/// Off-block mass allowed by [`verify_conical_blocks`], relative to `‖A_j‖_F`.
pub const BLOCK_MASS_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicalOptions {
    pub n_dirs: usize,
    pub seed: u64,
    pub threshold: f64,
}

impl ConicalOptions {
    pub fn new(n_dirs: usize, seed: u64) -> Self {
        Self {
            n_dirs,
            seed,
            threshold: CONE_THRESHOLD,
        }
    }
}

/// A sampled conical point: an attained range point whose sampled normal
/// directions span a full-dimensional cone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicalCertificate {
    pub point: Vec<f64>,
    pub directions: Vec<Vec<f64>>,
    pub cone_rank: usize,
    /// Smallest singular value of the direction matrix divided by `√N`.
    pub min_singular: f64,
    /// Eigenvector unitary of `v·A` for the first direction of the cluster;
    /// it attains `point`.
    #[serde(skip)]
    pub unitary: ComplexMatrix,
}

/// Searches the sampled boundary of `conv W_C(A)` for conical points.
///
/// This can miss a conical point whose normal cone falls between samples,
/// but each certificate's point is attained by its stored unitary.
pub fn find_conical(
    a: &MatrixTuple,
    weight: &WeightSpec,
    n_dirs: usize,
    seed: u64,
) -> Result<Vec<ConicalCertificate>> {
    find_conical_with(a, weight, &ConicalOptions::new(n_dirs, seed))
}

pub fn find_conical_with(
    a: &MatrixTuple,
    weight: &WeightSpec,
    opts: &ConicalOptions,
) -> Result<Vec<ConicalCertificate>> {
    a.ensure_hermitian()?;
    if weight.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: weight.dim(),
        });
    }
    let m = a.len();
    if m == 0 {
        return Err(Error::EmptyFamily);
    }
    let scale = range_scale(a, weight);
    let dirs = sample_directions(m, opts.n_dirs, opts.seed);
    let mut probes = Vec::with_capacity(dirs.len());
    for v in &dirs {
        probes.push(probe_with_eig(a, weight, v, scale)?);
    }

    // cluster representatives: (probe index, point)
    let mut reps: Vec<usize> = Vec::new();
    for (i, (p, _)) in probes.iter().enumerate() {
        if p.gaps.iter().any(|g| g.gap < GAP_TOL * scale) {
            continue;
        }
        let joined = reps.iter().any(|&r| {
            let q = &probes[r].0.point;
            dot_dist(q, &p.point) <= CLUSTER_RADIUS * scale
        });
        if !joined {
            reps.push(i);
        }
    }

    let mut out = Vec::new();
    for r in reps {
        let (rep, eig) = &probes[r];
        let supporting: Vec<Vec<f64>> = probes
            .iter()
            .filter(|(p, _)| dot(&p.direction, &rep.point) >= p.value - SUPPORT_TOL * scale)
            .map(|(p, _)| p.direction.clone())
            .collect();
        if supporting.len() < m {
            continue;
        }
        let sv = normalized_singular_values(&supporting)?;
        let min_singular = sv.last().copied().unwrap_or(0.0);
        if min_singular < opts.threshold {
            continue;
        }
        out.push(ConicalCertificate {
            point: rep.point.clone(),
            cone_rank: sv.iter().filter(|&&s| s >= opts.threshold).count(),
            directions: supporting,
            min_singular,
            unitary: eig.vectors.clone(),
        });
    }
    Ok(out)
}

fn dot_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Singular values of the `N×m` direction matrix divided by `√N`.
fn normalized_singular_values(dirs: &[Vec<f64>]) -> Result<Vec<f64>> {
    let rows: Vec<Vec<f64>> = dirs.to_vec();
    let mat = ComplexMatrix::from_real_rows(&rows)?;
    let s = svd(&mat)?;
    let root = (dirs.len() as f64).sqrt();
    Ok(s.values.iter().map(|x| x / root).collect())
}

/// Result of [`verify_conical_blocks`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockCheck {
    pub holds: bool,
    pub block_sizes: Vec<usize>,
    /// Off-block mass of `U*A_jU` relative to `‖A_j‖_F`, per member.
    pub masses: Vec<f64>,
    pub tol: f64,
}

/// Whether every `U*A_jU` is block diagonal with the block sizes of `C`.
pub fn verify_conical_blocks(
    a: &MatrixTuple,
    weight: &WeightSpec,
    u: &ComplexMatrix,
) -> Result<BlockCheck> {
    let n = a.dim();
    if weight.dim() != n || u.rows() != n || u.cols() != n {
        return Err(Error::BadBlockSpec(format!(
            "tuple dimension {n}, weight dimension {}, unitary {}x{}",
            weight.dim(),
            u.rows(),
            u.cols()
        )));
    }
    let sizes = weight.block_sizes();
    let masses: Vec<f64> = a
        .matrices()
        .iter()
        .map(|m| {
            let norm = m.frobenius_norm();
            if norm > 0.0 {
                m.conjugate_by(u).off_block_mass(&sizes) / norm
            } else {
                0.0
            }
        })
        .collect();
    Ok(BlockCheck {
        holds: masses.iter().all(|&x| x <= BLOCK_MASS_TOL),
        block_sizes: sizes,
        masses,
        tol: BLOCK_MASS_TOL,
    })
}
