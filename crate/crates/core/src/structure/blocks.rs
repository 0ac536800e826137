use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::{commutator_norm, herm_eig, svd, ComplexMatrix};

/// Default relative tolerance for block extraction and diagonalization.
pub const BLOCK_TOL: f64 = 1e-8;

/// Members with `‖A_j‖_F ≤ NOISE_FLOOR·max_i ‖A_i‖_F` are rounding residue
/// (for instance the skew part of a matrix that is Hermitian up to rounding)
/// and do not take part in block extraction.
pub const NOISE_FLOOR: f64 = 1e-12;

/// `U*A_jU = D_j ⊕ Q_j` with `D_j` diagonal of size `ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDecomposition {
    pub u: ComplexMatrix,
    pub ell: usize,
    /// Diagonal entries of each `D_j`.
    pub d: Vec<Vec<f64>>,
    pub q: Vec<ComplexMatrix>,
    /// Largest relative off-block mass `‖U*A_jU − D_j ⊕ Q_j‖_F / ‖A_j‖_F`.
    pub residual: f64,
}

impl BlockDecomposition {
    pub fn dim(&self) -> usize {
        self.u.rows()
    }

    /// The diagonal tuple `(D_1, …, D_m)`.
    pub fn d_tuple(&self) -> Result<MatrixTuple> {
        MatrixTuple::with_dim(
            self.ell,
            self.d.iter().map(|d| ComplexMatrix::from_real_diag(d)).collect(),
        )
    }

    /// The residual tuple `(Q_1, …, Q_m)`.
    pub fn q_tuple(&self) -> Result<MatrixTuple> {
        MatrixTuple::with_dim(self.dim() - self.ell, self.q.clone())
    }

    /// `D_j ⊕ Q_j`.
    pub fn reduced(&self, j: usize) -> ComplexMatrix {
        let d = ComplexMatrix::from_real_diag(&self.d[j]);
        ComplexMatrix::direct_sum(&[&d, &self.q[j]])
    }

    /// The columns of `U` spanning the residual block.
    pub fn residual_basis(&self) -> ComplexMatrix {
        let idx: Vec<usize> = (self.ell..self.dim()).collect();
        self.u.select_columns(&idx)
    }
}

/// Splits descending `values` into runs whose consecutive gaps are at most
/// `tol`.
fn clusters(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(run) if values[run[run.len() - 1]] - v <= tol => run.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn columns_of(m: &ComplexMatrix, from: usize) -> ComplexMatrix {
    let idx: Vec<usize> = (from..m.cols()).collect();
    m.select_columns(&idx)
}

/// Stacked residual system `[(I − GG*)H_jG ; G*H_jG − μ_j I]_j`; its null
/// vectors `x` give common eigenvectors `Gx`.
fn residual_system(hs: &[ComplexMatrix], g: &ComplexMatrix) -> ComplexMatrix {
    let n = g.rows();
    let w = g.cols();
    let mut sys = ComplexMatrix::zeros(hs.len() * (n + w), w);
    for (j, h) in hs.iter().enumerate() {
        let hg = h * g;
        let comp = &g.adjoint() * &hg;
        let outside = &hg - &(g * &comp);
        let mu = comp.trace() / w as f64;
        let inside = &comp - &ComplexMatrix::identity(w).scale(mu);
        sys.set_block(j * (n + w), 0, &outside);
        sys.set_block(j * (n + w) + n, 0, &inside);
    }
    sys
}

/// Maximal set of common eigenvectors of a Hermitian tuple, returned as
/// `U*A_jU = D_j ⊕ Q_j`.
///
/// Eigenspace refinement: start from the whole space, and for each nonzero
/// member (scaled to unit Frobenius norm) split every current subspace by the
/// eigenvalue clusters of the compressed member (cluster gap `tol`). Every
/// common eigenvector stays inside one final subspace, so the common
/// eigenvectors are the null space of each subspace's residual system at
/// singular value threshold `tol`. Members below [`NOISE_FLOOR`] are skipped.
pub fn extract_blocks(a: &MatrixTuple, tol: f64) -> Result<BlockDecomposition> {
    a.ensure_hermitian()?;
    let n = a.dim();
    let floor = NOISE_FLOOR * a.max_norm();
    let hs: Vec<ComplexMatrix> = a
        .matrices()
        .iter()
        .filter(|m| m.frobenius_norm() > floor)
        .map(|m| m.hermitian_part().scale_real(1.0 / m.frobenius_norm()))
        .collect();

    let mut spaces = vec![ComplexMatrix::identity(n)];
    for h in &hs {
        let mut next = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.cols() == 1 {
                next.push(s);
                continue;
            }
            let eig = herm_eig(&h.conjugate_by(&s))?;
            for run in clusters(&eig.values, tol) {
                next.push(&s * &eig.vectors.select_columns(&run));
            }
        }
        spaces = next;
    }

    let mut common: Vec<Vec<Complex64>> = Vec::new();
    let mut rest: Vec<Vec<Complex64>> = Vec::new();
    for g in &spaces {
        let (basis, null_from) = if hs.is_empty() {
            (g.clone(), 0)
        } else {
            // singular values come sorted descending, so null directions are last
            let s = svd(&residual_system(&hs, g))?;
            (g * &s.v, s.values.iter().filter(|&&x| x > tol).count())
        };
        let nulls = columns_of(&basis, null_from);
        for c in 0..nulls.cols() {
            common.push(nulls.column(c));
        }
        for c in 0..null_from {
            rest.push(basis.column(c));
        }
    }
    let ell = common.len();
    common.extend(rest);
    let u = ComplexMatrix::from_columns(n, &common);
    Ok(decompose_with(a, u, ell))
}

/// Reads off `D_j` and `Q_j` for a given unitary and split `ℓ`.
pub fn decompose_with(a: &MatrixTuple, u: ComplexMatrix, ell: usize) -> BlockDecomposition {
    let n = a.dim();
    let mut d = Vec::with_capacity(a.len());
    let mut q = Vec::with_capacity(a.len());
    let mut residual = 0.0f64;
    for m in a.matrices() {
        let b = m.conjugate_by(&u);
        let diag: Vec<f64> = (0..ell).map(|i| b[(i, i)].re).collect();
        let qj = b.block(ell, ell, n - ell, n - ell);
        let reduced = ComplexMatrix::direct_sum(&[&ComplexMatrix::from_real_diag(&diag), &qj]);
        let norm = m.frobenius_norm();
        if norm > 0.0 {
            residual = residual.max((&b - &reduced).frobenius_norm() / norm);
        }
        d.push(diag);
        q.push(qj);
    }
    BlockDecomposition {
        u,
        ell,
        d,
        q,
        residual,
    }
}

/// The member pair with the largest relative commutator, counting
/// `(j, j)` as the normality defect `‖[A_j, A_j*]‖`. Indices are 1-based.
pub fn worst_pair(f: &MatrixTuple) -> Result<(usize, usize, f64)> {
    let mut worst = (1, 1, 0.0);
    let ms = f.matrices();
    for i in 0..ms.len() {
        for j in i..ms.len() {
            let other = if i == j { ms[i].adjoint() } else { ms[j].clone() };
            let denom = ms[i].frobenius_norm() * other.frobenius_norm();
            let r = if denom > 0.0 {
                commutator_norm(&ms[i], &other)? / denom
            } else {
                0.0
            };
            if r > worst.2 {
                worst = (i + 1, j + 1, r);
            }
        }
    }
    Ok(worst)
}

/// A unitary `U` making every `U*F_jU` diagonal (off-diagonal mass at most
/// `tol·‖F_j‖_F`). Non-Hermitian members are handled through their Hermitian
/// parts.
pub fn simultaneous_diagonalize(f: &MatrixTuple, tol: f64) -> Result<ComplexMatrix> {
    let h = f.hermitian_tuple();
    let blocks = extract_blocks(&h, tol)?;
    if blocks.ell == f.dim() {
        let ok = f.matrices().iter().all(|m| {
            m.conjugate_by(&blocks.u).off_diagonal_mass() <= tol * m.frobenius_norm()
        });
        if ok {
            return Ok(blocks.u);
        }
    }
    let (first, second, residual) = worst_pair(f)?;
    Err(Error::NotCommutingNormal {
        first,
        second,
        residual,
    })
}
