//! Cyclic complex Jacobi: Hermitian eigendecomposition and the one-sided
//! (Hestenes) variant for singular value decomposition.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative off-diagonal mass at which the Jacobi sweep stops.
pub const TAU_EIG: f64 = 1e-13;
/// Relative skew mass tolerated before an input is rejected as non-Hermitian.
pub const TAU_HERM: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 50;

/// Eigenvalues in non-increasing order, paired column-wise with a unitary
/// matrix of eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V diag(values) V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::from_real_diag(&self.values);
        &(&self.vectors * &d) * &self.vectors.adjoint()
    }

    /// Sum of the `k` largest eigenvalues.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.values.iter().take(k).sum()
    }
}

/// Unitary 2x2 `J` with `J* [[app, apq], [conj(apq), aqq]] J` diagonal.
///
/// Returned as `[j00, j01, j10, j11]`.
fn rotation(app: f64, aqq: f64, apq: Complex64) -> [Complex64; 4] {
    let b = apq.norm();
    let phase = apq.conj() / b; // e^{-i arg(apq)}
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        phase * (-s),
        phase * c,
    ]
}

/// Right-multiplies columns `p`, `q` of `m` by `j`.
fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, j: &[Complex64; 4]) {
    for i in 0..m.rows() {
        let x = m[(i, p)];
        let y = m[(i, q)];
        m[(i, p)] = x * j[0] + y * j[2];
        m[(i, q)] = x * j[1] + y * j[3];
    }
}

/// Left-multiplies rows `p`, `q` of `m` by `j*`.
fn rotate_rows(m: &mut ComplexMatrix, p: usize, q: usize, j: &[Complex64; 4]) {
    for k in 0..m.cols() {
        let x = m[(p, k)];
        let y = m[(q, k)];
        m[(p, k)] = j[0].conj() * x + j[2].conj() * y;
        m[(q, k)] = j[1].conj() * x + j[3].conj() * y;
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Rejects inputs with `‖A − A*‖_F > TAU_HERM·‖A‖_F`. The Hermitian part is
/// decomposed, so rounding-level asymmetry in the input is harmless.
pub fn herm_eig(a: &ComplexMatrix) -> Result<HermitianEig> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let norm = a.frobenius_norm();
    let skew = a.skew_residual();
    if skew > TAU_HERM * norm {
        return Err(Error::NotHermitian {
            residual: if norm > 0.0 { skew / norm } else { skew },
            tol: TAU_HERM,
        });
    }
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = TAU_EIG * norm;

    let mut sweeps = 0;
    loop {
        let off = m.off_diagonal_mass();
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let j = rotation(m[(p, p)].re, m[(q, q)].re, apq);
                rotate_columns(&mut m, p, q, &j);
                rotate_rows(&mut m, p, q, &j);
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
                rotate_columns(&mut v, p, q, &j);
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| raw[y].total_cmp(&raw[x]).then(x.cmp(&y)));
    Ok(HermitianEig {
        values: order.iter().map(|&i| raw[i]).collect(),
        vectors: v.select_columns(&order),
    })
}

/// Thin singular value decomposition `M = U diag(values) V*`.
///
/// `values` are non-increasing; `v` is a full unitary of size `cols`;
/// columns of `u` belonging to zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn smallest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// One-sided Jacobi SVD. Small singular values come out with absolute
/// accuracy near `ε·‖M‖`, which the null-space computations rely on.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let c = m.cols();
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(c);
    let col_dot = |w: &ComplexMatrix, p: usize, q: usize| -> Complex64 {
        (0..w.rows()).map(|i| w[(i, p)].conj() * w[(i, q)]).sum()
    };

    // column inner products carry rounding of order rows·ε
    let corr_tol = (m.rows().max(1) as f64 * f64::EPSILON).max(1e-15);
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut worst = 0.0f64;
        for p in 0..c {
            for q in p + 1..c {
                let alpha = col_dot(&w, p, p).re;
                let beta = col_dot(&w, q, q).re;
                let gamma = col_dot(&w, p, q);
                if gamma.norm() == 0.0 {
                    continue;
                }
                let corr = gamma.norm() / (alpha * beta).sqrt();
                if corr <= corr_tol {
                    continue;
                }
                worst = worst.max(corr);
                rotated = true;
                let j = rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, &j);
                rotate_columns(&mut v, p, q, &j);
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps > 2 * MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off: worst });
        }
    }

    let norms: Vec<f64> = (0..c).map(|j| col_dot(&w, j, j).re.sqrt()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = ComplexMatrix::from_fn(m.rows(), c, |i, k| {
        let s = values[k];
        if s > 0.0 {
            w[(i, order[k])] / s
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(Svd {
        u,
        values,
        v: v.select_columns(&order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = herm_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
        assert!(e.vectors.unitarity_residual() < 1e-14);
    }

    #[test]
    fn diagonal_input_sorts_with_permutation_vectors() {
        let e = herm_eig(&ComplexMatrix::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        // columns are e_1, e_3, e_2
        assert_eq!(e.vectors[(0, 0)], c(1.0, 0.0));
        assert_eq!(e.vectors[(2, 1)], c(1.0, 0.0));
        assert_eq!(e.vectors[(1, 2)], c(1.0, 0.0));
    }

    #[test]
    fn padded_triangle_block_spectrum() {
        // diag(1, -1/2, -1/2) with the Hermitian part of [[0, 0.1], [0, 0]]
        let mut a = ComplexMatrix::from_real_diag(&[1.0, -0.5, -0.5, 0.0, 0.0]);
        a[(3, 4)] = c(0.05, 0.0);
        a[(4, 3)] = c(0.05, 0.0);
        let e = herm_eig(&a).unwrap();
        let expect = [1.0, 0.05, -0.05, -0.5, -0.5];
        for (got, want) in e.values.iter().zip(expect) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let u = random_unitary(6, 11);
        let d = ComplexMatrix::from_real_diag(&[2.0, -1.0, 0.5, 0.5, 3.0, -4.0]);
        let a = d.conjugate_by(&u.adjoint());
        let e = herm_eig(&a).unwrap();
        let err = (&e.reconstruct() - &a).frobenius_norm();
        assert!(err <= 10.0 * TAU_EIG * a.frobenius_norm(), "{err}");
        assert_eq!(e.values[0], e.values.iter().cloned().fold(f64::MIN, f64::max));
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 0.1], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(herm_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn svd_recovers_rank_and_reconstruction() {
        let u = random_unitary(5, 3);
        let v = random_unitary(3, 4);
        let mut s = ComplexMatrix::zeros(5, 3);
        s[(0, 0)] = c(4.0, 0.0);
        s[(1, 1)] = c(1e-3, 0.0);
        let m = &(&u * &s) * &v.adjoint();
        let d = svd(&m).unwrap();
        assert!((d.values[0] - 4.0).abs() < 1e-13);
        assert!((d.values[1] - 1e-3).abs() < 1e-13);
        assert!(d.values[2] < 1e-14);
        assert!(d.v.unitarity_residual() < 1e-13);
        let rebuilt = &(&d.u * &ComplexMatrix::from_real_diag(&d.values)) * &d.v.adjoint();
        assert!((&rebuilt - &m).frobenius_norm() < 1e-13);
    }
}
