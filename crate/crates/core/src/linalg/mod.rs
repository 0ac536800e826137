//! Dense complex linear algebra used throughout the crate.
//!
//! Everything here is pure and allocation-based; no routine mutates its
//! inputs, so values can be shared freely across threads.

mod eigen;
mod matrix;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub use eigen::{herm_eig, svd, HermitianEig, Svd, MAX_SWEEPS, TAU_EIG, TAU_HERM};
pub use matrix::ComplexMatrix;

use crate::error::{Error, Result};

/// Random source used by every seeded routine: ChaCha8 keyed by a 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `‖XY − YX‖_F`.
pub fn commutator_norm(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    let n = x.ensure_square()?;
    let m = y.ensure_square()?;
    if n != m {
        return Err(Error::DimensionMismatch { expected: n, found: m });
    }
    Ok((&(x * y) - &(y * x)).frobenius_norm())
}

/// Normality test `‖AA* − A*A‖_F ≤ tol·‖A‖_F²`.
pub fn is_normal(a: &ComplexMatrix, tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    let adj = a.adjoint();
    let r = (&(a * &adj) - &(&adj * a)).frobenius_norm();
    let s = a.frobenius_norm();
    r <= tol * s * s
}

/// Complex Gaussian matrix with independent `N(0, 1/2) + i N(0, 1/2)` entries.
pub fn ginibre(rows: usize, cols: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(h * re, h * im)
    })
}

/// Haar-distributed unitary from the QR factor of a Ginibre matrix.
pub fn random_unitary_from(n: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    orthonormalize_columns(&ginibre(n, n, rng))
}

/// Deterministic Haar-random unitary for `seed`.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_unitary_from(n, &mut seeded_rng(seed))
}

/// Modified Gram-Schmidt with one reorthogonalization pass. The `R` factor
/// has a positive diagonal, so the result is Haar-distributed for Ginibre
/// input. Columns must be linearly independent.
pub fn orthonormalize_columns(a: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows();
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut x = a.column(j);
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
                for (xi, qi) in x.iter_mut().zip(q) {
                    *xi -= proj * qi;
                }
            }
        }
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for xi in &mut x {
            *xi /= norm;
        }
        cols.push(x);
    }
    ComplexMatrix::from_columns(rows, &cols)
}

/// Random Hermitian matrix `(G + G*)/2`.
pub fn random_hermitian(n: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    ginibre(n, n, rng).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unitary_is_unitary_and_deterministic() {
        for n in [1, 2, 5, 16] {
            let u = random_unitary(n, 42);
            assert!(u.unitarity_residual() <= 1e-12, "n={n}");
            assert_eq!(u, random_unitary(n, 42));
        }
        let s = random_unitary(1, 9);
        assert!((s[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert_ne!(random_unitary(3, 1), random_unitary(3, 2));
    }

    #[test]
    fn commutator_basics() {
        let mut rng = seeded_rng(5);
        let x = random_hermitian(4, &mut rng);
        let y = random_hermitian(4, &mut rng);
        assert_eq!(commutator_norm(&x, &x).unwrap(), 0.0);
        let a = commutator_norm(&x, &y).unwrap();
        let b = commutator_norm(&y, &x).unwrap();
        assert_eq!(a, b);
        assert!(a > 0.1);
        let d1 = ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
        let d2 = ComplexMatrix::from_real_diag(&[0.0, -1.0, 7.0]);
        assert_eq!(commutator_norm(&d1, &d2).unwrap(), 0.0);
        assert!(matches!(
            commutator_norm(&d1, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn normality() {
        assert!(is_normal(&random_unitary(5, 8), 1e-12));
        let jordan = ComplexMatrix::from_real_rows(&[vec![0.0, 0.1], vec![0.0, 0.0]]).unwrap();
        assert!(!is_normal(&jordan, 1e-8));
    }
}
