//! Small matrix families whose joint ranges are known in closed form.
//! They drive the demos, the runnable examples and most regression tests.

use num_complex::Complex64;

use crate::family::MatrixTuple;
use crate::linalg::ComplexMatrix;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The cube root of unity `e^{2πi/3} = −1/2 + i·√3/2`.
pub fn cube_root_of_unity() -> Complex64 {
    c(-0.5, 3f64.sqrt() / 2.0)
}

/// `diag(1, w, w²) ⊕ [[0, 0.1], [0, 0]]` with `w = e^{2πi/3}`.
///
/// Its numerical range is the triangle `conv{1, w, w²}` although the matrix
/// is not normal: the nilpotent block only contributes a disk of radius 0.05
/// around the origin.
pub fn nonnormal_triangle_matrix() -> ComplexMatrix {
    let w = cube_root_of_unity();
    let mut a = ComplexMatrix::from_diag(&[c(1.0, 0.0), w, w.conj(), c(0.0, 0.0), c(0.0, 0.0)]);
    a[(3, 4)] = c(0.1, 0.0);
    a
}

/// One-member tuple holding [`nonnormal_triangle_matrix`].
pub fn nonnormal_triangle() -> MatrixTuple {
    MatrixTuple::new(vec![nonnormal_triangle_matrix()]).expect("fixture is square")
}

/// `diag(1+i, 1−i, −1+i, −1−i) ⊕ [[1, 1], [−1, −1]]`.
pub fn unitary_square_matrix() -> ComplexMatrix {
    let mut a = ComplexMatrix::from_diag(&[
        c(1.0, 1.0),
        c(1.0, -1.0),
        c(-1.0, 1.0),
        c(-1.0, -1.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
    ]);
    a[(4, 4)] = c(1.0, 0.0);
    a[(4, 5)] = c(1.0, 0.0);
    a[(5, 4)] = c(-1.0, 0.0);
    a[(5, 5)] = c(-1.0, 0.0);
    a
}

/// Hermitian and skew parts of [`unitary_square_matrix`]: two Hermitian
/// unitaries that do not commute but whose joint range is the square
/// `conv{(±1, ±1)}`.
pub fn unitary_square_pair() -> MatrixTuple {
    let mut a1 = ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0, -1.0, 1.0, -1.0]);
    let mut a2 = ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0, -1.0, 0.0, 0.0]);
    a1[(4, 4)] = c(1.0, 0.0);
    a2[(4, 5)] = c(0.0, -1.0);
    a2[(5, 4)] = c(0.0, 1.0);
    MatrixTuple::new(vec![a1, a2]).expect("fixture is square")
}

/// Three 6×6 Hermitian matrices whose pairwise ranges are all the square
/// `conv{(±1, ±1)}` while the joint range of the triple is not polyhedral:
/// only `e_1` and `e_4` are common eigenvectors, giving the conical points
/// `(1, 1, 1)` and `(−1, −1, 1)`.
pub fn two_conical_triple() -> MatrixTuple {
    let a1 = ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0, -1.0, 1.0, -1.0]);
    let mut a2 = ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0, -1.0, 0.0, 0.0]);
    a2[(4, 5)] = c(0.0, 1.0);
    a2[(5, 4)] = c(0.0, -1.0);
    let mut a3 = ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, 1.0, -1.0, -1.0]);
    a3[(1, 2)] = c(0.0, 1.0);
    a3[(2, 1)] = c(0.0, -1.0);
    MatrixTuple::new(vec![a1, a2, a3]).expect("fixture is square")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_pair_is_hermitian_expansion_of_the_complex_matrix() {
        let expanded = MatrixTuple::new(vec![unitary_square_matrix()])
            .unwrap()
            .hermitian_expand();
        let pair = unitary_square_pair();
        assert!((&expanded[0] - pair.get(0)).frobenius_norm() < 1e-15);
        assert!((&expanded[1] - pair.get(1)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn fixtures_are_hermitian_where_expected() {
        assert!(unitary_square_pair().is_hermitian(0.0));
        assert!(two_conical_triple().is_hermitian(0.0));
        assert!(!nonnormal_triangle().is_hermitian(1e-3));
    }
}
