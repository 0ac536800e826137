//! Matrix tuples, their Hermitian expansion, span bases and affine maps.

use num_complex::Complex64;

use crate::crange::WeightSpec;
use crate::error::{Error, Result};
use crate::linalg::{svd, ComplexMatrix, TAU_HERM};

/// Relative tolerance for rank and proportionality decisions.
pub const FLAT_TOL: f64 = 1e-9;

/// Largest condition estimate accepted for an affine map.
pub const MAX_CONDITION: f64 = 1e12;

/// An ordered family `(A_1, …, A_m)` of `n×n` complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    /// Validates that all members are square, finite and of equal size.
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or(Error::EmptyFamily)?;
        let n = first.ensure_square()?;
        Self::with_dim(n, matrices)
    }

    /// Like [`MatrixTuple::new`] but allows an empty family of dimension `n`.
    pub fn with_dim(n: usize, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        for m in &matrices {
            let d = m.ensure_square()?;
            if d != n {
                return Err(Error::DimensionMismatch { expected: n, found: d });
            }
            if !m.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(Self { n, matrices })
    }

    pub fn from_real_diagonals(diagonals: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            diagonals
                .iter()
                .map(|d| ComplexMatrix::from_real_diag(d))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn get(&self, j: usize) -> &ComplexMatrix {
        &self.matrices[j]
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix> {
        self.matrices
    }

    /// True when every member is Hermitian within the relative tolerance.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.matrices.iter().all(|m| m.is_hermitian(tol))
    }

    /// Index of the first member failing the Hermitian test.
    pub fn first_non_hermitian(&self) -> Option<(usize, f64)> {
        self.matrices.iter().enumerate().find_map(|(j, m)| {
            let norm = m.frobenius_norm();
            let skew = m.skew_residual();
            (skew > TAU_HERM * norm).then(|| (j, if norm > 0.0 { skew / norm } else { skew }))
        })
    }

    /// Errors with `NotHermitian` unless every member is Hermitian.
    pub fn ensure_hermitian(&self) -> Result<()> {
        match self.first_non_hermitian() {
            Some((_, residual)) => Err(Error::NotHermitian {
                residual,
                tol: TAU_HERM,
            }),
            None => Ok(()),
        }
    }

    /// `(H_1, …, H_{2m})` with `A_j = H_{2j−1} + i·H_{2j}`. Zero parts are kept
    /// so that indices stay aligned with the members.
    pub fn hermitian_expand(&self) -> Vec<ComplexMatrix> {
        self.matrices
            .iter()
            .flat_map(|a| [a.hermitian_part(), a.skew_part()])
            .collect()
    }

    /// Tuple of the `2m` Hermitian parts.
    pub fn hermitian_tuple(&self) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: self.hermitian_expand(),
        }
    }

    /// The real-coordinate view used by all geometry: the tuple itself when it
    /// is Hermitian, its `2m` Hermitian parts otherwise.
    pub fn geometric_view(&self) -> MatrixTuple {
        if self.is_hermitian(TAU_HERM) {
            MatrixTuple {
                n: self.n,
                matrices: self.matrices.iter().map(ComplexMatrix::hermitian_part).collect(),
            }
        } else {
            self.hermitian_tuple()
        }
    }

    /// `max_j ‖A_j‖_F`.
    pub fn max_norm(&self) -> f64 {
        self.matrices
            .iter()
            .map(ComplexMatrix::frobenius_norm)
            .fold(0.0, f64::max)
    }

    /// `Σ_j v_j A_j` for a real vector `v`.
    pub fn combination(&self, v: &[f64]) -> ComplexMatrix {
        if self.matrices.is_empty() {
            return ComplexMatrix::zeros(self.n, self.n);
        }
        ComplexMatrix::real_combination(v, &self.matrices)
    }

    /// `(U* A_j U)_j`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: self.matrices.iter().map(|a| a.conjugate_by(u)).collect(),
        }
    }

    /// Traces `(tr A_j)_j`.
    pub fn traces(&self) -> Vec<Complex64> {
        self.matrices.iter().map(ComplexMatrix::trace).collect()
    }

    /// Sub-tuple of the selected members.
    pub fn select(&self, idx: &[usize]) -> MatrixTuple {
        MatrixTuple {
            n: self.n,
            matrices: idx.iter().map(|&j| self.matrices[j].clone()).collect(),
        }
    }
}

/// `(A_j + A_j*)/2` and `(A_j − A_j*)/(2i)` for every member, in order.
pub fn hermitian_expand(a: &MatrixTuple) -> Vec<ComplexMatrix> {
    a.hermitian_expand()
}

/// Maximal linearly independent sub-collection of `family`, in input order.
///
/// Gram-Schmidt on the vectorized matrices under the Frobenius inner
/// product; a member joins iff its residual exceeds `tol·‖member‖_F`.
pub fn span_basis(family: &[ComplexMatrix], tol: f64) -> Result<MatrixTuple> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let n = first.ensure_square()?;
    let mut ortho: Vec<ComplexMatrix> = Vec::new();
    let mut chosen = Vec::new();
    for m in family {
        let d = m.ensure_square()?;
        if d != n {
            return Err(Error::DimensionMismatch { expected: n, found: d });
        }
        let norm = m.frobenius_norm();
        let mut r = m.clone();
        for _ in 0..2 {
            for q in &ortho {
                let proj = q.inner(&r);
                r = &r - &q.scale(proj);
            }
        }
        let res = r.frobenius_norm();
        if norm > 0.0 && res > tol * norm {
            ortho.push(r.scale_real(1.0 / res));
            chosen.push(m.clone());
        }
    }
    MatrixTuple::with_dim(n, chosen)
}

/// Invertible real affine map `a ↦ R·a + f` on `ℝ^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    r: Vec<Vec<f64>>,
    f: Vec<f64>,
}

impl AffineMap {
    pub fn new(r: Vec<Vec<f64>>, f: Vec<f64>) -> Result<Self> {
        let m = f.len();
        if r.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: r.len() });
        }
        if let Some(row) = r.iter().find(|row| row.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: row.len() });
        }
        let condition = if m == 0 {
            1.0
        } else {
            let s = svd(&ComplexMatrix::from_real_rows(&r)?)?;
            if s.smallest() > 0.0 {
                s.largest() / s.smallest()
            } else {
                f64::INFINITY
            }
        };
        if condition.is_nan() || condition >= MAX_CONDITION {
            return Err(Error::SingularMap { condition });
        }
        Ok(Self { r, f })
    }

    pub fn identity(m: usize) -> Self {
        let r = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { r, f: vec![0.0; m] }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn linear(&self) -> &[Vec<f64>] {
        &self.r
    }

    pub fn offset(&self) -> &[f64] {
        &self.f
    }

    pub fn apply_point(&self, a: &[f64]) -> Result<Vec<f64>> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        Ok(self
            .r
            .iter()
            .zip(&self.f)
            .map(|(row, fi)| row.iter().zip(a).map(|(x, y)| x * y).sum::<f64>() + fi)
            .collect())
    }

    /// `B_i = Σ_j R[i,j]·A_j + f_i·I`.
    pub fn apply_tuple(&self, a: &MatrixTuple) -> Result<MatrixTuple> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        let id = ComplexMatrix::identity(a.dim());
        let out = self
            .r
            .iter()
            .zip(&self.f)
            .map(|(row, &fi)| &a.combination(row) + &id.scale_real(fi))
            .collect();
        MatrixTuple::with_dim(a.dim(), out)
    }
}

/// Values an [`AffineMap`] acts on: point lists and matrix tuples.
pub trait AffineImage: Sized {
    fn apply_affine(&self, map: &AffineMap) -> Result<Self>;
}

impl AffineImage for MatrixTuple {
    fn apply_affine(&self, map: &AffineMap) -> Result<Self> {
        map.apply_tuple(self)
    }
}

impl AffineImage for Vec<Vec<f64>> {
    fn apply_affine(&self, map: &AffineMap) -> Result<Self> {
        self.iter().map(|p| map.apply_point(p)).collect()
    }
}

pub fn apply_affine<T: AffineImage>(value: &T, map: &AffineMap) -> Result<T> {
    value.apply_affine(map)
}

/// Low-dimensional shapes of `W_C(A)` recognised without any sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum FlatClass {
    Singleton,
    /// All Hermitian parts lie in `span{I, H}`; `H` is the traceless witness.
    Segment(ComplexMatrix),
    Higher,
}

/// Singleton / segment / higher-dimensional classification of `W_C(A)`.
pub fn classify_flat(a: &MatrixTuple, weight: &WeightSpec) -> Result<FlatClass> {
    classify_flat_with_tol(a, weight, FLAT_TOL)
}

pub fn classify_flat_with_tol(a: &MatrixTuple, weight: &WeightSpec, tol: f64) -> Result<FlatClass> {
    if weight.is_scalar() {
        return Err(Error::ScalarWeight);
    }
    if weight.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: weight.dim(),
        });
    }
    let scale = a.max_norm();
    if a.matrices().iter().all(|m| m.distance_from_scalar() <= tol * scale) {
        return Ok(FlatClass::Singleton);
    }

    let n = a.dim() as f64;
    let id = ComplexMatrix::identity(a.dim());
    let traceless: Vec<ComplexMatrix> = a
        .hermitian_expand()
        .into_iter()
        .map(|h| {
            let mu = h.trace() / n;
            &h - &id.scale(mu)
        })
        .collect();
    let Some(witness) = traceless.iter().find(|t| t.frobenius_norm() > tol * scale).cloned()
    else {
        return Ok(FlatClass::Singleton);
    };
    let wn2 = witness.inner(&witness).re;
    let proportional = traceless.iter().all(|t| {
        let coeff = witness.inner(t) / wn2;
        (t - &witness.scale(coeff)).frobenius_norm() <= tol * scale
    });
    Ok(if proportional {
        FlatClass::Segment(witness)
    } else {
        FlatClass::Higher
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::{random_hermitian, random_unitary, seeded_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expansion_of_triangle_example() {
        let a = fixtures::nonnormal_triangle();
        let h = a.hermitian_expand();
        assert_eq!(h.len(), 2);
        let s = 3f64.sqrt() / 2.0;
        let mut h1 = ComplexMatrix::from_real_diag(&[1.0, -0.5, -0.5, 0.0, 0.0]);
        h1[(3, 4)] = c(0.05, 0.0);
        h1[(4, 3)] = c(0.05, 0.0);
        let mut h2 = ComplexMatrix::from_real_diag(&[0.0, s, -s, 0.0, 0.0]);
        h2[(3, 4)] = c(0.0, -0.05);
        h2[(4, 3)] = c(0.0, 0.05);
        assert!((&h[0] - &h1).frobenius_norm() < 1e-15);
        assert!((&h[1] - &h2).frobenius_norm() < 1e-15);
    }

    #[test]
    fn expansion_reconstructs_exactly() {
        let mut rng = seeded_rng(3);
        let a = crate::linalg::ginibre(4, 4, &mut rng);
        let t = MatrixTuple::new(vec![a.clone()]).unwrap();
        let h = t.hermitian_expand();
        let back = &h[0] + &h[1].scale(c(0.0, 1.0));
        assert!((&back - &a).frobenius_norm() <= 1e-15 * a.frobenius_norm());
    }

    #[test]
    fn hermitian_and_skew_inputs_expand_trivially() {
        let mut rng = seeded_rng(4);
        let x = random_hermitian(3, &mut rng);
        let t = MatrixTuple::new(vec![x.clone()]).unwrap();
        let h = t.hermitian_expand();
        assert_eq!(h[0], x);
        assert_eq!(h[1].frobenius_norm(), 0.0);
        let t = MatrixTuple::new(vec![x.scale(c(0.0, 1.0))]).unwrap();
        let h = t.hermitian_expand();
        assert!(h[0].frobenius_norm() < 1e-16);
        assert!((&h[1] - &x).frobenius_norm() < 1e-15);
    }

    #[test]
    fn span_basis_examples() {
        let i2 = ComplexMatrix::identity(2);
        let f = vec![
            i2.clone(),
            i2.scale_real(2.0),
            &i2 + &ComplexMatrix::from_real_diag(&[1.0, 0.0]),
        ];
        let b = span_basis(&f, FLAT_TOL).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.get(0), &f[0]);
        assert_eq!(b.get(1), &f[2]);

        let three = fixtures::two_conical_triple();
        assert_eq!(span_basis(three.matrices(), FLAT_TOL).unwrap().len(), 3);

        let x = ComplexMatrix::from_real_diag(&[1.0, 5.0]);
        let b = span_basis(std::slice::from_ref(&x), FLAT_TOL).unwrap();
        assert_eq!(b.matrices(), &[x]);

        assert_eq!(span_basis(&[], FLAT_TOL).unwrap_err(), Error::EmptyFamily);
    }

    #[test]
    fn affine_identity_and_rotation() {
        let id = AffineMap::identity(2);
        let pts = vec![vec![1.0, 1.0], vec![-1.0, 0.5]];
        assert_eq!(apply_affine(&pts, &id).unwrap(), pts);
        let t = fixtures::unitary_square_pair();
        assert_eq!(apply_affine(&t, &id).unwrap(), t);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rot = AffineMap::new(vec![vec![h, -h], vec![h, h]], vec![0.0, 0.0]).unwrap();
        let p = rot.apply_point(&[1.0, 1.0]).unwrap();
        assert!(p[0].abs() < 1e-15);
        assert!((p[1] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn singular_affine_map_is_rejected() {
        let err = AffineMap::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![0.0, 0.0]);
        assert!(matches!(err, Err(Error::SingularMap { .. })));
    }

    #[test]
    fn flat_classification() {
        let w = WeightSpec::k_range(1, 3).unwrap();
        let id = ComplexMatrix::identity(3);
        let t = MatrixTuple::new(vec![id.scale_real(2.0), id.scale_real(3.0)]).unwrap();
        assert_eq!(classify_flat(&t, &w).unwrap(), FlatClass::Singleton);

        let mut rng = seeded_rng(17);
        let h = random_hermitian(3, &mut rng);
        let members = vec![
            &id.scale(c(1.0, 2.0)) + &h.scale(c(0.5, -1.0)),
            &id.scale(c(-3.0, 0.0)) + &h.scale(c(0.0, 2.0)),
            id.scale(c(0.0, 1.0)),
        ];
        let t = MatrixTuple::new(members).unwrap();
        assert!(matches!(classify_flat(&t, &w).unwrap(), FlatClass::Segment(_)));

        let w5 = WeightSpec::k_range(1, 5).unwrap();
        assert_eq!(
            classify_flat(&fixtures::nonnormal_triangle(), &w5).unwrap(),
            FlatClass::Higher
        );
    }

    #[test]
    fn classification_is_unitarily_invariant() {
        let w = WeightSpec::k_range(2, 5).unwrap();
        let t = fixtures::nonnormal_triangle();
        let u = random_unitary(5, 77);
        assert_eq!(classify_flat(&t.conjugate_by(&u), &w).unwrap(), FlatClass::Higher);

        let mut rng = seeded_rng(2);
        let h = random_hermitian(5, &mut rng);
        let id = ComplexMatrix::identity(5);
        let seg = MatrixTuple::new(vec![&id + &h.scale_real(2.0), h.scale(c(0.0, 1.0))]).unwrap();
        assert!(matches!(
            classify_flat(&seg.conjugate_by(&u), &w).unwrap(),
            FlatClass::Segment(_)
        ));
    }
}
