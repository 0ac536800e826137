#![allow(dead_code)]

use jointrange::crange::WeightSpec;
use jointrange::linalg::{ginibre, random_hermitian, random_unitary_from, seeded_rng, ComplexMatrix};
use jointrange::MatrixTuple;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    seeded_rng(seed)
}

pub fn hermitian_tuple(n: usize, m: usize, rng: &mut impl Rng) -> MatrixTuple {
    MatrixTuple::new((0..m).map(|_| random_hermitian(n, rng)).collect()).unwrap()
}

pub fn diagonal_tuple(n: usize, m: usize, rng: &mut impl Rng) -> MatrixTuple {
    let diags: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    MatrixTuple::from_real_diagonals(&diags).unwrap()
}

/// `U diag(z_j) U*` with complex eigenvalues and one shared `U`.
pub fn commuting_family(n: usize, m: usize, rng: &mut impl Rng) -> Vec<ComplexMatrix> {
    let u = random_unitary_from(n, rng);
    (0..m)
        .map(|_| {
            let z: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            ComplexMatrix::from_diag(&z).conjugate_by(&u.adjoint())
        })
        .collect()
}

/// Adds Ginibre noise of relative size `eps` to every member.
pub fn perturb(family: &[ComplexMatrix], eps: f64, rng: &mut impl Rng) -> Vec<ComplexMatrix> {
    family
        .iter()
        .map(|a| {
            let n = a.rows();
            let g = ginibre(n, n, rng);
            let s = eps * a.frobenius_norm().max(1.0) / g.frobenius_norm();
            a + &g.scale_real(s)
        })
        .collect()
}

/// Hermitian `U (diag(d_j) ⊕ eps·Q_j) U*` with `ell` common eigenvectors.
pub fn block_tuple(n: usize, ell: usize, m: usize, eps: f64, rng: &mut impl Rng) -> MatrixTuple {
    let u = random_unitary_from(n, rng);
    let mats = (0..m)
        .map(|_| {
            let d: Vec<f64> = (0..ell).map(|_| rng.random_range(-1.0..1.0)).collect();
            let q = random_hermitian(n - ell, rng).scale_real(eps);
            let a = ComplexMatrix::direct_sum(&[&ComplexMatrix::from_real_diag(&d), &q]);
            a.conjugate_by(&u.adjoint())
        })
        .collect();
    MatrixTuple::new(mats).unwrap()
}

/// Block-diagonal Hermitian tuple with the given block sizes.
pub fn block_diagonal_tuple(sizes: &[usize], m: usize, rng: &mut impl Rng) -> MatrixTuple {
    let mats = (0..m)
        .map(|_| {
            let blocks: Vec<ComplexMatrix> = sizes.iter().map(|&s| random_hermitian(s, rng)).collect();
            let refs: Vec<&ComplexMatrix> = blocks.iter().collect();
            ComplexMatrix::direct_sum(&refs)
        })
        .collect();
    MatrixTuple::new(mats).unwrap()
}

/// Random positive composition of `n`.
pub fn random_sizes(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.random_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// Rank-`k` orthogonal projection onto a random subspace.
pub fn random_projection(n: usize, k: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let u = random_unitary_from(n, rng);
    let idx: Vec<usize> = (0..k).collect();
    let b = u.select_columns(&idx);
    &b * &b.adjoint()
}

/// Random non-scalar descending weight whose breakpoints all sit in
/// `1..=k` or `n-k..n`, so that its breakpoint index is at most `k`.
pub fn weight_with_gamma_at_most(n: usize, k: usize, rng: &mut impl Rng) -> WeightSpec {
    let allowed: Vec<usize> = (1..n).filter(|&j| j <= k || j >= n - k).collect();
    let forced = allowed[rng.random_range(0..allowed.len())];
    let mut c = vec![rng.random_range(-1.0..1.0)];
    for j in 1..n {
        let drop = if allowed.contains(&j) && (j == forced || rng.random_bool(0.5)) {
            rng.random_range(0.05..1.0)
        } else {
            0.0
        };
        c.push(c[j - 1] - drop);
    }
    let w = WeightSpec::from_vector(c).unwrap();
    assert!(w.gamma() <= k);
    w
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
