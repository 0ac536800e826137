use serde::Serialize;

use super::support::{probe_with_eig, range_scale, Halfspace, SupportProbe};
use super::{directions::uniform_angles, WeightSpec};
use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::ComplexMatrix;

/// Minimum number of directions accepted by [`boundary2d`].
pub const MIN_BOUNDARY_DIRS: usize = 8;
/// Points closer than `HULL_TOL·scale` are merged, and hull vertices within
/// that distance of the line through their neighbours are dropped.
pub const HULL_TOL: f64 = 1e-10;

/// Outer and inner polygonal approximations of `conv W_C(X, Y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Boundary2d {
    pub thetas: Vec<f64>,
    pub probes: Vec<SupportProbe>,
    pub scale: f64,
}

impl Boundary2d {
    pub fn outer(&self) -> Vec<Halfspace> {
        self.probes.iter().map(Halfspace::from).collect()
    }

    pub fn inner(&self) -> Vec<[f64; 2]> {
        self.probes.iter().map(|p| [p.point[0], p.point[1]]).collect()
    }

    /// Vertices of the convex hull of the inner points, counter-clockwise,
    /// starting from the lexicographically smallest.
    pub fn hull(&self) -> Vec<[f64; 2]> {
        convex_hull(&self.inner(), HULL_TOL * self.scale)
    }

    /// Largest violation of any outer halfspace by any inner point.
    pub fn max_violation(&self) -> f64 {
        let outer = self.outer();
        self.inner()
            .iter()
            .flat_map(|p| outer.iter().map(move |h| h.violation(p)))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Samples the boundary of `conv W_C(X, Y)` at `θ_i = 2πi/n_dirs`.
pub fn boundary2d(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    weight: &WeightSpec,
    n_dirs: usize,
) -> Result<Boundary2d> {
    if n_dirs < MIN_BOUNDARY_DIRS {
        return Err(Error::InvalidDirection(format!(
            "boundary needs at least {MIN_BOUNDARY_DIRS} directions, got {n_dirs}"
        )));
    }
    let a = MatrixTuple::new(vec![x.clone(), y.clone()])?;
    a.ensure_hermitian()?;
    if weight.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: weight.dim(),
        });
    }
    let scale = range_scale(&a, weight);
    let thetas = uniform_angles(n_dirs);
    let probes = thetas
        .iter()
        .map(|t| Ok(probe_with_eig(&a, weight, &[t.cos(), t.sin()], scale)?.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(Boundary2d {
        thetas,
        probes,
        scale,
    })
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Andrew's monotone chain. Near-duplicate points (within `tol`) are merged
/// and points within `tol` of a hull edge are not reported as vertices.
pub fn convex_hull(points: &[[f64; 2]], tol: f64) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut unique: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for p in pts {
        if !unique.iter().rev().take_while(|q| p[0] - q[0] <= tol).any(|&q| dist(p, q) <= tol) {
            unique.push(p);
        }
    }
    if unique.len() <= 2 {
        if unique.len() == 2 && dist(unique[0], unique[1]) <= tol {
            unique.truncate(1);
        }
        return unique;
    }
    // drop b when it lies left-of-or-within-tol of the segment o→a
    let keep = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| cross(o, a, b) > tol * dist(o, b);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &unique {
        while lower.len() >= 2 && !keep(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in unique.iter().rev() {
        while upper.len() >= 2 && !keep(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && dist(lower[0], lower[1]) <= tol {
        lower.truncate(1);
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn near(a: [f64; 2], b: [f64; 2], tol: f64) -> bool {
        dist(a, b) <= tol
    }

    #[test]
    fn hull_of_square_with_interior_and_edge_points() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
            [0.5, 0.0],
            [0.5, 0.5],
            [1.0, 1.0 + 1e-14],
        ];
        let h = convex_hull(&pts, 1e-10);
        assert_eq!(h, vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull(&[[1.0, 2.0]; 5], 1e-10), vec![[1.0, 2.0]]);
        let seg = convex_hull(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]], 1e-10);
        assert_eq!(seg, vec![[0.0, 0.0], [2.0, 0.0]]);
    }

    #[test]
    fn zero_pair_collapses_to_origin() {
        let z = ComplexMatrix::zeros(3, 3);
        let w = WeightSpec::k_range(1, 3).unwrap();
        let b = boundary2d(&z, &z, &w, 16).unwrap();
        assert!(b.inner().iter().all(|p| *p == [0.0, 0.0]));
        assert_eq!(b.hull(), vec![[0.0, 0.0]]);
    }

    #[test]
    fn triangle_hull_from_nonnormal_matrix() {
        let h = fixtures::nonnormal_triangle().hermitian_tuple();
        let w = WeightSpec::k_range(1, 5).unwrap();
        let b = boundary2d(h.get(0), h.get(1), &w, 360).unwrap();
        let hull = b.hull();
        let s = 3f64.sqrt() / 2.0;
        let expect = [[-0.5, -s], [1.0, 0.0], [-0.5, s]];
        assert_eq!(hull.len(), 3, "{hull:?}");
        for (v, e) in hull.iter().zip(expect) {
            assert!(near(*v, e, 1e-6), "{v:?} vs {e:?}");
        }
        assert!(b.max_violation() <= 1e-8 * b.scale);
    }

    #[test]
    fn square_hull_from_unitary_pair() {
        let a = fixtures::unitary_square_pair();
        let w = WeightSpec::k_range(1, 6).unwrap();
        let hull = boundary2d(a.get(0), a.get(1), &w, 360).unwrap().hull();
        let expect = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];
        assert_eq!(hull.len(), 4, "{hull:?}");
        for (v, e) in hull.iter().zip(expect) {
            assert!(near(*v, e, 1e-6), "{v:?} vs {e:?}");
        }
    }

    #[test]
    fn single_hermitian_gives_eigenvalue_segment() {
        let x = ComplexMatrix::from_real_diag(&[2.0, -1.0, 0.5]);
        let z = ComplexMatrix::zeros(3, 3);
        let w = WeightSpec::k_range(1, 3).unwrap();
        let hull = boundary2d(&x, &z, &w, 12).unwrap().hull();
        assert_eq!(hull.len(), 2);
        assert!(near(hull[0], [-1.0, 0.0], 1e-12) && near(hull[1], [2.0, 0.0], 1e-12));
    }

    #[test]
    fn too_few_directions_rejected() {
        let x = ComplexMatrix::identity(2);
        let w = WeightSpec::k_range(1, 2).unwrap();
        assert!(boundary2d(&x, &x, &w, 7).is_err());
    }
}
