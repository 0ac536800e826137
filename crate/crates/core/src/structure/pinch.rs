use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, ComplexMatrix};

/// Idempotence and Hermitian tolerance for projection inputs.
pub const PROJECTION_TOL: f64 = 1e-9;
/// Eigenvalues within this distance of 0 or 1 are snapped.
pub const SNAP_TOL: f64 = 1e-9;
/// Allowed mismatch when pairing the spectra of the two diagonal blocks.
pub const PAIRING_TOL: f64 = 1e-8;

/// `P_11 ⊕ … ⊕ P_rr = Σ_ℓ w_ℓ Q_ℓ` with block-diagonal rank-`k` projections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinchDecomposition {
    pub rank: usize,
    pub block_sizes: Vec<usize>,
    pub weights: Vec<f64>,
    pub projections: Vec<ComplexMatrix>,
    /// The pinched matrix `P_11 ⊕ … ⊕ P_rr`.
    pub source: ComplexMatrix,
}

impl PinchDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.source.rows();
        self.weights
            .iter()
            .zip(&self.projections)
            .fold(ComplexMatrix::zeros(n, n), |acc, (w, q)| &acc + &q.scale_real(*w))
    }

    /// `‖Σ w_ℓ Q_ℓ − source‖_F`.
    pub fn reconstruction_residual(&self) -> f64 {
        (&self.reconstruct() - &self.source).frobenius_norm()
    }

    /// Largest `‖Q² − Q‖_F`, `‖Q − Q*‖_F` or `|tr Q − k|` over the terms.
    pub fn projection_residual(&self) -> f64 {
        self.projections
            .iter()
            .map(|q| {
                let idem = (&(q * q) - q).frobenius_norm();
                let herm = (q - &q.adjoint()).frobenius_norm();
                let tr = (q.trace().re - self.rank as f64).abs();
                idem.max(herm).max(tr)
            })
            .fold(0.0, f64::max)
    }
}

/// The pinched matrix `P_11 ⊕ … ⊕ P_rr`.
pub fn pinch(p: &ComplexMatrix, sizes: &[usize]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(p.rows(), p.cols());
    let mut at = 0;
    for &s in sizes {
        out.set_block(at, at, &p.block(at, at, s, s));
        at += s;
    }
    out
}

fn check_projection(p: &ComplexMatrix) -> Result<usize> {
    let n = p.ensure_square()?;
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let herm = (p - &p.adjoint()).frobenius_norm();
    if herm > PROJECTION_TOL {
        return Err(Error::NotProjection(format!("||P - P*||_F = {herm:.3e}")));
    }
    let idem = (&(p * p) - p).frobenius_norm();
    if idem > PROJECTION_TOL {
        return Err(Error::NotProjection(format!("||P^2 - P||_F = {idem:.3e}")));
    }
    let tr = p.trace().re;
    let k = tr.round();
    if (tr - k).abs() > PROJECTION_TOL * n.max(1) as f64 {
        return Err(Error::NotProjection(format!("trace {tr} is not an integer")));
    }
    Ok(k as usize)
}

fn snap(x: f64) -> f64 {
    if x.abs() <= SNAP_TOL {
        0.0
    } else if (x - 1.0).abs() <= SNAP_TOL {
        1.0
    } else {
        x
    }
}

/// Makes the left-to-right sum of `w` exactly `1.0` by nudging one weight,
/// largest first. Rounding of later partial sums can make a single weight
/// miss `1.0`, so each candidate gets a bounded ulp search. The last
/// resort sets the last weight to `1 − prefix`, whose sum is exact.
fn normalize_exact(w: &mut [f64]) {
    let total = |w: &[f64]| w.iter().sum::<f64>();
    let s = total(w);
    if s == 1.0 {
        return;
    }
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| w[b].total_cmp(&w[a]));
    for &i in &order {
        let orig = w[i];
        w[i] = orig + (1.0 - s);
        for _ in 0..128 {
            let t = total(w);
            if t == 1.0 {
                return;
            }
            w[i] = if t < 1.0 { w[i].next_up() } else { w[i].next_down() };
        }
        w[i] = orig;
    }
    let last = w.len() - 1;
    w[last] = (1.0 - total(&w[..last])).max(0.0);
}

/// Convex decomposition of the pinching of an orthogonal projection `P`
/// into block-diagonal projections of the same rank.
///
/// With two blocks, `P_11 = V_1 diag(d) V_1*` and `P_22 = V_2 diag(e) V_2*`
/// where the spectra pair as `e_i = 1 − d_{k+1−i}`; the terms are
/// `Q_ℓ = V T_ℓ V*`, `T_ℓ = (I_ℓ ⊕ 0) ⊕ (I_{k−ℓ} ⊕ 0)`, with weights
/// `d_ℓ − d_{ℓ+1}` for `p ≤ ℓ ≤ q`, where `p ≥ max(0, k−n_2)` is the
/// last index with `d_p = 1` and `q ≤ min(k, n_1)` the last with `d_q > 0`.
/// More blocks are handled by splitting off the last block and recursing on
/// the leading part.
pub fn pinch_decompose(p: &ComplexMatrix, sizes: &[usize]) -> Result<PinchDecomposition> {
    let k = check_projection(p)?;
    let n = p.rows();
    if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
        return Err(Error::BadBlockSpec(format!(
            "block sizes {sizes:?} must be positive and sum to {n}"
        )));
    }
    let (mut weights, projections) = decompose(p, sizes, k)?;
    normalize_exact(&mut weights);
    Ok(PinchDecomposition {
        rank: k,
        block_sizes: sizes.to_vec(),
        weights,
        projections,
        source: pinch(p, sizes),
    })
}

fn decompose(p: &ComplexMatrix, sizes: &[usize], k: usize) -> Result<(Vec<f64>, Vec<ComplexMatrix>)> {
    if sizes.len() == 1 {
        return Ok((vec![1.0], vec![p.clone()]));
    }
    let n = p.rows();
    let n2 = sizes[sizes.len() - 1];
    let n1 = n - n2;
    let (w2, q2) = two_block(p, n1, n2, k)?;
    if sizes.len() == 2 {
        return Ok((w2, q2));
    }
    let lead = &sizes[..sizes.len() - 1];
    let mut weights = Vec::new();
    let mut projections = Vec::new();
    for (w, q) in w2.into_iter().zip(q2) {
        let upper = q.block(0, 0, n1, n1);
        let lower = q.block(n1, n1, n2, n2);
        let rank = upper.trace().re.round() as usize;
        let (ws, qs) = decompose(&upper, lead, rank)?;
        for (wi, qi) in ws.into_iter().zip(qs) {
            weights.push(w * wi);
            projections.push(ComplexMatrix::direct_sum(&[&qi, &lower]));
        }
    }
    Ok((weights, projections))
}

fn two_block(p: &ComplexMatrix, n1: usize, n2: usize, k: usize) -> Result<(Vec<f64>, Vec<ComplexMatrix>)> {
    let e1 = herm_eig(&p.block(0, 0, n1, n1))?;
    let e2 = herm_eig(&p.block(n1, n1, n2, n2))?;
    let d: Vec<f64> = e1.values.iter().map(|&x| snap(x)).collect();
    // d_i for 1-based i, with d_i = 1 below the range and 0 above it
    let d_at = |i: isize| -> f64 {
        if i <= 0 {
            1.0
        } else if i as usize > n1 {
            0.0
        } else {
            d[i as usize - 1]
        }
    };
    let mismatch = e2
        .values
        .iter()
        .enumerate()
        .map(|(i, &e)| (snap(e) - (1.0 - d_at(k as isize - i as isize))).abs())
        .fold(0.0, f64::max);
    if mismatch > PAIRING_TOL {
        return Err(Error::SpectrumMismatch { mismatch });
    }

    // tightest range with d_ℓ = 1 for ℓ ≤ p and d_ℓ = 0 for ℓ > q
    let ones = d.iter().filter(|&&x| x == 1.0).count();
    let positive = d.iter().filter(|&&x| x > 0.0).count();
    let p_lo = k.saturating_sub(n2).max(ones).min(k);
    let q_hi = k.min(n1).min(positive).max(p_lo);
    let v = ComplexMatrix::direct_sum(&[&e1.vectors, &e2.vectors]);
    let vh = v.adjoint();
    let mut weights = Vec::with_capacity(q_hi - p_lo + 1);
    let mut projections = Vec::with_capacity(q_hi - p_lo + 1);
    for l in p_lo..=q_hi {
        let hi = if l <= p_lo { 1.0 } else { d_at(l as isize) };
        let lo = if l + 1 > q_hi { 0.0 } else { d_at(l as isize + 1) };
        let mut t = vec![0.0; n1 + n2];
        t[..l].fill(1.0);
        t[n1..n1 + k - l].fill(1.0);
        weights.push(hi - lo);
        projections.push(&(&v * &ComplexMatrix::from_real_diag(&t)) * &vh);
    }
    Ok((weights, projections))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;
    use num_complex::Complex64;

    fn projection(n: usize, k: usize, seed: u64) -> ComplexMatrix {
        let u = random_unitary(n, seed);
        let idx: Vec<usize> = (0..k).collect();
        let b = u.select_columns(&idx);
        &b * &b.adjoint()
    }

    #[test]
    fn already_pinched_gives_single_term() {
        let p = ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]);
        let dec = pinch_decompose(&p, &[2, 2]).unwrap();
        assert_eq!(dec.weights, vec![1.0]);
        assert!(dec.reconstruction_residual() < 1e-15);
    }

    #[test]
    fn balanced_projection_splits_evenly() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut b = ComplexMatrix::zeros(4, 2);
        b[(0, 0)] = Complex64::new(s, 0.0);
        b[(2, 0)] = Complex64::new(s, 0.0);
        b[(1, 1)] = Complex64::new(s, 0.0);
        b[(3, 1)] = Complex64::new(s, 0.0);
        let p = &b * &b.adjoint();
        let dec = pinch_decompose(&p, &[2, 2]).unwrap();
        assert_eq!(dec.rank, 2);
        assert_eq!(dec.weights.len(), 3);
        for (w, e) in dec.weights.iter().zip([0.5, 0.0, 0.5]) {
            assert!((w - e).abs() < 1e-12, "{:?}", dec.weights);
        }
        assert!((&dec.reconstruct() - &ComplexMatrix::identity(4).scale_real(0.5)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn random_projections_two_and_three_blocks() {
        for (seed, n, k, sizes) in [
            (1u64, 5usize, 2usize, vec![2usize, 3]),
            (2, 6, 3, vec![1, 5]),
            (3, 7, 4, vec![2, 2, 3]),
            (4, 8, 3, vec![3, 1, 2, 2]),
        ] {
            let p = projection(n, k, seed);
            let dec = pinch_decompose(&p, &sizes).unwrap();
            assert!(dec.reconstruction_residual() < 1e-10);
            assert!(dec.projection_residual() < 1e-10);
            assert_eq!(dec.weights.iter().sum::<f64>(), 1.0);
            assert!(dec.weights.iter().all(|&w| w >= 0.0));
            for q in &dec.projections {
                assert!(q.off_block_mass(&sizes) < 1e-10);
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        let p = ComplexMatrix::from_real_diag(&[0.5, 1.0]);
        assert!(matches!(pinch_decompose(&p, &[1, 1]), Err(Error::NotProjection(_))));
        let p = ComplexMatrix::identity(3);
        assert!(matches!(pinch_decompose(&p, &[1, 1]), Err(Error::BadBlockSpec(_))));
    }
}
