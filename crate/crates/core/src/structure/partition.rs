use crate::error::{Error, Result};
use crate::family::MatrixTuple;
use crate::linalg::herm_eig;

/// Relative tolerance of [`partition_support_check`].
pub const PARTITION_TOL: f64 = 1e-9;
/// Off-block mass tolerated in the declared block structure, relative.
pub const BLOCK_SPEC_TOL: f64 = 1e-9;

fn validate(a: &MatrixTuple, sizes: &[usize]) -> Result<()> {
    let n = a.dim();
    if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
        return Err(Error::BadBlockSpec(format!(
            "block sizes {sizes:?} must be positive and sum to {n}"
        )));
    }
    for (j, m) in a.matrices().iter().enumerate() {
        let mass = m.off_block_mass(sizes);
        if mass > BLOCK_SPEC_TOL * m.frobenius_norm() {
            return Err(Error::BadBlockSpec(format!(
                "member {} has off-block mass {mass:.3e}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Largest `|λ-top-k(v·A) − max_{Σk_i = k} Σ_i top-k_i(v·A restricted to block i)|`
/// over `dirs`.
pub fn partition_support_residual(
    a: &MatrixTuple,
    sizes: &[usize],
    k: usize,
    dirs: &[Vec<f64>],
) -> Result<f64> {
    validate(a, sizes)?;
    a.ensure_hermitian()?;
    let n = a.dim();
    if k > n {
        return Err(Error::InvalidK {
            k,
            n,
            reason: "k exceeds the dimension".into(),
        });
    }
    let mut worst = 0.0f64;
    for v in dirs {
        let full = a.combination(v);
        let whole = herm_eig(&full)?.top_sum(k);
        // best[t]: largest sum of t eigenvalues drawn from the blocks seen so far
        let mut best = vec![0.0];
        let mut at = 0;
        for &s in sizes {
            let vals = herm_eig(&full.block(at, at, s, s))?.values;
            at += s;
            let mut prefix = vec![0.0; s + 1];
            for i in 0..s {
                prefix[i + 1] = prefix[i] + vals[i];
            }
            let mut next = vec![f64::NEG_INFINITY; (best.len() + s).min(k + 1)];
            for (t, &b) in best.iter().enumerate() {
                for (ki, &pk) in prefix.iter().enumerate() {
                    if t + ki < next.len() {
                        next[t + ki] = next[t + ki].max(b + pk);
                    }
                }
            }
            best = next;
        }
        worst = worst.max((whole - best[k]).abs());
    }
    Ok(worst)
}

/// Checks that the `k`-range support of a block-diagonal tuple equals the
/// best split of `k` across the blocks, within `1e−9·max_j‖A_j‖_F·k`.
pub fn partition_support_check(
    a: &MatrixTuple,
    sizes: &[usize],
    k: usize,
    dirs: &[Vec<f64>],
) -> Result<bool> {
    let residual = partition_support_residual(a, sizes, k, dirs)?;
    let scale = (a.max_norm() * k as f64).max(1.0);
    Ok(residual <= PARTITION_TOL * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crange::sample_directions;
    use crate::fixtures;

    #[test]
    fn single_block_is_trivial() {
        let a = fixtures::two_conical_triple();
        assert!(partition_support_check(&a, &[6], 2, &sample_directions(3, 10, 0)).unwrap());
    }

    #[test]
    fn triangle_tuple_three_plus_two() {
        let h = fixtures::nonnormal_triangle().hermitian_tuple();
        assert!(partition_support_check(&h, &[3, 2], 2, &sample_directions(2, 64, 0)).unwrap());
    }

    #[test]
    fn wrong_blocks_are_rejected() {
        let h = fixtures::nonnormal_triangle().hermitian_tuple();
        assert!(matches!(
            partition_support_check(&h, &[4, 1], 2, &[]),
            Err(Error::BadBlockSpec(_))
        ));
        assert!(matches!(
            partition_support_check(&h, &[3, 3], 2, &[]),
            Err(Error::BadBlockSpec(_))
        ));
    }
}
