//! Deterministic direction sets on the unit sphere of `ℝ^m`.

use std::f64::consts::PI;

use rand::Rng;

use crate::linalg::seeded_rng;

/// Sign vectors are only added up to this dimension (`2^m` of them).
pub const MAX_SIGN_DIM: usize = 10;

const PRIMES: [u64; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131,
];

/// Unit directions used by every sweep.
///
/// * `m = 1`: `+1` and `−1`.
/// * `m = 2`: `(cos θ_i, sin θ_i)` with `θ_i = 2πi/n_dirs`.
/// * `m ≥ 3`: the `2m` signed axes, the normalized sign vectors (for
///   `m ≤ MAX_SIGN_DIM`), then `n_dirs` scrambled Halton points pushed onto the
///   sphere through a Box-Muller transform. The scramble is a random shift
///   drawn from `seed`.
pub fn sample_directions(m: usize, n_dirs: usize, seed: u64) -> Vec<Vec<f64>> {
    match m {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => uniform_angles(n_dirs)
            .into_iter()
            .map(|t| vec![t.cos(), t.sin()])
            .collect(),
        _ => {
            let mut dirs = axis_directions(m);
            if m <= MAX_SIGN_DIM {
                dirs.extend(sign_directions(m));
            }
            dirs.extend(sphere_points(m, n_dirs, seed));
            dirs
        }
    }
}

/// `θ_i = 2πi/n` for `i = 0..n`.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect()
}

pub fn axis_directions(m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * m);
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; m];
            v[i] = s;
            out.push(v);
        }
    }
    out
}

pub fn sign_directions(m: usize) -> Vec<Vec<f64>> {
    let norm = 1.0 / (m as f64).sqrt();
    (0..1u64 << m)
        .map(|mask| {
            (0..m)
                .map(|i| if mask >> i & 1 == 0 { norm } else { -norm })
                .collect()
        })
        .collect()
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut x = 0.0;
    while i > 0 {
        x += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    x
}

/// `count` low-discrepancy unit vectors in `ℝ^m`.
pub fn sphere_points(m: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let dims = m + m % 2;
    assert!(dims <= PRIMES.len(), "sphere sampling supports m <= {}", PRIMES.len());
    let mut rng = seeded_rng(seed);
    let shift: Vec<f64> = (0..dims).map(|_| rng.random::<f64>()).collect();
    let mut out = Vec::with_capacity(count);
    let mut index = 1u64;
    while out.len() < count {
        let u: Vec<f64> = (0..dims)
            .map(|d| {
                let x = radical_inverse(index, PRIMES[d]) + shift[d];
                x - x.floor()
            })
            .collect();
        index += 1;
        let mut g = Vec::with_capacity(dims);
        for pair in u.chunks(2) {
            let r = (-2.0 * pair[0].max(f64::MIN_POSITIVE).ln()).sqrt();
            let t = 2.0 * PI * pair[1];
            g.push(r * t.cos());
            g.push(r * t.sin());
        }
        g.truncate(m);
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(g.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}
