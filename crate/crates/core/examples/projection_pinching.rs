//! Pinching a random rank-3 projection into three diagonal blocks and
//! writing the result as a convex combination of block projections.
//!
//! `cargo run --example projection_pinching`

use jointrange::linalg::random_unitary;
use jointrange::structure::pinch_decompose;

fn main() -> jointrange::Result<()> {
    let u = random_unitary(7, 21);
    let b = u.select_columns(&[0, 1, 2]);
    let p = &b * &b.adjoint();
    let dec = pinch_decompose(&p, &[2, 3, 2])?;

    println!("rank {}, {} terms", dec.rank, dec.weights.len());
    for (w, q) in dec.weights.iter().zip(&dec.projections) {
        let ranks: Vec<i64> = [(0, 2), (2, 3), (5, 2)]
            .iter()
            .map(|&(at, s)| q.block(at, at, s, s).trace().re.round() as i64)
            .collect();
        println!("  weight {w:.6}, block ranks {ranks:?}");
    }
    println!("weights sum to {}", dec.weights.iter().sum::<f64>());
    println!("reconstruction residual {:.2e}", dec.reconstruction_residual());
    Ok(())
}
