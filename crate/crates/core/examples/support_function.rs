//! Support values and maximizing points of a random Hermitian pair.
//!
//! `cargo run --example support_function`

use jointrange::crange::{range_scale, sample_directions, support_sweep, WeightSpec};
use jointrange::linalg::{random_hermitian, seeded_rng};
use jointrange::MatrixTuple;

fn main() -> jointrange::Result<()> {
    let mut rng = seeded_rng(7);
    let a = MatrixTuple::new(vec![random_hermitian(4, &mut rng), random_hermitian(4, &mut rng)])?;
    let w = WeightSpec::from_vector(vec![2.0, 1.0, 0.0, 0.0])?;
    println!("weight {:?}, gamma = {}, scale = {:.4}", w.values(), w.gamma(), range_scale(&a, &w));

    for p in support_sweep(&a, &w, &sample_directions(2, 8, 0))? {
        println!(
            "v = ({:+.3}, {:+.3})  h = {:+.5}  point = ({:+.5}, {:+.5})  unique = {}",
            p.direction[0], p.direction[1], p.value, p.point[0], p.point[1], p.unique
        );
    }
    Ok(())
}
