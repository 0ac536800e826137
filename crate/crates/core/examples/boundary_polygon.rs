//! Planar boundary of the numerical range of a non-normal 5x5 matrix whose
//! range is a triangle.
//!
//! `cargo run --example boundary_polygon`

use jointrange::crange::{boundary2d, WeightSpec};
use jointrange::fixtures;

fn main() -> jointrange::Result<()> {
    let a = fixtures::nonnormal_triangle();
    let parts = a.geometric_view();
    let w = WeightSpec::k_range(1, a.dim())?;
    let b = boundary2d(parts.get(0), parts.get(1), &w, 720)?;

    println!("{} directions, hull vertices:", b.thetas.len());
    for v in b.hull() {
        println!("  ({:+.6}, {:+.6})", v[0], v[1]);
    }
    println!("largest violation of an inner point: {:.2e}", b.max_violation());
    Ok(())
}
