//! Conical points of a Hermitian triple whose pairwise ranges are all
//! squares while the joint range is not a polytope.
//!
//! `cargo run --release --example conical_points`

use jointrange::crange::WeightSpec;
use jointrange::decide::{decide_polyhedral, DecideOptions};
use jointrange::fixtures;
use jointrange::structure::{find_conical, verify_conical_blocks};

fn main() -> jointrange::Result<()> {
    let a = fixtures::two_conical_triple();
    let w = WeightSpec::k_range(1, a.dim())?;
    for cert in find_conical(&a, &w, 2000, 0)? {
        let blocks = verify_conical_blocks(&a, &w, &cert.unitary)?;
        println!(
            "point {:?}: {} supporting directions, cone rank {}, sigma_min {:.3}, blocks hold: {}",
            cert.point,
            cert.directions.len(),
            cert.cone_rank,
            cert.min_singular,
            blocks.holds
        );
    }
    let r = decide_polyhedral(&a, &w, &DecideOptions::default())?;
    println!("triple: {:?}", r.verdict);
    Ok(())
}
