//! Commutativity decisions by the algebraic and the geometric route.
//!
//! `cargo run --example commuting_family`

use jointrange::decide::{decide_commuting, CommuteMode, DecideOptions};
use jointrange::fixtures;
use jointrange::linalg::{random_unitary, ComplexMatrix};
use num_complex::Complex64;

fn main() -> jointrange::Result<()> {
    let u = random_unitary(5, 3);
    let diag = |z: &[(f64, f64)]| {
        let d: Vec<Complex64> = z.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        ComplexMatrix::from_diag(&d).conjugate_by(&u.adjoint())
    };
    let commuting = vec![
        diag(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.5), (2.0, 0.0), (0.0, 0.0)]),
        diag(&[(0.5, -1.0), (1.0, 1.0), (0.0, 0.0), (-2.0, 0.3), (1.0, 0.0)]),
    ];
    let opts = DecideOptions::default();
    for (name, fam) in [
        ("rotated diagonal pair", commuting),
        ("unitary square pair", fixtures::unitary_square_pair().into_matrices()),
    ] {
        let r = decide_commuting(&fam, CommuteMode::Both, &opts)?;
        println!("{name}: {:?} (k = {:?})", r.verdict, r.params.k);
        println!("  {}", serde_json::to_string(&r.certificate).unwrap_or_default().chars().take(160).collect::<String>());
    }
    Ok(())
}
